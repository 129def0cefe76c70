//! Named exact checks shared by the command-line suites and the acceptance tests.
//!
//! Every check returns an [`Outcome`]; errors from the underlying computation are
//! propagated so callers can report them as failures.

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::differential::metric::{
    balanced_identity_check, lefschetz_omega_iso, torsion_and_hkt_checks, torsion_square_constant,
    torsion_square_residual, HermitianMetricField,
};
use crate::differential::ops::{del, del_j, twisted_d};
use crate::differential::potential::{
    banos_swann_check, banos_swann_kappa, box_mu, box_operator, flat_potential,
    fourth_order_constant_on, fourth_order_family,
};
use crate::error::Result;
use crate::exterior::basis::masks_of_degree;
use crate::exterior::{Form, Frame, Slice};
use crate::howe::isotypic::isotypic_decompose;
use crate::howe::lie::{a_algebra, cartan_weight_check, lefschetz_operators};
use crate::howe::signature::{hodge_riemann_scan, primitive_weight1_report, SignatureEntry};
use crate::howe::spn::{commutant_dimension, spn_action, spn_checks};
use crate::hypercomplex::{build_structure, standard_forms, standard_volume, Unit};
use crate::scalars::linalg::Matrix;
use crate::scalars::poly::monomials_of_degree;
use crate::scalars::rational::{binomial, int, rat};
use crate::scalars::{Gq, Polynomial, Rational};
use crate::su2::ops::op_matrix;
use crate::su2::{
    lambda_constant, omega_algebra, plus_dimension, probe_weak_positivity, r_form, v_matrix, v_pq,
    weight_decompose, xi_form, Su2Op,
};
use crate::testkit::{
    make_potential, make_quaternionic_hermitian_metric, make_random_form, Family, FixtureSpec,
};

#[derive(Clone, Debug, Serialize)]
pub struct Outcome {
    pub pass: bool,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

impl Outcome {
    fn pass(detail: impl Into<String>) -> Self {
        Self {
            pass: true,
            detail: detail.into(),
            witness: None,
        }
    }

    fn fail(detail: impl Into<String>, witness: Value) -> Self {
        Self {
            pass: false,
            detail: detail.into(),
            witness: Some(witness),
        }
    }

    fn from_bool(ok: bool, detail: impl Into<String>, witness: impl FnOnce() -> Value) -> Self {
        if ok {
            Self::pass(detail)
        } else {
            Self::fail(detail, witness())
        }
    }
}

/// Combines outcomes; passes iff all pass.
pub fn all_of(parts: Vec<(&str, Outcome)>) -> Outcome {
    let pass = parts.iter().all(|(_, o)| o.pass);
    let detail = parts
        .iter()
        .map(|(name, o)| format!("{name}: {}", o.detail))
        .collect::<Vec<_>>()
        .join("; ");
    let witness: serde_json::Map<String, Value> = parts
        .into_iter()
        .filter_map(|(name, o)| o.witness.map(|w| (name.to_string(), w)))
        .collect();
    Outcome {
        pass,
        detail,
        witness: (!witness.is_empty()).then_some(Value::Object(witness)),
    }
}

// ---------------------------------------------------------------- algebra

/// `I² = J² = K² = IJK = −Id` on vectors and covectors.
pub fn quaternion_relations(n: usize) -> Outcome {
    let st = build_structure(n);
    let minus = Matrix::identity(4 * n).scale(&Gq::from_int(-1));
    let mut bad = Vec::new();
    for (kind, ms) in [("vectors", &st.on_vectors), ("covectors", &st.on_covectors)] {
        for (a, m) in Unit::ALL.iter().zip(ms.iter()) {
            if m.mul(m) != minus {
                bad.push(format!("{}² on {kind}", a.name()));
            }
        }
        let ijk = ms[0].mul(&ms[1]).mul(&ms[2]);
        if ijk != minus {
            bad.push(format!("IJK on {kind}"));
        }
    }
    Outcome::from_bool(bad.is_empty(), format!("n = {n}"), || json!(bad))
}

/// `η ↦ η ∧ Ω̄^{n−1}` has full rank `2n` on `Λ^{0,1}`.
pub fn lefschetz_omega_rank(n: usize) -> Result<Outcome> {
    let rank = lefschetz_omega_iso(n)?.rank();
    Ok(Outcome::from_bool(
        rank == 2 * n,
        format!("rank {rank}, expected {}", 2 * n),
        || json!(rank),
    ))
}

// ---------------------------------------------------------------- su(2)

/// `su(2)` relations on every degree slice and `Σ_w dim = C(4n, k)`.
pub fn su2_structure(n: usize) -> Result<Outcome> {
    let mut bad = Vec::new();
    for k in 0..=4 * n {
        let s = Slice::degree(n, Frame::Complex, k);
        let m = |op| op_matrix(op, s.clone(), s.clone()).map(|l| l.matrix);
        let (ai, aj, ak) = (m(Su2Op::AI)?, m(Su2Op::AJ)?, m(Su2Op::AK)?);
        let (h, x, y) = (m(Su2Op::H)?, m(Su2Op::Raise)?, m(Su2Op::Lower)?);
        let two = Gq::from_int(2);
        let rels = [
            ("[A_I,A_J] = 2A_K", ai.commutator(&aj) == ak.scale(&two)),
            ("[A_J,A_K] = 2A_I", aj.commutator(&ak) == ai.scale(&two)),
            ("[A_K,A_I] = 2A_J", ak.commutator(&ai) == aj.scale(&two)),
            ("[h,X] = 2X", h.commutator(&x) == x.scale(&two)),
            ("[h,Y] = −2Y", h.commutator(&y) == y.scale(&-two.clone())),
            ("[X,Y] = h", x.commutator(&y) == h),
        ];
        for (name, ok) in rels {
            if !ok {
                bad.push(format!("{name} on Λ^{k}"));
            }
        }
        let total = weight_decompose(n, k)?.total_dim();
        if total != binomial(4 * n, k) {
            bad.push(format!("weights of Λ^{k} sum to {total}"));
        }
    }
    Ok(Outcome::from_bool(
        bad.is_empty(),
        format!("n = {n}, all degrees"),
        || json!(bad),
    ))
}

/// `dim Λ^{p,q}₊ = C(2n, p+q)`.
pub fn plus_dimensions(n: usize) -> Result<Outcome> {
    let mut bad = Vec::new();
    for p in 0..=2 * n {
        for q in 0..=2 * n - p {
            let d = plus_dimension(n, p, q)?;
            if d != binomial(2 * n, p + q) {
                bad.push(json!({"p": p, "q": q, "dim": d}));
            }
        }
    }
    Ok(Outcome::from_bool(
        bad.is_empty(),
        format!("n = {n}"),
        || json!(bad),
    ))
}

// ---------------------------------------------------------------- V_{p,q}

pub fn vpq_injective(n: usize) -> Result<Outcome> {
    let phi = standard_volume(n);
    let mut bad = Vec::new();
    for p in 0..=n {
        for q in 0..=n {
            let m = v_matrix(n, p, q, &phi)?;
            if m.rank() != m.domain.len() {
                bad.push(json!({"p": p, "q": q, "rank": m.rank(), "dim": m.domain.len()}));
            }
        }
    }
    Ok(Outcome::from_bool(
        bad.is_empty(),
        format!("all p, q ≤ {n}"),
        || json!(bad),
    ))
}

/// `V_{p,q}(η) = R_{p,q}(η) ∧ V_{0,0}(1)` on a basis of `Λ^{p+q,0}`.
pub fn vpq_factorization(n: usize) -> Result<Outcome> {
    let phi = standard_volume(n);
    let v00 = v_pq(0, 0, &Form::constant(n, Gq::one()), &phi)?;
    let mut bad = Vec::new();
    for p in 0..=n {
        for q in 0..=n {
            for m in Slice::bidegree(n, p + q, 0).masks() {
                let e = Form::basis(n, Frame::Complex, *m);
                let lhs = v_pq(p, q, &e, &phi)?;
                let rhs = r_form(p, q, &e)?.wedge(&v00);
                if !lhs.same_as(&rhs) {
                    bad.push(json!({"p": p, "q": q, "input": e}));
                }
            }
        }
    }
    Ok(Outcome::from_bool(
        bad.is_empty(),
        format!("all p, q ≤ {n}"),
        || json!(bad),
    ))
}

/// `V_{p,p}(Ω^p)` is real and weakly positive on probes.
///
/// With `R` normalized by `R_{1,1}(Ω) ∝ ω_I` with a real coefficient no extra phase is
/// needed; the detail string also reports whether `(√−1)^{(n−p)²} V_{p,p}(Ω^p)` is real.
pub fn vpq_reality(n: usize, probes: usize, seed: u64) -> Result<Outcome> {
    let phi = standard_volume(n);
    let omega = standard_forms(n).omega;
    let mut bad = Vec::new();
    let mut phased = Vec::new();
    for p in 0..=n {
        let v = v_pq(p, p, &omega.wedge_pow(p), &phi)?;
        let c = Gq::i_pow(((n - p) * (n - p)) as i64);
        phased.push(v.scale(&c).is_real());
        let report = probe_weak_positivity(&v, probes, seed)?;
        if !v.is_real() || !report.weakly_positive() {
            bad.push(json!({"p": p, "real": v.is_real(), "probes": report}));
        }
    }
    Ok(Outcome::from_bool(
        bad.is_empty(),
        format!("p ≤ {n}, {probes} probes each; with phase (√−1)^((n−p)²) real: {phased:?}"),
        || json!(bad),
    ))
}

/// `V_{p,q}(∂η) = ∂V_{p−1,q}(η)` on seeded polynomial `(p+q−1,0)`-forms.
pub fn vpq_intertwining(n: usize, degree: u32, seed: u64) -> Result<Outcome> {
    let phi = standard_volume(n);
    let mut bad = Vec::new();
    for p in 1..=n {
        for q in 0..=n {
            let spec = FixtureSpec::new(
                n,
                Family::RandomForm {
                    degree: p + q - 1,
                    bidegree: Some((p + q - 1, 0)),
                    primitive: false,
                    weight: None,
                },
                degree,
                seed + (p * 7 + q) as u64,
            );
            let eta = make_random_form(&spec)?;
            let lhs = v_pq(p, q, &del(&eta), &phi)?;
            let rhs = del(&v_pq(p - 1, q, &eta, &phi)?);
            if !lhs.same_as(&rhs) {
                bad.push(json!({"p": p, "q": q, "eta": eta}));
            }
        }
    }
    Ok(Outcome::from_bool(
        bad.is_empty(),
        format!("1 ≤ p ≤ {n}, q ≤ {n}, coefficient degree ≤ {degree}"),
        || json!(bad),
    ))
}

pub fn lambda_positive(n: usize) -> Result<(Rational, Outcome)> {
    let l = lambda_constant(n)?;
    let ok = l > int(0);
    Ok((
        l.clone(),
        Outcome::from_bool(ok, format!("λ({n}) = {l}"), || json!(l.to_string())),
    ))
}

// ---------------------------------------------------------------- ω-algebra and Ξ

/// `dim A^{2i} = (i+1)(i+2)/2` and `dim A^{i,i}₊ = 1` for `i ≤ n`.
pub fn omega_algebra_dims(n: usize) -> Result<Outcome> {
    let mut bad = Vec::new();
    for i in 1..=n {
        let r = omega_algebra(n, i)?;
        if r.dim != (i + 1) * (i + 2) / 2 || r.plus_dim != 1 {
            bad.push(json!({"i": i, "dim": r.dim, "plus_dim": r.plus_dim}));
        }
    }
    Ok(Outcome::from_bool(
        bad.is_empty(),
        format!("i ≤ {n}"),
        || json!(bad),
    ))
}

/// `Ξ_k = Π₊(ω_I^k)` is weakly positive on decomposable probes.
pub fn xi_weak_positivity(n: usize, k: usize, probes: usize, seed: u64) -> Result<Outcome> {
    let r = xi_form(n, k, probes, seed)?;
    Ok(Outcome::from_bool(
        r.probes.weakly_positive(),
        format!(
            "Ξ_{k}, {} probes: {} positive, {} zero, {} negative",
            r.probes.probes, r.probes.positive, r.probes.zero, r.probes.negative
        ),
        || json!(r.probes),
    ))
}

// ---------------------------------------------------------------- differential

fn spanning_forms(n: usize, frame: Frame, degree: u32) -> Vec<Form> {
    let nv = 4 * n;
    let monos: Vec<Polynomial> = (0..=degree)
        .flat_map(|d| monomials_of_degree(nv, d))
        .map(|m| Polynomial::term(nv, m, Gq::one()))
        .collect();
    let mut out = Vec::new();
    for k in 0..=nv {
        for m in masks_of_degree(nv, k) {
            for f in &monos {
                out.push(Form::monomial(n, frame, m, f.clone()));
            }
        }
    }
    out
}

/// `{∂, ∂_J} = 0` and `{d_A, d_B} = 0` for `A, B ∈ {1, I, J, K}` on every
/// `x^α e_M` with `|α| ≤ degree`.
pub fn anticommutation(n: usize, degree: u32) -> Outcome {
    type Op = Box<dyn Fn(&Form) -> Form + Sync>;
    let ops: Vec<(&str, Op)> = vec![
        ("d", Box::new(|f: &Form| f.d())),
        ("d_I", Box::new(|f: &Form| twisted_d(Unit::I, f))),
        ("d_J", Box::new(|f: &Form| twisted_d(Unit::J, f))),
        ("d_K", Box::new(|f: &Form| twisted_d(Unit::K, f))),
    ];
    let forms = spanning_forms(n, Frame::Complex, degree);
    let failures: Vec<Value> = forms
        .par_iter()
        .flat_map_iter(|f| {
            let mut bad = Vec::new();
            for i in 0..ops.len() {
                for j in i + 1..ops.len() {
                    let (a, b) = (&ops[i].1, &ops[j].1);
                    if !a(&b(f)).add(&b(&a(f))).is_zero() {
                        bad.push(json!({"pair": [ops[i].0, ops[j].0], "form": f}));
                    }
                }
            }
            let dj = del_j(f).unwrap();
            if !del(&dj).add(&del_j(&del(f)).unwrap()).is_zero() {
                bad.push(json!({"pair": ["∂", "∂_J"], "form": f}));
            }
            bad
        })
        .collect();
    Outcome::from_bool(
        failures.is_empty(),
        format!("{} spanning forms, 7 anticommutators", forms.len()),
        || json!(failures.into_iter().take(5).collect::<Vec<_>>()),
    )
}

/// `∂̄∂̄_J∂∂_J = c · d d_I d_J d_K` with one constant on every degree-4 monomial.
pub fn fourth_order(n: usize) -> Result<(Gq, Outcome)> {
    let family = fourth_order_family(n);
    match fourth_order_constant_on(n, &family) {
        Ok(c) => Ok((
            c.clone(),
            Outcome::pass(format!("c = {c} on {} potentials", family.len())),
        )),
        Err(e) => Ok((Gq::zero(), Outcome::fail(e.to_string(), json!(null)))),
    }
}

/// `ω_I = κ(dd_Iφ + d_Jd_Kφ)` for the flat and `count` seeded perturbed potentials.
pub fn banos_swann(n: usize, count: usize, seed: u64) -> Result<(Gq, Outcome)> {
    let kappa = banos_swann_kappa(n)?;
    let mut potentials = vec![flat_potential(n)];
    for s in 0..count as u64 {
        let spec = FixtureSpec::new(n, Family::PerturbedPotential, 4, seed + s);
        potentials.push(make_potential(&spec)?);
    }
    let bad: Vec<Value> = potentials
        .par_iter()
        .map(|phi| banos_swann_check(n, phi, &kappa).map(|r| (phi, r)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|(_, r)| !r.is_zero())
        .map(|(phi, r)| json!({"potential": phi, "residual": r}))
        .collect();
    Ok((
        kappa.clone(),
        Outcome::from_bool(
            bad.is_empty(),
            format!("κ = {kappa}, {} potentials", potentials.len()),
            || json!(bad),
        ),
    ))
}

/// `□φ = μ Δ²φ` on every monomial of degree `≤ max_degree`.
pub fn box_bilaplacian(n: usize, max_degree: u32) -> Result<(Gq, Outcome)> {
    let mu = box_mu(n)?;
    let nv = 4 * n;
    let monos: Vec<Polynomial> = (0..=max_degree)
        .flat_map(|d| monomials_of_degree(nv, d))
        .map(|m| Polynomial::term(nv, m, Gq::one()))
        .collect();
    let bad: Vec<Value> = monos
        .par_iter()
        .filter(|phi| box_operator(n, phi) != phi.laplacian().laplacian().scale(&mu))
        .map(|phi| json!(phi))
        .collect();
    Ok((
        mu.clone(),
        Outcome::from_bool(
            bad.is_empty(),
            format!("μ = {mu}, {} monomials", monos.len()),
            || json!(bad),
        ),
    ))
}

fn metric_spec(n: usize, seed: u64) -> FixtureSpec {
    FixtureSpec::new(n, Family::AveragedRandomMetric, 1, seed)
}

/// Potential metrics are HKT; the averaged metric with the given seed is not (n ≥ 2).
pub fn hkt_witnesses(n: usize, seed: u64) -> Result<Outcome> {
    let spec = FixtureSpec::new(n, Family::PerturbedPotential, 3, seed);
    let pot = HermitianMetricField::from_potential(n, &make_potential(&spec)?)?;
    let pot_hkt = torsion_and_hkt_checks(&pot)?.hkt;
    let avg = make_quaternionic_hermitian_metric(&metric_spec(n, seed))?;
    let avg_hkt = torsion_and_hkt_checks(&avg)?.hkt;
    // every quaternionic Hermitian metric in real dimension 4 is HKT
    let ok = pot_hkt && (n == 1 || !avg_hkt);
    Ok(Outcome::from_bool(
        ok,
        format!("potential metric HKT: {pot_hkt}; averaged metric (seed {seed}) HKT: {avg_hkt}"),
        || json!({"seed": seed}),
    ))
}

fn rational_point(n: usize, seed: u64) -> Vec<Rational> {
    (0..4 * n)
        .map(|i| rat(((seed as i64 + 3 * i as i64) % 5) - 2, 3))
        .collect()
}

/// `⋆d(ω_I^{2n−1})/(2n−1) = −(2n−2)!·I(Λ_{ω_I}dω_I)` at a rational point.
pub fn balanced_identity(n: usize, seed: u64) -> Result<Outcome> {
    let m = make_quaternionic_hermitian_metric(&metric_spec(n, seed))?;
    let r = balanced_identity_check(&m, &rational_point(n, seed))?;
    Ok(Outcome::from_bool(
        r.residual.is_zero(),
        format!(
            "averaged metric seed {seed}, ratio {:?}",
            r.constant.as_ref().map(|c| c.to_string())
        ),
        || json!(r),
    ))
}

/// `(dω_I)^{2,1} ∧ (dω_I)^{1,2} = c · dω_I ∧ d_Iω_I` on seeded metric fields.
pub fn torsion_square(n: usize, c: &Gq, seeds: &[u64]) -> Result<Outcome> {
    let mut bad = Vec::new();
    for &s in seeds {
        let spec = FixtureSpec::new(n, Family::PerturbedPotential, 3, s);
        let metrics = [
            make_quaternionic_hermitian_metric(&metric_spec(n, s))?,
            HermitianMetricField::from_potential(n, &make_potential(&spec)?)?,
        ];
        for (kind, m) in ["averaged", "potential"].iter().zip(&metrics) {
            let r = torsion_square_residual(m, c);
            if !r.is_zero() {
                bad.push(json!({"seed": s, "metric": kind, "residual_terms": r.num_terms()}));
            }
        }
    }
    Ok(Outcome::from_bool(
        bad.is_empty(),
        format!("c = {c}, {} seeds", seeds.len()),
        || json!(bad),
    ))
}

pub fn torsion_square_corrected(n: usize, seeds: &[u64]) -> Result<Outcome> {
    torsion_square(n, &torsion_square_constant(), seeds)
}

// ---------------------------------------------------------------- the algebra 𝔞 and sp(n)

/// `𝔞` has dimension 10 and rank 2, with nondegenerate Killing form.
pub fn a_structure(n: usize, seed: u64) -> Result<Outcome> {
    let s = a_algebra(n)?.summary(seed)?;
    let ok = s.dim == 10 && s.rank == 2 && s.jacobi && s.antisymmetric && s.killing_nondegenerate;
    Ok(Outcome::from_bool(
        ok,
        format!(
            "dim {}, rank {}, Killing inertia {}+/{}−",
            s.dim, s.rank, s.killing_signature.positive, s.killing_signature.negative
        ),
        || json!(s),
    ))
}

/// Joint eigenspaces of the Cartan pair are the bidegree slices.
pub fn cartan_hodge(n: usize, seed: u64) -> Result<Outcome> {
    let ops = lefschetz_operators(n)?;
    let alg = a_algebra(n)?;
    let r = cartan_weight_check(&alg, &ops, seed)?;
    Ok(Outcome::from_bool(
        r.diagonal && r.matches_hodge,
        format!("H₁ = {}, H₂ = {}", r.h1, r.h2),
        || json!(r),
    ))
}

/// `[𝔞, sp(n)] = 0` and `sp(n)` preserves the bidegree.
pub fn spn_commutes(n: usize) -> Result<Outcome> {
    let sp = spn_action(n)?;
    let a = a_algebra(n)?;
    let c = spn_checks(&sp, &a);
    let expected = n * (2 * n + 1);
    Ok(Outcome::from_bool(
        c.commutes_with_a && c.preserves_bidegree && c.dim == expected,
        format!("dim sp({n}) = {}", c.dim),
        || json!(c),
    ))
}

#[derive(Clone, Debug, Serialize)]
pub struct CommutantEntry {
    pub alpha: String,
    pub p: usize,
    pub q: usize,
    pub dim: usize,
    pub commutant: usize,
}

/// Commutant of `Sp(n)` on every piece `I^{p,q}_α`, plus completeness of the decomposition.
pub fn howe_irreducibility(n: usize, seed: u64) -> Result<(Vec<CommutantEntry>, Outcome)> {
    let dec = isotypic_decompose(n, seed)?;
    let sp = spn_action(n)?;
    let checks = dec.checks();
    let pieces: Vec<(String, usize, usize, Vec<_>)> = dec
        .components
        .iter()
        .flat_map(|c| {
            c.pieces
                .iter()
                .map(move |((p, q), v)| (c.label.clone(), *p, *q, v.clone()))
        })
        .collect();
    let entries = pieces
        .par_iter()
        .map(|(alpha, p, q, v)| {
            Ok(CommutantEntry {
                alpha: alpha.clone(),
                p: *p,
                q: *q,
                dim: v.len(),
                commutant: commutant_dimension(v, &sp.basis)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let reducible: Vec<&CommutantEntry> = entries.iter().filter(|e| e.commutant != 1).collect();
    let ok = reducible.is_empty() && checks.complete && checks.invariant;
    let out = Outcome::from_bool(
        ok,
        format!(
            "{} pieces, {} with commutant ≠ 1, complete: {}",
            entries.len(),
            reducible.len(),
            checks.complete
        ),
        || json!({"reducible": reducible, "checks": checks}),
    );
    Ok((entries, out))
}

/// Every Hodge–Riemann form on every `I^{p,q}_α` is definite or zero.
pub fn hodge_riemann(n: usize, seed: u64) -> Result<(Vec<SignatureEntry>, Outcome)> {
    let dec = isotypic_decompose(n, seed)?;
    let scan = hodge_riemann_scan(&dec)?;
    let bad: Vec<_> = scan.iter().filter(|e| !e.verdict.allowed()).collect();
    let out = Outcome::from_bool(
        bad.is_empty(),
        format!(
            "{} forms scanned, {} not sign-definite",
            scan.len(),
            bad.len()
        ),
        || json!(bad),
    );
    Ok((scan, out))
}

/// `√−1·η∧η̄∧Ξ_{2n−3}` is definite on primitive weight-1 `(2,1)`-forms (n ≥ 3).
pub fn primitive_pairing(n: usize) -> Result<Outcome> {
    let r = primitive_weight1_report(n)?;
    Ok(Outcome::from_bool(
        matches!(
            r.verdict,
            crate::howe::Verdict::PositiveDefinite | crate::howe::Verdict::NegativeDefinite
        ),
        format!(
            "dim {}, inertia {}+/{}−/{}₀",
            r.dim, r.inertia.positive, r.inertia.negative, r.inertia.zero
        ),
        || json!(r),
    ))
}
