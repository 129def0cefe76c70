use std::time::Instant;

use clap::ValueEnum;
use rayon::prelude::*;
use serde_json::{json, Value};

use hkt_core::scalars::Gq;
use hkt_core::verify::{self, Outcome};

use crate::report::{CheckRecord, Status};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Algebra,
    Su2,
    Differential,
    Appendix,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Algebra => "algebra",
            Suite::Su2 => "su2",
            Suite::Differential => "differential",
            Suite::Appendix => "appendix",
            Suite::All => "all",
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Ctx {
    pub n: usize,
    pub degree: u32,
    pub seed: u64,
}

type Run = fn(&Ctx) -> hkt_core::Result<(Outcome, Option<Value>)>;

pub struct CheckDef {
    pub id: &'static str,
    pub suite: Suite,
    pub claim: &'static str,
    /// Values of `n` the check applies to.
    pub ns: &'static [usize],
    /// Rough cost at n = 3; `None` means cheap.
    pub cost_n3: Option<&'static str>,
    pub run: Run,
}

fn plain(o: Outcome) -> (Outcome, Option<Value>) {
    (o, None)
}

const ALL_N: &[usize] = &[1, 2, 3];
const SMALL_N: &[usize] = &[1, 2];

pub fn registry() -> Vec<CheckDef> {
    vec![
        CheckDef {
            id: "quaternion-relations",
            suite: Suite::Algebra,
            claim: "I² = J² = K² = IJK = −Id on vectors and covectors",
            ns: ALL_N,
            cost_n3: None,
            run: |c| Ok(plain(verify::quaternion_relations(c.n))),
        },
        CheckDef {
            id: "lefschetz-omega-bar",
            suite: Suite::Algebra,
            claim: "η ↦ η∧Ω̄^{n−1} is an isomorphism Λ^{0,1} → Λ^{0,2n−1}",
            ns: ALL_N,
            cost_n3: None,
            run: |c| verify::lefschetz_omega_rank(c.n).map(plain),
        },
        CheckDef {
            id: "omega-algebra",
            suite: Suite::Algebra,
            claim: "dim A^{2i} = (i+1)(i+2)/2 and dim A^{i,i}₊ = 1 for i ≤ n",
            ns: ALL_N,
            cost_n3: None,
            run: |c| verify::omega_algebra_dims(c.n).map(plain),
        },
        CheckDef {
            id: "su2-structure",
            suite: Suite::Su2,
            claim: "su(2) relations on every degree slice; weight dimensions sum to C(4n,k)",
            ns: ALL_N,
            cost_n3: None,
            run: |c| verify::su2_structure(c.n).map(plain),
        },
        CheckDef {
            id: "plus-dimensions",
            suite: Suite::Su2,
            claim: "dim Λ^{p,q}₊ = C(2n, p+q)",
            ns: ALL_N,
            cost_n3: None,
            run: |c| verify::plus_dimensions(c.n).map(plain),
        },
        CheckDef {
            id: "vpq-injective",
            suite: Suite::Su2,
            claim: "V_{p,q} is injective for all p, q ≤ n",
            ns: ALL_N,
            cost_n3: Some("about a minute"),
            run: |c| verify::vpq_injective(c.n).map(plain),
        },
        CheckDef {
            id: "vpq-factorization",
            suite: Suite::Su2,
            claim: "V_{p,q}(η) = R_{p,q}(η) ∧ V_{0,0}(1)",
            ns: ALL_N,
            cost_n3: Some("a few minutes"),
            run: |c| verify::vpq_factorization(c.n).map(plain),
        },
        CheckDef {
            id: "vpq-reality",
            suite: Suite::Su2,
            claim: "V_{p,p}(Ω^p) is real and weakly positive",
            ns: ALL_N,
            cost_n3: Some("about a minute"),
            run: |c| verify::vpq_reality(c.n, 100, c.seed).map(plain),
        },
        CheckDef {
            id: "vpq-intertwining",
            suite: Suite::Su2,
            claim: "V_{p,q}(∂η) = ∂V_{p−1,q}(η) on polynomial forms",
            ns: ALL_N,
            cost_n3: Some("a few minutes"),
            run: |c| verify::vpq_intertwining(c.n, c.degree.min(2), c.seed).map(plain),
        },
        CheckDef {
            id: "lambda-positive",
            suite: Suite::Su2,
            claim: "V_{0,0}(1) = λ R_{n,n}(Φ) with λ a positive rational",
            ns: ALL_N,
            cost_n3: None,
            run: |c| {
                let (l, o) = verify::lambda_positive(c.n)?;
                Ok((o, Some(json!({ "lambda": l.to_string() }))))
            },
        },
        CheckDef {
            id: "xi-weak-positivity",
            suite: Suite::Su2,
            claim: "Ξ_n = Π₊(ω_I^n) is weakly positive on decomposable probes",
            ns: ALL_N,
            cost_n3: None,
            run: |c| verify::xi_weak_positivity(c.n, c.n, 200, c.seed).map(plain),
        },
        CheckDef {
            id: "anticommutation",
            suite: Suite::Differential,
            claim: "{∂, ∂_J} = 0 and {d_A, d_B} = 0 on polynomial forms",
            ns: SMALL_N,
            cost_n3: None,
            run: |c| Ok(plain(verify::anticommutation(c.n, c.degree))),
        },
        CheckDef {
            id: "fourth-order",
            suite: Suite::Differential,
            claim: "∂̄∂̄_J∂∂_J = const · d d_I d_J d_K on degree-4 potentials",
            ns: SMALL_N,
            cost_n3: None,
            run: |c| {
                let (k, o) = verify::fourth_order(c.n)?;
                Ok((o, Some(json!({ "const": k }))))
            },
        },
        CheckDef {
            id: "banos-swann",
            suite: Suite::Differential,
            claim: "ω_I = κ(dd_Iφ + d_Jd_Kφ) for flat and perturbed potentials",
            ns: SMALL_N,
            cost_n3: None,
            run: |c| {
                let (k, o) = verify::banos_swann(c.n, 10, c.seed)?;
                Ok((o, Some(json!({ "kappa": k }))))
            },
        },
        CheckDef {
            id: "box-bilaplacian",
            suite: Suite::Differential,
            claim: "□φ = μ Δ²φ on monomial potentials",
            ns: SMALL_N,
            cost_n3: None,
            run: |c| {
                let deg = if c.n == 1 { 6 } else { 4 };
                let (mu, o) = verify::box_bilaplacian(c.n, deg)?;
                Ok((o, Some(json!({ "mu": mu }))))
            },
        },
        CheckDef {
            id: "hkt-witnesses",
            suite: Suite::Differential,
            claim: "potential metrics are HKT; averaged random metrics need not be",
            ns: SMALL_N,
            cost_n3: None,
            run: |c| verify::hkt_witnesses(c.n, 0).map(plain),
        },
        CheckDef {
            id: "balanced-identity",
            suite: Suite::Differential,
            claim: "⋆d(ω_I^{2n−1})/(2n−1) = −(2n−2)! · I(Λ_{ω_I} dω_I) pointwise",
            ns: SMALL_N,
            cost_n3: None,
            run: |c| verify::balanced_identity(c.n, c.seed).map(plain),
        },
        CheckDef {
            id: "torsion-square",
            suite: Suite::Differential,
            claim: "(dω_I)^{2,1} ∧ (dω_I)^{1,2} = (√−1/2) dω_I ∧ d_Iω_I",
            ns: ALL_N,
            cost_n3: None,
            run: |c| verify::torsion_square_corrected(c.n, &[c.seed, c.seed + 1]).map(plain),
        },
        CheckDef {
            id: "torsion-square-literal",
            suite: Suite::Differential,
            claim: "(dω_I)^{2,1} ∧ (dω_I)^{1,2} = √−1 dω_I ∧ d_Iω_I",
            ns: ALL_N,
            cost_n3: None,
            run: |c| verify::torsion_square(c.n, &Gq::i(), &[c.seed, c.seed + 1]).map(plain),
        },
        CheckDef {
            id: "a-structure",
            suite: Suite::Appendix,
            claim: "the Lie algebra generated by L_A, Λ_A has dimension 10 and rank 2",
            ns: ALL_N,
            cost_n3: Some("tens of minutes"),
            run: |c| verify::a_structure(c.n, c.seed).map(plain),
        },
        CheckDef {
            id: "cartan-hodge",
            suite: Suite::Appendix,
            claim: "joint eigenspaces of a Cartan subalgebra are the Hodge bidegrees",
            ns: ALL_N,
            cost_n3: Some("tens of minutes"),
            run: |c| verify::cartan_hodge(c.n, c.seed).map(plain),
        },
        CheckDef {
            id: "spn-commutes",
            suite: Suite::Appendix,
            claim: "sp(n) commutes with the L/Λ algebra and preserves bidegree",
            ns: ALL_N,
            cost_n3: Some("tens of minutes"),
            run: |c| verify::spn_commutes(c.n).map(plain),
        },
        CheckDef {
            id: "howe-irreducibility",
            suite: Suite::Appendix,
            claim: "every isotypic piece I^{p,q}_α is Sp(n)-irreducible; pieces fill Λ^{p,q}",
            ns: SMALL_N,
            cost_n3: None,
            run: |c| {
                let (entries, o) = verify::howe_irreducibility(c.n, c.seed)?;
                Ok((o, Some(json!(entries))))
            },
        },
        CheckDef {
            id: "hodge-riemann",
            suite: Suite::Appendix,
            claim: "η ↦ η∧η̄∧P is sign-definite or zero on every I^{p,q}_α",
            ns: SMALL_N,
            cost_n3: None,
            run: |c| {
                let (scan, o) = verify::hodge_riemann(c.n, c.seed)?;
                Ok((o, Some(json!(scan))))
            },
        },
        CheckDef {
            id: "xi3-weak-positivity",
            suite: Suite::Appendix,
            claim: "Ξ₃ = Π₊(ω_I³) is weakly positive on decomposable probes",
            ns: &[3],
            cost_n3: None,
            run: |c| verify::xi_weak_positivity(3, 3, 200, c.seed).map(plain),
        },
        CheckDef {
            id: "primitive-pairing",
            suite: Suite::Appendix,
            claim: "√−1 η∧η̄∧Ξ₃ is sign-definite on primitive weight-1 (2,1)-forms",
            ns: &[3],
            cost_n3: None,
            run: |_| verify::primitive_pairing(3).map(plain),
        },
    ]
}

pub fn selected(suite: Suite) -> Vec<CheckDef> {
    registry()
        .into_iter()
        .filter(|d| suite == Suite::All || d.suite == suite)
        .collect()
}

fn skipped(d: &CheckDef, reason: String) -> CheckRecord {
    CheckRecord {
        id: d.id.to_string(),
        suite: d.suite.name().to_string(),
        claim: d.claim.to_string(),
        status: Status::Skipped,
        detail: reason,
        witness: None,
        data: None,
        runtime_ms: 0,
    }
}

fn execute(d: &CheckDef, ctx: &Ctx) -> CheckRecord {
    let start = Instant::now();
    let (status, detail, witness, data) = match (d.run)(ctx) {
        Ok((o, data)) => {
            let status = if o.pass { Status::Pass } else { Status::Fail };
            (status, o.detail, o.witness, data)
        }
        Err(e) => (
            Status::Fail,
            format!("error: {e}"),
            Some(json!({ "error": e.to_string() })),
            None,
        ),
    };
    CheckRecord {
        id: d.id.to_string(),
        suite: d.suite.name().to_string(),
        claim: d.claim.to_string(),
        status,
        detail,
        witness,
        data,
        runtime_ms: start.elapsed().as_millis() as u64,
    }
}

/// Runs the checks on the global pool, keeping registry order.
pub fn run(defs: &[CheckDef], ctx: &Ctx, force_full: bool) -> Vec<CheckRecord> {
    defs.par_iter()
        .map(|d| {
            if !d.ns.contains(&ctx.n) {
                skipped(d, format!("not applicable for n = {}", ctx.n))
            } else if ctx.n == 3 && d.cost_n3.is_some() && !force_full {
                skipped(d, "heavy at n = 3; rerun with --force-full".to_string())
            } else {
                execute(d, ctx)
            }
        })
        .collect()
}

/// Heavy checks that would run at n = 3, with their cost estimates.
pub fn heavy_plan(defs: &[CheckDef], n: usize) -> Vec<(&'static str, &'static str)> {
    defs.iter()
        .filter(|d| n == 3 && d.ns.contains(&n))
        .filter_map(|d| d.cost_n3.map(|c| (d.id, c)))
        .collect()
}
