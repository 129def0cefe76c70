//! Seeded fixtures: potentials, quaternionic Hermitian metric fields and random forms.
//!
//! Everything here is a pure function of `(FIXTURE_VERSION, FixtureSpec)`.

use std::sync::Arc;

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::differential::potential::flat_potential;
use crate::differential::HermitianMetricField;
use crate::error::{Error, Result};
use crate::exterior::{Form, Frame, LinearMap, Slice};
use crate::hypercomplex::standard::flat_gram;
use crate::hypercomplex::{build_structure, standard_forms, Gram, Unit};
use crate::scalars::linalg::{Matrix, SparseVec};
use crate::scalars::poly::monomials_of_degree;
use crate::scalars::{Gq, Polynomial, Rational};
use crate::su2::ops::casimir_matrix;
use crate::su2::weights::casimir_eigenvalue;

/// Bumped whenever the generators change their output for a given spec.
pub const FIXTURE_VERSION: u32 = 1;

pub type Seed = u64;

fn default_bits() -> u32 {
    8
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Family {
    FlatPotential,
    PerturbedPotential,
    AveragedRandomMetric,
    RandomForm {
        degree: usize,
        #[serde(default)]
        bidegree: Option<(usize, usize)>,
        #[serde(default)]
        primitive: bool,
        /// `SU(2)`-weight; the form is drawn from that Casimir eigenspace.
        #[serde(default)]
        weight: Option<usize>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureSpec {
    pub n: usize,
    pub family: Family,
    /// Maximal polynomial degree of generated coefficients.
    pub degree_bound: u32,
    pub seed: Seed,
    /// Bit length bound for numerators and denominators.
    #[serde(default = "default_bits")]
    pub coeff_bits: u32,
}

impl FixtureSpec {
    pub fn new(n: usize, family: Family, degree_bound: u32, seed: Seed) -> Self {
        Self {
            n,
            family,
            degree_bound,
            seed,
            coeff_bits: default_bits(),
        }
    }

    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ ((FIXTURE_VERSION as u64) << 56))
    }

    fn check_n(&self) -> Result<()> {
        if self.n == 0 || self.n > 3 {
            return Err(Error::Precondition(format!("n = {} not in 1..=3", self.n)));
        }
        Ok(())
    }
}

fn random_rational(rng: &mut ChaCha8Rng, bits: u32) -> Rational {
    let bound = (1i64 << bits.clamp(1, 62)) - 1;
    let mut num = rng.gen_range(1..=bound);
    if rng.gen_bool(0.5) {
        num = -num;
    }
    let den = rng.gen_range(1..=bound);
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// A real polynomial with `terms` monomials of degree in `degrees`.
fn random_real_poly(
    rng: &mut ChaCha8Rng,
    nvars: usize,
    degrees: std::ops::RangeInclusive<u32>,
    terms: usize,
    bits: u32,
) -> Polynomial {
    let mut p = Polynomial::zero(nvars);
    for _ in 0..terms {
        let deg = rng.gen_range(degrees.clone());
        let monos = monomials_of_degree(nvars, deg);
        let m = monos.choose(rng).unwrap().clone();
        p.add_term(m, &Gq::real(random_rational(rng, bits)));
    }
    p
}

/// Flat potential, optionally with seeded terms of degree `3..=degree_bound` added.
pub fn make_potential(spec: &FixtureSpec) -> Result<Polynomial> {
    spec.check_n()?;
    let flat = flat_potential(spec.n);
    match spec.family {
        Family::FlatPotential => Ok(flat),
        Family::PerturbedPotential => {
            if spec.degree_bound < 3 {
                return Err(Error::Precondition(
                    "perturbed potential needs degree bound ≥ 3".into(),
                ));
            }
            let mut rng = spec.rng();
            let extra = random_real_poly(
                &mut rng,
                4 * spec.n,
                3..=spec.degree_bound,
                spec.n + 2,
                spec.coeff_bits,
            );
            Ok(flat.add(&extra))
        }
        _ => Err(Error::Precondition(format!(
            "{:?} is not a potential family",
            spec.family
        ))),
    }
}

/// `Aᵀ P A` for a constant matrix `A` and a polynomial matrix `P`.
fn conjugate_gram(a: &Matrix, p: &Gram) -> Gram {
    let d = p.len();
    let nv = p[0][0].nvars();
    let cols = a.columns();
    let mut out = vec![vec![Polynomial::zero(nv); d]; d];
    for (i, ci) in cols.iter().enumerate() {
        for (j, cj) in cols.iter().enumerate() {
            for (k, aki) in ci {
                for (l, alj) in cj {
                    if !p[*k][*l].is_zero() {
                        out[i][j].add_scaled(&p[*k][*l], &(aki * alj));
                    }
                }
            }
        }
    }
    out
}

/// Average of `Aᵀ P A` over `A ∈ {1, I, J, K}`; the signs in `±A` cancel.
pub fn quaternion_average(n: usize, p: &Gram) -> Gram {
    let st = build_structure(n);
    let mut acc = p.clone();
    for a in Unit::ALL {
        let t = conjugate_gram(st.vectors(a), p);
        for (r, tr) in acc.iter_mut().zip(t) {
            for (c, tc) in r.iter_mut().zip(tr) {
                c.add_assign(&tc);
            }
        }
    }
    let quarter = Gq::from_ratio(1, 4);
    acc.into_iter()
        .map(|r| r.into_iter().map(|c| c.scale(&quarter)).collect())
        .collect()
}

/// A seeded symmetric perturbation with no constant part.
fn random_symmetric(spec: &FixtureSpec, rng: &mut ChaCha8Rng) -> Gram {
    let d = 4 * spec.n;
    let mut p = vec![vec![Polynomial::zero(d); d]; d];
    if spec.degree_bound == 0 {
        return p;
    }
    for _ in 0..2 * spec.n {
        let i = rng.gen_range(0..d);
        let j = rng.gen_range(0..d);
        let f = random_real_poly(rng, d, 1..=spec.degree_bound, 2, spec.coeff_bits);
        p[i][j].add_assign(&f);
        if i != j {
            p[j][i].add_assign(&f);
        }
    }
    p
}

/// `g_flat` plus the quaternion average of a seeded symmetric perturbation.
///
/// The perturbation vanishes at the origin, so the metric is the flat one there.
pub fn make_quaternionic_hermitian_metric(spec: &FixtureSpec) -> Result<HermitianMetricField> {
    spec.check_n()?;
    if spec.family != Family::AveragedRandomMetric {
        return Err(Error::Precondition(format!(
            "{:?} is not a metric family",
            spec.family
        )));
    }
    let mut rng = spec.rng();
    let avg = quaternion_average(spec.n, &random_symmetric(spec, &mut rng));
    let gram = flat_gram(spec.n)
        .into_iter()
        .zip(avg)
        .map(|(r, a)| r.into_iter().zip(a).map(|(x, y)| x.add(&y)).collect())
        .collect();
    HermitianMetricField::new(spec.n, gram)
}

/// `Λ_{ω_I}` from `slice` to the slice two degrees down, or `None` if that is empty.
fn lambda_i_on(
    n: usize,
    slice: &Arc<Slice>,
    bidegree: Option<(usize, usize)>,
    k: usize,
) -> Result<Option<Matrix>> {
    let lower = match bidegree {
        Some((p, q)) if p >= 1 && q >= 1 => Slice::bidegree(n, p - 1, q - 1),
        Some(_) => return Ok(None),
        None if k >= 2 => Slice::degree(n, Frame::Complex, k - 2),
        None => return Ok(None),
    };
    let w = standard_forms(n).omega_i.to_complex();
    let l = LinearMap::from_form_fn(lower, slice.clone(), |f| f.wedge(&w))?;
    Ok(Some(l.adjoint().matrix))
}

/// Basis of the constant forms in the slice satisfying the constraints.
fn constrained_basis(n: usize, family: &Family) -> Result<(Arc<Slice>, Vec<SparseVec>)> {
    let Family::RandomForm {
        degree,
        bidegree,
        primitive,
        weight,
    } = family
    else {
        return Err(Error::Precondition(format!(
            "{family:?} is not a form family"
        )));
    };
    let k = *degree;
    if k > 4 * n {
        return Err(Error::DegreeMismatch(format!("degree {k} exceeds 4n")));
    }
    let slice = match bidegree {
        Some((p, q)) => {
            if p + q != k || *p > 2 * n || *q > 2 * n {
                return Err(Error::DegreeMismatch(format!(
                    "bidegree ({p},{q}) invalid for degree {k}"
                )));
            }
            Slice::bidegree(n, *p, *q)
        }
        None => Slice::degree(n, Frame::Complex, k),
    };
    let dim = slice.len();
    let mut rows: Vec<SparseVec> = Vec::new();
    if let Some(w) = weight {
        let cas = casimir_matrix(slice.clone())?.matrix;
        let shifted = cas.sub(&Matrix::identity(dim).scale(&casimir_eigenvalue(*w)));
        rows.extend(shifted.rows);
    }
    if *primitive {
        if let Some(l) = lambda_i_on(n, &slice, *bidegree, k)? {
            rows.extend(l.rows);
        }
    }
    let basis = if rows.is_empty() {
        (0..dim).map(|i| vec![(i, Gq::one())]).collect()
    } else {
        Matrix {
            nrows: rows.len(),
            ncols: dim,
            rows,
        }
        .kernel()
    };
    if basis.is_empty() {
        return Err(Error::Degenerate(format!(
            "constraints of {family:?} leave an empty subspace"
        )));
    }
    Ok((slice, basis))
}

/// `Σ_i f_i · b_i` over a basis `b_i` of the constrained subspace, with seeded
/// Gaussian-rational polynomial coefficients `f_i` of degree `≤ degree_bound`.
///
/// The constraints are pointwise linear, so they hold for every such combination.
pub fn make_random_form(spec: &FixtureSpec) -> Result<Form> {
    spec.check_n()?;
    let (slice, basis) = constrained_basis(spec.n, &spec.family)?;
    let mut rng = spec.rng();
    let nv = 4 * spec.n;
    let mut out = Form::zero(spec.n, Frame::Complex);
    for b in &basis {
        let re = random_real_poly(&mut rng, nv, 0..=spec.degree_bound, 1, spec.coeff_bits);
        let im = random_real_poly(&mut rng, nv, 0..=spec.degree_bound, 1, spec.coeff_bits);
        let coeff = re.add(&im.scale(&Gq::i()));
        out = out.add(&slice.form_of(b).mul_poly(&coeff));
    }
    if out.is_zero() {
        return Err(Error::Inconsistent("random combination vanished".into()));
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Fixture {
    Potential {
        spec: FixtureSpec,
        potential: Polynomial,
    },
    Metric {
        spec: FixtureSpec,
        gram: Vec<Vec<Polynomial>>,
    },
    Form {
        spec: FixtureSpec,
        form: Form,
    },
}

/// Dispatch on the family.
pub fn make_fixture(spec: &FixtureSpec) -> Result<Fixture> {
    let spec_out = spec.clone();
    Ok(match spec.family {
        Family::FlatPotential | Family::PerturbedPotential => Fixture::Potential {
            potential: make_potential(spec)?,
            spec: spec_out,
        },
        Family::AveragedRandomMetric => Fixture::Metric {
            gram: make_quaternionic_hermitian_metric(spec)?.gram,
            spec: spec_out,
        },
        Family::RandomForm { .. } => Fixture::Form {
            form: make_random_form(spec)?,
            spec: spec_out,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypercomplex::standard::is_quaternionic_hermitian;
    use crate::su2::{casimir, project_plus};

    fn form_spec(
        n: usize,
        degree: usize,
        bidegree: Option<(usize, usize)>,
        primitive: bool,
        weight: Option<usize>,
        seed: Seed,
    ) -> FixtureSpec {
        FixtureSpec::new(
            n,
            Family::RandomForm {
                degree,
                bidegree,
                primitive,
                weight,
            },
            0,
            seed,
        )
    }

    #[test]
    fn flat_potential_n1() {
        let spec = FixtureSpec::new(1, Family::FlatPotential, 0, 0);
        let expected = (0..4).fold(Polynomial::zero(4), |acc, i| {
            acc.add(&Polynomial::var(4, i).pow(2))
        });
        assert_eq!(make_potential(&spec).unwrap(), expected);
    }

    #[test]
    fn perturbed_potential_is_real_and_replayable() {
        let spec = FixtureSpec::new(2, Family::PerturbedPotential, 4, 42);
        let a = make_potential(&spec).unwrap();
        let b = make_potential(&spec).unwrap();
        assert!(a.is_real());
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
        assert!(a.degree() <= 4);
        let other = make_potential(&FixtureSpec { seed: 43, ..spec }).unwrap();
        assert_ne!(a, other);
    }

    #[test]
    fn wrong_family_rejected() {
        let spec = FixtureSpec::new(1, Family::AveragedRandomMetric, 2, 0);
        assert!(make_potential(&spec).is_err());
        let spec = FixtureSpec::new(1, Family::FlatPotential, 2, 0);
        assert!(make_quaternionic_hermitian_metric(&spec).is_err());
        assert!(make_random_form(&spec).is_err());
    }

    #[test]
    fn zero_perturbation_is_flat() {
        let spec = FixtureSpec::new(2, Family::AveragedRandomMetric, 0, 5);
        assert_eq!(
            make_quaternionic_hermitian_metric(&spec).unwrap().gram,
            flat_gram(2)
        );
    }

    #[test]
    fn averaged_metrics_are_invariant() {
        for seed in 0..5 {
            let spec = FixtureSpec::new(2, Family::AveragedRandomMetric, 2, seed);
            let m = make_quaternionic_hermitian_metric(&spec).unwrap();
            assert!(is_quaternionic_hermitian(2, &m.gram));
            assert_ne!(m.gram, flat_gram(2));
        }
    }

    #[test]
    fn weight_constraint_is_top_weight() {
        let f = make_random_form(&form_spec(2, 2, None, false, Some(2), 1)).unwrap();
        assert!(project_plus(&f).unwrap().same_as(&f));
        let c = casimir_eigenvalue(2);
        assert!(casimir(&f).sub(&f.scale(&c)).is_zero());
    }

    #[test]
    fn primitive_constraint() {
        let spec = form_spec(2, 3, Some((2, 1)), true, None, 3);
        let f = make_random_form(&spec).unwrap();
        let slice = Slice::bidegree(2, 2, 1);
        let l = lambda_i_on(2, &slice, Some((2, 1)), 3).unwrap().unwrap();
        let v = slice.vector_of(&f).unwrap();
        assert!(l.mul_vec(&v).is_empty());
    }

    #[test]
    fn infeasible_constraints() {
        // Λ^{1,0} has weight 1 only
        assert!(make_random_form(&form_spec(1, 1, Some((1, 0)), false, Some(3), 0)).is_err());
        assert!(make_random_form(&form_spec(1, 3, Some((1, 1)), false, None, 0)).is_err());
    }

    #[test]
    fn spec_json_roundtrip() {
        let spec = form_spec(3, 3, Some((2, 1)), true, Some(1), 9);
        let s = serde_json::to_string(&spec).unwrap();
        assert_eq!(serde_json::from_str::<FixtureSpec>(&s).unwrap(), spec);
        let parsed: FixtureSpec = serde_json::from_str(
            r#"{"n":1,"family":{"kind":"flat-potential"},"degree_bound":0,"seed":1}"#,
        )
        .unwrap();
        assert_eq!(parsed.coeff_bits, 8);
    }
}
