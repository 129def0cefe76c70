//! Quaternionic-Hermitian metric fields: torsion, HKT and strong-HKT tests, the pointwise
//! Hodge star and `Λ_ω`, and the pointwise identities behind the balanced condition.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exterior::basis::masks_of_degree;
use crate::exterior::{form_ratio, Form, Frame, LinearMap, Mask, Slice};
use crate::hypercomplex::standard::{flat_gram, is_quaternionic_hermitian};
use crate::hypercomplex::{
    act_multiplicative, forms_from_metric, standard_forms, Gram, StandardForms, Unit,
};
use crate::scalars::linalg::{bareiss_det, Echelon, SparseVec};
use crate::scalars::poly::Monomial;
use crate::scalars::rational::{exact_sqrt, factorial, int, rat};
use crate::scalars::{Gq, Polynomial, Rational};

use super::ops::twisted_d;
use super::potential::potential_forms;

#[derive(Clone, Debug)]
pub struct HermitianMetricField {
    pub n: usize,
    pub gram: Gram,
    pub forms: StandardForms,
}

impl HermitianMetricField {
    pub fn new(n: usize, gram: Gram) -> Result<Self> {
        let d = 4 * n;
        if gram.len() != d || gram.iter().any(|r| r.len() != d) {
            return Err(Error::Dimension {
                expected: d,
                found: gram.len(),
            });
        }
        if !is_quaternionic_hermitian(n, &gram) {
            return Err(Error::Precondition(
                "metric is not symmetric and I, J, K-invariant".into(),
            ));
        }
        let forms = forms_from_metric(n, &gram);
        Ok(Self { n, gram, forms })
    }

    pub fn flat(n: usize) -> Self {
        Self {
            n,
            gram: flat_gram(n),
            forms: standard_forms(n),
        }
    }

    /// The metric with Kähler-type potential `φ`, i.e. `Ω = ∂∂_Jφ`.
    pub fn from_potential(n: usize, phi: &Polynomial) -> Result<Self> {
        let forms = potential_forms(n, phi)?;
        let gram = crate::hypercomplex::metric_field_from_omega(&forms.omega)?;
        Self::new(n, gram)
    }

    /// `(1 + f)·g_flat`; for non-constant `f` this is not HKT.
    pub fn conformal(n: usize, f: &Polynomial) -> Result<Self> {
        let factor = Polynomial::one(4 * n).add(f);
        let gram = flat_gram(n)
            .into_iter()
            .map(|r| r.into_iter().map(|c| c.mul(&factor)).collect())
            .collect();
        Self::new(n, gram)
    }

    pub fn at(&self, point: &[Rational]) -> Result<PointMetric> {
        let g: Vec<Vec<Rational>> = self
            .gram
            .iter()
            .map(|r| r.iter().map(|c| c.eval(point).re).collect())
            .collect();
        PointMetric::new(self.n, g)
    }
}

/// Exact dimension of the `Q(i)`-span of polynomial-coefficient forms.
pub fn polynomial_span_dim(forms: &[Form]) -> usize {
    let mut index: HashMap<(Mask, Monomial), usize> = HashMap::new();
    let vecs: Vec<SparseVec> = forms
        .iter()
        .map(|f| {
            let mut v: SparseVec = Vec::new();
            for (m, p) in f.to_real().terms() {
                for (mono, c) in p.terms() {
                    let next = index.len();
                    let i = *index.entry((*m, mono.clone())).or_insert(next);
                    v.push((i, c.clone()));
                }
            }
            v.sort_by_key(|(i, _)| *i);
            v
        })
        .collect();
    let mut ech = Echelon::new(index.len());
    vecs.into_iter().filter(|v| ech.insert(v.clone())).count()
}

#[derive(Clone, Debug, Serialize)]
pub struct TorsionReport {
    /// `T = −I dω_I`.
    pub torsion: Form,
    pub torsion_zero: bool,
    pub hkt: bool,
    /// `d d^c ω_I = 0` with `d^c = −I d I`.
    pub strong_kt: bool,
    pub dt_zero: bool,
    /// Dimension of the span of `dω_I, I dω_I, J dω_I, K dω_I`.
    pub h_dim: usize,
}

pub fn torsion_and_hkt_checks(m: &HermitianMetricField) -> Result<TorsionReport> {
    if !is_quaternionic_hermitian(m.n, &m.gram) {
        return Err(Error::Precondition(
            "metric is not quaternionic Hermitian".into(),
        ));
    }
    let d_of = |a: Unit| m.forms.omega_of(a).d();
    let dw = d_of(Unit::I);
    let twisted: Vec<Form> = Unit::ALL
        .iter()
        .map(|a| act_multiplicative(*a, &d_of(*a)).to_real())
        .collect();
    let hkt = twisted[1].same_as(&twisted[0]) && twisted[2].same_as(&twisted[0]);
    let torsion = twisted[0].neg();
    let strong_kt = twisted_d(Unit::I, &m.forms.omega_i).d().is_zero();
    let dt_zero = torsion.d().is_zero();
    if strong_kt != dt_zero {
        return Err(Error::Inconsistent(
            "d d^c ω_I = 0 and dT = 0 disagree".into(),
        ));
    }
    let mut h = vec![dw.clone()];
    h.extend(Unit::ALL.iter().map(|a| act_multiplicative(*a, &dw)));
    Ok(TorsionReport {
        torsion_zero: torsion.is_zero(),
        torsion,
        hkt,
        strong_kt,
        dt_zero,
        h_dim: polynomial_span_dim(&h),
    })
}

/// Rational metric on `V` at one point, with the induced star and contraction `Λ_ω`.
#[derive(Clone, Debug)]
pub struct PointMetric {
    pub n: usize,
    pub g: Vec<Vec<Rational>>,
    pub g_inv: Vec<Vec<Rational>>,
    /// `√det g`.
    pub sqrt_det: Rational,
}

fn invert(a: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let d = a.len();
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..d).map(|j| if i == j { int(1) } else { int(0) }));
            row
        })
        .collect();
    for c in 0..d {
        let p = (c..d).find(|&r| m[r][c] != int(0))?;
        m.swap(c, p);
        let inv = int(1) / m[c][c].clone();
        for x in m[c].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..d {
            if r != c && m[r][c] != int(0) {
                let f = m[r][c].clone();
                let pivot = m[c].clone();
                for (x, y) in m[r].iter_mut().zip(pivot) {
                    *x = &*x - &(&f * &y);
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[d..].to_vec()).collect())
}

impl PointMetric {
    pub fn new(n: usize, g: Vec<Vec<Rational>>) -> Result<Self> {
        let dense: Vec<Vec<Gq>> = g
            .iter()
            .map(|r| r.iter().map(|c| Gq::real(c.clone())).collect())
            .collect();
        let det = bareiss_det(&dense).re;
        if det <= int(0) {
            return Err(Error::Degenerate(
                "metric is not positive definite at the point".into(),
            ));
        }
        let sqrt_det = exact_sqrt(&det).ok_or_else(|| {
            Error::Precondition(format!("det g = {det} is not a rational square"))
        })?;
        let g_inv = invert(&g).ok_or_else(|| Error::Degenerate("singular metric".into()))?;
        Ok(Self {
            n,
            g,
            g_inv,
            sqrt_det,
        })
    }

    fn minor(&self, s: Mask, t: Mask) -> Rational {
        let rows: Vec<usize> = (0..64).filter(|i| s >> i & 1 == 1).collect();
        let cols: Vec<usize> = (0..64).filter(|i| t >> i & 1 == 1).collect();
        let sub: Vec<Vec<Gq>> = rows
            .iter()
            .map(|&r| {
                cols.iter()
                    .map(|&c| Gq::real(self.g_inv[r][c].clone()))
                    .collect()
            })
            .collect();
        bareiss_det(&sub).re
    }

    fn check(&self, f: &Form) -> Result<Form> {
        if f.n() != self.n {
            return Err(Error::Dimension {
                expected: self.n,
                found: f.n(),
            });
        }
        if !f.is_constant() {
            return Err(Error::Precondition(
                "pointwise operators need constant forms".into(),
            ));
        }
        Ok(f.to_real())
    }

    /// Hodge star of `g`: `α ∧ ⋆β = g(α, β) vol_g` (complex-bilinear).
    pub fn star(&self, f: &Form) -> Result<Form> {
        let r = self.check(f)?;
        let nv = 4 * self.n;
        let mut raised = Form::zero(self.n, Frame::Real);
        for k in r.degrees() {
            let part = r.component(k);
            for s in masks_of_degree(nv, k) {
                let mut acc = Gq::zero();
                for (t, c) in part.terms() {
                    let m = self.minor(s, *t);
                    if m != int(0) {
                        acc = &acc + &c.constant_term().scale_rational(&m);
                    }
                }
                if !acc.is_zero() {
                    raised.add_term(s, &Polynomial::constant(nv, acc));
                }
            }
        }
        Ok(raised.euclidean_star().scale_rational(&self.sqrt_det))
    }

    /// `g(α, β)` (bilinear).
    pub fn inner(&self, a: &Form, b: &Form) -> Result<Gq> {
        let top = self.check(a)?.wedge(&self.star(b)?);
        let full = (1u64 << (4 * self.n)) - 1;
        Ok(top
            .coeff(full)
            .constant_term()
            .scale_rational(&(int(1) / self.sqrt_det.clone())))
    }

    /// `Λ_ω η = (−1)^k ⋆(ω ∧ ⋆η)` for `η` of degree `k`, the `g`-adjoint of `ω ∧ ·`.
    pub fn lambda(&self, omega: &Form, eta: &Form) -> Result<Form> {
        let eta = self.check(eta)?;
        if eta.is_zero() {
            return Ok(eta);
        }
        let k = eta.homogeneous_degree()?;
        let out = self.star(&self.check(omega)?.wedge(&self.star(&eta)?))?;
        Ok(if k % 2 == 1 { out.neg() } else { out })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BalancedReport {
    /// `Λ_{ω_I} dω_I` at the point.
    pub lambda_side: Form,
    /// `⋆ d(ω_I^{2n−1}) / (2n−1)` at the point.
    pub star_side: Form,
    /// `c` with `star_side = c · I(lambda_side)`, `I` acting on 1-forms.
    pub constant: Option<Gq>,
    pub residual: Form,
}

/// `c(n) = −(2n−2)!` relating the two sides of the primitivity identity.
pub fn balanced_constant(n: usize) -> Gq {
    Gq::real(-factorial(2 * n as u32 - 2))
}

/// Both sides of `Λ_{ω_I} dω_I ~ ⋆d(ω_I^{2n−1})/(2n−1)` at a point, compared through
/// `⋆d(ω_I^{2n−1})/(2n−1) = c(n) · I Λ_{ω_I} dω_I`.
pub fn balanced_identity_check(
    m: &HermitianMetricField,
    point: &[Rational],
) -> Result<BalancedReport> {
    let pm = m.at(point)?;
    let w = &m.forms.omega_i;
    let lambda_side = pm.lambda(&w.eval(point), &w.d().eval(point))?;
    let top = w.wedge_pow(2 * m.n - 1).d().eval(point);
    let star_side = pm
        .star(&top)?
        .scale_rational(&(int(1) / int(2 * m.n as i64 - 1)));
    let rotated = act_multiplicative(Unit::I, &lambda_side).to_real();
    let c = balanced_constant(m.n);
    let residual = star_side.sub(&rotated.scale(&c));
    let constant = if rotated.is_zero() {
        None
    } else {
        form_ratio(&star_side, &rotated)
    };
    Ok(BalancedReport {
        lambda_side,
        star_side,
        constant,
        residual,
    })
}

/// `(dω_I)^{2,1} ∧ (dω_I)^{1,2}` and `dω_I ∧ d_I ω_I`.
pub fn torsion_square_sides(m: &HermitianMetricField) -> (Form, Form) {
    let dw = m.forms.omega_i.d();
    let c = dw.to_complex();
    let lhs = c
        .bidegree_component(2, 1)
        .wedge(&c.bidegree_component(1, 2));
    let rhs = dw.wedge(&twisted_d(Unit::I, &m.forms.omega_i));
    (lhs, rhs)
}

/// `(dω_I)^{2,1} ∧ (dω_I)^{1,2} − c · dω_I ∧ d_I ω_I`.
pub fn torsion_square_residual(m: &HermitianMetricField, c: &Gq) -> Form {
    let (lhs, rhs) = torsion_square_sides(m);
    lhs.sub(&rhs.scale(c))
}

/// The constant `√−1/2` for which the pointwise identity holds.
pub fn torsion_square_constant() -> Gq {
    Gq::new(int(0), rat(1, 2))
}

/// `η ↦ η ∧ Ω̄^{n−1}` from `Λ^{0,1}` to `Λ^{0,2n−1}`.
pub fn lefschetz_omega_iso(n: usize) -> Result<LinearMap> {
    let omega_bar = standard_forms(n).omega.conj().wedge_pow(n - 1);
    LinearMap::from_form_fn(
        Slice::bidegree(n, 0, 1),
        Slice::bidegree(n, 0, 2 * n - 1),
        |f| f.wedge(&omega_bar),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::differential::potential::flat_potential;

    fn x(n: usize, i: usize) -> Polynomial {
        Polynomial::var(4 * n, i)
    }

    fn two_block_potential() -> Polynomial {
        flat_potential(2).add(&x(2, 0).pow(3)).add(&x(2, 4).pow(3))
    }

    fn point(n: usize) -> Vec<Rational> {
        let mut p = vec![int(0); 4 * n];
        p[0] = rat(1, 3);
        p[1] = rat(1, 5);
        p
    }

    #[test]
    fn flat_metric_is_torsion_free() {
        let r = torsion_and_hkt_checks(&HermitianMetricField::flat(1)).unwrap();
        assert!(r.hkt && r.strong_kt && r.torsion_zero);
        assert_eq!(r.h_dim, 0);
    }

    #[test]
    fn potential_metrics_are_hkt_conformal_ones_are_not() {
        let m = HermitianMetricField::from_potential(2, &two_block_potential()).unwrap();
        let r = torsion_and_hkt_checks(&m).unwrap();
        assert!(r.hkt && !r.torsion_zero);
        assert!(r.h_dim <= 4);
        let c = HermitianMetricField::conformal(2, &x(2, 0).pow(2)).unwrap();
        assert!(!torsion_and_hkt_checks(&c).unwrap().hkt);
    }

    #[test]
    fn non_invariant_gram_rejected() {
        let mut g = flat_gram(1);
        g[0][0] = Polynomial::constant(4, Gq::from_int(2));
        assert!(HermitianMetricField::new(1, g).is_err());
    }

    #[test]
    fn star_is_an_isometry_up_to_sign() {
        let m = HermitianMetricField::conformal(1, &x(1, 0)).unwrap();
        let pm = m.at(&[rat(3, 1), int(0), int(0), int(0)]).unwrap();
        assert_eq!(pm.sqrt_det, int(16));
        let a = Form::basis(1, Frame::Real, 0b0011);
        let b = pm.star(&pm.star(&a).unwrap()).unwrap();
        assert!(b.same_as(&a));
        assert_eq!(pm.inner(&a, &a).unwrap(), Gq::from_ratio(1, 16));
    }

    #[test]
    fn lambda_is_adjoint_of_lefschetz() {
        let m = HermitianMetricField::from_potential(1, &flat_potential(1).add(&x(1, 0).pow(4)))
            .unwrap();
        let pt = point(1);
        let pm = m.at(&pt).unwrap();
        let w = m.forms.omega_i.eval(&pt);
        let a = Form::basis(1, Frame::Real, 0b0101);
        let b = Form::basis(1, Frame::Real, 0b1110).add(&Form::basis(1, Frame::Real, 0b0111));
        let lhs = pm.inner(&w.wedge(&a), &b).unwrap();
        let rhs = pm.inner(&a, &pm.lambda(&w, &b).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn balanced_identity_with_rotation() {
        for n in 1..=2 {
            let phi = flat_potential(n).add(&x(n, 0).pow(3).mul(&x(n, 1)));
            let m = HermitianMetricField::from_potential(n, &phi).unwrap();
            let r = balanced_identity_check(&m, &point(n)).unwrap();
            assert!(r.residual.is_zero());
            assert_eq!(r.constant, Some(balanced_constant(n)));
            let flat = balanced_identity_check(&HermitianMetricField::flat(n), &point(n)).unwrap();
            assert!(flat.lambda_side.is_zero() && flat.star_side.is_zero());
        }
    }

    #[test]
    fn torsion_square_constant_is_half_i() {
        let m = HermitianMetricField::from_potential(2, &two_block_potential()).unwrap();
        let (lhs, rhs) = torsion_square_sides(&m);
        assert!(!lhs.is_zero());
        assert_eq!(form_ratio(&lhs, &rhs), Some(torsion_square_constant()));
        assert!(!torsion_square_residual(&m, &Gq::i()).is_zero());
    }

    #[test]
    fn omega_bar_power_is_iso() {
        for n in 1..=3 {
            let l = lefschetz_omega_iso(n).unwrap();
            assert_eq!(l.rank(), 2 * n);
            assert!(l.kernel().is_empty());
        }
    }
}
