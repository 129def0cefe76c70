//! Operators on potentials: the quaternionic Hessian `∂∂_Jφ`, the Monge–Ampère operator,
//! the fourth-order identity, the Banos–Swann formula and the `□` operator.

use crate::error::{Error, Result};
use crate::exterior::{form_ratio, Form};
use crate::hypercomplex::{forms_from_metric, metric_field_from_omega, standard_forms, Unit};
use crate::scalars::poly::monomials_of_degree;
use crate::scalars::rational::rat;
use crate::scalars::{Gq, Polynomial, Rational};

use super::ops::{del, del_j, delbar, delbar_j, twisted_d};

fn require_real(phi: &Polynomial) -> Result<()> {
    if !phi.is_real() {
        return Err(Error::Precondition("potential must be real".into()));
    }
    Ok(())
}

/// `Σ_a |q_a|²`.
pub fn flat_potential(n: usize) -> Polynomial {
    let mut p = Polynomial::zero(4 * n);
    for i in 0..4 * n {
        p.add_assign(&Polynomial::var(4 * n, i).pow(2));
    }
    p
}

/// `∂∂_Jφ`, a real (2,0)-form.
pub fn quaternionic_hessian(n: usize, phi: &Polynomial) -> Result<Form> {
    require_real(phi)?;
    Ok(del(&del_j(&Form::scalar(n, phi.clone()))?))
}

/// `(base + ∂∂_Jφ)^n`.
pub fn monge_ampere(n: usize, phi: &Polynomial, base: Option<&Form>) -> Result<Form> {
    let mut h = quaternionic_hessian(n, phi)?;
    if let Some(b) = base {
        h = h.add(b);
    }
    Ok(h.wedge_pow(n))
}

/// `∂̄ ∂̄_J ∂ ∂_J φ`.
pub fn fourth_order_lhs(n: usize, phi: &Polynomial) -> Result<Form> {
    let f = Form::scalar(n, phi.clone());
    let a = del(&del_j(&f)?);
    Ok(delbar(&delbar_j(&a)?))
}

/// `d d_I d_J d_K φ`.
pub fn fourth_order_rhs(n: usize, phi: &Polynomial) -> Form {
    let f = Form::scalar(n, phi.clone());
    twisted_d(Unit::I, &twisted_d(Unit::J, &twisted_d(Unit::K, &f))).d()
}

/// All monomials of degree 4 in `4n` variables.
pub fn fourth_order_family(n: usize) -> Vec<Polynomial> {
    let vars = 4 * n;
    monomials_of_degree(vars, 4)
        .into_iter()
        .map(|m| Polynomial::term(vars, m, Gq::one()))
        .collect()
}

/// The constant `c` with `∂̄∂̄_J∂∂_J = c · d d_I d_J d_K` on the given family, or an error if
/// the ratio is not uniform.
pub fn fourth_order_constant_on(n: usize, family: &[Polynomial]) -> Result<Gq> {
    let mut ratio: Option<Gq> = None;
    for phi in family {
        let lhs = fourth_order_lhs(n, phi)?;
        let rhs = fourth_order_rhs(n, phi);
        if rhs.is_zero() {
            if !lhs.is_zero() {
                return Err(Error::Inconsistent(format!(
                    "rhs vanishes but lhs does not for {phi}"
                )));
            }
            continue;
        }
        let r = form_ratio(&lhs, &rhs)
            .ok_or_else(|| Error::Inconsistent(format!("operators not proportional on {phi}")))?;
        match &ratio {
            None => ratio = Some(r),
            Some(prev) if *prev != r => {
                return Err(Error::Inconsistent(format!(
                    "ratio {r} on {phi} differs from {prev}"
                )));
            }
            _ => {}
        }
    }
    let r = ratio
        .ok_or_else(|| Error::Degenerate("both operators vanish on the whole family".into()))?;
    if r.is_zero() {
        return Err(Error::Inconsistent("constant is zero".into()));
    }
    Ok(r)
}

pub fn fourth_order_constant(n: usize) -> Result<Gq> {
    if n > 2 {
        return Err(Error::Precondition(
            "fourth-order constant computed for n ≤ 2".into(),
        ));
    }
    fourth_order_constant_on(n, &fourth_order_family(n))
}

/// `κ` in `ω_I(φ) = κ (d d_I φ + d_J d_K φ)`, fixed on the flat potential.
pub fn banos_swann_kappa(n: usize) -> Result<Gq> {
    let phi = flat_potential(n);
    let omega_i = potential_forms(n, &phi)?.omega_i;
    form_ratio(&omega_i, &banos_swann_rhs(n, &phi))
        .ok_or_else(|| Error::Inconsistent("flat potential".into()))
}

/// `d d_I φ + d_J d_K φ`.
pub fn banos_swann_rhs(n: usize, phi: &Polynomial) -> Form {
    let f = Form::scalar(n, phi.clone());
    twisted_d(Unit::I, &f)
        .d()
        .add(&twisted_d(Unit::J, &twisted_d(Unit::K, &f)))
}

/// Metric forms of the HKT structure with potential `φ`.
pub fn potential_forms(n: usize, phi: &Polynomial) -> Result<crate::hypercomplex::StandardForms> {
    let omega = quaternionic_hessian(n, phi)?;
    let g = metric_field_from_omega(&omega)?;
    Ok(forms_from_metric(n, &g))
}

/// `ω_I(φ) − κ(d d_I φ + d_J d_K φ)`.
pub fn banos_swann_check(n: usize, phi: &Polynomial, kappa: &Gq) -> Result<Form> {
    require_real(phi)?;
    let omega_i = potential_forms(n, phi)?.omega_i;
    Ok(omega_i.sub(&banos_swann_rhs(n, phi).scale(kappa)))
}

/// `(d d_I d_J d_K φ, ω_I² + ω_J² + ω_K²)` for the flat metric.
pub fn box_operator(n: usize, phi: &Polynomial) -> Polynomial {
    let s = standard_forms(n);
    let q = s
        .omega_i
        .wedge_pow(2)
        .add(&s.omega_j.wedge_pow(2))
        .add(&s.omega_k.wedge_pow(2));
    fourth_order_rhs(n, phi).pointwise_inner(&q)
}

/// `μ` with `□φ = μ Δ²φ`, fixed on `x₁⁴`.
pub fn box_mu(n: usize) -> Result<Gq> {
    let phi = Polynomial::var(4 * n, 0).pow(4);
    let b = box_operator(n, &phi);
    let l = phi.laplacian().laplacian();
    if !b.is_constant() || !l.is_constant() {
        return Err(Error::Inconsistent("box of x₁⁴ is not constant".into()));
    }
    Ok(&b.constant_term() / &l.constant_term())
}

/// The rational `c` with `∂∂_J(Σ|q|²) = c·Ω`.
pub fn hessian_constant(n: usize) -> Result<Rational> {
    let h = quaternionic_hessian(n, &flat_potential(n))?;
    let c = form_ratio(&h, &standard_forms(n).omega)
        .ok_or_else(|| Error::Inconsistent("flat Hessian".into()))?;
    Ok(c.re)
}

/// `φ_flat + ε·x₁⁴`.
pub fn quartic_perturbation(n: usize, eps: (i64, i64)) -> Polynomial {
    flat_potential(n).add(
        &Polynomial::var(4 * n, 0)
            .pow(4)
            .scale(&Gq::real(rat(eps.0, eps.1))),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypercomplex::{reality_check, standard_volume};

    fn x(n: usize, i: usize) -> Polynomial {
        Polynomial::var(4 * n, i)
    }

    #[test]
    fn flat_hessian_is_twice_omega() {
        for n in 1..=2 {
            assert_eq!(hessian_constant(n).unwrap(), rat(2, 1));
        }
        assert!(
            quaternionic_hessian(1, &Polynomial::constant(4, Gq::from_int(5)))
                .unwrap()
                .is_zero()
        );
    }

    #[test]
    fn hessian_is_real_and_closed() {
        let phi = quartic_perturbation(1, (1, 3)).add(&x(1, 1).pow(3).mul(&x(1, 2)));
        let h = quaternionic_hessian(1, &phi).unwrap();
        assert_eq!(h.bidegrees(), vec![(2, 0)]);
        reality_check(&h).unwrap();
        assert!(del(&h).is_zero());
        assert!(del_j(&h).unwrap().is_zero());
    }

    #[test]
    fn monge_ampere_powers() {
        let phi = flat_potential(2);
        let m = monge_ampere(2, &phi, None).unwrap();
        assert_eq!(form_ratio(&m, &standard_volume(2)), Some(Gq::from_int(4)));
        let s = standard_forms(2);
        let base = monge_ampere(2, &Polynomial::zero(8), Some(&s.omega)).unwrap();
        assert!(base.same_as(&standard_volume(2)));
    }

    #[test]
    fn fourth_order_quarter() {
        assert_eq!(fourth_order_constant(1).unwrap(), Gq::from_ratio(1, 4));
        let xyzw = x(1, 0).mul(&x(1, 1)).mul(&x(1, 2)).mul(&x(1, 3));
        assert!(fourth_order_rhs(1, &xyzw).is_zero());
        assert!(fourth_order_constant(3).is_err());
    }

    #[test]
    fn banos_swann_flat_and_perturbed() {
        let k = banos_swann_kappa(1).unwrap();
        assert_eq!(k, Gq::from_ratio(-1, 4));
        for phi in [flat_potential(1), quartic_perturbation(1, (2, 5))] {
            assert!(banos_swann_check(1, &phi, &k).unwrap().is_zero());
        }
    }

    #[test]
    fn box_is_six_bilaplacian() {
        assert_eq!(box_mu(1).unwrap(), Gq::from_int(6));
        let harmonic = x(1, 0).pow(2).sub(&x(1, 1).pow(2));
        assert!(box_operator(1, &harmonic).is_zero());
        assert!(box_operator(1, &flat_potential(1)).is_zero());
    }
}
