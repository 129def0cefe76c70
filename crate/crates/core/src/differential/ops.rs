//! `d`, the twisted differentials `d_A = A d A⁻¹`, and the Hodge components
//! `∂, ∂̄, ∂_J = J∂̄J⁻¹, ∂̄_J = J∂J⁻¹` with respect to `I`.
//!
//! `A` acts multiplicatively. On even-degree forms `A⁻¹ = A`, so `∂_J` and
//! `∂̄_J` agree with `J∂̄J` and `J∂J` there, and `d_A = −(−A d A)`. The plain
//! `−A d A` commutes with `d` instead of anticommuting on odd degrees.

use crate::error::{Error, Result};
use crate::exterior::Form;
use crate::hypercomplex::{act_inverse, act_multiplicative, Unit};

pub fn exterior_d(f: &Form) -> Form {
    f.d()
}

/// `d_A := A ∘ d ∘ A⁻¹`.
pub fn twisted_d(a: Unit, f: &Form) -> Form {
    act_multiplicative(a, &act_inverse(a, f).d())
}

/// `−A ∘ d ∘ A`, kept for comparison with `twisted_d`.
pub fn twisted_d_plain(a: Unit, f: &Form) -> Form {
    act_multiplicative(a, &act_multiplicative(a, f).d()).neg()
}

/// `(∂f, ∂̄f)`.
pub fn hodge_components(f: &Form) -> (Form, Form) {
    let c = f.to_complex();
    let h = 2 * f.n();
    (c.d_along(|g| g < h), c.d_along(|g| g >= h))
}

pub fn del(f: &Form) -> Form {
    hodge_components(f).0
}

pub fn delbar(f: &Form) -> Form {
    hodge_components(f).1
}

fn require_pure(f: &Form) -> Result<()> {
    if f.bidegrees().len() > 1 {
        return Err(Error::DegreeMismatch(
            "∂_J needs a form of pure bidegree".into(),
        ));
    }
    Ok(())
}

/// `∂_J := J ∘ ∂̄ ∘ J⁻¹`, mapping `Λ^{p,q} → Λ^{p+1,q}`.
pub fn del_j(f: &Form) -> Result<Form> {
    require_pure(f)?;
    Ok(act_multiplicative(
        Unit::J,
        &delbar(&act_inverse(Unit::J, f)),
    ))
}

/// `∂̄_J := J ∘ ∂ ∘ J⁻¹`, mapping `Λ^{p,q} → Λ^{p,q+1}`.
pub fn delbar_j(f: &Form) -> Result<Form> {
    require_pure(f)?;
    Ok(act_multiplicative(Unit::J, &del(&act_inverse(Unit::J, f))))
}

/// `∂_J` through the Hodge decomposition of `d_J`: `∂_J η = (d_J η)^{p+1,q}`.
pub fn del_j_via_twisted(f: &Form) -> Result<Form> {
    require_pure(f)?;
    if f.is_zero() {
        return Ok(f.to_complex());
    }
    let (p, q) = f.bidegrees()[0];
    Ok(twisted_d(Unit::J, f).bidegree_component(p + 1, q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::Frame;
    use crate::scalars::Polynomial;

    fn x(i: usize) -> Polynomial {
        Polynomial::var(8, i)
    }

    #[test]
    fn d_of_x_dy() {
        let f = Form::monomial(1, Frame::Real, 0b10, Polynomial::var(4, 0));
        assert!(exterior_d(&f).same_as(&Form::basis(1, Frame::Real, 0b11)));
    }

    #[test]
    fn components_sum_to_d() {
        let phi = Form::scalar(2, x(0).pow(2).mul(&x(5)).add(&x(3).mul(&x(6))));
        let (a, b) = hodge_components(&phi);
        assert!(a.add(&b).same_as(&phi.d()));
        assert_eq!(a.bidegrees(), vec![(1, 0)]);
    }

    #[test]
    fn twisted_squares_vanish() {
        let f = Form::monomial(2, Frame::Real, 0b1001, x(0).pow(3).mul(&x(7)));
        for a in [Unit::I, Unit::J, Unit::K] {
            assert!(twisted_d(a, &twisted_d(a, &f)).is_zero());
        }
    }

    #[test]
    fn del_j_routes_agree() {
        let phi = Form::scalar(1, Polynomial::var(4, 0).pow(2).mul(&Polynomial::var(4, 3)));
        let a = del_j(&phi).unwrap();
        assert!(a.same_as(&del_j_via_twisted(&phi).unwrap()));
        assert_eq!(a.bidegrees(), vec![(1, 0)]);
        let b = del_j(&del(&phi)).unwrap();
        assert!(b.is_zero() || b.bidegrees() == vec![(2, 0)]);
    }

    #[test]
    fn twisted_anticommutes_where_plain_commutes() {
        let f = Form::scalar(1, Polynomial::var(4, 0).pow(2));
        let anti = |a: &Form, b: &Form| a.add(b).is_zero();
        assert!(anti(
            &twisted_d(Unit::I, &f.d()),
            &twisted_d(Unit::I, &f).d()
        ));
        assert!(twisted_d_plain(Unit::I, &f.d()).same_as(&twisted_d_plain(Unit::I, &f).d()));
        let g = del(&f);
        let h = del(&del_j(&f).unwrap());
        assert!(anti(&del_j(&g).unwrap(), &h));
    }
}
