//! The map `V_{p,q}: Λ^{p+q,0} → Λ^{n+p,n+q}` defined by
//! `V(η) ∧ α = η ∧ R(α) ∧ Φ̄` for all `α ∈ Λ^{n−p,n−q}`, and the constant `λ(n)`.

use crate::error::{Error, Result};
use crate::exterior::basis::wedge_sign;
use crate::exterior::{form_ratio, Form, Frame, LinearMap, Slice};
use crate::hypercomplex::standard_volume;
use crate::scalars::linalg::{Matrix, SparseVec};
use crate::scalars::{Gq, Rational};

use super::weights::{r_form, r_inverse_form};

fn check_volume(phi: &Form) -> Result<Form> {
    let n = phi.n();
    let c = phi.to_complex();
    if c.is_zero() {
        return Err(Error::Degenerate("Φ vanishes".into()));
    }
    if c.bidegrees() != vec![(2 * n, 0)] || !c.is_constant() {
        return Err(Error::DegreeMismatch(
            "Φ must be a constant (2n,0)-form".into(),
        ));
    }
    Ok(c)
}

/// Matrix of `V_{p,q}` from `Λ^{p+q,0}` to `Λ^{n+p,n+q}`.
pub fn v_matrix(n: usize, p: usize, q: usize, phi: &Form) -> Result<LinearMap> {
    if p > n || q > n {
        return Err(Error::Precondition(format!(
            "V_{{{p},{q}}} needs p, q ≤ n = {n}"
        )));
    }
    let phi_bar = check_volume(phi)?.conj();
    let domain = Slice::bidegree(n, p + q, 0);
    let codomain = Slice::bidegree(n, n + p, n + q);
    let full = (1u64 << (4 * n)) - 1;
    let qq = n - q;
    // R(e_{m^c}) ∧ Φ̄ for every codomain monomial m
    let partners: Vec<(Gq, Form)> = codomain
        .masks()
        .iter()
        .map(|m| {
            let comp = full & !m;
            let s = wedge_sign(*m, comp).unwrap();
            let r = r_inverse_form(qq, &Form::basis(n, Frame::Complex, comp));
            (Gq::from_int(s as i64), r.wedge(&phi_bar))
        })
        .collect();
    let mut cols: Vec<SparseVec> = Vec::with_capacity(domain.len());
    for a in domain.masks() {
        let e = Form::basis(n, Frame::Complex, *a);
        let mut col: SparseVec = Vec::new();
        for (i, (s, partner)) in partners.iter().enumerate() {
            let t = e.wedge(partner).coeff(full);
            if !t.is_zero() {
                col.push((i, &t.constant_term() / s));
            }
        }
        cols.push(col);
    }
    Ok(LinearMap {
        matrix: Matrix::from_columns(codomain.len(), &cols),
        domain,
        codomain,
    })
}

/// Applies a constant-coefficient map to a form with polynomial coefficients.
pub fn apply_pointwise(map: &LinearMap, f: &Form) -> Result<Form> {
    let c = f.to_frame(map.domain.frame);
    let mut out = Form::zero(f.n(), map.codomain.frame);
    for (m, poly) in c.terms() {
        let i = map.domain.position(*m).ok_or_else(|| {
            Error::DegreeMismatch("form has components outside the domain".into())
        })?;
        let col = map.apply_vec(&vec![(i, Gq::one())]);
        for (j, a) in col {
            out.add_term(map.codomain.masks()[j], &poly.scale(&a));
        }
    }
    Ok(out)
}

/// `V_{p,q}(η)`; coefficients may be polynomials.
pub fn v_pq(p: usize, q: usize, eta: &Form, phi: &Form) -> Result<Form> {
    let map = v_matrix(eta.n(), p, q, phi)?;
    apply_pointwise(&map, eta)
}

/// `λ(n)` with `V_{0,0}(1) = λ·R_{n,n}(Φ_I)` for `Φ_I = Ω^n`.
pub fn lambda_constant(n: usize) -> Result<Rational> {
    let phi = standard_volume(n);
    let one = Form::constant(n, Gq::one());
    let v = v_pq(0, 0, &one, &phi)?;
    let r = r_form(n, n, &phi)?;
    let l = form_ratio(&v, &r)
        .ok_or_else(|| Error::Inconsistent("V_{0,0}(1) is not a multiple of R_{n,n}(Φ)".into()))?;
    if !l.is_real() {
        return Err(Error::Inconsistent(format!("λ = {l} is not real")));
    }
    Ok(l.re)
}
