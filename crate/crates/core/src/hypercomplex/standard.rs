//! Standard forms `ω_I, ω_J, ω_K, Ω`, reality and positivity of `(2p,0)`-forms, and
//! the metric recovered from a positive `(2,0)`-form.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exterior::{tables, Form, Frame};
use crate::scalars::linalg::{hermitian_inertia, Inertia, Matrix};
use crate::scalars::{Gq, Polynomial, Rational};

use super::structure::{act_multiplicative, build_structure, Unit};

/// A Gram field: symmetric matrix of polynomials on `V`.
pub type Gram = Vec<Vec<Polynomial>>;

#[derive(Clone, Debug)]
pub struct StandardForms {
    pub omega_i: Form,
    pub omega_j: Form,
    pub omega_k: Form,
    /// `Ω = −ω_J + √−1·ω_K`, of type (2,0).
    pub omega: Form,
}

impl StandardForms {
    pub fn omega_of(&self, a: Unit) -> &Form {
        match a {
            Unit::I => &self.omega_i,
            Unit::J => &self.omega_j,
            Unit::K => &self.omega_k,
        }
    }
}

pub fn flat_gram(n: usize) -> Gram {
    let d = 4 * n;
    (0..d)
        .map(|i| {
            (0..d)
                .map(|j| {
                    if i == j {
                        Polynomial::one(d)
                    } else {
                        Polynomial::zero(d)
                    }
                })
                .collect()
        })
        .collect()
}

/// `ω_A(u, v) = g(u, A v)` for a Gram field `g`.
pub fn fundamental_form(n: usize, g: &Gram, a: Unit) -> Form {
    let st = build_structure(n);
    let am = st.vectors(a);
    let d = 4 * n;
    let mut out = Form::zero(n, Frame::Real);
    for u in 0..d {
        for v in (u + 1)..d {
            // (g A)_{uv}
            let mut c = Polynomial::zero(d);
            for (w, s) in am.column(v) {
                c.add_scaled(&g[u][w], &s);
            }
            out.add_term((1 << u) | (1 << v), &c);
        }
    }
    out
}

pub fn forms_from_metric(n: usize, g: &Gram) -> StandardForms {
    let omega_i = fundamental_form(n, g, Unit::I);
    let omega_j = fundamental_form(n, g, Unit::J);
    let omega_k = fundamental_form(n, g, Unit::K);
    let omega = omega_j.neg().add(&omega_k.scale(&Gq::i())).to_complex();
    StandardForms {
        omega_i,
        omega_j,
        omega_k,
        omega,
    }
}

pub fn standard_forms(n: usize) -> StandardForms {
    forms_from_metric(n, &flat_gram(n))
}

/// `Φ_I = Ω^n`.
pub fn standard_volume(n: usize) -> Form {
    standard_forms(n).omega.wedge_pow(n)
}

/// Complex vector in the real basis `∂x₁, ∂y₁, …`.
pub type CVector = Vec<Gq>;

/// The frame `∂₁ … ∂_{2n}` of `T^{1,0}`, dual to `θ₁ … θ_{2n}`.
pub fn holomorphic_vectors(n: usize) -> Vec<CVector> {
    let t = tables(n, Frame::Complex);
    (0..2 * n)
        .map(|a| {
            let mut v = vec![Gq::zero(); 4 * n];
            for (j, c) in &t.deriv[a] {
                v[*j] = c.clone();
            }
            v
        })
        .collect()
}

pub fn apply_vector(m: &Matrix, v: &CVector) -> CVector {
    m.rows
        .iter()
        .map(|row| {
            row.iter()
                .fold(Gq::zero(), |acc, (j, c)| &acc + &(c * &v[*j]))
        })
        .collect()
}

fn conj_vector(v: &CVector) -> CVector {
    v.iter().map(Gq::conj).collect()
}

/// `η(u, v)` for a 2-form with polynomial coefficients.
pub fn eval_two_form(eta: &Form, u: &CVector, v: &CVector) -> Polynomial {
    let r = eta.to_real();
    let mut acc = Polynomial::zero(r.nvars());
    for (m, f) in r.terms() {
        if m.count_ones() != 2 {
            continue;
        }
        let i = m.trailing_zeros() as usize;
        let j = 63 - m.leading_zeros() as usize;
        let c = &(&u[i] * &v[j]) - &(&u[j] * &v[i]);
        acc.add_scaled(f, &c);
    }
    acc
}

fn require_two_zero(eta: &Form) -> Result<()> {
    if eta.is_zero() {
        return Ok(());
    }
    let b = eta.bidegrees();
    if b != vec![(2, 0)] {
        return Err(Error::DegreeMismatch(format!(
            "expected a (2,0)-form, found bidegrees {b:?}"
        )));
    }
    Ok(())
}

/// `J(η̄) = η`. Only meaningful in even total degree.
pub fn reality_check(eta: &Form) -> Result<bool> {
    for k in eta.degrees() {
        if k % 2 == 1 {
            return Err(Error::Precondition(
                "J is a real structure only in even degree".into(),
            ));
        }
    }
    for (p, q, _) in super::structure::bidegree_split(eta) {
        if q != 0 || p % 2 == 1 {
            return Err(Error::DegreeMismatch(format!(
                "expected bidegree (2p,0), found ({p},{q})"
            )));
        }
    }
    Ok(act_multiplicative(Unit::J, &eta.conj()).same_as(eta))
}

/// `h_ab = η(∂_a, J ∂̄_b)` on `T^{1,0}`.
pub fn positivity_matrix(eta: &Form) -> Result<Vec<Vec<Polynomial>>> {
    require_two_zero(eta)?;
    let n = eta.n();
    let st = build_structure(n);
    let j = st.vectors(Unit::J);
    let basis = holomorphic_vectors(n);
    let jbar: Vec<CVector> = basis
        .iter()
        .map(|v| apply_vector(j, &conj_vector(v)))
        .collect();
    Ok(basis
        .iter()
        .map(|x| jbar.iter().map(|y| eval_two_form(eta, x, y)).collect())
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Positivity {
    StrictlyPositive,
    Positive,
    Indefinite { negative_definite: bool },
}

pub fn classify_inertia(inertia: &Inertia) -> Positivity {
    if inertia.negative == 0 {
        if inertia.zero == 0 {
            Positivity::StrictlyPositive
        } else {
            Positivity::Positive
        }
    } else {
        Positivity::Indefinite {
            negative_definite: inertia.positive == 0 && inertia.zero == 0,
        }
    }
}

fn constant_matrix(m: &[Vec<Polynomial>]) -> Result<Vec<Vec<Gq>>> {
    m.iter()
        .map(|row| {
            row.iter()
                .map(|p| {
                    if p.is_constant() {
                        Ok(p.constant_term())
                    } else {
                        Err(Error::Precondition("expected constant coefficients".into()))
                    }
                })
                .collect()
        })
        .collect()
}

/// Classifies a real constant (2,0)-form by the signature of `η(x, J x̄)`.
pub fn positivity_check(eta: &Form) -> Result<Positivity> {
    if !reality_check(eta)? {
        return Err(Error::Precondition(
            "positivity needs a real (2,0)-form".into(),
        ));
    }
    let h = constant_matrix(&positivity_matrix(eta)?)?;
    Ok(classify_inertia(&hermitian_inertia(&h)?))
}

/// Gram field with `2 g(x, ȳ) = η(x, J ȳ)` on `T^{1,0}`, extended as an `I`-invariant real metric.
pub fn metric_field_from_omega(eta: &Form) -> Result<Gram> {
    let h = positivity_matrix(eta)?;
    let n = eta.n();
    let d = 4 * n;
    let t = tables(n, Frame::Complex);
    // θ_a(e_j)
    let theta = |a: usize, j: usize| -> Gq {
        t.to_real[a]
            .iter()
            .find(|(k, _)| *k == j)
            .map(|(_, c)| c.clone())
            .unwrap_or_default()
    };
    let mut g = vec![vec![Polynomial::zero(d); d]; d];
    for i in 0..d {
        for j in 0..d {
            let mut acc = Polynomial::zero(d);
            for a in 0..2 * n {
                let ta = theta(a, i);
                if ta.is_zero() {
                    continue;
                }
                for b in 0..2 * n {
                    let tb = theta(b, j).conj();
                    if tb.is_zero() {
                        continue;
                    }
                    acc.add_scaled(&h[a][b], &(&ta * &tb));
                }
            }
            g[i][j] = acc.real_part();
        }
    }
    Ok(g)
}

/// `metric_from_omega` for a constant strictly positive real (2,0)-form.
pub fn metric_from_omega(eta: &Form) -> Result<Vec<Vec<Rational>>> {
    match positivity_check(eta)? {
        Positivity::StrictlyPositive => {}
        other => {
            return Err(Error::Precondition(format!(
                "form is not strictly positive: {other:?}"
            )))
        }
    }
    let g = metric_field_from_omega(eta)?;
    Ok(constant_matrix(&g)?
        .into_iter()
        .map(|r| r.into_iter().map(|c| c.re).collect())
        .collect())
}

/// Exact check that `g(Ax, Ay) = g(x, y)` for `A = I, J, K`.
pub fn is_quaternionic_hermitian(n: usize, g: &Gram) -> bool {
    let st = build_structure(n);
    let d = 4 * n;
    for i in 0..d {
        for j in 0..d {
            if g[i][j] != g[j][i] {
                return false;
            }
        }
    }
    for a in Unit::ALL {
        let m = st.vectors(a);
        for i in 0..d {
            for j in 0..d {
                // (Aᵀ g A)_{ij}
                let mut acc = Polynomial::zero(d);
                for (u, su) in m.column(i) {
                    for (v, sv) in m.column(j) {
                        acc.add_scaled(&g[u][v], &(&su * &sv));
                    }
                }
                if acc != g[i][j] {
                    return false;
                }
            }
        }
    }
    true
}
