//! Hodge–Riemann type pairings `(η, η')_P = η ∧ η̄' ∧ P / Vol` on the pieces `I^{p,q}_α`,
//! and the pairing against `Ξ_{2n−3}` on primitive weight-1 (2,1)-forms.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exterior::basis::wedge_sign;
use crate::exterior::{complex_top_ratio, Form, LinearMap, Slice};
use crate::hypercomplex::standard_forms;
use crate::scalars::linalg::{hermitian_inertia, Inertia, Matrix};
use crate::scalars::Gq;
use crate::su2::{casimir, project_plus};

use super::isotypic::IsotypicDecomposition;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    PositiveDefinite,
    NegativeDefinite,
    IdenticallyZero,
    /// Semidefinite with a nontrivial kernel but not zero.
    Degenerate,
    Indefinite,
}

impl Verdict {
    pub fn from_inertia(i: &Inertia) -> Verdict {
        match (i.positive, i.negative, i.zero) {
            (0, 0, _) => Verdict::IdenticallyZero,
            (_, 0, 0) => Verdict::PositiveDefinite,
            (0, _, 0) => Verdict::NegativeDefinite,
            (p, q, _) if p > 0 && q > 0 => Verdict::Indefinite,
            _ => Verdict::Degenerate,
        }
    }

    pub fn allowed(self) -> bool {
        matches!(
            self,
            Verdict::PositiveDefinite | Verdict::NegativeDefinite | Verdict::IdenticallyZero
        )
    }
}

/// `a ∧ b / Vol` for complementary-degree constant forms in the complex coframe.
pub fn top_pairing(a: &Form, b: &Form) -> Gq {
    let n = a.n();
    let full = (1u64 << (4 * n)) - 1;
    let (a, b) = (a.to_complex(), b.to_complex());
    let mut acc = Gq::zero();
    for (m, f) in a.terms() {
        let comp = full & !m;
        let g = b.coeff(comp);
        if g.is_zero() {
            continue;
        }
        let s = wedge_sign(*m, comp).unwrap();
        let t = &f.constant_term() * &g.constant_term();
        acc = if s < 0 { &acc - &t } else { &acc + &t };
    }
    &acc * &complex_top_ratio(n)
}

/// Gram matrix of `c · η_i ∧ η̄_j ∧ P / Vol` with `c = 1` for even degree and `√−1` for odd.
pub fn pairing_gram(basis: &[Form], p: &Form) -> Result<Vec<Vec<Gq>>> {
    let Some(first) = basis.first() else {
        return Ok(Vec::new());
    };
    let k = first.homogeneous_degree()?;
    let c = if k % 2 == 1 { Gq::i() } else { Gq::one() };
    let partners: Vec<Form> = basis.iter().map(|b| b.conj().wedge(p)).collect();
    Ok(basis
        .iter()
        .map(|a| partners.iter().map(|q| &c * &top_pairing(a, q)).collect())
        .collect())
}

/// Monomials `ω_I^a ω_J^b ω_K^c` with `a + b + c = d`, labelled.
pub fn omega_monomials(n: usize, d: usize) -> Vec<(String, Form)> {
    let s = standard_forms(n);
    let mut out = Vec::new();
    for a in 0..=d {
        for b in 0..=(d - a) {
            let c = d - a - b;
            let f = s
                .omega_i
                .wedge_pow(a)
                .wedge(&s.omega_j.wedge_pow(b))
                .wedge(&s.omega_k.wedge_pow(c));
            out.push((format!("wI^{a} wJ^{b} wK^{c}"), f.to_complex()));
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct SignatureEntry {
    pub p: usize,
    pub q: usize,
    pub alpha: String,
    pub dim: usize,
    pub polynomial: String,
    pub inertia: Inertia,
    pub verdict: Verdict,
}

pub fn hodge_riemann_signature(basis: &[Form], p_form: &Form, k: usize) -> Result<Verdict> {
    let n = p_form.n();
    if k > 2 * n {
        return Err(Error::DegreeMismatch(format!("k = {k} exceeds 2n")));
    }
    if !p_form.is_zero() && p_form.homogeneous_degree()? != 2 * (2 * n - k) {
        return Err(Error::DegreeMismatch("P must have degree 2(2n − k)".into()));
    }
    let g = pairing_gram(basis, p_form)?;
    Ok(Verdict::from_inertia(&hermitian_inertia(&g)?))
}

/// Every `(p, q, α)` with `p + q ≤ 2n` against every monomial `P` of the right degree.
pub fn hodge_riemann_scan(dec: &IsotypicDecomposition) -> Result<Vec<SignatureEntry>> {
    let slice = &dec.algebra.slice;
    let n = slice.n;
    let mut out = Vec::new();
    for c in &dec.components {
        for ((p, q), vecs) in &c.pieces {
            let k = p + q;
            if k > 2 * n {
                continue;
            }
            let basis: Vec<Form> = vecs.iter().map(|v| slice.form_of(v)).collect();
            for (label, poly) in omega_monomials(n, 2 * n - k) {
                let g = pairing_gram(&basis, &poly)?;
                let inertia = hermitian_inertia(&g)?;
                out.push(SignatureEntry {
                    p: *p,
                    q: *q,
                    alpha: c.label.clone(),
                    dim: basis.len(),
                    polynomial: label,
                    verdict: Verdict::from_inertia(&inertia),
                    inertia,
                });
            }
        }
    }
    Ok(out)
}

fn lambda_i(n: usize) -> Result<LinearMap> {
    let w = standard_forms(n).omega_i.to_complex();
    let l = LinearMap::from_form_fn(Slice::bidegree(n, 1, 0), Slice::bidegree(n, 2, 1), |f| {
        f.wedge(&w)
    })?;
    Ok(l.adjoint())
}

/// Basis of primitive (2,1)-forms of `SU(2)`-weight 1.
pub fn primitive_weight1_basis(n: usize) -> Result<Vec<Form>> {
    let slice = Slice::bidegree(n, 2, 1);
    let c = crate::su2::weights::casimir_eigenvalue(1);
    let cas = LinearMap::from_form_fn(slice.clone(), slice.clone(), casimir)?;
    let shifted = cas.matrix.sub(&Matrix::identity(slice.len()).scale(&c));
    let mut rows = shifted.rows;
    rows.extend(lambda_i(n)?.matrix.rows);
    let ker = Matrix {
        nrows: rows.len(),
        ncols: slice.len(),
        rows,
    }
    .kernel();
    Ok(ker.iter().map(|v| slice.form_of(v)).collect())
}

fn check_primitive_weight1(eta: &Form) -> Result<()> {
    let n = eta.n();
    if eta.is_zero() {
        return Ok(());
    }
    if eta.bidegrees() != vec![(2, 1)] || !eta.is_constant() {
        return Err(Error::DegreeMismatch(
            "sample must be a constant (2,1)-form".into(),
        ));
    }
    let lam = lambda_i(n)?.apply(&eta.to_complex())?;
    if !lam.is_zero() {
        return Err(Error::Precondition("sample is not primitive".into()));
    }
    let c = crate::su2::weights::casimir_eigenvalue(1);
    if !casimir(eta).sub(&eta.scale(&c)).is_zero() {
        return Err(Error::Precondition("sample is not of weight 1".into()));
    }
    Ok(())
}

/// `Ξ_{2n−3} = Π₊(ω_I^{2n−3})`.
pub fn xi_pairing_form(n: usize) -> Result<Form> {
    if n < 3 {
        return Err(Error::Precondition("the pairing needs n ≥ 3".into()));
    }
    project_plus(&standard_forms(n).omega_i.wedge_pow(2 * n - 3))
}

/// `√−1 · η ∧ η̄ ∧ Ξ_{2n−3} / Vol`.
pub fn primitive_weight1_pairing(eta: &Form, xi: &Form) -> Result<Gq> {
    check_primitive_weight1(eta)?;
    if eta.is_zero() {
        return Ok(Gq::zero());
    }
    Ok(&Gq::i() * &top_pairing(eta, &eta.conj().wedge(xi)))
}

#[derive(Clone, Debug, Serialize)]
pub struct PrimitivePairingReport {
    pub n: usize,
    pub dim: usize,
    pub inertia: Inertia,
    pub verdict: Verdict,
}

/// Signature of the pairing on the whole primitive weight-1 (2,1) subspace.
pub fn primitive_weight1_report(n: usize) -> Result<PrimitivePairingReport> {
    let xi = xi_pairing_form(n)?;
    let basis = primitive_weight1_basis(n)?;
    let g = pairing_gram(&basis, &xi)?;
    let inertia = hermitian_inertia(&g)?;
    Ok(PrimitivePairingReport {
        n,
        dim: basis.len(),
        verdict: Verdict::from_inertia(&inertia),
        inertia,
    })
}
