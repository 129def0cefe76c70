//! Weight decomposition of `Λ^k`, the projection `Π₊` onto maximal weight, and the
//! isomorphisms `R_{p,q}: Λ^{p+q,0} → Λ^{p,q}₊`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exterior::{Form, Frame, LinearMap, Slice};
use crate::hypercomplex::bidegree_split;
use crate::scalars::linalg::{Echelon, Matrix, SparseVec};
use crate::scalars::rational::{factorial, int};
use crate::scalars::Gq;

use super::ops::{apply_pow, casimir, casimir_matrix, op_matrix, Su2Op};

/// Basis of a subspace of one graded slice, with its labels.
#[derive(Clone, Debug)]
pub struct Subspace {
    pub basis: Vec<Form>,
    pub bidegree: Option<(usize, usize)>,
    pub weight: Option<usize>,
    pub label: Option<String>,
}

impl Subspace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct WeightEntry {
    pub weight: usize,
    pub dim: usize,
    /// `"p,q" -> dim` of the weight component inside `Λ^{p,q}`.
    pub bidegrees: BTreeMap<String, usize>,
    #[serde(skip)]
    pub parts: Vec<Subspace>,
}

#[derive(Clone, Debug, Serialize)]
pub struct WeightDecomposition {
    pub n: usize,
    pub k: usize,
    pub entries: Vec<WeightEntry>,
}

impl WeightDecomposition {
    pub fn total_dim(&self) -> usize {
        self.entries.iter().map(|e| e.dim).sum()
    }

    pub fn dim_of_weight(&self, w: usize) -> usize {
        self.entries
            .iter()
            .find(|e| e.weight == w)
            .map_or(0, |e| e.dim)
    }
}

/// `−w(w+2)`, the Casimir eigenvalue on weight `w`.
pub fn casimir_eigenvalue(w: usize) -> Gq {
    Gq::from_int(-((w * (w + 2)) as i64))
}

fn weights_for(n: usize, k: usize) -> Vec<usize> {
    (0..=max_weight(n, k))
        .filter(|w| (k - w).is_multiple_of(2))
        .collect()
}

/// Decomposes `Λ^k ⊗ C` by Casimir eigenspaces, one bidegree slice at a time.
pub fn weight_decompose(n: usize, k: usize) -> Result<WeightDecomposition> {
    if k > 4 * n {
        return Err(Error::Precondition(format!("degree {k} exceeds {}", 4 * n)));
    }
    let mut entries: Vec<WeightEntry> = weights_for(n, k)
        .into_iter()
        .map(|w| WeightEntry {
            weight: w,
            dim: 0,
            bidegrees: BTreeMap::new(),
            parts: Vec::new(),
        })
        .collect();
    for p in 0..=k {
        let q = k - p;
        if p > 2 * n || q > 2 * n {
            continue;
        }
        let slice = Slice::bidegree(n, p, q);
        let c = casimir_matrix(slice.clone())?;
        for e in entries.iter_mut() {
            let w = e.weight;
            // h = p − q must be a weight of the irreducible of weight w
            if w < p.abs_diff(q) {
                continue;
            }
            let shifted = c
                .matrix
                .sub(&Matrix::identity(slice.len()).scale(&casimir_eigenvalue(w)));
            let ker = shifted.kernel();
            if ker.is_empty() {
                continue;
            }
            e.dim += ker.len();
            e.bidegrees.insert(format!("{p},{q}"), ker.len());
            e.parts.push(Subspace {
                basis: ker.iter().map(|v| slice.form_of(v)).collect(),
                bidegree: Some((p, q)),
                weight: Some(w),
                label: None,
            });
        }
    }
    entries.retain(|e| e.dim > 0);
    Ok(WeightDecomposition { n, k, entries })
}

fn check_r_range(n: usize, p: usize, q: usize) -> Result<()> {
    if p + q > 2 * n {
        return Err(Error::Precondition(format!(
            "p+q = {} exceeds 2n = {}",
            p + q,
            2 * n
        )));
    }
    Ok(())
}

/// `R_{p,q}(η) = p!/(p+q)! · Y^q η` for `η ∈ Λ^{p+q,0}`.
pub fn r_form(p: usize, q: usize, eta: &Form) -> Result<Form> {
    check_r_range(eta.n(), p, q)?;
    let c = &factorial(p as u32) / &factorial((p + q) as u32);
    Ok(apply_pow(Su2Op::Lower, &eta.to_complex(), q).scale_rational(&c))
}

/// `R_{p,q}⁻¹ ∘ Π₊ = X^q / q!` on `Λ^{p,q}`.
pub fn r_inverse_form(q: usize, beta: &Form) -> Form {
    let c = int(1) / factorial(q as u32);
    apply_pow(Su2Op::Raise, &beta.to_complex(), q).scale_rational(&c)
}

/// `R_{p,q}` and `R_{p,q}⁻¹ ∘ Π₊` as matrices.
pub fn r_iso(n: usize, p: usize, q: usize) -> Result<(LinearMap, LinearMap)> {
    check_r_range(n, p, q)?;
    let top = Slice::bidegree(n, p + q, 0);
    let target = Slice::bidegree(n, p, q);
    let fwd = LinearMap::from_form_fn(top.clone(), target.clone(), |f| r_form(p, q, f).unwrap())?;
    let back = LinearMap::from_form_fn(target, top, |f| r_inverse_form(q, f))?;
    Ok((fwd, back))
}

/// Largest weight occurring in `Λ^k`.
pub fn max_weight(n: usize, k: usize) -> usize {
    k.min(4 * n - k)
}

/// Orthogonal projection onto the maximal-weight part `w = min(k, 4n−k)`; on `Λ^{p,q}` it is
/// `(w−j)!/(j! w!)·Y^j X^j` with `j = (w − p + q)/2` (so `p!/(k! q!)·Y^q X^q` when `k ≤ 2n`).
pub fn project_plus(f: &Form) -> Result<Form> {
    if f.is_zero() {
        return Ok(f.clone());
    }
    let k = f.homogeneous_degree()?;
    let w = max_weight(f.n(), k);
    let mut out = Form::zero(f.n(), Frame::Complex);
    for (p, q, part) in bidegree_split(f) {
        let j = (w + q - p) / 2;
        let c = &factorial((w - j) as u32) / &(&factorial(j as u32) * &factorial(w as u32));
        let raised = apply_pow(Su2Op::Raise, &part, j);
        out = out.add(&apply_pow(Su2Op::Lower, &raised, j).scale_rational(&c));
    }
    Ok(out)
}

/// `Π₊` as the Casimir polynomial `Π_{w<w_max} (C + w(w+2)) / (w(w+2) − w_max(w_max+2))`.
pub fn project_plus_casimir(f: &Form) -> Result<Form> {
    if f.is_zero() {
        return Ok(f.clone());
    }
    let k = f.homogeneous_degree()?;
    let n = f.n();
    let top = max_weight(n, k);
    let mut acc = f.clone();
    for w in weights_for(n, k) {
        if w == top {
            continue;
        }
        let shift = -casimir_eigenvalue(w);
        let denom = &shift + &casimir_eigenvalue(top);
        acc = casimir(&acc)
            .add(&acc.scale(&shift))
            .scale(&denom.inv().unwrap());
    }
    Ok(acc)
}

/// `dim Λ^{p,q}₊`, as the rank of `Y^q` on `Λ^{p+q,0}`.
pub fn plus_dimension(n: usize, p: usize, q: usize) -> Result<usize> {
    if p + q > 2 * n {
        return Ok(0);
    }
    let (fwd, _) = r_iso(n, p, q)?;
    Ok(fwd.rank())
}

/// Basis of `Λ^{p,q}₊ = R_{p,q}(Λ^{p+q,0})`.
pub fn plus_basis(n: usize, p: usize, q: usize) -> Result<Vec<Form>> {
    let top = Slice::bidegree(n, p + q, 0);
    (0..top.len())
        .map(|i| r_form(p, q, &top.form_of(&vec![(i, Gq::one())])))
        .collect()
}

/// Rank of a family of constant forms.
pub fn span_rank(forms: &[Form]) -> Result<usize> {
    Ok(span_basis(forms)?.len())
}

/// Indices of a maximal independent subfamily.
pub fn span_basis(forms: &[Form]) -> Result<Vec<usize>> {
    if forms.is_empty() {
        return Ok(Vec::new());
    }
    let n = forms[0].n();
    let slice = Slice::all(n, Frame::Complex);
    let mut ech = Echelon::new(slice.len());
    let mut keep = Vec::new();
    for (i, f) in forms.iter().enumerate() {
        let v: SparseVec = slice.vector_of(f)?;
        if ech.insert(v) {
            keep.push(i);
        }
    }
    Ok(keep)
}

/// Raising operator matrix on a bidegree slice (used for highest-weight searches).
pub fn raise_matrix(n: usize, p: usize, q: usize) -> Result<LinearMap> {
    op_matrix(
        Su2Op::Raise,
        Slice::bidegree(n, p, q),
        Slice::bidegree(n, p + 1, q.saturating_sub(1)),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypercomplex::standard_forms;
    use crate::scalars::rational::binomial;

    #[test]
    fn n1_degree2_split() {
        let d = weight_decompose(1, 2).unwrap();
        // self-dual / anti-self-dual: weight 2 (dim 3) and weight 0 (dim 3)
        assert_eq!(d.dim_of_weight(2), 3);
        assert_eq!(d.dim_of_weight(0), 3);
        assert_eq!(d.total_dim(), 6);
    }

    #[test]
    fn dimensions_sum_and_plus_dims() {
        for n in 1..=2 {
            for k in 0..=4 * n {
                let d = weight_decompose(n, k).unwrap();
                assert_eq!(d.total_dim(), binomial(4 * n, k));
                for p in 0..=k {
                    let q = k - p;
                    let top = d.entries.iter().find(|e| e.weight == k);
                    let from_casimir = top
                        .and_then(|e| e.bidegrees.get(&format!("{p},{q}")).copied())
                        .unwrap_or(0);
                    assert_eq!(from_casimir, plus_dimension(n, p, q).unwrap());
                    if k <= 2 * n {
                        assert_eq!(from_casimir, binomial(2 * n, k));
                    }
                }
            }
        }
    }

    #[test]
    fn projections_agree_and_are_idempotent() {
        let s = standard_forms(2);
        let probes = [
            s.omega_i.wedge(&s.omega_j),
            s.omega_i.wedge(&s.omega_i),
            s.omega.clone(),
            Form::basis(2, Frame::Real, 0b0110_0101),
        ];
        for f in &probes {
            let a = project_plus(f).unwrap();
            let b = project_plus_casimir(f).unwrap();
            assert!(a.same_as(&b), "{f:?}");
            assert!(project_plus(&a).unwrap().same_as(&a));
        }
        // above the middle degree the maximal weight is 4n − k
        for f in [
            s.omega_i.wedge_pow(3),
            s.omega_i.wedge_pow(2).wedge(&s.omega_j),
        ] {
            assert!(project_plus(&f)
                .unwrap()
                .same_as(&project_plus_casimir(&f).unwrap()));
        }
        assert!(project_plus(&s.omega).unwrap().same_as(&s.omega));
    }

    #[test]
    fn q_image_is_weight_deficient() {
        let s = standard_forms(2);
        let q = s
            .omega_i
            .wedge_pow(2)
            .add(&s.omega_j.wedge_pow(2))
            .add(&s.omega_k.wedge_pow(2));
        assert!(project_plus(&q).unwrap().is_zero());
    }

    #[test]
    fn r_matches_omega_correspondence() {
        for n in 1..=2 {
            let s = standard_forms(n);
            assert!(r_form(1, 1, &s.omega).unwrap().same_as(&s.omega_i));
            let (fwd, back) = r_iso(n, 1, 1).unwrap();
            assert_eq!(
                back.compose(&fwd).unwrap().matrix,
                Matrix::identity(fwd.domain.len())
            );
        }
    }
}
