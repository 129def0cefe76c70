//! Linear operators between spans of coframe monomials.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalars::linalg::{Matrix, SparseVec};
use crate::scalars::rational::int;
use crate::scalars::Gq;

use super::basis::{masks_of_degree, Mask};
use super::form::{Form, MaskVec};
use super::frame::{tables, Frame};

/// An ordered set of monomials of one coframe, used as a basis.
#[derive(Clone, Debug)]
pub struct Slice {
    pub n: usize,
    pub frame: Frame,
    masks: Vec<Mask>,
    index: HashMap<Mask, usize>,
}

impl PartialEq for Slice {
    fn eq(&self, o: &Slice) -> bool {
        self.n == o.n && self.frame == o.frame && self.masks == o.masks
    }
}

impl Slice {
    pub fn from_masks(n: usize, frame: Frame, masks: Vec<Mask>) -> Arc<Slice> {
        let index = masks.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        Arc::new(Slice {
            n,
            frame,
            masks,
            index,
        })
    }

    pub fn degree(n: usize, frame: Frame, k: usize) -> Arc<Slice> {
        Slice::from_masks(n, frame, masks_of_degree(4 * n, k))
    }

    /// Whole exterior algebra, ordered by degree.
    pub fn all(n: usize, frame: Frame) -> Arc<Slice> {
        let masks = (0..=4 * n)
            .flat_map(|k| masks_of_degree(4 * n, k))
            .collect();
        Slice::from_masks(n, frame, masks)
    }

    /// `Λ^{p,q}` in the complex coframe.
    pub fn bidegree(n: usize, p: usize, q: usize) -> Arc<Slice> {
        let t = tables(n, Frame::Complex);
        let masks = masks_of_degree(4 * n, p + q)
            .into_iter()
            .filter(|m| t.bidegree(*m) == (p, q))
            .collect();
        Slice::from_masks(n, Frame::Complex, masks)
    }

    pub fn len(&self) -> usize {
        self.masks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masks.is_empty()
    }

    pub fn masks(&self) -> &[Mask] {
        &self.masks
    }

    pub fn position(&self, m: Mask) -> Option<usize> {
        self.index.get(&m).copied()
    }

    /// Squared norm of basis monomial `i` in the flat metric.
    pub fn weight(&self, i: usize) -> Gq {
        match self.frame {
            Frame::Real => Gq::one(),
            Frame::Complex => Gq::real(int(1i64 << self.masks[i].count_ones())),
        }
    }

    pub fn vector_of(&self, f: &Form) -> Result<SparseVec> {
        let v = f.to_frame(self.frame).to_mask_vec()?;
        self.vector_of_masks(&v)
    }

    pub fn vector_of_masks(&self, v: &MaskVec) -> Result<SparseVec> {
        let mut out: SparseVec = Vec::with_capacity(v.len());
        for (m, c) in v {
            let i = self.position(*m).ok_or_else(|| {
                Error::DegreeMismatch("form has components outside the slice".into())
            })?;
            out.push((i, c.clone()));
        }
        out.sort_by_key(|e| e.0);
        Ok(out)
    }

    pub fn form_of(&self, v: &SparseVec) -> Form {
        let mv: MaskVec = v.iter().map(|(i, c)| (self.masks[*i], c.clone())).collect();
        Form::from_mask_vec(self.n, self.frame, &mv)
    }

    /// Flat Hermitian product of two coordinate vectors.
    pub fn inner(&self, a: &SparseVec, b: &SparseVec) -> Gq {
        let mut acc = Gq::zero();
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    acc += &(&(&a[i].1 * &b[j].1.conj()) * &self.weight(a[i].0));
                    i += 1;
                    j += 1;
                }
            }
        }
        acc
    }
}

#[derive(Clone, Debug)]
pub struct LinearMap {
    pub domain: Arc<Slice>,
    pub codomain: Arc<Slice>,
    pub matrix: Matrix,
}

impl LinearMap {
    /// Matrix of a map given on monomials of the domain's coframe.
    pub fn from_monomial_fn(
        domain: Arc<Slice>,
        codomain: Arc<Slice>,
        f: impl Fn(Mask) -> Vec<(Mask, Gq)> + Sync,
    ) -> Result<LinearMap> {
        if domain.frame != codomain.frame || domain.n != codomain.n {
            return Err(Error::Precondition(
                "domain and codomain must share a coframe".into(),
            ));
        }
        use rayon::prelude::*;
        let cols: Vec<Result<SparseVec>> = domain
            .masks()
            .par_iter()
            .map(|m| {
                let img: MaskVec = f(*m).into_iter().collect();
                codomain.vector_of_masks(&img)
            })
            .collect();
        let cols = cols.into_iter().collect::<Result<Vec<_>>>()?;
        Ok(LinearMap {
            matrix: Matrix::from_columns(codomain.len(), &cols),
            domain,
            codomain,
        })
    }

    /// Matrix of an arbitrary form-level map, with images converted to the codomain frame.
    pub fn from_form_fn(
        domain: Arc<Slice>,
        codomain: Arc<Slice>,
        f: impl Fn(&Form) -> Form + Sync,
    ) -> Result<LinearMap> {
        use rayon::prelude::*;
        let cols: Vec<Result<SparseVec>> = (0..domain.len())
            .into_par_iter()
            .map(|i| {
                let e = domain.form_of(&vec![(i, Gq::one())]);
                codomain.vector_of(&f(&e))
            })
            .collect();
        let cols = cols.into_iter().collect::<Result<Vec<_>>>()?;
        Ok(LinearMap {
            matrix: Matrix::from_columns(codomain.len(), &cols),
            domain,
            codomain,
        })
    }

    pub fn apply_vec(&self, v: &SparseVec) -> SparseVec {
        self.matrix.mul_vec(v)
    }

    pub fn apply(&self, f: &Form) -> Result<Form> {
        Ok(self
            .codomain
            .form_of(&self.apply_vec(&self.domain.vector_of(f)?)))
    }

    pub fn compose(&self, inner: &LinearMap) -> Result<LinearMap> {
        if *inner.codomain != *self.domain {
            return Err(Error::Precondition(
                "composition of mismatched slices".into(),
            ));
        }
        Ok(LinearMap {
            domain: inner.domain.clone(),
            codomain: self.codomain.clone(),
            matrix: self.matrix.mul(&inner.matrix),
        })
    }

    /// Adjoint for the flat Hermitian products on both slices.
    pub fn adjoint(&self) -> LinearMap {
        let h = self.matrix.conj_transpose();
        // (M*)_{ij} = conj(M_{ji}) w_cod(j) / w_dom(i)
        let mut rows = Vec::with_capacity(h.nrows);
        for (i, row) in h.rows.iter().enumerate() {
            let wi = self.domain.weight(i).inv().unwrap();
            rows.push(
                row.iter()
                    .map(|(j, c)| (*j, &(c * &self.codomain.weight(*j)) * &wi))
                    .collect::<SparseVec>(),
            );
        }
        LinearMap {
            domain: self.codomain.clone(),
            codomain: self.domain.clone(),
            matrix: Matrix {
                nrows: h.nrows,
                ncols: h.ncols,
                rows,
            },
        }
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn kernel(&self) -> Vec<SparseVec> {
        self.matrix.kernel()
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.domain.len()
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::form::derivation_image;

    #[test]
    fn bidegree_slices_partition_degree() {
        let n = 2;
        for k in 0..=8 {
            let total: usize = (0..=k).map(|p| Slice::bidegree(n, p, k - p).len()).sum();
            assert_eq!(total, Slice::degree(n, Frame::Complex, k).len());
        }
        assert_eq!(Slice::bidegree(3, 3, 3).len(), 400);
    }

    #[test]
    fn adjoint_satisfies_defining_identity() {
        let n = 1;
        // derivation sending θ1 -> θ̄2 + i θ2, others -> 0
        let mut images: Vec<SparseVec> = vec![Vec::new(); 4];
        images[0] = vec![(1, Gq::i()), (3, Gq::one())];
        let dom = Slice::degree(n, Frame::Complex, 2);
        let m = LinearMap::from_monomial_fn(dom.clone(), dom.clone(), |mk| {
            derivation_image(mk, &images)
        })
        .unwrap();
        let a = m.adjoint();
        for i in 0..dom.len() {
            for j in 0..dom.len() {
                let x = vec![(i, Gq::one())];
                let y = vec![(j, Gq::from_int(2))];
                assert_eq!(
                    dom.inner(&m.apply_vec(&x), &y),
                    dom.inner(&x, &a.apply_vec(&y))
                );
            }
        }
    }

    #[test]
    fn complex_weights_match_real_norms() {
        let s = Slice::degree(1, Frame::Complex, 2);
        for i in 0..s.len() {
            let f = s.form_of(&vec![(i, Gq::one())]);
            assert_eq!(f.inner(&f).unwrap(), s.weight(i));
        }
    }
}
