//! The flat hypercomplex structure of `H^n` and its actions on forms.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;

use crate::exterior::{tables, Form, Frame};
use crate::scalars::linalg::{sv_axpy, Matrix, SparseVec};
use crate::scalars::Gq;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Unit {
    I,
    J,
    K,
}

impl Unit {
    pub const ALL: [Unit; 3] = [Unit::I, Unit::J, Unit::K];

    pub fn name(self) -> &'static str {
        match self {
            Unit::I => "I",
            Unit::J => "J",
            Unit::K => "K",
        }
    }
}

/// `I, J, K` on `V = R^{4n}` (left multiplication by `i, j, k`) and on `Λ¹`.
#[derive(Clone, Debug)]
pub struct StructureTriple {
    pub n: usize,
    pub on_vectors: [Matrix; 3],
    /// Coefficient matrices of the induced action `α ↦ α∘A⁻¹` on covectors
    /// in the basis `dx₁, dy₁, …`.
    pub on_covectors: [Matrix; 3],
}

impl StructureTriple {
    pub fn vectors(&self, a: Unit) -> &Matrix {
        &self.on_vectors[a as usize]
    }

    pub fn covectors(&self, a: Unit) -> &Matrix {
        &self.on_covectors[a as usize]
    }
}

/// Left multiplication tables on the basis `1, i, j, k`: image of each basis element.
fn left_table(a: Unit) -> [(usize, i64); 4] {
    match a {
        // i·1 = i, i·i = -1, i·j = k, i·k = -j
        Unit::I => [(1, 1), (0, -1), (3, 1), (2, -1)],
        // j·1 = j, j·i = -k, j·j = -1, j·k = i
        Unit::J => [(2, 1), (3, -1), (0, -1), (1, 1)],
        // k·1 = k, k·i = j, k·j = -i, k·k = -1
        Unit::K => [(3, 1), (2, 1), (1, -1), (0, -1)],
    }
}

fn vector_matrix(n: usize, a: Unit) -> Matrix {
    let t = left_table(a);
    let mut m = Matrix::zeros(4 * n, 4 * n);
    for b in 0..n {
        for (src, (dst, s)) in t.iter().enumerate() {
            m.rows[4 * b + dst].push((4 * b + src, Gq::from_int(*s)));
        }
    }
    for r in &mut m.rows {
        r.sort_by_key(|e| e.0);
    }
    m
}

pub fn build_structure(n: usize) -> StructureTriple {
    let on_vectors = Unit::ALL.map(|a| vector_matrix(n, a));
    // A is orthogonal, so (A⁻¹)ᵀ = A
    let on_covectors = on_vectors.clone();
    StructureTriple {
        n,
        on_vectors,
        on_covectors,
    }
}

type ImageKey = (usize, Frame, Unit);
static IMAGES: OnceLock<Mutex<HashMap<ImageKey, Arc<Vec<SparseVec>>>>> = OnceLock::new();

/// Images of the coframe generators of `frame` under `A` acting on `Λ¹`.
pub fn generator_images(n: usize, frame: Frame, a: Unit) -> Arc<Vec<SparseVec>> {
    let map = IMAGES.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = map.lock().unwrap().get(&(n, frame, a)) {
        return v.clone();
    }
    let st = build_structure(n);
    let cov = st.covectors(a);
    let t = tables(n, frame);
    let real_images: Vec<SparseVec> = cov.columns();
    let mut images = Vec::with_capacity(4 * n);
    for h in 0..4 * n {
        // generator h = Σ_j c_j dx_j; image = Σ_j c_j A(dx_j), re-expressed in the frame
        let mut in_real: SparseVec = Vec::new();
        for (j, c) in &t.to_real[h] {
            in_real = sv_axpy(&in_real, c, &real_images[*j]);
        }
        let mut in_frame: SparseVec = Vec::new();
        for (j, c) in &in_real {
            in_frame = sv_axpy(&in_frame, c, &t.from_real[*j]);
        }
        images.push(in_frame);
    }
    let images = Arc::new(images);
    map.lock()
        .unwrap()
        .entry((n, frame, a))
        .or_insert(images)
        .clone()
}

/// Multiplicative (algebra automorphism) extension of `A` to all forms.
pub fn act_multiplicative(a: Unit, f: &Form) -> Form {
    f.multiplicative(&generator_images(f.n(), f.frame(), a))
}

/// `A⁻¹` on forms; `A² = (−1)^k` on `k`-forms, so `A⁻¹ = (−1)^k A`.
pub fn act_inverse(a: Unit, f: &Form) -> Form {
    let g = act_multiplicative(a, f);
    g.filter(|m| m.count_ones() % 2 == 0)
        .sub(&g.filter(|m| m.count_ones() % 2 == 1))
}

/// Derivation extension of `A` to all forms.
pub fn act_derivation(a: Unit, f: &Form) -> Form {
    f.derivation(&generator_images(f.n(), f.frame(), a))
}

/// Hodge components `(p, q, a^{p,q})` with respect to `I`, in increasing `p`.
pub fn bidegree_split(f: &Form) -> Vec<(usize, usize, Form)> {
    let c = f.to_complex();
    let t = c.tables();
    let mut parts: std::collections::BTreeMap<(usize, usize), Form> = Default::default();
    for (m, coeff) in c.terms() {
        parts
            .entry(t.bidegree(*m))
            .or_insert_with(|| Form::zero(f.n(), Frame::Complex))
            .add_term(*m, coeff);
    }
    parts.into_iter().map(|((p, q), g)| (p, q, g)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quaternion_relations_on_vectors() {
        for n in 1..=3 {
            let s = build_structure(n);
            let (i, j, k) = (s.vectors(Unit::I), s.vectors(Unit::J), s.vectors(Unit::K));
            let minus = Matrix::identity(4 * n).scale(&-Gq::one());
            assert_eq!(i.mul(i), minus);
            assert_eq!(j.mul(j), minus);
            assert_eq!(k.mul(k), minus);
            assert_eq!(i.mul(j).mul(k), minus);
            assert_eq!(i.transpose().mul(i), Matrix::identity(4 * n));
        }
    }

    #[test]
    fn i_on_first_block() {
        let s = build_structure(1);
        let i = s.vectors(Unit::I);
        // columns are images: ∂x -> ∂y, ∂y -> -∂x, ∂z -> ∂w, ∂w -> -∂z
        assert_eq!(i.column(0), vec![(1, Gq::one())]);
        assert_eq!(i.column(1), vec![(0, -Gq::one())]);
        assert_eq!(i.column(2), vec![(3, Gq::one())]);
        assert_eq!(i.column(3), vec![(2, -Gq::one())]);
    }

    #[test]
    fn holomorphic_coframe_is_i_eigenspace() {
        for n in 1..=2 {
            for h in 0..4 * n {
                let th = Form::basis(n, Frame::Complex, 1 << h);
                let expect = if h < 2 * n { Gq::i() } else { -Gq::i() };
                assert!(act_multiplicative(Unit::I, &th).same_as(&th.scale(&expect)));
            }
        }
    }

    #[test]
    fn j_swaps_types_in_complex_frame() {
        let imgs = generator_images(1, Frame::Complex, Unit::J);
        // J θ1 = θ̄2, J θ2 = -θ̄1
        assert_eq!(imgs[0], vec![(3, Gq::one())]);
        assert_eq!(imgs[1], vec![(2, -Gq::one())]);
    }
}
