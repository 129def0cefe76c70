//! Coframes of `Λ¹(V*) ⊗ C` for `V = R^{4n}`.
//!
//! The real coframe is `(dx₁, dy₁, dz₁, dw₁, …)`, the canonical storage basis. The
//! complex coframe lists `θ₁ … θ_{2n}` followed by their conjugates, where per
//! quaternionic block `b`
//!
//! ```text
//! θ_{2b} = dx_b − i·dy_b,   θ_{2b+1} = dz_b − i·dw_b.
//! ```
//!
//! These span the `+i` eigenspace of the induced action of `I` on covectors, so a
//! monomial with `p` unbarred and `q` barred factors has Hodge bidegree `(p, q)`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;

use crate::scalars::linalg::SparseVec;
use crate::scalars::rational::rat;
use crate::scalars::Gq;

use super::basis::Mask;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Frame {
    Real,
    Complex,
}

#[derive(Debug)]
pub struct FrameTables {
    pub n: usize,
    pub frame: Frame,
    /// Per frame generator: its expansion in the real coframe.
    pub to_real: Vec<SparseVec>,
    /// Per real generator: its expansion in this frame.
    pub from_real: Vec<SparseVec>,
    /// Per frame generator `h`: the dual vector field as `Σ_j c_j ∂/∂x_j`.
    pub deriv: Vec<Vec<(usize, Gq)>>,
}

impl FrameTables {
    fn build(n: usize, frame: Frame) -> Self {
        let dim = 4 * n;
        let (to_real, from_real) = match frame {
            Frame::Real => {
                let id: Vec<SparseVec> = (0..dim).map(|g| vec![(g, Gq::one())]).collect();
                (id.clone(), id)
            }
            Frame::Complex => {
                let mut to_real = vec![Vec::new(); dim];
                let mut from_real = vec![Vec::new(); dim];
                let half = Gq::real(rat(1, 2));
                let ihalf = Gq::new(rat(0, 1), rat(1, 2));
                for b in 0..n {
                    for (slot, re) in [(0usize, 4 * b), (1, 4 * b + 2)] {
                        let im = re + 1;
                        let hol = 2 * b + slot;
                        let anti = 2 * n + hol;
                        to_real[hol] = vec![(re, Gq::one()), (im, -Gq::i())];
                        to_real[anti] = vec![(re, Gq::one()), (im, Gq::i())];
                        from_real[re] = vec![(hol, half.clone()), (anti, half.clone())];
                        from_real[im] = vec![(hol, ihalf.clone()), (anti, -ihalf.clone())];
                    }
                }
                (to_real, from_real)
            }
        };
        let mut deriv: Vec<Vec<(usize, Gq)>> = vec![Vec::new(); dim];
        for (j, col) in from_real.iter().enumerate() {
            for (h, c) in col {
                deriv[*h].push((j, c.clone()));
            }
        }
        FrameTables {
            n,
            frame,
            to_real,
            from_real,
            deriv,
        }
    }

    pub fn dim(&self) -> usize {
        4 * self.n
    }

    /// `(p, q)` of a complex-frame monomial. Meaningless for the real frame.
    pub fn bidegree(&self, mask: Mask) -> (usize, usize) {
        let h = 2 * self.n;
        let hol = mask & ((1u64 << h) - 1);
        (
            (hol.count_ones()) as usize,
            (mask >> h).count_ones() as usize,
        )
    }

    /// Complex-frame mask from holomorphic and antiholomorphic index masks.
    pub fn complex_mask(&self, hol: Mask, anti: Mask) -> Mask {
        hol | (anti << (2 * self.n))
    }

    /// Generator swap realizing complex conjugation of the coframe.
    pub fn conjugate_generator(&self, g: usize) -> usize {
        match self.frame {
            Frame::Real => g,
            Frame::Complex => {
                let h = 2 * self.n;
                if g < h {
                    g + h
                } else {
                    g - h
                }
            }
        }
    }
}

static TABLES: OnceLock<Mutex<HashMap<(usize, Frame), Arc<FrameTables>>>> = OnceLock::new();

/// Shared, lazily built tables for `(n, frame)`.
pub fn tables(n: usize, frame: Frame) -> Arc<FrameTables> {
    let map = TABLES.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = map.lock().unwrap().get(&(n, frame)) {
        return t.clone();
    }
    let built = Arc::new(FrameTables::build(n, frame));
    map.lock()
        .unwrap()
        .entry((n, frame))
        .or_insert(built)
        .clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::linalg::{sv_axpy, sv_get};

    #[test]
    fn complex_frame_round_trip() {
        for n in 1..=2 {
            let t = tables(n, Frame::Complex);
            // real -> frame -> real is the identity on generators
            for j in 0..4 * n {
                let mut acc: SparseVec = Vec::new();
                for (h, c) in &t.from_real[j] {
                    acc = sv_axpy(&acc, c, &t.to_real[*h]);
                }
                assert_eq!(acc, vec![(j, Gq::one())]);
            }
        }
    }

    #[test]
    fn dual_vectors_pair_to_identity() {
        let t = tables(2, Frame::Complex);
        for g in 0..8 {
            for h in 0..8 {
                let mut v: SparseVec = t.deriv[h].clone();
                v.sort_by_key(|x| x.0);
                let val: Gq = t.to_real[g]
                    .iter()
                    .fold(Gq::zero(), |acc, (j, c)| &acc + &(c * &sv_get(&v, *j)));
                assert_eq!(val, if g == h { Gq::one() } else { Gq::zero() });
            }
        }
    }
}
