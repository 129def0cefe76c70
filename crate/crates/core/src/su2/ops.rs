//! The derivation action of `su(2)` on forms.
//!
//! `A_I, A_J, A_K` extend `I, J, K` from `Λ¹` as derivations. With `h = −√−1·A_I`,
//! `X = (−√−1·A_J − A_K)/2` and `Y = (−√−1·A_J + A_K)/2` one has
//! `[h, X] = 2X`, `[h, Y] = −2Y`, `[X, Y] = h`, `X: Λ^{p,q} → Λ^{p+1,q−1}` and
//! `Y(Ω) = 2ω_I`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;

use crate::error::Result;
use crate::exterior::form::derivation_image;
use crate::exterior::{Form, Frame, LinearMap, Mask, Slice};
use crate::hypercomplex::{generator_images, Unit};
use crate::scalars::linalg::{sv_axpy, SparseVec};
use crate::scalars::rational::rat;
use crate::scalars::Gq;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Su2Op {
    AI,
    AJ,
    AK,
    H,
    Raise,
    Lower,
}

type Key = (usize, Frame, Su2Op);
static IMAGES: OnceLock<Mutex<HashMap<Key, Arc<Vec<SparseVec>>>>> = OnceLock::new();

fn combine(n: usize, frame: Frame, parts: &[(Unit, Gq)]) -> Vec<SparseVec> {
    let mut out = vec![SparseVec::new(); 4 * n];
    for (u, c) in parts {
        let imgs = generator_images(n, frame, *u);
        for g in 0..4 * n {
            out[g] = sv_axpy(&out[g], c, &imgs[g]);
        }
    }
    out
}

/// Generator images of an `su(2)` element acting on `Λ¹`.
pub fn op_images(n: usize, frame: Frame, op: Su2Op) -> Arc<Vec<SparseVec>> {
    let map = IMAGES.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = map.lock().unwrap().get(&(n, frame, op)) {
        return v.clone();
    }
    let mi = -Gq::i();
    let half_mi = Gq::new(rat(0, 1), rat(-1, 2));
    let half = Gq::real(rat(1, 2));
    let images = match op {
        Su2Op::AI => combine(n, frame, &[(Unit::I, Gq::one())]),
        Su2Op::AJ => combine(n, frame, &[(Unit::J, Gq::one())]),
        Su2Op::AK => combine(n, frame, &[(Unit::K, Gq::one())]),
        Su2Op::H => combine(n, frame, &[(Unit::I, mi)]),
        Su2Op::Raise => combine(
            n,
            frame,
            &[(Unit::J, half_mi.clone()), (Unit::K, -half.clone())],
        ),
        Su2Op::Lower => combine(n, frame, &[(Unit::J, half_mi), (Unit::K, half)]),
    };
    let images = Arc::new(images);
    map.lock()
        .unwrap()
        .entry((n, frame, op))
        .or_insert(images)
        .clone()
}

pub fn apply(op: Su2Op, f: &Form) -> Form {
    f.derivation(&op_images(f.n(), f.frame(), op))
}

pub fn apply_pow(op: Su2Op, f: &Form, k: usize) -> Form {
    let mut acc = f.clone();
    for _ in 0..k {
        if acc.is_zero() {
            break;
        }
        acc = apply(op, &acc);
    }
    acc
}

/// `C = A_I² + A_J² + A_K²`, which is `−w(w+2)` on weight `w`.
pub fn casimir(f: &Form) -> Form {
    let a = apply(Su2Op::AI, &apply(Su2Op::AI, f));
    let b = apply(Su2Op::AJ, &apply(Su2Op::AJ, f));
    let c = apply(Su2Op::AK, &apply(Su2Op::AK, f));
    a.add(&b).add(&c)
}

pub fn monomial_image(n: usize, frame: Frame, op: Su2Op, m: Mask) -> Vec<(Mask, Gq)> {
    derivation_image(m, &op_images(n, frame, op))
}

/// Matrix of an `su(2)` element between two slices of the same coframe.
pub fn op_matrix(op: Su2Op, domain: Arc<Slice>, codomain: Arc<Slice>) -> Result<LinearMap> {
    let (n, frame) = (domain.n, domain.frame);
    let imgs = op_images(n, frame, op);
    LinearMap::from_monomial_fn(domain, codomain, move |m| derivation_image(m, &imgs))
}

/// Matrix of `C` on a slice (which it preserves).
pub fn casimir_matrix(slice: Arc<Slice>) -> Result<LinearMap> {
    let (n, frame) = (slice.n, slice.frame);
    let ims: Vec<_> = [Su2Op::AI, Su2Op::AJ, Su2Op::AK]
        .iter()
        .map(|o| op_images(n, frame, *o))
        .collect();
    LinearMap::from_monomial_fn(slice.clone(), slice, move |m| {
        let mut acc: std::collections::BTreeMap<Mask, Gq> = Default::default();
        for im in &ims {
            for (m1, c1) in derivation_image(m, im) {
                for (m2, c2) in derivation_image(m1, im) {
                    *acc.entry(m2).or_insert_with(Gq::zero) += &(&c1 * &c2);
                }
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypercomplex::standard_forms;

    fn bracket(n: usize, a: Su2Op, b: Su2Op, k: usize) -> LinearMap {
        let s = Slice::degree(n, Frame::Complex, k);
        let ma = op_matrix(a, s.clone(), s.clone()).unwrap();
        let mb = op_matrix(b, s.clone(), s.clone()).unwrap();
        LinearMap {
            domain: s.clone(),
            codomain: s,
            matrix: ma.matrix.commutator(&mb.matrix),
        }
    }

    fn matrix(n: usize, a: Su2Op, k: usize) -> LinearMap {
        let s = Slice::degree(n, Frame::Complex, k);
        op_matrix(a, s.clone(), s).unwrap()
    }

    #[test]
    fn structure_constants() {
        for n in 1..=2 {
            for k in 0..=3 {
                let two = Gq::from_int(2);
                assert_eq!(
                    bracket(n, Su2Op::AI, Su2Op::AJ, k).matrix,
                    matrix(n, Su2Op::AK, k).matrix.scale(&two)
                );
                assert_eq!(
                    bracket(n, Su2Op::AJ, Su2Op::AK, k).matrix,
                    matrix(n, Su2Op::AI, k).matrix.scale(&two)
                );
                assert_eq!(
                    bracket(n, Su2Op::AK, Su2Op::AI, k).matrix,
                    matrix(n, Su2Op::AJ, k).matrix.scale(&two)
                );
                assert_eq!(
                    bracket(n, Su2Op::Raise, Su2Op::Lower, k).matrix,
                    matrix(n, Su2Op::H, k).matrix
                );
                assert_eq!(
                    bracket(n, Su2Op::H, Su2Op::Raise, k).matrix,
                    matrix(n, Su2Op::Raise, k).matrix.scale(&two)
                );
                assert_eq!(
                    bracket(n, Su2Op::H, Su2Op::Lower, k).matrix,
                    matrix(n, Su2Op::Lower, k).matrix.scale(&-two)
                );
            }
        }
    }

    #[test]
    fn lowering_omega_gives_twice_omega_i() {
        for n in 1..=2 {
            let s = standard_forms(n);
            assert!(apply(Su2Op::Raise, &s.omega).is_zero());
            assert!(apply(Su2Op::Lower, &s.omega).same_as(&s.omega_i.scale(&Gq::from_int(2))));
        }
    }

    #[test]
    fn h_measures_type() {
        let th = Form::basis(1, Frame::Complex, 0b0001);
        assert!(apply(Su2Op::H, &th).same_as(&th));
        let s = standard_forms(1);
        assert!(apply(Su2Op::H, &s.omega_i).is_zero());
    }
}
