//! `sp(n)` acting on `V` (commuting with `I, J, K`), extended to `Λ*V` as derivations, and
//! commutant dimensions of invariant subspaces.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exterior::{tables, Form, Frame, LinearMap, Slice};
use crate::hypercomplex::{build_structure, Unit};
use crate::scalars::linalg::{Echelon, Matrix, SparseVec};
use crate::scalars::Gq;

use super::lie::{lie_closure, LieAlgebraSpan};

/// Basis of `{X ∈ gl(V) : XA = AX for A = I, J, K, Xᵀ = −X}` over `Q`.
pub fn sp_n_basis(n: usize) -> Vec<Matrix> {
    let d = 4 * n;
    let st = build_structure(n);
    let idx = |r: usize, c: usize| r * d + c;
    let mut rows: Vec<SparseVec> = Vec::new();
    for a in Unit::ALL {
        let m = st.vectors(a);
        // (XA − AX)_{rc} = Σ_k X_{rk} A_{kc} − A_{rk} X_{kc}
        for r in 0..d {
            for c in 0..d {
                let mut row: Vec<(usize, Gq)> = Vec::new();
                for k in 0..d {
                    let akc = m.get(k, c);
                    if !akc.is_zero() {
                        row.push((idx(r, k), akc));
                    }
                    let ark = m.get(r, k);
                    if !ark.is_zero() {
                        row.push((idx(k, c), -ark));
                    }
                }
                rows.push(normalize(row));
            }
        }
    }
    for r in 0..d {
        for c in r..d {
            rows.push(normalize(vec![
                (idx(r, c), Gq::one()),
                (idx(c, r), Gq::one()),
            ]));
        }
    }
    let sys = Matrix {
        nrows: rows.len(),
        ncols: d * d,
        rows,
    };
    sys.kernel()
        .into_iter()
        .map(|v| {
            let mut m = Matrix::zeros(d, d);
            for (i, x) in v {
                m.rows[i / d].push((i % d, x));
            }
            for r in m.rows.iter_mut() {
                r.sort_by_key(|e| e.0);
            }
            m
        })
        .collect()
}

fn normalize(mut row: Vec<(usize, Gq)>) -> SparseVec {
    row.sort_by_key(|e| e.0);
    let mut out: SparseVec = Vec::new();
    for (i, x) in row {
        match out.last_mut() {
            Some((j, y)) if *j == i => *y = &*y + &x,
            _ => out.push((i, x)),
        }
    }
    out.retain(|(_, x)| !x.is_zero());
    out
}

/// `X ∈ gl(V)` acting on `Λ*V ⊗ C` as the derivation induced by `α ↦ −α∘X`.
pub fn derivation_operator(slice: &Arc<Slice>, x: &Matrix) -> Result<Matrix> {
    let n = slice.n;
    let d = 4 * n;
    let images: Vec<SparseVec> = (0..d)
        .map(|i| x.rows[i].iter().map(|(j, c)| (*j, -c.clone())).collect())
        .collect();
    Ok(
        LinearMap::from_form_fn(slice.clone(), slice.clone(), |f: &Form| {
            f.to_real().derivation(&images).to_complex()
        })?
        .matrix,
    )
}

/// `sp(n)` acting on the full exterior algebra, as a Lie algebra span.
pub fn spn_action(n: usize) -> Result<LieAlgebraSpan> {
    let slice = Slice::all(n, Frame::Complex);
    let gens: Vec<(String, Matrix)> = sp_n_basis(n)
        .iter()
        .enumerate()
        .map(|(i, x)| Ok((format!("s{i}"), derivation_operator(&slice, x)?)))
        .collect::<Result<_>>()?;
    lie_closure(slice, &gens, n * (2 * n + 1) + 1)
}

#[derive(Clone, Debug, Serialize)]
pub struct SpnChecks {
    pub dim: usize,
    pub commutes_with_a: bool,
    pub preserves_bidegree: bool,
}

pub fn spn_checks(sp: &LieAlgebraSpan, a: &LieAlgebraSpan) -> SpnChecks {
    let zero = Matrix::zeros(sp.slice.len(), sp.slice.len());
    let commutes_with_a = sp
        .basis
        .iter()
        .all(|s| a.basis.iter().all(|x| s.commutator(x) == zero));
    let t = tables(sp.slice.n, Frame::Complex);
    let masks = sp.slice.masks();
    let preserves_bidegree = sp.basis.iter().all(|s| {
        s.rows.iter().enumerate().all(|(r, row)| {
            row.iter()
                .all(|(c, _)| t.bidegree(masks[r]) == t.bidegree(masks[*c]))
        })
    });
    SpnChecks {
        dim: sp.dim(),
        commutes_with_a,
        preserves_bidegree,
    }
}

/// Dimension over `Q(i)` of `{X ∈ End(S) : [X, ρ(g)] = 0}` for the given operators.
pub fn commutant_dimension(subspace: &[SparseVec], ops: &[Matrix]) -> Result<usize> {
    let Some(first) = ops.first() else {
        return Err(Error::Precondition("no operators given".into()));
    };
    let mut ech = Echelon::new(first.ncols);
    let mut basis = Vec::new();
    for v in subspace {
        if ech.insert(v.clone()) {
            basis.push(v.clone());
        }
    }
    let d = basis.len();
    if d == 0 {
        return Ok(0);
    }
    // restrictions ρ(g) in the chosen basis
    let mut reps = Vec::new();
    for g in ops {
        let mut cols = Vec::with_capacity(d);
        for (j, b) in basis.iter().enumerate() {
            let img = g.mul_vec(b);
            let c = ech.combination(&img).ok_or_else(|| {
                Error::NotInvariant(format!(
                    "image of basis vector {j} leaves the subspace: {img:?}"
                ))
            })?;
            cols.push(c);
        }
        reps.push(Matrix::from_columns(d, &cols));
    }
    // unknown X, entries x_{ab} at a·d + b
    let mut sys = Echelon::new(d * d);
    for r in &reps {
        let cols = r.columns();
        for a in 0..d {
            for b in 0..d {
                // (XR − RX)_{ab} = Σ_c X_{ac} R_{cb} − R_{ac} X_{cb}
                let mut row: Vec<(usize, Gq)> = cols[b]
                    .iter()
                    .map(|(c, x)| (a * d + c, x.clone()))
                    .collect();
                row.extend(r.rows[a].iter().map(|(c, x)| (c * d + b, -x.clone())));
                let row = normalize(row);
                if !row.is_empty() {
                    sys.insert(row);
                }
            }
        }
    }
    Ok(d * d - sys.rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::howe::lie::a_algebra;
    use crate::hypercomplex::standard_volume;

    #[test]
    fn sp_dimensions() {
        assert_eq!(sp_n_basis(1).len(), 3);
        assert_eq!(sp_n_basis(2).len(), 10);
    }

    #[test]
    fn sp1_commutes_with_a() {
        let sp = spn_action(1).unwrap();
        let a = a_algebra(1).unwrap();
        let c = spn_checks(&sp, &a);
        assert!(c.commutes_with_a && c.preserves_bidegree);
        assert_eq!(c.dim, 3);
    }

    #[test]
    fn schur_counts() {
        let sp = spn_action(1).unwrap();
        let slice = &sp.slice;
        let vol = slice.vector_of(&standard_volume(1)).unwrap();
        assert_eq!(commutant_dimension(&[vol], &sp.basis).unwrap(), 1);
        // Λ^{1,0} for n = 1 is the standard representation of sp(1)
        let t = tables(1, Frame::Complex);
        let v10: Vec<SparseVec> = slice
            .masks()
            .iter()
            .enumerate()
            .filter(|(_, m)| t.bidegree(**m) == (1, 0))
            .map(|(i, _)| vec![(i, Gq::one())])
            .collect();
        assert_eq!(commutant_dimension(&v10, &sp.basis).unwrap(), 1);
        // Λ^{1,1} contains invariants and the adjoint: reducible
        let v11: Vec<SparseVec> = slice
            .masks()
            .iter()
            .enumerate()
            .filter(|(_, m)| t.bidegree(**m) == (1, 1))
            .map(|(i, _)| vec![(i, Gq::one())])
            .collect();
        assert!(commutant_dimension(&v11, &sp.basis).unwrap() > 1);
    }
}
