//! Lefschetz operators of `ω_I, ω_J, ω_K`, their adjoints, and the Lie algebra `𝔞` they
//! generate, with structure constants, Killing form, rank and a Cartan pair.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exterior::{Frame, LinearMap, Slice};
use crate::hypercomplex::{standard_forms, Unit};
use crate::scalars::linalg::{hermitian_inertia, sv_get, Echelon, Inertia, Matrix, SparseVec};
use crate::scalars::Gq;
use crate::su2::{op_matrix, Su2Op};

/// Named operators on the full exterior algebra `Λ*V ⊗ C` (complex coframe).
#[derive(Clone, Debug)]
pub struct OperatorSet {
    pub slice: Arc<Slice>,
    pub ops: Vec<(String, Matrix)>,
}

impl OperatorSet {
    pub fn get(&self, name: &str) -> Option<&Matrix> {
        self.ops.iter().find(|(l, _)| l == name).map(|(_, m)| m)
    }
}

/// Hermitian adjoint for the flat inner product on a slice.
pub fn adjoint_on(slice: &Arc<Slice>, m: &Matrix) -> Matrix {
    LinearMap {
        domain: slice.clone(),
        codomain: slice.clone(),
        matrix: m.clone(),
    }
    .adjoint()
    .matrix
}

/// `L_A(η) = η ∧ ω_A` and `Λ_A = L_A*` for `A = I, J, K`.
pub fn lefschetz_operators(n: usize) -> Result<OperatorSet> {
    let slice = Slice::all(n, Frame::Complex);
    let s = standard_forms(n);
    let mut ls = Vec::new();
    for a in Unit::ALL {
        let w = s.omega_of(a).to_complex();
        let l = LinearMap::from_form_fn(slice.clone(), slice.clone(), |f| f.wedge(&w))?;
        ls.push((a, l.matrix));
    }
    let mut ops: Vec<(String, Matrix)> = ls
        .iter()
        .map(|(a, m)| (format!("L_{}", a.name()), m.clone()))
        .collect();
    for (a, m) in &ls {
        ops.push((format!("Λ_{}", a.name()), adjoint_on(&slice, m)));
    }
    Ok(OperatorSet { slice, ops })
}

#[derive(Clone, Debug)]
pub struct LieAlgebraSpan {
    pub slice: Arc<Slice>,
    pub labels: Vec<String>,
    pub basis: Vec<Matrix>,
    /// `structure[i][j]` = coordinates of `[e_i, e_j]`.
    pub structure: Vec<Vec<SparseVec>>,
    pub killing: Vec<Vec<Gq>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LieSummary {
    pub dim: usize,
    pub rank: usize,
    pub killing_nondegenerate: bool,
    pub killing_signature: Inertia,
    pub jacobi: bool,
    pub antisymmetric: bool,
}

impl LieAlgebraSpan {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of `m` in the basis, if it lies in the span.
    pub fn coordinates(&self, m: &Matrix) -> Option<SparseVec> {
        let mut ech = Echelon::new(m.nrows * m.ncols);
        for b in &self.basis {
            ech.insert(b.vectorize());
        }
        ech.combination(&m.vectorize())
    }

    pub fn element(&self, coords: &SparseVec) -> Matrix {
        let d = self.slice.len();
        let mut acc = Matrix::zeros(d, d);
        for (i, c) in coords {
            acc = acc.axpy(c, &self.basis[*i]);
        }
        acc
    }

    /// `ad(e_i)` in the basis.
    pub fn ad(&self, i: usize) -> Matrix {
        let cols: Vec<SparseVec> = self.structure[i].clone();
        Matrix::from_columns(self.dim(), &cols)
    }

    fn ad_of(&self, coords: &SparseVec) -> Matrix {
        let d = self.dim();
        let mut acc = Matrix::zeros(d, d);
        for (i, c) in coords {
            acc = acc.axpy(c, &self.ad(*i));
        }
        acc
    }

    /// `ad([e_i, e_j]) = [ad e_i, ad e_j]` for all pairs.
    pub fn jacobi_holds(&self) -> bool {
        let ads: Vec<Matrix> = (0..self.dim()).map(|i| self.ad(i)).collect();
        for i in 0..self.dim() {
            for j in (i + 1)..self.dim() {
                if self.ad_of(&self.structure[i][j]) != ads[i].commutator(&ads[j]) {
                    return false;
                }
            }
        }
        true
    }

    pub fn antisymmetric(&self) -> bool {
        (0..self.dim()).all(|i| {
            (0..self.dim()).all(|j| {
                let a = &self.structure[i][j];
                let b = &self.structure[j][i];
                a.len() == b.len()
                    && a.iter()
                        .zip(b)
                        .all(|((x, u), (y, v))| x == y && *u == -v.clone())
            })
        })
    }

    /// Dimension of the centralizer of a generic element (seeded), i.e. the rank.
    pub fn rank(&self, seed: u64) -> usize {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = self.dim();
        (0..3)
            .map(|_| {
                let coords: SparseVec = (0..d)
                    .map(|i| (i, Gq::from_int(rng.gen_range(-9..=9))))
                    .collect();
                d - self.ad_of(&coords).rank()
            })
            .min()
            .unwrap_or(0)
    }

    /// Centralizer of a family of elements inside the algebra (coordinates).
    pub fn centralizer(&self, elems: &[SparseVec]) -> Vec<SparseVec> {
        let d = self.dim();
        let mut rows = Vec::new();
        for e in elems {
            rows.extend(self.ad_of(e).rows);
        }
        Matrix {
            nrows: rows.len(),
            ncols: d,
            rows,
        }
        .kernel()
    }

    pub fn killing_inertia(&self) -> Result<Inertia> {
        hermitian_inertia(&self.killing)
    }

    pub fn summary(&self, seed: u64) -> Result<LieSummary> {
        let killing_signature = self.killing_inertia()?;
        Ok(LieSummary {
            dim: self.dim(),
            rank: self.rank(seed),
            killing_nondegenerate: killing_signature.zero == 0,
            killing_signature,
            jacobi: self.jacobi_holds(),
            antisymmetric: self.antisymmetric(),
        })
    }
}

/// Iterated brackets of the generators until the span stabilizes; at most `cap` dimensions.
pub fn lie_closure(
    slice: Arc<Slice>,
    generators: &[(String, Matrix)],
    cap: usize,
) -> Result<LieAlgebraSpan> {
    let d = slice.len();
    let mut ech = Echelon::new(d * d);
    let mut labels = Vec::new();
    let mut basis: Vec<Matrix> = Vec::new();
    for (l, m) in generators {
        let v = m.vectorize();
        if !ech.contains(&v) {
            ech.insert(v);
            labels.push(l.clone());
            basis.push(m.clone());
        }
    }
    let mut done = 0;
    while done < basis.len() {
        let upto = basis.len();
        for i in 0..upto {
            for j in done.max(i + 1)..upto {
                let b = basis[i].commutator(&basis[j]);
                let v = b.vectorize();
                if !ech.contains(&v) {
                    if basis.len() >= cap {
                        return Err(Error::Inconsistent(format!(
                            "bracket closure exceeds {cap} dimensions"
                        )));
                    }
                    ech.insert(v);
                    labels.push(format!("[{},{}]", labels[i], labels[j]));
                    basis.push(b);
                }
            }
        }
        done = upto;
    }
    let k = basis.len();
    let mut structure = vec![vec![Vec::new(); k]; k];
    for i in 0..k {
        for j in 0..k {
            if i == j {
                continue;
            }
            if j < i {
                let t: SparseVec = structure[j][i]
                    .iter()
                    .map(|(a, c): &(usize, Gq)| (*a, -c.clone()))
                    .collect();
                structure[i][j] = t;
                continue;
            }
            let b = basis[i].commutator(&basis[j]);
            structure[i][j] = ech
                .combination(&b.vectorize())
                .ok_or_else(|| Error::Inconsistent("span is not closed under brackets".into()))?;
        }
    }
    let mut alg = LieAlgebraSpan {
        slice,
        labels,
        basis,
        structure,
        killing: Vec::new(),
    };
    let ads: Vec<Matrix> = (0..k).map(|i| alg.ad(i)).collect();
    alg.killing = (0..k)
        .map(|i| (0..k).map(|j| ads[i].mul(&ads[j]).trace()).collect())
        .collect();
    Ok(alg)
}

/// `𝔞`: the closure of the six Lefschetz-type operators.
pub fn a_algebra(n: usize) -> Result<LieAlgebraSpan> {
    let ops = lefschetz_operators(n)?;
    lie_closure(ops.slice.clone(), &ops.ops, 64)
}

#[derive(Clone, Debug)]
pub struct CartanPair {
    pub h1: Matrix,
    pub h2: Matrix,
    pub labels: (String, String),
}

fn is_normal(slice: &Arc<Slice>, m: &Matrix) -> bool {
    let a = adjoint_on(slice, m);
    m.mul(&a) == a.mul(m)
}

/// `H₁ = [L_I, Λ_I]`, and `H₂` the first bracket `[L_A, Λ_B]` (`A ≠ B`, starting from
/// `(J, K)`) that commutes with
/// `H₁`, is normal, is independent of `H₁`, and together with it has centralizer of dimension
/// equal to the rank.
pub fn cartan_pair(alg: &LieAlgebraSpan, ops: &OperatorSet, seed: u64) -> Result<CartanPair> {
    let get = |s: &str| {
        ops.get(s)
            .ok_or_else(|| Error::Inconsistent(format!("missing operator {s}")))
    };
    let h1 = get("L_I")?.commutator(get("Λ_I")?);
    let c1 = alg
        .coordinates(&h1)
        .ok_or_else(|| Error::Inconsistent("H₁ not in the algebra".into()))?;
    let rank = alg.rank(seed);
    // [L_J, Λ_K] first: it is the one aligned with I
    let order = [
        ("J", "K"),
        ("K", "J"),
        ("K", "I"),
        ("I", "K"),
        ("I", "J"),
        ("J", "I"),
    ];
    for (a, b) in order {
        {
            let h2 = get(&format!("L_{a}"))?.commutator(get(&format!("Λ_{b}"))?);
            if h2.is_zero()
                || h1.commutator(&h2) != Matrix::zeros(h1.nrows, h1.ncols)
                || h2.ratio_to(&h1).is_some()
            {
                continue;
            }
            if !is_normal(&alg.slice, &h2) {
                continue;
            }
            let Some(c2) = alg.coordinates(&h2) else {
                continue;
            };
            if alg.centralizer(&[c1.clone(), c2]).len() != rank {
                continue;
            }
            return Ok(CartanPair {
                h1,
                h2,
                labels: ("[L_I,Λ_I]".into(), format!("[L_{a},Λ_{b}]")),
            });
        }
    }
    Err(Error::Degenerate(
        "no Cartan partner found among the brackets".into(),
    ))
}

#[derive(Clone, Debug, Serialize)]
pub struct CartanReport {
    pub h1: String,
    pub h2: String,
    pub diagonal: bool,
    /// `"p,q" -> [eigenvalue of H₁, eigenvalue of H₂]`.
    pub eigenvalues: std::collections::BTreeMap<String, [String; 2]>,
    pub matches_hodge: bool,
    pub h_in_cartan: bool,
}

/// Joint eigenvalue of the Cartan pair on each monomial, if both are diagonal.
pub fn joint_eigenvalues(pair: &CartanPair) -> Option<Vec<(Gq, Gq)>> {
    let diag = |m: &Matrix| -> Option<Vec<Gq>> {
        m.rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                if r.iter().all(|(j, _)| *j == i) {
                    Some(sv_get(r, i))
                } else {
                    None
                }
            })
            .collect()
    };
    Some(diag(&pair.h1)?.into_iter().zip(diag(&pair.h2)?).collect())
}

pub fn cartan_weight_check(
    alg: &LieAlgebraSpan,
    ops: &OperatorSet,
    seed: u64,
) -> Result<CartanReport> {
    let pair = cartan_pair(alg, ops, seed)?;
    let slice = &alg.slice;
    let t = crate::exterior::tables(slice.n, Frame::Complex);
    let h = op_matrix(Su2Op::H, slice.clone(), slice.clone())?.matrix;
    let mut ech = Echelon::new(h.nrows * h.ncols);
    ech.insert(pair.h1.vectorize());
    ech.insert(pair.h2.vectorize());
    let h_in_cartan = ech.contains(&h.vectorize());
    let mut eigenvalues = std::collections::BTreeMap::new();
    let Some(joint) = joint_eigenvalues(&pair) else {
        return Ok(CartanReport {
            h1: pair.labels.0,
            h2: pair.labels.1,
            diagonal: false,
            eigenvalues,
            matches_hodge: false,
            h_in_cartan,
        });
    };
    let mut matches = true;
    let mut seen: std::collections::HashMap<(usize, usize), (Gq, Gq)> =
        std::collections::HashMap::new();
    for (i, m) in slice.masks().iter().enumerate() {
        let bd = t.bidegree(*m);
        match seen.get(&bd) {
            Some(e) if *e != joint[i] => matches = false,
            Some(_) => {}
            None => {
                seen.insert(bd, joint[i].clone());
            }
        }
    }
    // distinct bidegrees must have distinct joint eigenvalues
    let vals: Vec<&(Gq, Gq)> = seen.values().collect();
    for (a, x) in vals.iter().enumerate() {
        if vals[a + 1..].contains(x) {
            matches = false;
        }
    }
    for ((p, q), (a, b)) in &seen {
        eigenvalues.insert(format!("{p},{q}"), [a.to_string(), b.to_string()]);
    }
    Ok(CartanReport {
        h1: pair.labels.0,
        h2: pair.labels.1,
        diagonal: true,
        eigenvalues,
        matches_hodge: matches,
        h_in_cartan,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lefschetz_basics() {
        let ops = lefschetz_operators(1).unwrap();
        let s = standard_forms(1);
        let one = ops
            .slice
            .vector_of(&crate::exterior::Form::constant(1, Gq::one()))
            .unwrap();
        let img = ops.slice.form_of(&ops.get("L_I").unwrap().mul_vec(&one));
        assert!(img.same_as(&s.omega_i));
        let w = ops.slice.vector_of(&s.omega_i).unwrap();
        let back = ops.get("Λ_I").unwrap().mul_vec(&w);
        // ⟨ω_I, ω_I⟩ = 2n
        assert_eq!(back, vec![(0, Gq::from_int(2))]);
    }

    #[test]
    fn closure_is_ten_dimensional_rank_two() {
        let alg = a_algebra(1).unwrap();
        let s = alg.summary(7).unwrap();
        assert_eq!(s.dim, 10);
        assert_eq!(s.rank, 2);
        assert!(s.killing_nondegenerate && s.jacobi && s.antisymmetric);
    }

    #[test]
    fn cartan_matches_hodge_n1() {
        let ops = lefschetz_operators(1).unwrap();
        let alg = lie_closure(ops.slice.clone(), &ops.ops, 64).unwrap();
        let r = cartan_weight_check(&alg, &ops, 7).unwrap();
        assert!(r.diagonal && r.matches_hodge && r.h_in_cartan);
        assert_eq!(r.eigenvalues.len(), 9);
    }
}
