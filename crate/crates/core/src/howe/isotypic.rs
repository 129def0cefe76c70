//! Root decomposition of `𝔞` relative to the Cartan pair, highest-weight vectors, and the
//! isotypic decomposition `Λ*V = ⊕_α I_α` split by Hodge bidegree.

use std::collections::{BTreeMap, HashMap, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exterior::{tables, Form, Frame};
use crate::scalars::linalg::{exact_linear_solve, sv_axpy, sv_get, Echelon, Matrix, SparseVec};
use crate::scalars::Gq;

use super::lie::{
    cartan_pair, joint_eigenvalues, lefschetz_operators, lie_closure, LieAlgebraSpan, OperatorSet,
};

type Bideg = (usize, usize);

/// Root vectors of `𝔞 ⊗ C`, indexed by the bidegree shift they induce.
#[derive(Clone, Debug)]
pub struct RootSystem {
    /// `(shift, root on H₁, root on H₂, root vector)`.
    pub positive: Vec<((i64, i64), Gq, Gq, Matrix)>,
    pub negative: Vec<((i64, i64), Gq, Gq, Matrix)>,
}

fn lex_positive(a: &Gq, b: &Gq) -> bool {
    let key = [&a.re, &a.im, &b.re, &b.im];
    for k in key {
        if *k != num_traits::Zero::zero() {
            return k > &num_traits::Zero::zero();
        }
    }
    false
}

pub fn root_system(alg: &LieAlgebraSpan, joint: &[(Gq, Gq)]) -> Result<RootSystem> {
    let slice = &alg.slice;
    let t = tables(slice.n, Frame::Complex);
    let bd: Vec<(i64, i64)> = slice
        .masks()
        .iter()
        .map(|m| {
            let (p, q) = t.bidegree(*m);
            (p as i64, q as i64)
        })
        .collect();
    let d = slice.len();
    // shift -> (components, echelon, root)
    let mut parts: BTreeMap<(i64, i64), (Vec<Matrix>, Echelon, Option<(Gq, Gq)>)> = BTreeMap::new();
    for b in &alg.basis {
        let mut split: BTreeMap<(i64, i64), Vec<SparseVec>> = BTreeMap::new();
        for (r, row) in b.rows.iter().enumerate() {
            for (c, x) in row {
                let s = (bd[r].0 - bd[*c].0, bd[r].1 - bd[*c].1);
                let rows = split.entry(s).or_insert_with(|| vec![Vec::new(); d]);
                rows[r].push((*c, x.clone()));
                let root = (&joint[r].0 - &joint[*c].0, &joint[r].1 - &joint[*c].1);
                let e = parts
                    .entry(s)
                    .or_insert_with(|| (Vec::new(), Echelon::new(d * d), None));
                match &e.2 {
                    None => e.2 = Some(root),
                    Some(prev) if *prev != root => {
                        return Err(Error::Inconsistent(
                            "root is not determined by the bidegree shift".into(),
                        ));
                    }
                    _ => {}
                }
            }
        }
        for (s, rows) in split {
            let m = Matrix {
                nrows: d,
                ncols: d,
                rows,
            };
            let e = parts.get_mut(&s).unwrap();
            if e.1.insert(m.vectorize()) {
                e.0.push(m);
            }
        }
    }
    let mut positive = Vec::new();
    let mut negative = Vec::new();
    for (s, (mats, _, root)) in parts {
        if s == (0, 0) {
            continue;
        }
        let (a, b) = root.unwrap();
        for m in mats {
            // each component must itself lie in 𝔞 ⊗ C
            if alg.coordinates(&m).is_none() {
                return Err(Error::Inconsistent(format!(
                    "root component for shift {s:?} is not in the algebra"
                )));
            }
            let entry = (s, a.clone(), b.clone(), m);
            if lex_positive(&a, &b) {
                positive.push(entry);
            } else {
                negative.push(entry);
            }
        }
    }
    Ok(RootSystem { positive, negative })
}

#[derive(Clone, Debug, Serialize)]
pub struct IsotypicComponent {
    pub label: String,
    /// Bidegree of the highest-weight vectors.
    pub highest_bidegree: Bideg,
    /// Joint eigenvalues of the Cartan pair on the highest-weight vectors.
    pub highest_weight: [String; 2],
    pub casimir: String,
    /// Number of independent highest-weight vectors (copies of the irreducible).
    pub multiplicity: usize,
    pub dim: usize,
    /// `"p,q" -> dim I^{p,q}_α`.
    pub bidegree_dims: BTreeMap<String, usize>,
    #[serde(skip)]
    pub pieces: BTreeMap<Bideg, Vec<SparseVec>>,
}

impl IsotypicComponent {
    pub fn piece_forms(&self, slice: &crate::exterior::Slice, p: usize, q: usize) -> Vec<Form> {
        self.pieces
            .get(&(p, q))
            .map_or_else(Vec::new, |v| v.iter().map(|x| slice.form_of(x)).collect())
    }

    pub fn all_vectors(&self) -> Vec<SparseVec> {
        self.pieces.values().flatten().cloned().collect()
    }
}

#[derive(Clone, Debug)]
pub struct IsotypicDecomposition {
    pub ops: OperatorSet,
    pub algebra: LieAlgebraSpan,
    pub components: Vec<IsotypicComponent>,
}

/// Casimir `Σ K^{ij} e_i e_j` from the inverse Killing form.
pub fn casimir_operator(alg: &LieAlgebraSpan) -> Result<Matrix> {
    let k = alg.dim();
    let km = Matrix::from_dense(&alg.killing);
    let mut inv_cols = Vec::new();
    for j in 0..k {
        let mut rhs = vec![Gq::zero(); k];
        rhs[j] = Gq::one();
        let s = exact_linear_solve(&km, &rhs)?;
        let x = s
            .solution
            .ok_or_else(|| Error::Degenerate("Killing form is singular".into()))?;
        inv_cols.push(x);
    }
    let d = alg.slice.len();
    let mut c = Matrix::zeros(d, d);
    for i in 0..k {
        for j in 0..k {
            let g = &inv_cols[j][i];
            if !g.is_zero() {
                c = c.axpy(g, &alg.basis[i].mul(&alg.basis[j]));
            }
        }
    }
    Ok(c)
}

/// Rows of `m` restricted to the given columns, renumbered locally.
fn restrict_columns(m: &Matrix, cols: &HashMap<usize, usize>) -> Vec<SparseVec> {
    m.rows
        .iter()
        .map(|r| {
            let mut v: SparseVec = r
                .iter()
                .filter_map(|(c, x)| cols.get(c).map(|l| (*l, x.clone())))
                .collect();
            v.sort_by_key(|e| e.0);
            v
        })
        .filter(|r| !r.is_empty())
        .collect()
}

pub fn isotypic_decompose(n: usize, seed: u64) -> Result<IsotypicDecomposition> {
    let ops = lefschetz_operators(n)?;
    let alg = lie_closure(ops.slice.clone(), &ops.ops, 64)?;
    let pair = cartan_pair(&alg, &ops, seed)?;
    let joint = joint_eigenvalues(&pair)
        .ok_or_else(|| Error::Inconsistent("Cartan pair is not diagonal".into()))?;
    let roots = root_system(&alg, &joint)?;
    let casimir = casimir_operator(&alg)?;
    let slice = alg.slice.clone();
    let t = tables(n, Frame::Complex);
    let mut by_bd: BTreeMap<Bideg, Vec<usize>> = BTreeMap::new();
    for (i, m) in slice.masks().iter().enumerate() {
        by_bd.entry(t.bidegree(*m)).or_default().push(i);
    }
    let mut components = Vec::new();
    for (bd, idx) in &by_bd {
        let local: HashMap<usize, usize> = idx.iter().enumerate().map(|(l, g)| (*g, l)).collect();
        let mut rows = Vec::new();
        for (_, _, _, e) in &roots.positive {
            rows.extend(restrict_columns(e, &local));
        }
        let ker = Matrix {
            nrows: rows.len(),
            ncols: idx.len(),
            rows,
        }
        .kernel();
        if ker.is_empty() {
            continue;
        }
        let hw: Vec<SparseVec> = ker
            .iter()
            .map(|v| {
                let mut g: SparseVec = v.iter().map(|(l, x)| (idx[*l], x.clone())).collect();
                g.sort_by_key(|e| e.0);
                g
            })
            .collect();
        // Casimir eigenvalue on the highest-weight space
        let cv = casimir.mul_vec(&hw[0]);
        let c = sv_get(&cv, hw[0][0].0) / hw[0][0].1.clone();
        for v in &hw {
            let w = casimir.mul_vec(v);
            if !sv_axpy(&w, &-c.clone(), v).is_empty() {
                return Err(Error::Inconsistent(
                    "Casimir is not scalar on highest-weight vectors".into(),
                ));
            }
        }
        let pieces = generate(&hw, &roots, &slice, n)?;
        let dim = pieces.values().map(|v| v.len()).sum();
        let (a, b) = &joint[idx[0]];
        components.push(IsotypicComponent {
            label: String::new(),
            highest_bidegree: *bd,
            highest_weight: [a.to_string(), b.to_string()],
            casimir: c.to_string(),
            multiplicity: hw.len(),
            dim,
            bidegree_dims: pieces
                .iter()
                .map(|(k, v)| (format!("{},{}", k.0, k.1), v.len()))
                .collect(),
            pieces,
        });
    }
    for (i, c) in components.iter_mut().enumerate() {
        c.label = format!("α{i}");
    }
    Ok(IsotypicDecomposition {
        ops,
        algebra: alg,
        components,
    })
}

/// Span of everything reachable from `start` by negative root vectors, by bidegree.
fn generate(
    start: &[SparseVec],
    roots: &RootSystem,
    slice: &crate::exterior::Slice,
    n: usize,
) -> Result<BTreeMap<Bideg, Vec<SparseVec>>> {
    let t = tables(n, Frame::Complex);
    let bd_of = |v: &SparseVec| t.bidegree(slice.masks()[v[0].0]);
    let mut spans: BTreeMap<Bideg, (Echelon, Vec<SparseVec>)> = BTreeMap::new();
    let mut queue: VecDeque<SparseVec> = VecDeque::new();
    for v in start {
        let e = spans
            .entry(bd_of(v))
            .or_insert_with(|| (Echelon::new(slice.len()), Vec::new()));
        if e.0.insert(v.clone()) {
            e.1.push(v.clone());
            queue.push_back(v.clone());
        }
    }
    while let Some(v) = queue.pop_front() {
        for (_, _, _, f) in &roots.negative {
            let w = f.mul_vec(&v);
            if w.is_empty() {
                continue;
            }
            let e = spans
                .entry(bd_of(&w))
                .or_insert_with(|| (Echelon::new(slice.len()), Vec::new()));
            if e.0.insert(w.clone()) {
                e.1.push(w.clone());
                queue.push_back(w);
            }
        }
    }
    Ok(spans.into_iter().map(|(k, (_, v))| (k, v)).collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct IsotypicChecks {
    pub complete: bool,
    pub invariant: bool,
    pub total_dim: usize,
}

impl IsotypicDecomposition {
    /// `Σ_α dim I^{p,q}_α = dim Λ^{p,q}` and invariance of every `I_α` under the basis of `𝔞`.
    pub fn checks(&self) -> IsotypicChecks {
        let slice = &self.algebra.slice;
        let t = tables(slice.n, Frame::Complex);
        let mut expected: BTreeMap<Bideg, usize> = BTreeMap::new();
        for m in slice.masks() {
            *expected.entry(t.bidegree(*m)).or_default() += 1;
        }
        let mut got: BTreeMap<Bideg, usize> = BTreeMap::new();
        let mut all = Echelon::new(slice.len());
        let mut independent = true;
        for c in &self.components {
            for (k, v) in &c.pieces {
                *got.entry(*k).or_default() += v.len();
                for x in v {
                    independent &= all.insert(x.clone());
                }
            }
        }
        let complete = independent && got == expected;
        let invariant = self.components.iter().all(|c| {
            let mut ech = Echelon::new(slice.len());
            for v in c.all_vectors() {
                ech.insert(v);
            }
            c.all_vectors().iter().all(|v| {
                self.algebra
                    .basis
                    .iter()
                    .all(|b| ech.contains(&b.mul_vec(v)))
            })
        });
        IsotypicChecks {
            complete,
            invariant,
            total_dim: got.values().sum(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n1_components_cover_sixteen() {
        let d = isotypic_decompose(1, 7).unwrap();
        let c = d.checks();
        assert!(c.complete && c.invariant);
        assert_eq!(c.total_dim, 16);
        // positive and negative roots pair up
        let alg = &d.algebra;
        let ops = &d.ops;
        let pair = cartan_pair(alg, ops, 7).unwrap();
        let r = root_system(alg, &joint_eigenvalues(&pair).unwrap()).unwrap();
        assert_eq!(r.positive.len(), 4);
        assert_eq!(r.negative.len(), 4);
    }
}
