//! Exact sparse linear algebra over the Gaussian rationals.
//!
//! Elimination keeps a fully reduced row-echelon basis with unit pivots. The pivot for
//! each new row is the nonzero entry of smallest bit length, which keeps coefficient
//! growth in check on the structured operator matrices this crate produces.

use std::collections::BTreeMap;

use serde::Serialize;

use super::gaussian::Gq;
use crate::error::{Error, Result};

/// Sparse vector: `(index, value)` pairs sorted by index, no stored zeros.
pub type SparseVec = Vec<(usize, Gq)>;

pub fn sv_from_dense(v: &[Gq]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn sv_to_dense(v: &SparseVec, len: usize) -> Vec<Gq> {
    let mut out = vec![Gq::zero(); len];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

pub fn sv_get(v: &SparseVec, i: usize) -> Gq {
    match v.binary_search_by_key(&i, |(j, _)| *j) {
        Ok(p) => v[p].1.clone(),
        Err(_) => Gq::zero(),
    }
}

/// `a + c·b`.
pub fn sv_axpy(a: &SparseVec, c: &Gq, b: &SparseVec) -> SparseVec {
    if c.is_zero() {
        return a.clone();
    }
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ia = a.get(i).map(|x| x.0).unwrap_or(usize::MAX);
        let jb = b.get(j).map(|x| x.0).unwrap_or(usize::MAX);
        if ia < jb {
            out.push(a[i].clone());
            i += 1;
        } else if jb < ia {
            out.push((jb, c * &b[j].1));
            j += 1;
        } else {
            let v = &a[i].1 + &(c * &b[j].1);
            if !v.is_zero() {
                out.push((ia, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn sv_scale(a: &SparseVec, c: &Gq) -> SparseVec {
    if c.is_zero() {
        return Vec::new();
    }
    a.iter().map(|(i, x)| (*i, x * c)).collect()
}

pub fn sv_conj(a: &SparseVec) -> SparseVec {
    a.iter().map(|(i, x)| (*i, x.conj())).collect()
}

/// Bilinear dot product `Σ a_i b_i` (no conjugation).
pub fn sv_dot(a: &SparseVec, b: &SparseVec) -> Gq {
    let (mut i, mut j) = (0, 0);
    let mut acc = Gq::zero();
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                acc += &(&a[i].1 * &b[j].1);
                i += 1;
                j += 1;
            }
        }
    }
    acc
}

/// Sparse matrix stored by rows.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    pub nrows: usize,
    pub ncols: usize,
    pub rows: Vec<SparseVec>,
}

impl Matrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Matrix {
            nrows,
            ncols,
            rows: vec![Vec::new(); nrows],
        }
    }

    pub fn identity(n: usize) -> Self {
        Matrix {
            nrows: n,
            ncols: n,
            rows: (0..n).map(|i| vec![(i, Gq::one())]).collect(),
        }
    }

    pub fn from_dense(rows: &[Vec<Gq>]) -> Self {
        let ncols = rows.first().map(Vec::len).unwrap_or(0);
        Matrix {
            nrows: rows.len(),
            ncols,
            rows: rows.iter().map(|r| sv_from_dense(r)).collect(),
        }
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let dense: Vec<Vec<Gq>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Gq::from_int(x)).collect())
            .collect();
        Matrix::from_dense(&dense)
    }

    /// Build from columns given as sparse vectors of length `nrows`.
    pub fn from_columns(nrows: usize, cols: &[SparseVec]) -> Self {
        let mut m = Matrix::zeros(nrows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, x) in c {
                m.rows[*i].push((j, x.clone()));
            }
        }
        m
    }

    pub fn to_dense(&self) -> Vec<Vec<Gq>> {
        self.rows
            .iter()
            .map(|r| sv_to_dense(r, self.ncols))
            .collect()
    }

    pub fn get(&self, i: usize, j: usize) -> Gq {
        sv_get(&self.rows[i], j)
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    pub fn is_real(&self) -> bool {
        self.rows.iter().all(|r| r.iter().all(|(_, x)| x.is_real()))
    }

    pub fn column(&self, j: usize) -> SparseVec {
        let mut out = Vec::new();
        for (i, r) in self.rows.iter().enumerate() {
            let x = sv_get(r, j);
            if !x.is_zero() {
                out.push((i, x));
            }
        }
        out
    }

    pub fn columns(&self) -> Vec<SparseVec> {
        let t = self.transpose();
        t.rows
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.ncols, self.nrows);
        for (i, r) in self.rows.iter().enumerate() {
            for (j, x) in r {
                t.rows[*j].push((i, x.clone()));
            }
        }
        t
    }

    pub fn conj_transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.ncols, self.nrows);
        for (i, r) in self.rows.iter().enumerate() {
            for (j, x) in r {
                t.rows[*j].push((i, x.conj()));
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &SparseVec) -> SparseVec {
        let mut out = Vec::new();
        for (i, r) in self.rows.iter().enumerate() {
            let x = sv_dot(r, v);
            if !x.is_zero() {
                out.push((i, x));
            }
        }
        out
    }

    pub fn mul(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.ncols, o.nrows, "matrix product shape mismatch");
        let mut out = Matrix::zeros(self.nrows, o.ncols);
        for (i, r) in self.rows.iter().enumerate() {
            let mut acc: BTreeMap<usize, Gq> = BTreeMap::new();
            for (k, a) in r {
                for (j, b) in &o.rows[*k] {
                    let e = acc.entry(*j).or_default();
                    *e += &(a * b);
                }
            }
            out.rows[i] = acc.into_iter().filter(|(_, x)| !x.is_zero()).collect();
        }
        out
    }

    pub fn add(&self, o: &Matrix) -> Matrix {
        self.axpy(&Gq::one(), o)
    }

    pub fn sub(&self, o: &Matrix) -> Matrix {
        self.axpy(&-Gq::one(), o)
    }

    /// `self + c·o`.
    pub fn axpy(&self, c: &Gq, o: &Matrix) -> Matrix {
        assert_eq!(
            (self.nrows, self.ncols),
            (o.nrows, o.ncols),
            "matrix shape mismatch"
        );
        Matrix {
            nrows: self.nrows,
            ncols: self.ncols,
            rows: self
                .rows
                .iter()
                .zip(&o.rows)
                .map(|(a, b)| sv_axpy(a, c, b))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Gq) -> Matrix {
        Matrix {
            nrows: self.nrows,
            ncols: self.ncols,
            rows: self.rows.iter().map(|r| sv_scale(r, c)).collect(),
        }
    }

    pub fn commutator(&self, o: &Matrix) -> Matrix {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn anticommutator(&self, o: &Matrix) -> Matrix {
        self.mul(o).add(&o.mul(self))
    }

    pub fn trace(&self) -> Gq {
        let mut acc = Gq::zero();
        for (i, r) in self.rows.iter().enumerate() {
            acc += &sv_get(r, i);
        }
        acc
    }

    /// Flatten into one sparse vector of length `nrows·ncols` (row-major).
    pub fn vectorize(&self) -> SparseVec {
        let mut out = Vec::with_capacity(self.nnz());
        for (i, r) in self.rows.iter().enumerate() {
            for (j, x) in r {
                out.push((i * self.ncols + j, x.clone()));
            }
        }
        out
    }

    /// If `self = c·o` for a single scalar `c`, return it. Both zero gives `Some(0)`.
    pub fn ratio_to(&self, o: &Matrix) -> Option<Gq> {
        let a = self.vectorize();
        let b = o.vectorize();
        if b.is_empty() {
            return if a.is_empty() { Some(Gq::zero()) } else { None };
        }
        let c = &sv_get(&a, b[0].0) / &b[0].1;
        if sv_axpy(&a, &-c.clone(), &b).is_empty() {
            Some(c)
        } else {
            None
        }
    }

    pub fn rank(&self) -> usize {
        let mut e = Echelon::new(self.ncols);
        for r in &self.rows {
            e.insert(r.clone());
        }
        e.rank()
    }

    /// Basis of the right kernel `{x : self·x = 0}`.
    pub fn kernel(&self) -> Vec<SparseVec> {
        let mut e = Echelon::new(self.ncols);
        for r in &self.rows {
            e.insert(r.clone());
        }
        e.null_space()
    }
}

/// Incrementally maintained reduced row-echelon basis with unit pivots. Each row can
/// carry a tag: the combination of inserted vectors that produced it.
#[derive(Clone, Debug)]
pub struct Echelon {
    dim: usize,
    rows: Vec<SparseVec>,
    pivots: Vec<usize>,
    tags: Vec<SparseVec>,
    pivot_row: BTreeMap<usize, usize>,
    inserted: usize,
}

impl Echelon {
    pub fn new(dim: usize) -> Self {
        Echelon {
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
            tags: Vec::new(),
            pivot_row: BTreeMap::new(),
            inserted: 0,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    /// Reduce `v` against the basis: returns the residual and the combination
    /// (over inserted vectors) that was subtracted.
    fn reduce_tagged(&self, v: &SparseVec) -> (SparseVec, SparseVec) {
        let mut res = v.clone();
        let mut comb: SparseVec = Vec::new();
        for (&col, &r) in &self.pivot_row {
            let c = sv_get(&res, col);
            if !c.is_zero() {
                res = sv_axpy(&res, &-c.clone(), &self.rows[r]);
                comb = sv_axpy(&comb, &c, &self.tags[r]);
            }
        }
        (res, comb)
    }

    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut res = v.clone();
        for (&col, &r) in &self.pivot_row {
            let c = sv_get(&res, col);
            if !c.is_zero() {
                res = sv_axpy(&res, &-c, &self.rows[r]);
            }
        }
        res
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Insert a vector; returns `true` if it enlarged the span.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let idx = self.inserted;
        self.inserted += 1;
        let (res, comb) = self.reduce_tagged(&v);
        if res.is_empty() {
            return false;
        }
        // tag of the residual: e_idx - comb
        let tag = sv_axpy(&vec![(idx, Gq::one())], &-Gq::one(), &comb);
        let (pcol, pval) = res
            .iter()
            .min_by_key(|(c, x)| (x.bit_cost(), *c))
            .map(|(c, x)| (*c, x.clone()))
            .expect("nonempty residual");
        let inv = pval.inv().expect("nonzero pivot");
        let row = sv_scale(&res, &inv);
        let tag = sv_scale(&tag, &inv);
        for r in 0..self.rows.len() {
            let c = sv_get(&self.rows[r], pcol);
            if !c.is_zero() {
                self.rows[r] = sv_axpy(&self.rows[r], &-c.clone(), &row);
                self.tags[r] = sv_axpy(&self.tags[r], &-c, &tag);
            }
        }
        self.pivot_row.insert(pcol, self.rows.len());
        self.pivots.push(pcol);
        self.rows.push(row);
        self.tags.push(tag);
        true
    }

    /// Express `v` as a combination of the inserted vectors, if it lies in their span.
    /// Indices refer to insertion order (including rejected dependent insertions).
    pub fn combination(&self, v: &SparseVec) -> Option<SparseVec> {
        let (res, comb) = self.reduce_tagged(v);
        if res.is_empty() {
            Some(comb)
        } else {
            None
        }
    }

    /// Basis of `{x : row·x = 0 for every row}`.
    pub fn null_space(&self) -> Vec<SparseVec> {
        let mut out = Vec::new();
        for f in 0..self.dim {
            if self.pivot_row.contains_key(&f) {
                continue;
            }
            let mut x: BTreeMap<usize, Gq> = BTreeMap::new();
            x.insert(f, Gq::one());
            for (&col, &r) in &self.pivot_row {
                let c = sv_get(&self.rows[r], f);
                if !c.is_zero() {
                    x.insert(col, -c);
                }
            }
            out.push(x.into_iter().collect());
        }
        out
    }
}

/// Result of [`exact_linear_solve`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LinearSolve {
    pub rank: usize,
    pub kernel: Vec<Vec<Gq>>,
    /// A particular solution, or `None` when the system is inconsistent.
    pub solution: Option<Vec<Gq>>,
}

/// Exact rank, kernel basis and (when consistent) a particular solution of `m·x = rhs`.
pub fn exact_linear_solve(m: &Matrix, rhs: &[Gq]) -> Result<LinearSolve> {
    if rhs.len() != m.nrows {
        return Err(Error::Dimension {
            expected: m.nrows,
            found: rhs.len(),
        });
    }
    let n = m.ncols;
    let mut aug = Echelon::new(n + 1);
    for (r, b) in m.rows.iter().zip(rhs) {
        let mut row = r.clone();
        if !b.is_zero() {
            row.push((n, b.clone()));
        }
        aug.insert(row);
    }
    let mut plain = Echelon::new(n);
    for r in &m.rows {
        plain.insert(r.clone());
    }
    let rank = plain.rank();
    let kernel = plain
        .null_space()
        .iter()
        .map(|v| sv_to_dense(v, n))
        .collect();
    // x solves the system iff (x, −1) lies in the kernel of [m | rhs]
    let solution = aug
        .null_space()
        .into_iter()
        .find(|v| !sv_get(v, n).is_zero())
        .map(|v| {
            let s = -sv_get(&v, n).inv().unwrap();
            (0..n).map(|i| &sv_get(&v, i) * &s).collect()
        });
    Ok(LinearSolve {
        rank,
        kernel,
        solution,
    })
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn bareiss_det(a: &[Vec<Gq>]) -> Gq {
    let n = a.len();
    if n == 0 {
        return Gq::one();
    }
    let mut m: Vec<Vec<Gq>> = a.to_vec();
    let mut sign = Gq::one();
    let mut prev = Gq::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let swap = (k + 1..n)
                .filter(|&i| !m[i][k].is_zero())
                .min_by_key(|&i| m[i][k].bit_cost());
            match swap {
                Some(i) => {
                    m.swap(i, k);
                    sign = -sign;
                }
                None => return Gq::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = &num / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    &sign * &m[n - 1][n - 1]
}

/// Signature counts of a Hermitian form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Inertia {
    pub fn is_positive_definite(&self) -> bool {
        self.negative == 0 && self.zero == 0 && self.positive > 0
    }
    pub fn is_negative_definite(&self) -> bool {
        self.positive == 0 && self.zero == 0 && self.negative > 0
    }
    pub fn is_zero_form(&self) -> bool {
        self.positive == 0 && self.negative == 0
    }
    pub fn is_indefinite(&self) -> bool {
        self.positive > 0 && self.negative > 0
    }
}

/// Exact LDL* inertia of a Hermitian matrix (congruence with rational pivots).
pub fn hermitian_inertia(a: &[Vec<Gq>]) -> Result<Inertia> {
    let n = a.len();
    for i in 0..n {
        if a[i].len() != n {
            return Err(Error::Dimension {
                expected: n,
                found: a[i].len(),
            });
        }
        for j in 0..n {
            if a[i][j] != a[j][i].conj() {
                return Err(Error::Precondition("matrix is not Hermitian".into()));
            }
        }
    }
    let mut m = a.to_vec();
    let mut alive: Vec<usize> = (0..n).collect();
    let mut inertia = Inertia {
        positive: 0,
        negative: 0,
        zero: 0,
    };
    while !alive.is_empty() {
        let pivot = alive
            .iter()
            .copied()
            .filter(|&i| !m[i][i].is_zero())
            .min_by_key(|&i| m[i][i].bit_cost());
        let k = match pivot {
            Some(k) => k,
            None => {
                // all remaining diagonal entries vanish; find an off-diagonal entry
                let mut found = None;
                'outer: for &i in &alive {
                    for &j in &alive {
                        if i != j && !m[i][j].is_zero() {
                            found = Some((i, j));
                            break 'outer;
                        }
                    }
                }
                match found {
                    None => {
                        inertia.zero += alive.len();
                        break;
                    }
                    Some((i, j)) => {
                        // basis change e_i <- e_i + c e_j with c = conj(m_ij)
                        let c = m[i][j].conj();
                        for r in 0..n {
                            let add = &c * &m[r][j];
                            m[r][i] += &add;
                        }
                        let cc = c.conj();
                        for col in 0..n {
                            let add = &cc * &m[j][col];
                            m[i][col] += &add;
                        }
                        i
                    }
                }
            }
        };
        let d = m[k][k].clone();
        match d.real_sign() {
            Some(1) => inertia.positive += 1,
            Some(-1) => inertia.negative += 1,
            _ => {
                return Err(Error::Inconsistent(
                    "non-real pivot in Hermitian LDL".into(),
                ))
            }
        }
        alive.retain(|&i| i != k);
        let dinv = d.inv().expect("nonzero pivot");
        for &i in &alive {
            if m[i][k].is_zero() {
                continue;
            }
            let f = &m[i][k] * &dinv;
            for &j in &alive {
                let sub = &f * &m[k][j];
                m[i][j] -= &sub;
            }
        }
        for &i in &alive {
            m[i][k] = Gq::zero();
            m[k][i] = Gq::zero();
        }
    }
    Ok(inertia)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_solve() {
        let id = Matrix::identity(3);
        let rhs = vec![Gq::one(), Gq::zero(), Gq::zero()];
        let s = exact_linear_solve(&id, &rhs).unwrap();
        assert_eq!(s.rank, 3);
        assert!(s.kernel.is_empty());
        assert_eq!(s.solution.unwrap(), rhs);
    }

    #[test]
    fn zero_matrix_kernel() {
        let z = Matrix::zeros(2, 2);
        let s = exact_linear_solve(&z, &[Gq::zero(), Gq::zero()]).unwrap();
        assert_eq!(s.rank, 0);
        assert_eq!(s.kernel.len(), 2);
    }

    #[test]
    fn inconsistent_system_reports_no_solution() {
        let m = Matrix::from_ints(&[&[1, 1], &[2, 2]]);
        let s = exact_linear_solve(&m, &[Gq::one(), Gq::zero()]).unwrap();
        assert_eq!(s.rank, 1);
        assert!(s.solution.is_none());
        assert_eq!(s.kernel.len(), 1);
    }

    #[test]
    fn echelon_combination_tracks_inserted_vectors() {
        let mut e = Echelon::new(3);
        let a = sv_from_dense(&[Gq::one(), Gq::from_int(2), Gq::zero()]);
        let b = sv_from_dense(&[Gq::zero(), Gq::one(), Gq::i()]);
        e.insert(a.clone());
        e.insert(b.clone());
        let v = sv_axpy(&sv_scale(&a, &Gq::from_int(3)), &Gq::i(), &b);
        let comb = e.combination(&v).unwrap();
        assert_eq!(sv_get(&comb, 0), Gq::from_int(3));
        assert_eq!(sv_get(&comb, 1), Gq::i());
    }

    #[test]
    fn solve_when_rhs_is_cheapest_pivot() {
        let m = Matrix::from_ints(&[&[3, 6], &[0, 7]]);
        let s = exact_linear_solve(&m, &[Gq::one(), Gq::one()]).unwrap();
        let x = s.solution.unwrap();
        assert_eq!(
            m.mul_vec(&sv_from_dense(&x)),
            vec![(0, Gq::one()), (1, Gq::one())]
        );
    }

    #[test]
    fn bareiss_determinant() {
        let m = Matrix::from_ints(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 2]]).to_dense();
        assert_eq!(bareiss_det(&m), Gq::from_int(6));
        let s = Matrix::from_ints(&[&[0, 1], &[1, 0]]).to_dense();
        assert_eq!(bareiss_det(&s), Gq::from_int(-1));
    }

    #[test]
    fn inertia_of_indefinite_and_degenerate_forms() {
        let swap = Matrix::from_ints(&[&[0, 1], &[1, 0]]).to_dense();
        let i = hermitian_inertia(&swap).unwrap();
        assert_eq!((i.positive, i.negative, i.zero), (1, 1, 0));
        let semi = Matrix::from_ints(&[&[1, 1], &[1, 1]]).to_dense();
        let i = hermitian_inertia(&semi).unwrap();
        assert_eq!((i.positive, i.negative, i.zero), (1, 0, 1));
        let herm = vec![
            vec![Gq::from_int(2), Gq::i()],
            vec![-Gq::i(), Gq::from_int(2)],
        ];
        assert!(hermitian_inertia(&herm).unwrap().is_positive_definite());
    }
}
