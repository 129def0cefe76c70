//! Sparse multivariate polynomials in `4n` real coordinates with Gaussian-rational coefficients.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::gaussian::Gq;
use super::rational::Rational;
use crate::error::{Error, Result};

/// Exponent vector stored sparsely as `(coordinate, exponent)` pairs, sorted by
/// coordinate, exponents strictly positive.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(Vec<(u16, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(i: usize) -> Self {
        Monomial(vec![(i as u16, 1)])
    }

    pub fn from_dense(exps: &[u32]) -> Self {
        Monomial(
            exps.iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| (i as u16, e))
                .collect(),
        )
    }

    pub fn to_dense(&self, nvars: usize) -> Vec<u32> {
        let mut out = vec![0; nvars];
        for &(v, e) in &self.0 {
            out[v as usize] = e;
        }
        out
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, var: usize) -> u32 {
        self.0
            .iter()
            .find(|&&(v, _)| v as usize == var)
            .map(|&(_, e)| e)
            .unwrap_or(0)
    }

    pub fn max_var(&self) -> Option<usize> {
        self.0.last().map(|&(v, _)| v as usize)
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + o.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < o.0.len() {
            let (a, b) = (self.0[i], o.0[j]);
            match a.0.cmp(&b.0) {
                std::cmp::Ordering::Less => {
                    out.push(a);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a.0, a.1 + b.1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&o.0[j..]);
        Monomial(out)
    }

    /// `∂/∂x_var` of the monomial: `(exponent, lowered monomial)`, or `None` if it vanishes.
    pub fn derive(&self, var: usize) -> Option<(u32, Monomial)> {
        let pos = self.0.iter().position(|&(v, _)| v as usize == var)?;
        let e = self.0[pos].1;
        let mut out = self.0.clone();
        if e == 1 {
            out.remove(pos);
        } else {
            out[pos].1 -= 1;
        }
        Some((e, Monomial(out)))
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        let mut acc = Rational::from_integer(1.into());
        for &(v, e) in &self.0 {
            for _ in 0..e {
                acc *= &point[v as usize];
            }
        }
        acc
    }
}

/// All monomials in `nvars` variables of total degree exactly `deg`, in lexicographic order.
pub fn monomials_of_degree(nvars: usize, deg: u32) -> Vec<Monomial> {
    fn rec(nvars: usize, var: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if var + 1 == nvars {
            cur[var] = left;
            out.push(Monomial::from_dense(cur));
            cur[var] = 0;
            return;
        }
        for e in (0..=left).rev() {
            cur[var] = e;
            rec(nvars, var + 1, left - e, cur, out);
        }
        cur[var] = 0;
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if deg == 0 {
            out.push(Monomial::one());
        }
        return out;
    }
    let mut cur = vec![0; nvars];
    rec(nvars, 0, deg, &mut cur, &mut out);
    out
}

#[derive(Clone, PartialEq, Eq, Default)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, Gq>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Gq) -> Self {
        let mut p = Polynomial::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(), c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Polynomial::constant(nvars, Gq::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Polynomial::term(nvars, Monomial::var(i), Gq::one())
    }

    pub fn term(nvars: usize, m: Monomial, c: Gq) -> Self {
        debug_assert!(m.max_var().is_none_or(|v| v < nvars));
        let mut p = Polynomial::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Gq)>) -> Self {
        let mut p = Polynomial::zero(nvars);
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Gq)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Maximal total degree; 0 for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn constant_term(&self) -> Gq {
        self.terms
            .get(&Monomial::one())
            .cloned()
            .unwrap_or_default()
    }

    pub fn coeff(&self, m: &Monomial) -> Gq {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, m: Monomial, c: &Gq) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_same(&self, o: &Polynomial) -> Result<()> {
        if self.nvars != o.nvars {
            return Err(Error::Dimension {
                expected: self.nvars,
                found: o.nvars,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, o: &Polynomial) -> Result<Polynomial> {
        self.check_same(o)?;
        Ok(self.add(o))
    }

    pub fn checked_mul(&self, o: &Polynomial) -> Result<Polynomial> {
        self.check_same(o)?;
        Ok(self.mul(o))
    }

    pub fn add(&self, o: &Polynomial) -> Polynomial {
        debug_assert_eq!(self.nvars, o.nvars);
        let mut out = self.clone();
        out.add_assign(o);
        out
    }

    pub fn add_assign(&mut self, o: &Polynomial) {
        for (m, c) in &o.terms {
            self.add_term(m.clone(), c);
        }
    }

    /// `self += c · o`.
    pub fn add_scaled(&mut self, o: &Polynomial, c: &Gq) {
        if c.is_zero() {
            return;
        }
        for (m, a) in &o.terms {
            self.add_term(m.clone(), &(a * c));
        }
    }

    pub fn sub(&self, o: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out.add_scaled(o, &-Gq::one());
        out
    }

    pub fn neg(&self) -> Polynomial {
        self.scale(&-Gq::one())
    }

    pub fn mul(&self, o: &Polynomial) -> Polynomial {
        debug_assert_eq!(self.nvars, o.nvars);
        let mut out = Polynomial::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                out.add_term(ma.mul(mb), &(ca * cb));
            }
        }
        out
    }

    pub fn scale(&self, c: &Gq) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.nvars);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Complex conjugate of the coefficients; the coordinates are real.
    pub fn conj(&self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a.conj()))
                .collect(),
        }
    }

    pub fn real_part(&self) -> Polynomial {
        Polynomial::from_terms(
            self.nvars,
            self.terms
                .iter()
                .map(|(m, a)| (m.clone(), Gq::real(a.re.clone()))),
        )
    }

    pub fn is_real(&self) -> bool {
        self.terms.values().all(Gq::is_real)
    }

    pub fn checked_partial(&self, coord: usize) -> Result<Polynomial> {
        if coord >= self.nvars {
            return Err(Error::IndexOutOfRange {
                index: coord,
                bound: self.nvars,
            });
        }
        Ok(self.partial(coord))
    }

    /// Formal partial derivative `∂/∂x_coord`.
    pub fn partial(&self, coord: usize) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            if let Some((e, m2)) = m.derive(coord) {
                out.add_term(m2, &c.scale_rational(&Rational::from_integer(e.into())));
            }
        }
        out
    }

    /// Directional derivative `Σ_j dir_j ∂/∂x_j` with complex direction coefficients.
    pub fn directional(&self, dir: &[(usize, Gq)]) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (j, c) in dir {
            out.add_scaled(&self.partial(*j), c);
        }
        out
    }

    pub fn eval(&self, point: &[Rational]) -> Gq {
        let mut acc = Gq::zero();
        for (m, c) in &self.terms {
            acc += &c.scale_rational(&m.eval(point));
        }
        acc
    }

    /// Flat Laplacian `Σ ∂_j^2`.
    pub fn laplacian(&self) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for j in 0..self.nvars {
            out.add_assign(&self.partial(j).partial(j));
        }
        out
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for &(v, e) in &m.0 {
                write!(f, "*{}", coordinate_name(v as usize))?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

/// `x1, y1, z1, w1, x2, …` in the fixed coordinate order.
pub fn coordinate_name(i: usize) -> String {
    let letter = ["x", "y", "z", "w"][i % 4];
    format!("{letter}{}", i / 4 + 1)
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    exp: Vec<u32>,
    coeff: Gq,
}

impl Serialize for Polynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<TermJson> = self
            .terms
            .iter()
            .map(|(m, c)| TermJson {
                exp: m.to_dense(self.nvars),
                coeff: c.clone(),
            })
            .collect();
        terms.serialize(s)
    }
}

impl Polynomial {
    /// Parse the list-of-terms JSON representation; the coordinate count comes from the
    /// exponent vectors (or `nvars` when the list is empty).
    pub fn from_json_value(v: &serde_json::Value, nvars: usize) -> Result<Polynomial> {
        let terms: Vec<TermJson> =
            serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let mut p = Polynomial::zero(nvars);
        for t in terms {
            if t.exp.len() != nvars {
                return Err(Error::Dimension {
                    expected: nvars,
                    found: t.exp.len(),
                });
            }
            p.add_term(Monomial::from_dense(&t.exp), &t.coeff);
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rational::rat;

    fn x(i: usize) -> Polynomial {
        Polynomial::var(4, i)
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(x(0).add(&x(0)), x(0).scale(&Gq::from_int(2)));
        let a = x(0).add(&x(1).scale(&Gq::i()));
        let b = x(0).sub(&x(1).scale(&Gq::i()));
        assert_eq!(a.mul(&b), x(0).mul(&x(0)).add(&x(1).mul(&x(1))));
        let half = x(0).mul(&x(0)).scale(&Gq::from_ratio(1, 2));
        assert_eq!(
            half.mul(&x(1).scale(&Gq::from_int(2))),
            x(0).mul(&x(0)).mul(&x(1))
        );
    }

    #[test]
    fn partial_examples() {
        assert_eq!(x(0).pow(3).partial(0), x(0).pow(2).scale(&Gq::from_int(3)));
        assert!(x(0).partial(1).is_zero());
        let p = x(0).mul(&x(1)).add(&x(0).pow(2));
        assert_eq!(p.partial(0), x(1).add(&x(0).scale(&Gq::from_int(2))));
    }

    #[test]
    fn mismatched_sizes_are_errors() {
        let a = Polynomial::var(4, 0);
        let b = Polynomial::var(8, 0);
        assert!(matches!(a.checked_add(&b), Err(Error::Dimension { .. })));
        assert!(matches!(a.checked_mul(&b), Err(Error::Dimension { .. })));
        assert!(matches!(
            a.checked_partial(4),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn monomial_enumeration_counts() {
        assert_eq!(monomials_of_degree(4, 4).len(), 35);
        assert_eq!(monomials_of_degree(8, 4).len(), 330);
        assert_eq!(monomials_of_degree(3, 0).len(), 1);
    }

    #[test]
    fn evaluation() {
        let p = x(0).mul(&x(1)).add(&Polynomial::constant(4, Gq::i()));
        let pt = vec![rat(1, 2), rat(2, 3), rat(0, 1), rat(0, 1)];
        assert_eq!(p.eval(&pt), Gq::new(rat(1, 3), rat(1, 1)));
    }

    #[test]
    fn json_round_trip() {
        let p = x(0)
            .pow(2)
            .add(&x(3).scale(&Gq::new(rat(1, 2), rat(-1, 3))));
        let v = serde_json::to_value(&p).unwrap();
        assert_eq!(Polynomial::from_json_value(&v, 4).unwrap(), p);
    }
}
