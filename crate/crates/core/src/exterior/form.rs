//! Differential forms on `R^{4n}` with polynomial coefficients over `Q(i)`.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::scalars::linalg::SparseVec;
use crate::scalars::{Gq, Polynomial, Rational};

use super::basis::{extract_sign, generators, sort_sign, wedge_sign, Mask};
use super::frame::{tables, Frame, FrameTables};

/// A form `Σ_m f_m e_m` where `e_m` runs over monomials of a coframe.
#[derive(Clone, PartialEq, Eq)]
pub struct Form {
    n: usize,
    frame: Frame,
    terms: BTreeMap<Mask, Polynomial>,
}

/// Linear combination of coframe monomials with constant coefficients.
pub type MaskVec = BTreeMap<Mask, Gq>;

impl Form {
    pub fn zero(n: usize, frame: Frame) -> Self {
        assert!((1..16).contains(&n), "quaternionic dimension out of range");
        Form {
            n,
            frame,
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(n: usize, f: Polynomial) -> Self {
        Form::monomial(n, Frame::Real, 0, f)
    }

    pub fn constant(n: usize, c: Gq) -> Self {
        Form::scalar(n, Polynomial::constant(4 * n, c))
    }

    pub fn monomial(n: usize, frame: Frame, mask: Mask, f: Polynomial) -> Self {
        let mut out = Form::zero(n, frame);
        out.add_term(mask, &f);
        out
    }

    pub fn basis(n: usize, frame: Frame, mask: Mask) -> Self {
        Form::monomial(n, frame, mask, Polynomial::one(4 * n))
    }

    /// `e_{g₁} ∧ … ∧ e_{g_k}` in the given order.
    pub fn from_generators(n: usize, frame: Frame, gens: &[usize], c: Gq) -> Result<Self> {
        for &g in gens {
            if g >= 4 * n {
                return Err(Error::IndexOutOfRange {
                    index: g,
                    bound: 4 * n,
                });
            }
        }
        Ok(match sort_sign(gens) {
            None => Form::zero(n, frame),
            Some((mask, s)) => {
                let c = if s < 0 { -c } else { c };
                Form::monomial(n, frame, mask, Polynomial::constant(4 * n, c))
            }
        })
    }

    pub fn from_mask_vec(n: usize, frame: Frame, v: &MaskVec) -> Self {
        let mut out = Form::zero(n, frame);
        for (m, c) in v {
            out.add_term(*m, &Polynomial::constant(4 * n, c.clone()));
        }
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nvars(&self) -> usize {
        4 * self.n
    }

    pub fn frame(&self) -> Frame {
        self.frame
    }

    pub fn tables(&self) -> Arc<FrameTables> {
        tables(self.n, self.frame)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mask, &Polynomial)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, mask: Mask) -> Polynomial {
        self.terms
            .get(&mask)
            .cloned()
            .unwrap_or_else(|| Polynomial::zero(self.nvars()))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, mask: Mask, f: &Polynomial) {
        if f.is_zero() {
            return;
        }
        debug_assert!(mask >> (4 * self.n) == 0);
        match self.terms.entry(mask) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(f.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                o.get_mut().add_assign(f);
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Degrees present, ascending.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.terms.keys().map(|m| m.count_ones() as usize).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// The common degree, `None` for zero or mixed forms.
    pub fn degree(&self) -> Option<usize> {
        match self.degrees().as_slice() {
            [k] => Some(*k),
            _ => None,
        }
    }

    pub fn homogeneous_degree(&self) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::Precondition("zero form has no degree".into()));
        }
        self.degree().ok_or(Error::NonHomogeneous)
    }

    pub fn component(&self, k: usize) -> Form {
        self.filter(|m| m.count_ones() as usize == k)
    }

    pub fn filter(&self, keep: impl Fn(Mask) -> bool) -> Form {
        Form {
            n: self.n,
            frame: self.frame,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(**m))
                .map(|(m, f)| (*m, f.clone()))
                .collect(),
        }
    }

    /// Whether every coefficient is a constant polynomial.
    pub fn is_constant(&self) -> bool {
        self.terms.values().all(|f| f.is_constant())
    }

    pub fn to_mask_vec(&self) -> Result<MaskVec> {
        let mut out = MaskVec::new();
        for (m, f) in &self.terms {
            if !f.is_constant() {
                return Err(Error::Precondition(
                    "form has non-constant coefficients".into(),
                ));
            }
            out.insert(*m, f.constant_term());
        }
        Ok(out)
    }

    fn check_compatible(&self, o: &Form) -> Result<()> {
        if self.n != o.n {
            return Err(Error::Dimension {
                expected: self.n,
                found: o.n,
            });
        }
        Ok(())
    }

    /// `o` expressed in this form's frame.
    fn aligned<'a>(&self, o: &'a Form) -> std::borrow::Cow<'a, Form> {
        if o.frame == self.frame {
            std::borrow::Cow::Borrowed(o)
        } else {
            std::borrow::Cow::Owned(o.to_frame(self.frame))
        }
    }

    pub fn checked_add(&self, o: &Form) -> Result<Form> {
        self.check_compatible(o)?;
        let o = self.aligned(o);
        let mut out = self.clone();
        for (m, f) in &o.terms {
            out.add_term(*m, f);
        }
        Ok(out)
    }

    pub fn add(&self, o: &Form) -> Form {
        self.checked_add(o).expect("forms of different dimensions")
    }

    pub fn sub(&self, o: &Form) -> Form {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Form {
        self.scale(&-Gq::one())
    }

    pub fn scale(&self, c: &Gq) -> Form {
        if c.is_zero() {
            return Form::zero(self.n, self.frame);
        }
        Form {
            n: self.n,
            frame: self.frame,
            terms: self.terms.iter().map(|(m, f)| (*m, f.scale(c))).collect(),
        }
    }

    pub fn scale_rational(&self, r: &Rational) -> Form {
        self.scale(&Gq::real(r.clone()))
    }

    pub fn mul_poly(&self, p: &Polynomial) -> Form {
        let mut out = Form::zero(self.n, self.frame);
        for (m, f) in &self.terms {
            out.add_term(*m, &f.mul(p));
        }
        out
    }

    pub fn checked_wedge(&self, o: &Form) -> Result<Form> {
        self.check_compatible(o)?;
        let o = self.aligned(o);
        let mut out = Form::zero(self.n, self.frame);
        for (a, f) in &self.terms {
            for (b, g) in &o.terms {
                if let Some(s) = wedge_sign(*a, *b) {
                    let prod = f.mul(g);
                    if s < 0 {
                        out.add_term(a | b, &prod.neg());
                    } else {
                        out.add_term(a | b, &prod);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn wedge(&self, o: &Form) -> Form {
        self.checked_wedge(o)
            .expect("forms of different dimensions")
    }

    /// `self^{∧k}`, with `self^0 = 1`.
    pub fn wedge_pow(&self, k: usize) -> Form {
        let mut acc = Form::constant(self.n, Gq::one()).to_frame(self.frame);
        for _ in 0..k {
            acc = acc.wedge(self);
        }
        acc
    }
}

/// Image of a monomial under the algebra homomorphism extending `images` on generators.
pub fn multiplicative_image(mask: Mask, images: &[SparseVec]) -> Vec<(Mask, Gq)> {
    let mut acc: Vec<(Mask, Gq)> = vec![(0, Gq::one())];
    for g in generators(mask) {
        let mut next: BTreeMap<Mask, Gq> = BTreeMap::new();
        for (m, c) in &acc {
            for (h, d) in &images[g] {
                if let Some(s) = wedge_sign(*m, 1 << h) {
                    let v = c * d;
                    let e = next.entry(m | (1 << h)).or_insert_with(Gq::zero);
                    if s < 0 {
                        *e -= &v;
                    } else {
                        *e += &v;
                    }
                }
            }
        }
        acc = next.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    }
    acc
}

/// Image of a monomial under the derivation extending `images` on generators.
pub fn derivation_image(mask: Mask, images: &[SparseVec]) -> Vec<(Mask, Gq)> {
    let mut out: BTreeMap<Mask, Gq> = BTreeMap::new();
    for g in generators(mask) {
        let rest = mask & !(1 << g);
        let s0 = extract_sign(mask, g);
        for (h, d) in &images[g] {
            if let Some(s1) = wedge_sign(1 << h, rest) {
                let e = out.entry(rest | (1 << h)).or_insert_with(Gq::zero);
                if s0 * s1 < 0 {
                    *e -= d;
                } else {
                    *e += d;
                }
            }
        }
    }
    out.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

impl Form {
    /// Applies a linear map given on monomials, keeping the frame.
    pub fn map_monomials(&self, f: impl Fn(Mask) -> Vec<(Mask, Gq)> + Sync) -> Form {
        let parts: Vec<Vec<(Mask, Polynomial)>> = self
            .terms
            .par_iter()
            .map(|(m, p)| f(*m).into_iter().map(|(m2, c)| (m2, p.scale(&c))).collect())
            .collect();
        let mut out = Form::zero(self.n, self.frame);
        for part in parts {
            for (m, p) in part {
                out.add_term(m, &p);
            }
        }
        out
    }

    pub fn multiplicative(&self, images: &[SparseVec]) -> Form {
        self.map_monomials(|m| multiplicative_image(m, images))
    }

    pub fn derivation(&self, images: &[SparseVec]) -> Form {
        self.map_monomials(|m| derivation_image(m, images))
    }

    pub fn to_frame(&self, target: Frame) -> Form {
        if target == self.frame {
            return self.clone();
        }
        let images = match (self.frame, target) {
            (Frame::Real, Frame::Complex) => tables(self.n, Frame::Complex).from_real.clone(),
            (Frame::Complex, Frame::Real) => tables(self.n, Frame::Complex).to_real.clone(),
            _ => unreachable!(),
        };
        let mut out = self.multiplicative(&images);
        out.frame = target;
        out
    }

    pub fn to_real(&self) -> Form {
        self.to_frame(Frame::Real)
    }

    pub fn to_complex(&self) -> Form {
        self.to_frame(Frame::Complex)
    }

    /// Exterior derivative.
    pub fn d(&self) -> Form {
        self.d_along(|_| true)
    }

    /// `Σ_h e_h ∧ D_h` over the frame generators `h` selected by `keep`; in the complex
    /// frame the unbarred generators give `∂` and the barred ones `∂̄`.
    pub fn d_along(&self, keep: impl Fn(usize) -> bool + Sync) -> Form {
        let t = self.tables();
        let dim = t.dim();
        let parts: Vec<Vec<(Mask, Polynomial)>> = self
            .terms
            .par_iter()
            .map(|(m, f)| {
                let mut v = Vec::new();
                if f.is_constant() {
                    return v;
                }
                for h in (0..dim).filter(|h| keep(*h)) {
                    if let Some(s) = wedge_sign(1 << h, *m) {
                        let df = f.directional(&t.deriv[h]);
                        if !df.is_zero() {
                            v.push((m | (1 << h), if s < 0 { df.neg() } else { df }));
                        }
                    }
                }
                v
            })
            .collect();
        let mut out = Form::zero(self.n, self.frame);
        for part in parts {
            for (m, p) in part {
                out.add_term(m, &p);
            }
        }
        out
    }

    /// Complex conjugate.
    pub fn conj(&self) -> Form {
        let t = self.tables();
        let mut out = Form::zero(self.n, self.frame);
        for (m, f) in &self.terms {
            let gens: Vec<usize> = generators(*m)
                .into_iter()
                .map(|g| t.conjugate_generator(g))
                .collect();
            let (m2, s) = sort_sign(&gens).expect("conjugation permutes generators");
            let c = f.conj();
            out.add_term(m2, &if s < 0 { c.neg() } else { c });
        }
        out
    }

    pub fn is_real(&self) -> bool {
        self.to_real().terms.values().all(|f| f.is_real())
    }

    /// Real part, in the real frame.
    pub fn real_part(&self) -> Form {
        let r = self.to_real();
        let mut out = Form::zero(self.n, Frame::Real);
        for (m, f) in &r.terms {
            out.add_term(*m, &f.real_part());
        }
        out
    }

    /// Equality as forms, regardless of frame.
    pub fn same_as(&self, o: &Form) -> bool {
        self.n == o.n && self.sub(o).is_zero()
    }

    /// Contraction with the vector dual to frame generator `g`.
    pub fn interior(&self, g: usize) -> Form {
        let mut out = Form::zero(self.n, self.frame);
        for (m, f) in &self.terms {
            if m & (1 << g) != 0 {
                let s = extract_sign(*m, g);
                out.add_term(m & !(1 << g), &if s < 0 { f.neg() } else { f.clone() });
            }
        }
        out
    }

    pub fn eval(&self, point: &[Rational]) -> Form {
        let mut out = Form::zero(self.n, self.frame);
        for (m, f) in &self.terms {
            out.add_term(*m, &Polynomial::constant(self.nvars(), f.eval(point)));
        }
        out
    }

    /// Coefficient of `dx₁ ∧ dy₁ ∧ … ∧ dw_n`.
    pub fn top_coefficient(&self) -> Polynomial {
        let full = (1u64 << (4 * self.n)) - 1;
        self.to_real().coeff(full)
    }

    /// Top-degree coefficient relative to `Vol`, in any frame.
    pub fn top_value(&self) -> Polynomial {
        let full = (1u64 << (4 * self.n)) - 1;
        match self.frame {
            Frame::Real => self.coeff(full),
            Frame::Complex => self.coeff(full).scale(&complex_top_ratio(self.n)),
        }
    }

    /// Euclidean Hodge star for the flat metric, `α ∧ ⋆β̄ = ⟨α, β⟩ vol`.
    pub fn euclidean_star(&self) -> Form {
        let full = (1u64 << (4 * self.n)) - 1;
        let r = self.to_real();
        let mut out = Form::zero(self.n, Frame::Real);
        for (m, f) in &r.terms {
            let comp = full & !m;
            let s = wedge_sign(*m, comp).unwrap();
            out.add_term(comp, &if s < 0 { f.neg() } else { f.clone() });
        }
        out
    }

    /// Pointwise Hermitian product `Σ_m f_m ḡ_m` in the flat metric.
    pub fn pointwise_inner(&self, o: &Form) -> Polynomial {
        let a = self.to_real();
        let b = o.to_real();
        let mut acc = Polynomial::zero(self.nvars());
        for (m, f) in &a.terms {
            if let Some(g) = b.terms.get(m) {
                acc.add_assign(&f.mul(&g.conj()));
            }
        }
        acc
    }

    /// Flat Hermitian product of constant forms.
    pub fn inner(&self, o: &Form) -> Result<Gq> {
        let p = self.pointwise_inner(o);
        if !p.is_constant() {
            return Err(Error::Precondition(
                "inner product needs constant forms".into(),
            ));
        }
        Ok(p.constant_term())
    }

    /// `(p, q)` components present (complex frame view).
    pub fn bidegrees(&self) -> Vec<(usize, usize)> {
        let c = self.to_complex();
        let t = c.tables();
        let mut v: Vec<(usize, usize)> = c.terms.keys().map(|m| t.bidegree(*m)).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// The `(p, q)` component, in the complex frame.
    pub fn bidegree_component(&self, p: usize, q: usize) -> Form {
        let c = self.to_complex();
        let t = c.tables();
        c.filter(|m| t.bidegree(m) == (p, q))
    }
}

/// `θ₁∧…∧θ_{2n}∧θ̄₁∧…∧θ̄_{2n} = c·Vol`; returns `c`.
pub fn complex_top_ratio(n: usize) -> Gq {
    static CACHE: std::sync::OnceLock<std::sync::Mutex<std::collections::HashMap<usize, Gq>>> =
        std::sync::OnceLock::new();
    let map = CACHE.get_or_init(Default::default);
    if let Some(c) = map.lock().unwrap().get(&n) {
        return c.clone();
    }
    let full = (1u64 << (4 * n)) - 1;
    let c = Form::basis(n, Frame::Complex, full)
        .to_real()
        .coeff(full)
        .constant_term();
    map.lock().unwrap().insert(n, c.clone());
    c
}

/// `λ` with `a = λ·b`, if it exists (`b` nonzero).
pub fn form_ratio(a: &Form, b: &Form) -> Option<Gq> {
    let b = b.to_frame(a.frame());
    let (m, fb) = b.terms().next()?;
    let fa = a.coeff(*m);
    if !fb.is_constant() || !fa.is_constant() {
        // fall back to comparing a single monomial coefficient
        let (mono, cb) = fb.terms().next()?;
        let lambda = &fa.coeff(mono) / cb;
        return if a.same_as(&b.scale(&lambda)) {
            Some(lambda)
        } else {
            None
        };
    }
    let lambda = &fa.constant_term() / &fb.constant_term();
    if a.same_as(&b.scale(&lambda)) {
        Some(lambda)
    } else {
        None
    }
}

impl std::fmt::Debug for Form {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let names: Vec<String> = (0..4 * self.n)
            .map(|g| match self.frame {
                Frame::Real => format!("d{}", crate::scalars::poly::coordinate_name(g)),
                Frame::Complex => {
                    let h = 2 * self.n;
                    if g < h {
                        format!("θ{}", g + 1)
                    } else {
                        format!("θ̄{}", g - h + 1)
                    }
                }
            })
            .collect();
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let basis: Vec<&str> = generators(*m).iter().map(|g| names[*g].as_str()).collect();
            if basis.is_empty() {
                write!(f, "({c})")?;
            } else {
                write!(f, "({c}) {}", basis.join("∧"))?;
            }
        }
        Ok(())
    }
}

impl serde::Serialize for Form {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        #[derive(serde::Serialize)]
        struct Term<'a> {
            basis: Vec<usize>,
            coeff_poly: &'a Polynomial,
        }
        let r = self.to_real();
        let terms: Vec<Term> = r
            .terms
            .iter()
            .map(|(m, f)| Term {
                basis: generators(*m),
                coeff_poly: f,
            })
            .collect();
        let mut st = s.serialize_struct("Form", 2)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}

impl Form {
    /// Parses `{"n": .., "terms": [{"basis": [..], "coeff_poly": ..}]}` (real coframe).
    pub fn from_json_value(v: &serde_json::Value) -> Result<Form> {
        let n = v
            .get("n")
            .and_then(|x| x.as_u64())
            .ok_or_else(|| Error::Parse("form needs integer field n".into()))?
            as usize;
        if !(1..16).contains(&n) {
            return Err(Error::Parse(format!("unsupported n = {n}")));
        }
        let terms = v
            .get("terms")
            .and_then(|x| x.as_array())
            .ok_or_else(|| Error::Parse("form needs array field terms".into()))?;
        let mut out = Form::zero(n, Frame::Real);
        for t in terms {
            let basis: Vec<usize> = t
                .get("basis")
                .and_then(|b| b.as_array())
                .ok_or_else(|| Error::Parse("term needs basis".into()))?
                .iter()
                .map(|x| {
                    x.as_u64()
                        .map(|g| g as usize)
                        .ok_or_else(|| Error::Parse("bad basis index".into()))
                })
                .collect::<Result<_>>()?;
            let coeff = t
                .get("coeff_poly")
                .ok_or_else(|| Error::Parse("term needs coeff_poly".into()))?;
            let f = Polynomial::from_json_value(coeff, 4 * n)?;
            for &g in &basis {
                if g >= 4 * n {
                    return Err(Error::IndexOutOfRange {
                        index: g,
                        bound: 4 * n,
                    });
                }
            }
            let (mask, s) =
                sort_sign(&basis).ok_or_else(|| Error::Parse("repeated basis index".into()))?;
            out.add_term(mask, &if s < 0 { f.neg() } else { f });
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::poly::Monomial;

    fn x(n: usize, i: usize) -> Polynomial {
        Polynomial::var(4 * n, i)
    }

    fn sample(n: usize) -> Form {
        // (x1² y1 + 3 z1) dx1 + x1 w1 dz1∧dw1 - 2 dy1
        let p = x(n, 0)
            .pow(2)
            .mul(&x(n, 1))
            .add(&x(n, 2).scale(&Gq::from_int(3)));
        let a = Form::monomial(n, Frame::Real, 1, p);
        let b = Form::monomial(n, Frame::Real, 0b1100, x(n, 0).mul(&x(n, 3)));
        let c = Form::monomial(
            n,
            Frame::Real,
            0b10,
            Polynomial::constant(4 * n, Gq::from_int(-2)),
        );
        a.add(&b).add(&c)
    }

    #[test]
    fn d_squared_vanishes() {
        let f = sample(1);
        assert!(!f.d().is_zero());
        assert!(f.d().d().is_zero());
        let g = Form::scalar(2, x(2, 0).pow(3).mul(&x(2, 5)).mul(&x(2, 7)));
        assert!(g.d().d().is_zero());
        assert!(g.to_complex().d().d().is_zero());
    }

    #[test]
    fn d_commutes_with_frame_change() {
        let f = sample(1);
        assert!(f.d().same_as(&f.to_complex().d()));
        assert_eq!(f.to_complex().to_real(), f);
    }

    #[test]
    fn leibniz_rule() {
        let a = sample(1).component(1);
        let b = Form::monomial(1, Frame::Real, 0b10, x(1, 2).mul(&x(1, 0)));
        // d(a∧b) = da∧b + (-1)^1 a∧db
        let lhs = a.wedge(&b).d();
        let rhs = a.d().wedge(&b).sub(&a.wedge(&b.d()));
        assert!(lhs.same_as(&rhs));
    }

    #[test]
    fn conjugation_in_both_frames() {
        let n = 1;
        let theta = Form::basis(n, Frame::Complex, 1);
        let bar = Form::basis(n, Frame::Complex, 1 << 2);
        assert!(theta.conj().same_as(&bar));
        let w = theta.wedge(&bar).scale(&Gq::i());
        assert!(w.is_real());
        assert!(w.conj().same_as(&w));
        // θ = dx - i dy
        let expect =
            Form::basis(n, Frame::Real, 1).sub(&Form::basis(n, Frame::Real, 2).scale(&Gq::i()));
        assert!(theta.same_as(&expect));
    }

    #[test]
    fn euclidean_star_pairs_to_norm() {
        let n = 1;
        let f = Form::basis(n, Frame::Real, 0b0101)
            .add(&Form::basis(n, Frame::Real, 0b0011).scale(&Gq::from_int(2)));
        let top = f.wedge(&f.conj().euclidean_star()).top_coefficient();
        assert_eq!(top.constant_term(), Gq::from_int(5));
        assert_eq!(f.inner(&f).unwrap(), Gq::from_int(5));
        assert!(f.euclidean_star().euclidean_star().same_as(&f));
    }

    #[test]
    fn interior_is_antiderivation() {
        let a = Form::basis(1, Frame::Real, 0b0011);
        let b = Form::basis(1, Frame::Real, 0b0100);
        let lhs = a.wedge(&b).interior(0);
        let rhs = a.interior(0).wedge(&b).add(&a.wedge(&b.interior(0)));
        assert!(lhs.same_as(&rhs));
    }

    #[test]
    fn json_round_trip() {
        let f = sample(1).add(&Form::monomial(
            1,
            Frame::Real,
            0b1010,
            Polynomial::term(4, Monomial::var(1), Gq::i()),
        ));
        let v = serde_json::to_value(&f).unwrap();
        assert_eq!(Form::from_json_value(&v).unwrap(), f);
        assert!(Form::from_json_value(
            &serde_json::json!({"n": 1, "terms": [{"basis": [0, 0], "coeff_poly": []}]})
        )
        .is_err());
    }
}
