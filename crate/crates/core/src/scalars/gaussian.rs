//! Gaussian rationals `a + b·i` with `a, b ∈ Q`.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rational::{parse_rational, rational_string, Rational};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Gq {
    pub re: Rational,
    pub im: Rational,
}

impl Gq {
    pub fn new(re: Rational, im: Rational) -> Self {
        Gq { re, im }
    }

    pub fn from_int(v: i64) -> Self {
        Gq::new(Rational::from_integer(BigInt::from(v)), Rational::zero())
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Gq::new(
            Rational::new(BigInt::from(num), BigInt::from(den)),
            Rational::zero(),
        )
    }

    pub fn real(re: Rational) -> Self {
        Gq::new(re, Rational::zero())
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Gq::new(Rational::zero(), Rational::one())
    }

    pub fn zero() -> Self {
        Gq::default()
    }

    pub fn one() -> Self {
        Gq::from_int(1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Gq::new(self.re.clone(), -self.im.clone())
    }

    /// `|z|^2`, always a nonnegative rational.
    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(Gq::new(&self.re / &n, -(&self.im / &n)))
    }

    /// `i^k` for any integer `k`.
    pub fn i_pow(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => Gq::one(),
            1 => Gq::i(),
            2 => -Gq::one(),
            _ => -Gq::i(),
        }
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        Gq::new(&self.re * r, &self.im * r)
    }

    /// Combined bit length of all numerators and denominators; used as a pivot cost.
    pub fn bit_cost(&self) -> u64 {
        self.re.numer().bits()
            + self.re.denom().bits()
            + self.im.numer().bits()
            + self.im.denom().bits()
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Gq::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Sign of a real value: -1, 0 or 1. `None` if the value is not real.
    pub fn real_sign(&self) -> Option<i8> {
        if !self.is_real() {
            return None;
        }
        Some(if self.re.is_zero() {
            0
        } else if self.re.is_positive() {
            1
        } else {
            -1
        })
    }
}

impl fmt::Debug for Gq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Gq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", rational_string(&self.re)),
            (true, false) => write!(f, "{}i", rational_string(&self.im)),
            (false, false) => {
                if self.im.is_negative() {
                    write!(
                        f,
                        "{}-{}i",
                        rational_string(&self.re),
                        rational_string(&-self.im.clone())
                    )
                } else {
                    write!(
                        f,
                        "{}+{}i",
                        rational_string(&self.re),
                        rational_string(&self.im)
                    )
                }
            }
        }
    }
}

impl From<i64> for Gq {
    fn from(v: i64) -> Self {
        Gq::from_int(v)
    }
}

impl From<Rational> for Gq {
    fn from(v: Rational) -> Self {
        Gq::real(v)
    }
}

impl<'a> Add<&'a Gq> for &'a Gq {
    type Output = Gq;
    fn add(self, o: &Gq) -> Gq {
        Gq::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl<'a> Sub<&'a Gq> for &'a Gq {
    type Output = Gq;
    fn sub(self, o: &Gq) -> Gq {
        Gq::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl<'a> Mul<&'a Gq> for &'a Gq {
    type Output = Gq;
    fn mul(self, o: &Gq) -> Gq {
        if self.im.is_zero() && o.im.is_zero() {
            return Gq::real(&self.re * &o.re);
        }
        Gq::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
}

impl<'a> Div<&'a Gq> for &'a Gq {
    type Output = Gq;
    fn div(self, o: &Gq) -> Gq {
        self * &o.inv().expect("division by zero Gaussian rational")
    }
}

impl Add for Gq {
    type Output = Gq;
    fn add(self, o: Gq) -> Gq {
        &self + &o
    }
}

impl Sub for Gq {
    type Output = Gq;
    fn sub(self, o: Gq) -> Gq {
        &self - &o
    }
}

impl Mul for Gq {
    type Output = Gq;
    fn mul(self, o: Gq) -> Gq {
        &self * &o
    }
}

impl Div for Gq {
    type Output = Gq;
    fn div(self, o: Gq) -> Gq {
        &self / &o
    }
}

impl Neg for Gq {
    type Output = Gq;
    fn neg(self) -> Gq {
        Gq::new(-self.re, -self.im)
    }
}

impl Neg for &Gq {
    type Output = Gq;
    fn neg(self) -> Gq {
        Gq::new(-self.re.clone(), -self.im.clone())
    }
}

impl AddAssign<&Gq> for Gq {
    fn add_assign(&mut self, o: &Gq) {
        self.re += &o.re;
        self.im += &o.im;
    }
}

impl SubAssign<&Gq> for Gq {
    fn sub_assign(&mut self, o: &Gq) {
        self.re -= &o.re;
        self.im -= &o.im;
    }
}

impl MulAssign<&Gq> for Gq {
    fn mul_assign(&mut self, o: &Gq) {
        *self = &*self * o;
    }
}

impl Serialize for Gq {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Gq", 2)?;
        st.serialize_field("re", &rational_string(&self.re))?;
        st.serialize_field("im", &rational_string(&self.im))?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for Gq {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            re: String,
            im: String,
        }
        let raw = Raw::deserialize(d)?;
        let re = parse_rational(&raw.re).map_err(serde::de::Error::custom)?;
        let im = parse_rational(&raw.im).map_err(serde::de::Error::custom)?;
        Ok(Gq::new(re, im))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn i_squared_is_minus_one() {
        assert_eq!(&Gq::i() * &Gq::i(), -Gq::one());
        assert_eq!(Gq::i_pow(3), -Gq::i());
        assert_eq!(Gq::i_pow(-1), -Gq::i());
    }

    #[test]
    fn inverse_of_zero_is_none() {
        assert!(Gq::zero().inv().is_none());
        let z = Gq::new(
            Rational::from_integer(3.into()),
            Rational::from_integer(4.into()),
        );
        assert_eq!(&z * &z.inv().unwrap(), Gq::one());
    }

    #[test]
    fn json_shape() {
        let z = Gq::new(
            Rational::new(1.into(), 2.into()),
            Rational::from_integer((-3).into()),
        );
        let s = serde_json::to_string(&z).unwrap();
        assert_eq!(s, r#"{"re":"1/2","im":"-3"}"#);
        let back: Gq = serde_json::from_str(&s).unwrap();
        assert_eq!(back, z);
    }
}
