use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::Rational;
use crate::error::Error;

/// `a + b·√2` with rational `a`, `b`.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct RootTwoNumber {
    pub a: Rational,
    pub b: Rational,
}

impl RootTwoNumber {
    pub fn new(a: Rational, b: Rational) -> Self {
        RootTwoNumber { a, b }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn sqrt2() -> Self {
        RootTwoNumber { a: Rational::zero(), b: Rational::one() }
    }

    /// 1/√2 = √2/2.
    pub fn inv_sqrt2() -> Self {
        RootTwoNumber { a: Rational::zero(), b: Rational::new(1, 2) }
    }

    pub fn from_integer(n: i64) -> Self {
        RootTwoNumber { a: Rational::from_integer(n), b: Rational::zero() }
    }

    pub fn from_rational(a: Rational) -> Self {
        RootTwoNumber { a, b: Rational::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    /// Galois conjugate `a − b√2`.
    pub fn conjugate(&self) -> Self {
        RootTwoNumber { a: self.a.clone(), b: -&self.b }
    }

    /// Field norm `a² − 2b²`.
    pub fn norm(&self) -> Rational {
        let two = Rational::from_integer(2);
        &(&self.a * &self.a) - &(&two * &(&self.b * &self.b))
    }

    pub fn inv(&self) -> Result<Self, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // The norm of a nonzero element is nonzero because √2 is irrational.
        let n = self.norm().recip()?;
        let c = self.conjugate();
        Ok(RootTwoNumber { a: &c.a * &n, b: &c.b * &n })
    }

    pub fn scale(&self, k: &Rational) -> Self {
        RootTwoNumber { a: &self.a * k, b: &self.b * k }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "a": self.a.to_string(), "b": self.b.to_string() })
    }
}

impl From<i64> for RootTwoNumber {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl Add<&RootTwoNumber> for &RootTwoNumber {
    type Output = RootTwoNumber;
    fn add(self, rhs: &RootTwoNumber) -> RootTwoNumber {
        RootTwoNumber { a: &self.a + &rhs.a, b: &self.b + &rhs.b }
    }
}

impl AddAssign<&RootTwoNumber> for RootTwoNumber {
    fn add_assign(&mut self, rhs: &RootTwoNumber) {
        self.a += &rhs.a;
        self.b += &rhs.b;
    }
}

impl Sub<&RootTwoNumber> for &RootTwoNumber {
    type Output = RootTwoNumber;
    fn sub(self, rhs: &RootTwoNumber) -> RootTwoNumber {
        RootTwoNumber { a: &self.a - &rhs.a, b: &self.b - &rhs.b }
    }
}

impl Mul<&RootTwoNumber> for &RootTwoNumber {
    type Output = RootTwoNumber;
    fn mul(self, rhs: &RootTwoNumber) -> RootTwoNumber {
        if self.b.is_zero() && rhs.b.is_zero() {
            return RootTwoNumber::from_rational(&self.a * &rhs.a);
        }
        let two = Rational::from_integer(2);
        RootTwoNumber {
            a: &(&self.a * &rhs.a) + &(&two * &(&self.b * &rhs.b)),
            b: &(&self.a * &rhs.b) + &(&self.b * &rhs.a),
        }
    }
}

impl Neg for &RootTwoNumber {
    type Output = RootTwoNumber;
    fn neg(self) -> RootTwoNumber {
        RootTwoNumber { a: -&self.a, b: -&self.b }
    }
}

impl Neg for RootTwoNumber {
    type Output = RootTwoNumber;
    fn neg(self) -> RootTwoNumber {
        -&self
    }
}

impl Add for RootTwoNumber {
    type Output = RootTwoNumber;
    fn add(self, rhs: RootTwoNumber) -> RootTwoNumber {
        &self + &rhs
    }
}

impl Sub for RootTwoNumber {
    type Output = RootTwoNumber;
    fn sub(self, rhs: RootTwoNumber) -> RootTwoNumber {
        &self - &rhs
    }
}

impl Mul for RootTwoNumber {
    type Output = RootTwoNumber;
    fn mul(self, rhs: RootTwoNumber) -> RootTwoNumber {
        &self * &rhs
    }
}

impl fmt::Display for RootTwoNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "{}√2", self.b),
            (false, false) => write!(f, "{} + {}√2", self.a, self.b),
        }
    }
}

impl fmt::Debug for RootTwoNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(a: i64, b: i64) -> RootTwoNumber {
        RootTwoNumber::new(a.into(), b.into())
    }

    #[test]
    fn norm_form() {
        assert_eq!(&r(1, 1) * &r(1, -1), r(-1, 0));
    }

    #[test]
    fn sqrt2_squared() {
        assert_eq!(&r(0, 1) * &r(0, 1), r(2, 0));
    }

    #[test]
    fn rationalized_inverse() {
        assert_eq!(r(1, 1).inv().unwrap(), r(-1, 1));
        assert_eq!(&RootTwoNumber::inv_sqrt2() * &RootTwoNumber::sqrt2(), RootTwoNumber::one());
    }

    #[test]
    fn inverse_of_zero_fails() {
        assert!(matches!(RootTwoNumber::zero().inv(), Err(Error::DivisionByZero)));
    }

    #[test]
    fn serializes_as_strings() {
        let x = RootTwoNumber::new(Rational::new(-3, 4), 2.into());
        assert_eq!(serde_json::to_value(&x).unwrap(), serde_json::json!({"a": "-3/4", "b": "2"}));
        let back: RootTwoNumber = serde_json::from_value(x.to_json()).unwrap();
        assert_eq!(back, x);
    }
}
