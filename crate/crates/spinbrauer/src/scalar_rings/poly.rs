use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde_json::Value;

use crate::error::Error;

/// An element of ℤ[δ], stored sparsely by exponent.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct DeltaPolynomial {
    coefficients: BTreeMap<u32, BigInt>,
}

impl DeltaPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(BigInt::from(c), 0)
    }

    /// δ itself.
    pub fn delta() -> Self {
        Self::monomial(BigInt::one(), 1)
    }

    pub fn delta_pow(e: u32) -> Self {
        Self::monomial(BigInt::one(), e)
    }

    pub fn monomial(c: BigInt, e: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (u32, BigInt)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, e: u32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.coefficients.entry(e).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.coefficients.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.coefficients.keys().next_back().copied()
    }

    pub fn coefficient(&self, e: u32) -> BigInt {
        self.coefficients.get(&e).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &BigInt)> {
        self.coefficients.iter().map(|(e, c)| (*e, c))
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::from_terms(self.terms().map(|(e, c)| (e, c * k)))
    }

    pub fn shift(&self, by: u32) -> Self {
        DeltaPolynomial { coefficients: self.terms().map(|(e, c)| (e + by, c.clone())).collect() }
    }

    /// Substitute δ := k.
    pub fn eval_at_integer(&self, k: i64) -> BigInt {
        let k = BigInt::from(k);
        self.terms().map(|(e, c)| c * Pow::pow(&k, e)).fold(BigInt::zero(), |acc, t| acc + t)
    }

    /// Coefficients reduced modulo `p`; `p == 0` leaves them untouched.
    pub fn reduce_mod(&self, p: u64) -> Self {
        if p == 0 {
            return self.clone();
        }
        let p = BigInt::from(p);
        Self::from_terms(self.terms().map(|(e, c)| {
            let r = c % &p;
            (e, if r.is_negative() { r + &p } else { r })
        }))
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.terms().map(|(e, c)| Value::Array(vec![Value::from(e), bigint_to_json(c)])).collect())
    }

    pub fn from_json(v: &Value) -> Result<Self, Error> {
        let bad = || Error::Parse(format!("invalid polynomial {v}"));
        let arr = v.as_array().ok_or_else(bad)?;
        let mut p = Self::zero();
        let mut last: Option<u32> = None;
        for t in arr {
            let pair = t.as_array().filter(|a| a.len() == 2).ok_or_else(bad)?;
            let e = pair[0].as_u64().and_then(|e| u32::try_from(e).ok()).ok_or_else(bad)?;
            if last.is_some_and(|l| l >= e) {
                return Err(Error::Parse("polynomial exponents must be strictly increasing".into()));
            }
            last = Some(e);
            let c = bigint_from_json(&pair[1]).ok_or_else(bad)?;
            if c.is_zero() {
                return Err(Error::Parse("polynomial stores a zero coefficient".into()));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }
}

pub(crate) fn bigint_to_json(c: &BigInt) -> Value {
    match c.to_i64() {
        Some(i) => Value::from(i),
        None => Value::String(c.to_string()),
    }
}

pub(crate) fn bigint_from_json(v: &Value) -> Option<BigInt> {
    match v {
        Value::Number(n) => n.as_i64().map(BigInt::from),
        Value::String(s) => s.parse().ok(),
        _ => None,
    }
}

impl From<i64> for DeltaPolynomial {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

impl Add<&DeltaPolynomial> for &DeltaPolynomial {
    type Output = DeltaPolynomial;
    fn add(self, rhs: &DeltaPolynomial) -> DeltaPolynomial {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Sub<&DeltaPolynomial> for &DeltaPolynomial {
    type Output = DeltaPolynomial;
    fn sub(self, rhs: &DeltaPolynomial) -> DeltaPolynomial {
        self + &(-rhs)
    }
}

impl Neg for &DeltaPolynomial {
    type Output = DeltaPolynomial;
    fn neg(self) -> DeltaPolynomial {
        DeltaPolynomial { coefficients: self.terms().map(|(e, c)| (e, -c)).collect() }
    }
}

impl Mul<&DeltaPolynomial> for &DeltaPolynomial {
    type Output = DeltaPolynomial;
    fn mul(self, rhs: &DeltaPolynomial) -> DeltaPolynomial {
        let mut out = DeltaPolynomial::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<DeltaPolynomial> for DeltaPolynomial {
            type Output = DeltaPolynomial;
            fn $m(self, rhs: DeltaPolynomial) -> DeltaPolynomial {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for DeltaPolynomial {
    type Output = DeltaPolynomial;
    fn neg(self) -> DeltaPolynomial {
        -&self
    }
}

impl fmt::Display for DeltaPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.coefficients.iter().rev().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            let show_coeff = !mag.is_one() || *e == 0;
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match e {
                0 => {}
                1 => write!(f, "δ")?,
                _ => write!(f, "δ^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for DeltaPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl serde::Serialize for DeltaPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> serde::Deserialize<'de> for DeltaPolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Value::deserialize(d)?;
        DeltaPolynomial::from_json(&v).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[(u32, i64)]) -> DeltaPolynomial {
        DeltaPolynomial::from_terms(terms.iter().map(|&(e, c)| (e, BigInt::from(c))))
    }

    #[test]
    fn difference_of_squares() {
        let a = p(&[(1, 1), (0, 1)]);
        let b = p(&[(1, 1), (0, -1)]);
        assert_eq!(&a * &b, p(&[(2, 1), (0, -1)]));
    }

    #[test]
    fn additive_inverse_is_empty() {
        let s = &p(&[(1, 2)]) + &p(&[(1, -2)]);
        assert!(s.is_zero());
        assert_eq!(s.degree(), None);
        assert_eq!(s.to_json(), serde_json::json!([]));
    }

    #[test]
    fn evaluation() {
        assert_eq!(p(&[(2, 1), (0, -1)]).eval_at_integer(5), BigInt::from(24));
    }

    #[test]
    fn display() {
        assert_eq!(p(&[(2, 1), (1, -1)]).to_string(), "δ^2 - δ");
        assert_eq!(p(&[(1, -2), (0, 3)]).to_string(), "-2δ + 3");
    }

    #[test]
    fn json_round_trip() {
        let a = p(&[(0, -3), (4, 7)]);
        let v = a.to_json();
        assert_eq!(v, serde_json::json!([[0, -3], [4, 7]]));
        assert_eq!(DeltaPolynomial::from_json(&v).unwrap(), a);
        assert!(DeltaPolynomial::from_json(&serde_json::json!([[1, 0]])).is_err());
    }
}
