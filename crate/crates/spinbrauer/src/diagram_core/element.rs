use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde_json::{json, Value};

use super::SpinDiagram;
use crate::error::Error;
use crate::scalar_rings::DeltaPolynomial;

/// A finite ℤ[δ]-linear combination of spin-Brauer diagrams on `n` strands.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlgebraElement {
    n: usize,
    terms: BTreeMap<SpinDiagram, DeltaPolynomial>,
}

impl AlgebraElement {
    pub fn zero(n: usize) -> Self {
        AlgebraElement { n, terms: BTreeMap::new() }
    }

    pub fn from_diagram(d: SpinDiagram) -> Self {
        Self::term(d, DeltaPolynomial::one())
    }

    pub fn term(d: SpinDiagram, c: DeltaPolynomial) -> Self {
        let mut e = Self::zero(d.n());
        e.add_term(d, c);
        e
    }

    pub fn identity(n: usize) -> Self {
        Self::from_diagram(SpinDiagram::identity(n))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Panics if `d` has a different number of strands.
    pub fn add_term(&mut self, d: SpinDiagram, c: DeltaPolynomial) {
        assert_eq!(d.n(), self.n, "diagram size does not match element");
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&d) {
            Some(slot) => {
                *slot = &*slot + &c;
                if slot.is_zero() {
                    self.terms.remove(&d);
                }
            }
            None => {
                self.terms.insert(d, c);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &AlgebraElement, k: &DeltaPolynomial) {
        for (d, c) in &other.terms {
            self.add_term(d.clone(), c * k);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SpinDiagram, &DeltaPolynomial)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, d: &SpinDiagram) -> DeltaPolynomial {
        self.terms.get(d).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, k: &DeltaPolynomial) -> AlgebraElement {
        let mut out = AlgebraElement::zero(self.n);
        out.add_scaled(self, k);
        out
    }

    pub fn plus(&self, other: &AlgebraElement) -> Result<AlgebraElement, Error> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(format!("n = {} and n = {}", self.n, other.n)));
        }
        let mut out = self.clone();
        out.add_scaled(other, &DeltaPolynomial::one());
        Ok(out)
    }

    pub fn minus(&self, other: &AlgebraElement) -> Result<AlgebraElement, Error> {
        self.plus(&other.scale(&DeltaPolynomial::constant(-1)))
    }

    /// Specialize δ := `value` in every coefficient, dropping vanishing terms.
    pub fn evaluate_at(&self, value: i64) -> AlgebraElement {
        let mut out = AlgebraElement::zero(self.n);
        for (d, c) in &self.terms {
            out.add_term(d.clone(), DeltaPolynomial::monomial(c.eval_at_integer(value), 0));
        }
        out
    }

    /// The maximal number of through strings among the terms.
    pub fn max_through_count(&self) -> Option<usize> {
        self.terms.keys().map(SpinDiagram::through_count).max()
    }

    /// Terms with exactly `ell` through strings.
    pub fn with_through_count(&self, ell: usize) -> AlgebraElement {
        AlgebraElement {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(d, _)| d.through_count() == ell)
                .map(|(d, c)| (d.clone(), c.clone()))
                .collect(),
        }
    }

    /// Maps every diagram through `f`, extended linearly.
    pub fn map_diagrams<F: FnMut(&SpinDiagram) -> SpinDiagram>(&self, mut f: F) -> AlgebraElement {
        let mut out = AlgebraElement::zero(self.n);
        for (d, c) in &self.terms {
            out.add_term(f(d), c.clone());
        }
        out
    }

    /// Terms sorted by the canonical JSON text of their diagram.
    pub fn to_json(&self) -> Value {
        let mut rows: Vec<(String, Value)> = self
            .terms
            .iter()
            .map(|(d, c)| (d.to_json_string(), json!({ "coeff": c.to_json(), "diagram": d.to_json() })))
            .collect();
        rows.sort_by(|a, b| a.0.cmp(&b.0));
        json!({ "n": self.n, "terms": rows.into_iter().map(|r| r.1).collect::<Vec<_>>() })
    }

    pub fn from_json(v: &Value) -> Result<AlgebraElement, Error> {
        let terms = v
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("element needs a \"terms\" list".into()))?;
        let mut parsed = Vec::new();
        for t in terms {
            let d = SpinDiagram::from_json(t.get("diagram").unwrap_or(&Value::Null))?;
            let c = DeltaPolynomial::from_json(t.get("coeff").unwrap_or(&Value::Null))?;
            parsed.push((d, c));
        }
        let n = match v.get("n").and_then(Value::as_u64) {
            Some(n) => n as usize,
            None => parsed.first().map(|t| t.0.n()).ok_or_else(|| Error::Parse("empty element needs \"n\"".into()))?,
        };
        let mut out = AlgebraElement::zero(n);
        for (d, c) in parsed {
            if d.n() != n {
                return Err(Error::DimensionMismatch("terms have different n".into()));
            }
            out.add_term(d, c);
        }
        Ok(out)
    }

    /// Coefficients reduced modulo a prime, for characteristic-`p` questions.
    pub fn reduce_mod(&self, p: u64) -> AlgebraElement {
        let mut out = AlgebraElement::zero(self.n);
        for (d, c) in &self.terms {
            out.add_term(d.clone(), c.reduce_mod(p));
        }
        out
    }

    pub fn integer_coefficient(&self, d: &SpinDiagram) -> Option<BigInt> {
        let c = self.coefficient(d);
        match c.degree() {
            None => Some(BigInt::from(0)),
            Some(0) => Some(c.coefficient(0)),
            _ => None,
        }
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (d, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})·{}", d.to_json_string())?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cancellation_and_evaluation() {
        let d = SpinDiagram::from_parts(1, &[1], &[1], &[], &[], &[]).unwrap();
        let mut e = AlgebraElement::zero(1);
        e.add_term(d.clone(), DeltaPolynomial::from_terms([(2, 1.into()), (1, (-1).into())]));
        assert!(e.evaluate_at(1).is_zero());
        assert_eq!(e.evaluate_at(3).coefficient(&d), DeltaPolynomial::constant(6));
        e.add_term(d, DeltaPolynomial::from_terms([(2, (-1).into()), (1, 1.into())]));
        assert!(e.is_zero());
    }

    #[test]
    fn json_round_trip() {
        let a = SpinDiagram::identity(2);
        let b = SpinDiagram::from_parts(2, &[1, 2], &[], &[], &[(1, 2)], &[]).unwrap();
        let mut e = AlgebraElement::zero(2);
        e.add_term(a, DeltaPolynomial::delta());
        e.add_term(b, DeltaPolynomial::constant(-2));
        let v = e.to_json();
        assert_eq!(AlgebraElement::from_json(&v).unwrap(), e);
    }
}
