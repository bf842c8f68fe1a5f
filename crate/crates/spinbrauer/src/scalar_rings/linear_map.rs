use std::collections::BTreeMap;

use serde_json::{json, Value};

use super::RootTwoNumber;
use crate::error::Error;

/// Sparse vector over ℚ(√2); zero entries are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct SparseVector {
    entries: BTreeMap<usize, RootTwoNumber>,
}

impl SparseVector {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn unit(i: usize) -> Self {
        let mut v = Self::new();
        v.add_term(i, RootTwoNumber::one());
        v
    }

    pub fn add_term(&mut self, i: usize, c: RootTwoNumber) {
        if c.is_zero() {
            return;
        }
        match self.entries.get_mut(&i) {
            Some(slot) => {
                *slot += &c;
                if slot.is_zero() {
                    self.entries.remove(&i);
                }
            }
            None => {
                self.entries.insert(i, c);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &SparseVector, k: &RootTwoNumber) {
        if k.is_zero() {
            return;
        }
        for (i, c) in &other.entries {
            self.add_term(*i, c * k);
        }
    }

    pub fn scale(&self, k: &RootTwoNumber) -> SparseVector {
        let mut out = SparseVector::new();
        out.add_scaled(self, k);
        out
    }

    pub fn get(&self, i: usize) -> Option<&RootTwoNumber> {
        self.entries.get(&i)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &RootTwoNumber)> {
        self.entries.iter().map(|(i, c)| (*i, c))
    }

    pub fn leading(&self) -> Option<(usize, &RootTwoNumber)> {
        self.entries.iter().next().map(|(i, c)| (*i, c))
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.keys().next_back().copied()
    }
}

impl FromIterator<(usize, RootTwoNumber)> for SparseVector {
    fn from_iter<T: IntoIterator<Item = (usize, RootTwoNumber)>>(iter: T) -> Self {
        let mut v = SparseVector::new();
        for (i, c) in iter {
            v.add_term(i, c);
        }
        v
    }
}

/// A linear map `ℚ(√2)^domain_dim → ℚ(√2)^codomain_dim` stored by columns.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinearMap {
    domain_dim: usize,
    codomain_dim: usize,
    columns: Vec<SparseVector>,
}

impl LinearMap {
    pub fn zero(domain_dim: usize, codomain_dim: usize) -> Self {
        LinearMap { domain_dim, codomain_dim, columns: vec![SparseVector::new(); domain_dim] }
    }

    pub fn identity(dim: usize) -> Self {
        LinearMap { domain_dim: dim, codomain_dim: dim, columns: (0..dim).map(SparseVector::unit).collect() }
    }

    pub fn from_columns(codomain_dim: usize, columns: Vec<SparseVector>) -> Result<Self, Error> {
        for col in &columns {
            if let Some(r) = col.max_index() {
                if r >= codomain_dim {
                    return Err(Error::DimensionMismatch(format!(
                        "row index {r} outside codomain of dimension {codomain_dim}"
                    )));
                }
            }
        }
        Ok(LinearMap { domain_dim: columns.len(), codomain_dim, columns })
    }

    /// Builds the map column by column from the image of each basis vector.
    pub fn from_fn<F>(domain_dim: usize, codomain_dim: usize, f: F) -> Result<Self, Error>
    where
        F: FnMut(usize) -> SparseVector,
    {
        Self::from_columns(codomain_dim, (0..domain_dim).map(f).collect())
    }

    pub fn domain_dim(&self) -> usize {
        self.domain_dim
    }

    pub fn codomain_dim(&self) -> usize {
        self.codomain_dim
    }

    pub fn column(&self, c: usize) -> &SparseVector {
        &self.columns[c]
    }

    pub fn columns(&self) -> &[SparseVector] {
        &self.columns
    }

    pub fn entry(&self, r: usize, c: usize) -> RootTwoNumber {
        self.columns[c].get(r).cloned().unwrap_or_default()
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(SparseVector::len).sum()
    }

    pub fn apply(&self, v: &SparseVector) -> Result<SparseVector, Error> {
        if let Some(i) = v.max_index() {
            if i >= self.domain_dim {
                return Err(Error::DimensionMismatch(format!(
                    "vector index {i} outside domain of dimension {}",
                    self.domain_dim
                )));
            }
        }
        let mut out = SparseVector::new();
        for (i, c) in v.iter() {
            out.add_scaled(&self.columns[i], c);
        }
        Ok(out)
    }

    /// `self ∘ inner`: apply `inner` first.
    pub fn compose(&self, inner: &LinearMap) -> Result<LinearMap, Error> {
        if inner.codomain_dim != self.domain_dim {
            return Err(Error::DimensionMismatch(format!(
                "cannot compose {}→{} after {}→{}",
                self.domain_dim, self.codomain_dim, inner.domain_dim, inner.codomain_dim
            )));
        }
        let columns = inner.columns.iter().map(|col| self.apply(col)).collect::<Result<Vec<_>, _>>()?;
        Ok(LinearMap { domain_dim: inner.domain_dim, codomain_dim: self.codomain_dim, columns })
    }

    fn check_same_shape(&self, other: &LinearMap) -> Result<(), Error> {
        if self.domain_dim != other.domain_dim || self.codomain_dim != other.codomain_dim {
            return Err(Error::DimensionMismatch(format!(
                "shapes {}→{} and {}→{} differ",
                self.domain_dim, self.codomain_dim, other.domain_dim, other.codomain_dim
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &LinearMap) -> Result<LinearMap, Error> {
        self.add_scaled(other, &RootTwoNumber::one())
    }

    pub fn sub(&self, other: &LinearMap) -> Result<LinearMap, Error> {
        self.add_scaled(other, &RootTwoNumber::from_integer(-1))
    }

    /// `self + k·other`.
    pub fn add_scaled(&self, other: &LinearMap, k: &RootTwoNumber) -> Result<LinearMap, Error> {
        self.check_same_shape(other)?;
        let mut out = self.clone();
        for (dst, src) in out.columns.iter_mut().zip(&other.columns) {
            dst.add_scaled(src, k);
        }
        Ok(out)
    }

    pub fn scale(&self, k: &RootTwoNumber) -> LinearMap {
        LinearMap {
            domain_dim: self.domain_dim,
            codomain_dim: self.codomain_dim,
            columns: self.columns.iter().map(|c| c.scale(k)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(SparseVector::is_zero)
    }

    /// All entries as `(row, col, value)`, sorted by column then row.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &RootTwoNumber)> {
        self.columns.iter().enumerate().flat_map(|(c, col)| col.iter().map(move |(r, x)| (r, c, x)))
    }

    /// Column-major flattening into a vector of length `domain_dim · codomain_dim`.
    pub fn flatten(&self) -> SparseVector {
        self.entries().map(|(r, c, x)| (c * self.codomain_dim + r, x.clone())).collect()
    }

    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = self.entries().map(|(r, c, x)| json!([r, c, x.to_json()])).collect();
        json!({ "rows": self.codomain_dim, "cols": self.domain_dim, "entries": entries })
    }

    pub fn rank(&self) -> usize {
        rank_of_vectors(self.columns.iter().cloned())
    }
}

/// Rank of the span of the given vectors, by exact Gaussian elimination.
///
/// Each reduced vector is stored under its leading index, so a pivot is only
/// ever an entry that was found nonzero when the row was inserted.
pub fn rank_of_vectors<I: IntoIterator<Item = SparseVector>>(vectors: I) -> usize {
    let mut pivots: BTreeMap<usize, (SparseVector, RootTwoNumber)> = BTreeMap::new();
    for mut v in vectors {
        while let Some((lead, c)) = v.leading() {
            match pivots.get(&lead) {
                Some((row, inv_pivot)) => {
                    let k = -(c * inv_pivot);
                    v.add_scaled(row, &k);
                }
                None => {
                    let inv = c.inv().expect("leading entry of a stored vector is nonzero");
                    pivots.insert(lead, (v, inv));
                    break;
                }
            }
        }
    }
    pivots.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r2(a: i64, b: i64) -> RootTwoNumber {
        RootTwoNumber::new(a.into(), b.into())
    }

    #[test]
    fn identity_and_zero_ranks() {
        assert_eq!(LinearMap::identity(3).rank(), 3);
        assert_eq!(LinearMap::zero(4, 4).rank(), 0);
    }

    #[test]
    fn dependent_columns_over_root_two() {
        // Second column is √2 times the first, third is independent.
        let c0: SparseVector = [(0, r2(1, 0)), (1, r2(0, 1))].into_iter().collect();
        let c1 = c0.scale(&RootTwoNumber::sqrt2());
        let c2: SparseVector = [(1, r2(1, 1))].into_iter().collect();
        let m = LinearMap::from_columns(2, vec![c0, c1, c2]).unwrap();
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn composition_checks_dimensions() {
        let a = LinearMap::identity(2);
        let b = LinearMap::identity(3);
        assert!(a.compose(&b).is_err());
        assert_eq!(a.compose(&a).unwrap(), a);
    }

    #[test]
    fn rejects_out_of_range_rows() {
        assert!(LinearMap::from_columns(1, vec![SparseVector::unit(1)]).is_err());
    }

    #[test]
    fn cancellation_removes_entries() {
        let mut v = SparseVector::unit(3);
        v.add_term(3, r2(-1, 0));
        assert!(v.is_zero());
    }
}
