use std::fmt;

use crate::error::Error;
use crate::scalar_rings::RootTwoNumber;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

/// The space `V^{⊗n} ⊗ Δ` for `V = W ⊕ W* (⊕ ℂe)` of dimension `N`.
///
/// V basis indices: `0..m` are `w₁..w_m`, `m..2m` are `w₁*..w_m*`, and `2m`
/// is `e` when `N` is odd. A basis vector of the whole space has index
/// `((v₁·N + v₂)·N + …)·2^m + a` with `a` a [`FockIndex`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SpaceSpec {
    pub big_n: usize,
    pub m: usize,
    pub n: usize,
    pub parity: Parity,
}

impl SpaceSpec {
    pub fn new(big_n: usize, n: usize) -> Result<Self, Error> {
        if big_n < 2 {
            return Err(Error::InvalidArgument(format!("N = {big_n} must be at least 2")));
        }
        let parity = if big_n % 2 == 0 { Parity::Even } else { Parity::Odd };
        Ok(SpaceSpec { big_n, m: big_n / 2, n, parity })
    }

    /// The same `V` with a different number of tensor factors.
    pub fn with_n(&self, n: usize) -> SpaceSpec {
        SpaceSpec { n, ..*self }
    }

    pub fn fock_dim(&self) -> usize {
        1 << self.m
    }

    pub fn tensor_dim(&self) -> usize {
        self.big_n.pow(self.n as u32)
    }

    pub fn dim(&self) -> usize {
        self.tensor_dim() * self.fock_dim()
    }

    pub fn index(&self, v: &[usize], a: FockIndex) -> usize {
        debug_assert_eq!(v.len(), self.n);
        v.iter().fold(0, |acc, &x| acc * self.big_n + x) * self.fock_dim() + a.0 as usize
    }

    pub fn decode(&self, idx: usize) -> (Vec<usize>, FockIndex) {
        let a = FockIndex((idx % self.fock_dim()) as u32);
        let mut t = idx / self.fock_dim();
        let mut v = vec![0; self.n];
        for slot in v.iter_mut().rev() {
            *slot = t % self.big_n;
            t /= self.big_n;
        }
        (v, a)
    }

    pub fn e(&self) -> Option<usize> {
        (self.parity == Parity::Odd).then_some(2 * self.m)
    }

    /// The ω-dual basis vector: `w_i ↔ w_i*`, `e ↔ e`.
    pub fn dual(&self, b: usize) -> usize {
        if b < self.m {
            b + self.m
        } else if b < 2 * self.m {
            b - self.m
        } else {
            b
        }
    }

    /// The symmetric form on V: `ω(w_i, w_j*) = δ_ij`, `ω(e, e) = 1`.
    pub fn omega(&self, u: usize, v: usize) -> i64 {
        i64::from(self.dual(u) == v)
    }

    pub fn basis_name(&self, b: usize) -> String {
        if b < self.m {
            format!("w{}", b + 1)
        } else if b < 2 * self.m {
            format!("w{}*", b - self.m + 1)
        } else {
            "e".to_string()
        }
    }

    /// `w_i`, 1-indexed.
    pub fn w(&self, i: usize) -> usize {
        i - 1
    }

    /// `w_i*`, 1-indexed.
    pub fn w_star(&self, i: usize) -> usize {
        self.m + i - 1
    }
}

/// A wedge `w_{i₁} ∧ … ∧ w_{i_k}`, `i₁ < … < i_k`, as the bitmask of its indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FockIndex(pub u32);

impl FockIndex {
    pub fn from_indices(indices: &[usize]) -> Self {
        FockIndex(indices.iter().fold(0, |acc, &i| acc | 1 << (i - 1)))
    }

    pub fn indices(self) -> Vec<usize> {
        (0..32).filter(|b| self.0 >> b & 1 == 1).map(|b| b + 1).collect()
    }

    pub fn degree(self) -> u32 {
        self.0.count_ones()
    }

    fn below(self, i: usize) -> u32 {
        (self.0 & ((1u32 << (i - 1)) - 1)).count_ones()
    }
}

impl fmt::Display for FockIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.indices().iter().map(|i| i.to_string()).collect::<Vec<_>>().join(","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FockOp {
    /// Wedge with `w_i` on the left.
    X(usize),
    /// Contraction with `w_i*`.
    Dstar(usize),
    Parity,
}

fn sign_of(k: u32) -> i64 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Applies a Fock-space operator to a basis wedge. `None` means the result is zero.
pub fn apply_fock_operator(op: FockOp, s: &SpaceSpec, a: FockIndex) -> Result<Option<(i64, FockIndex)>, Error> {
    if let FockOp::X(i) | FockOp::Dstar(i) = op {
        if i == 0 || i > s.m {
            return Err(Error::OutOfRange(format!("index {i} outside 1..={}", s.m)));
        }
    }
    Ok(fock(op, a))
}

pub(crate) fn fock(op: FockOp, a: FockIndex) -> Option<(i64, FockIndex)> {
    match op {
        FockOp::X(i) => (a.0 >> (i - 1) & 1 == 0).then(|| (sign_of(a.below(i)), FockIndex(a.0 | 1 << (i - 1)))),
        FockOp::Dstar(i) => (a.0 >> (i - 1) & 1 == 1).then(|| (sign_of(a.below(i)), FockIndex(a.0 & !(1 << (i - 1))))),
        FockOp::Parity => Some((sign_of(a.degree()), a)),
    }
}

/// `P(b)` for a V basis vector `b`: `√2 X_i` on `w_i`, `√2 D_i` on `w_i*`, and
/// the parity `D` on `e`. Returns the sign, whether a factor √2 occurs, and
/// the new wedge.
pub(crate) fn clifford(s: &SpaceSpec, b: usize, a: FockIndex) -> Option<(i64, bool, FockIndex)> {
    if b < s.m {
        fock(FockOp::X(b + 1), a).map(|(k, x)| (k, true, x))
    } else if b < 2 * s.m {
        fock(FockOp::Dstar(b - s.m + 1), a).map(|(k, x)| (k, true, x))
    } else {
        fock(FockOp::Parity, a).map(|(k, x)| (k, false, x))
    }
}

/// `k · (√2)^e` as an exact number.
pub(crate) fn root_two_power(k: i64, e: u32) -> RootTwoNumber {
    let whole = RootTwoNumber::from_integer(k * (1i64 << (e / 2)));
    if e % 2 == 1 {
        &whole * &RootTwoNumber::sqrt2()
    } else {
        whole
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_round_trip() {
        let s = SpaceSpec::new(5, 3).unwrap();
        assert_eq!(s.dim(), 125 * 4);
        for idx in [0, 1, 17, 499] {
            let (v, a) = s.decode(idx);
            assert_eq!(s.index(&v, a), idx);
        }
    }

    #[test]
    fn fock_examples() {
        let s = SpaceSpec::new(4, 0).unwrap();
        let two = FockIndex::from_indices(&[2]);
        assert_eq!(apply_fock_operator(FockOp::X(1), &s, two).unwrap(), Some((1, FockIndex::from_indices(&[1, 2]))));
        let both = FockIndex::from_indices(&[1, 2]);
        assert_eq!(apply_fock_operator(FockOp::Dstar(1), &s, both).unwrap(), Some((1, two)));
        assert_eq!(apply_fock_operator(FockOp::Dstar(2), &s, both).unwrap(), Some((-1, FockIndex::from_indices(&[1]))));
        assert!(apply_fock_operator(FockOp::X(3), &s, both).is_err());
    }

    #[test]
    fn canonical_anticommutation() {
        // X_i D_j + D_j X_i = δ_ij on every wedge, m = 3.
        for a in 0..8u32 {
            let a = FockIndex(a);
            for i in 1..=3 {
                for j in 1..=3 {
                    let mut total: std::collections::BTreeMap<FockIndex, i64> = Default::default();
                    for (first, second) in [(FockOp::Dstar(j), FockOp::X(i)), (FockOp::X(i), FockOp::Dstar(j))] {
                        if let Some((k1, b)) = fock(first, a) {
                            if let Some((k2, c)) = fock(second, b) {
                                *total.entry(c).or_default() += k1 * k2;
                            }
                        }
                    }
                    total.retain(|_, v| *v != 0);
                    let expected: std::collections::BTreeMap<FockIndex, i64> =
                        if i == j { [(a, 1)].into_iter().collect() } else { Default::default() };
                    assert_eq!(total, expected, "i={i} j={j} a={a}");
                }
            }
        }
    }
}
