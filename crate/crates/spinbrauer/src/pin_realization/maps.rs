use super::space::{clifford, root_two_power, SpaceSpec};
use crate::error::Error;
use crate::scalar_rings::{LinearMap, SparseVector};

/// One of the elementary equivariant maps. Positions are 1-indexed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EquivariantMapSpec {
    /// `π_i`: removes factor `i` and lets it act on the spinor.
    Projection { i: usize },
    /// `ι_j`: inserts `Σ_b b ⊗ P(b*)` so the new factor sits at position `j`.
    Injection { j: usize },
    /// `ψ_{i,j}`: inserts the invariant `Σ_b b ⊗ b*` at positions `i < j` of the result.
    Immersion { i: usize, j: usize },
    /// `κ_{i,j}`: contracts factors `i` and `j` with ω.
    Contraction { i: usize, j: usize },
    /// `τ_σ`: factor `k` moves to position `sigma[k-1]`.
    Swap { sigma: Vec<usize> },
}

impl EquivariantMapSpec {
    /// Arity of the codomain for a domain with `n` factors.
    pub fn codomain_n(&self, n: usize) -> Option<usize> {
        match self {
            EquivariantMapSpec::Projection { .. } => n.checked_sub(1),
            EquivariantMapSpec::Injection { .. } => Some(n + 1),
            EquivariantMapSpec::Immersion { .. } => Some(n + 2),
            EquivariantMapSpec::Contraction { .. } => n.checked_sub(2),
            EquivariantMapSpec::Swap { .. } => Some(n),
        }
    }

    fn validate(&self, n: usize) -> Result<(), Error> {
        let ok = match self {
            EquivariantMapSpec::Projection { i } => (1..=n).contains(i),
            EquivariantMapSpec::Injection { j } => (1..=n + 1).contains(j),
            EquivariantMapSpec::Immersion { i, j } => *i >= 1 && i < j && *j <= n + 2,
            EquivariantMapSpec::Contraction { i, j } => *i >= 1 && i < j && *j <= n,
            EquivariantMapSpec::Swap { sigma } => {
                let mut seen = vec![false; n];
                sigma.len() == n
                    && sigma.iter().all(|&k| k >= 1 && k <= n && !std::mem::replace(&mut seen[k - 1], true))
            }
        };
        if ok {
            Ok(())
        } else {
            Err(Error::OutOfRange(format!("{self:?} is not defined on {n} tensor factors")))
        }
    }
}

/// The exact sparse matrix of an elementary map with domain `s`.
pub fn build_equivariant_map(spec: &EquivariantMapSpec, s: &SpaceSpec) -> Result<LinearMap, Error> {
    spec.validate(s.n)?;
    let target = s.with_n(spec.codomain_n(s.n).expect("validated"));
    LinearMap::from_fn(s.dim(), target.dim(), |col| column(spec, s, &target, col))
}

/// The map applied to a single vector, without building the whole matrix.
pub fn apply_equivariant_map(
    spec: &EquivariantMapSpec,
    s: &SpaceSpec,
    x: &SparseVector,
) -> Result<SparseVector, Error> {
    spec.validate(s.n)?;
    let target = s.with_n(spec.codomain_n(s.n).expect("validated"));
    let mut out = SparseVector::new();
    for (col, c) in x.iter() {
        if col >= s.dim() {
            return Err(Error::DimensionMismatch(format!("index {col} outside a space of dimension {}", s.dim())));
        }
        out.add_scaled(&column(spec, s, &target, col), c);
    }
    Ok(out)
}

fn column(spec: &EquivariantMapSpec, s: &SpaceSpec, target: &SpaceSpec, col: usize) -> SparseVector {
    let (v, a) = s.decode(col);
    let mut out = SparseVector::new();
    match spec {
        EquivariantMapSpec::Projection { i } => {
            if let Some((k, root, b)) = clifford(s, v[i - 1], a) {
                let mut w = v.clone();
                w.remove(i - 1);
                out.add_term(target.index(&w, b), root_two_power(k, u32::from(root)));
            }
        }
        EquivariantMapSpec::Injection { j } => {
            for b in 0..s.big_n {
                if let Some((k, root, x)) = clifford(s, s.dual(b), a) {
                    let mut w = v.clone();
                    w.insert(j - 1, b);
                    out.add_term(target.index(&w, x), root_two_power(k, u32::from(root)));
                }
            }
        }
        EquivariantMapSpec::Immersion { i, j } => {
            for b in 0..s.big_n {
                let mut w = v.clone();
                w.insert(i - 1, b);
                w.insert(j - 1, s.dual(b));
                out.add_term(target.index(&w, a), root_two_power(1, 0));
            }
        }
        EquivariantMapSpec::Contraction { i, j } => {
            if s.omega(v[i - 1], v[j - 1]) != 0 {
                let mut w = v.clone();
                w.remove(j - 1);
                w.remove(i - 1);
                out.add_term(target.index(&w, a), root_two_power(1, 0));
            }
        }
        EquivariantMapSpec::Swap { sigma } => {
            let mut w = vec![0; s.n];
            for (k, &to) in sigma.iter().enumerate() {
                w[to - 1] = v[k];
            }
            out.add_term(target.index(&w, a), root_two_power(1, 0));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pin_realization::FockIndex;
    use crate::scalar_rings::RootTwoNumber;

    #[test]
    fn projection_of_w1() {
        let s = SpaceSpec::new(4, 1).unwrap();
        let p = build_equivariant_map(&EquivariantMapSpec::Projection { i: 1 }, &s).unwrap();
        let col = s.index(&[s.w(1)], FockIndex::from_indices(&[2]));
        let row = s.with_n(0).index(&[], FockIndex::from_indices(&[1, 2]));
        assert_eq!(p.entry(row, col), RootTwoNumber::sqrt2());
        assert_eq!(p.column(col).len(), 1);
    }

    #[test]
    fn contraction_of_dual_pair() {
        let s = SpaceSpec::new(4, 2).unwrap();
        let k = build_equivariant_map(&EquivariantMapSpec::Contraction { i: 1, j: 2 }, &s).unwrap();
        let a = FockIndex::from_indices(&[2]);
        let col = s.index(&[s.w(1), s.w_star(1)], a);
        assert_eq!(k.entry(s.with_n(0).index(&[], a), col), RootTwoNumber::one());
        assert!(k.column(s.index(&[s.w(1), s.w(1)], a)).is_empty());
    }

    #[test]
    fn projection_after_injection_scales_by_n() {
        for big_n in 2..=5 {
            let s = SpaceSpec::new(big_n, 0).unwrap();
            let i = build_equivariant_map(&EquivariantMapSpec::Injection { j: 1 }, &s).unwrap();
            let p = build_equivariant_map(&EquivariantMapSpec::Projection { i: 1 }, &s.with_n(1)).unwrap();
            let expected = LinearMap::identity(s.dim()).scale(&RootTwoNumber::from_integer(big_n as i64));
            assert_eq!(p.compose(&i).unwrap(), expected, "N = {big_n}");
        }
    }

    #[test]
    fn invalid_positions() {
        let s = SpaceSpec::new(3, 1).unwrap();
        assert!(build_equivariant_map(&EquivariantMapSpec::Contraction { i: 1, j: 2 }, &s).is_err());
        assert!(build_equivariant_map(&EquivariantMapSpec::Projection { i: 2 }, &s).is_err());
    }
}
