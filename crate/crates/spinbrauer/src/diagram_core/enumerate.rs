use itertools::Itertools;

use super::{cell_decode, CellTriple, PartitionLE2, SpinDiagram};
use crate::error::Error;

/// Largest `n` enumerated unless a caller raises the bound.
pub const DEFAULT_MAX_N: usize = 5;

/// All partitions of `{1..n}` into singletons and pairs, in ascending order.
pub(crate) fn row_partitions(n: usize) -> Vec<PartitionLE2> {
    fn go(free: &[usize], acc: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        let Some((&first, rest)) = free.split_first() else {
            out.push(acc.clone());
            return;
        };
        acc.push(vec![first]);
        go(rest, acc, out);
        acc.pop();
        for (k, &partner) in rest.iter().enumerate() {
            let remaining: Vec<usize> = rest.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, &v)| v).collect();
            acc.push(vec![first, partner]);
            go(&remaining, acc, out);
            acc.pop();
        }
    }
    let vertices: Vec<usize> = (1..=n).collect();
    let mut raw = Vec::new();
    go(&vertices, &mut Vec::new(), &mut raw);
    let mut parts: Vec<PartitionLE2> =
        raw.into_iter().map(|b| PartitionLE2::new(n, b).expect("valid by construction")).collect();
    parts.sort();
    parts
}

/// Every spin-Brauer diagram on `n` strands, each once.
///
/// Ordered by through count descending, then by `(x, S, y, T, σ)`.
pub fn enumerate_basis(n: usize, bound: usize) -> Result<Vec<SpinDiagram>, Error> {
    if n > bound {
        return Err(Error::BoundExceeded(format!("n = {n} exceeds the enumeration bound {bound}")));
    }
    let parts = row_partitions(n);
    let mut out = Vec::new();
    for ell in (0..=n).rev() {
        let sides: Vec<(&PartitionLE2, Vec<usize>)> =
            parts.iter().flat_map(|p| p.singletons().into_iter().combinations(ell).map(move |s| (p, s))).collect();
        let perms: Vec<Vec<usize>> = (1..=ell).permutations(ell).collect();
        for (x, s) in &sides {
            for (y, t) in &sides {
                for sigma in &perms {
                    let c = CellTriple {
                        ell,
                        x: (*x).clone(),
                        s: s.clone(),
                        y: (*y).clone(),
                        t: t.clone(),
                        sigma: sigma.clone(),
                    };
                    out.push(cell_decode(&c)?);
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn small_counts() {
        let counts: Vec<usize> = (0..=4).map(|n| enumerate_basis(n, DEFAULT_MAX_N).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 2, 10, 76, 764]);
    }

    #[test]
    fn row_partition_counts() {
        let counts: Vec<usize> = (0..=5).map(|n| row_partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 10, 26]);
    }

    #[test]
    fn no_duplicates_and_descending_ell() {
        let all = enumerate_basis(3, DEFAULT_MAX_N).unwrap();
        let set: HashSet<_> = all.iter().collect();
        assert_eq!(set.len(), all.len());
        assert!(all.windows(2).all(|w| w[0].through_count() >= w[1].through_count()));
        assert_eq!(all[0], SpinDiagram::identity(3));
    }

    #[test]
    fn bound_is_enforced() {
        assert!(matches!(enumerate_basis(6, DEFAULT_MAX_N), Err(Error::BoundExceeded(_))));
    }
}
