use crate::diagram_core::PartitionLE2;
use crate::error::Error;

/// All of `E_n`, built by inserting `n` into each element of `E_{n-1}`.
pub fn enumerate_en(n: usize, bound: usize) -> Result<Vec<PartitionLE2>, Error> {
    if n > bound {
        return Err(Error::BoundExceeded(format!("n = {n} exceeds the bound {bound}")));
    }
    let mut layer: Vec<Vec<Vec<usize>>> = vec![Vec::new()];
    for k in 1..=n {
        let mut next = Vec::new();
        for blocks in &layer {
            let mut alone = blocks.clone();
            alone.push(vec![k]);
            next.push(alone);
            for (i, b) in blocks.iter().enumerate() {
                if b.len() == 1 {
                    let mut paired = blocks.clone();
                    paired[i] = vec![b[0], k];
                    next.push(paired);
                }
            }
        }
        layer = next;
    }
    let mut out: Vec<PartitionLE2> =
        layer.into_iter().map(|b| PartitionLE2::new(n, b).expect("valid by construction")).collect();
    out.sort();
    Ok(out)
}

/// All `(ρ, S)` with `ρ ∈ E_n` and `S` an `ℓ`-subset of the singletons of `ρ`.
pub fn enumerate_s(n: usize, ell: usize) -> Vec<(PartitionLE2, Vec<usize>)> {
    fn subsets(items: &[usize], k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![Vec::new()];
        }
        if items.len() < k {
            return Vec::new();
        }
        let mut with: Vec<Vec<usize>> = subsets(&items[1..], k - 1);
        for s in with.iter_mut() {
            s.insert(0, items[0]);
        }
        with.extend(subsets(&items[1..], k));
        with
    }
    let mut out = Vec::new();
    for rho in enumerate_en(n, usize::MAX).expect("unbounded") {
        for s in subsets(&rho.singletons(), ell) {
            out.push((rho.clone(), s));
        }
    }
    out
}

/// A set partition of `{1..n}` with blocks of any size.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct JoinPartition {
    pub blocks: Vec<Vec<usize>>,
}

impl JoinPartition {
    /// Index of the block containing `v`.
    pub fn block_of(&self, v: usize) -> usize {
        self.blocks.iter().position(|b| b.contains(&v)).expect("v is covered")
    }
}

/// The finest common coarsening `x · y`.
pub fn join(x: &PartitionLE2, y: &PartitionLE2) -> JoinPartition {
    let n = x.n();
    let mut parent: Vec<usize> = (0..=n).collect();
    fn find(p: &mut [usize], v: usize) -> usize {
        let mut r = v;
        while p[r] != r {
            r = p[r];
        }
        let mut c = v;
        while p[c] != r {
            let next = p[c];
            p[c] = r;
            c = next;
        }
        r
    }
    for b in x.blocks().iter().chain(y.blocks()) {
        if let [a, c] = b[..] {
            let (ra, rc) = (find(&mut parent, a), find(&mut parent, c));
            parent[ra.max(rc)] = ra.min(rc);
        }
    }
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut root_block = vec![usize::MAX; n + 1];
    for v in 1..=n {
        let r = find(&mut parent, v);
        if root_block[r] == usize::MAX {
            root_block[r] = blocks.len();
            blocks.push(Vec::new());
        }
        blocks[root_block[r]].push(v);
    }
    JoinPartition { blocks }
}

/// Partitions of `m` in which no part occurs `a` or more times, parts
/// descending, listed in reverse lexicographic order. `a = 0` imposes nothing.
pub fn a_regular_partitions(m: usize, a: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, max: usize, acc: &mut Vec<usize>, a: usize, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(acc.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            let run = acc.iter().rev().take_while(|&&p| p == part).count();
            if a > 0 && run + 1 >= a {
                continue;
            }
            acc.push(part);
            go(rest - part, part, acc, a, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(m, m, &mut Vec::new(), a, &mut out);
    out
}

/// Labels `(m, λ)` of the irreducible representations in characteristic `a`.
///
/// With `δ = 0` the label `m = 0` is dropped: its form is a power of δ.
pub fn irreducible_indices(n: usize, characteristic: usize, delta_zero: bool) -> Vec<(usize, Vec<usize>)> {
    let first = usize::from(delta_zero);
    (first..=n).flat_map(|m| a_regular_partitions(m, characteristic).into_iter().map(move |l| (m, l))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn e3_matches_listing() {
        let e3 = enumerate_en(3, 5).unwrap();
        let shown: Vec<Vec<Vec<usize>>> = e3.iter().map(|p| p.blocks().to_vec()).collect();
        assert_eq!(
            shown,
            vec![
                vec![vec![1], vec![2], vec![3]],
                vec![vec![1], vec![2, 3]],
                vec![vec![1, 2], vec![3]],
                vec![vec![1, 3], vec![2]],
            ]
        );
        assert_eq!(enumerate_en(4, 5).unwrap().len(), 10);
        assert_eq!(enumerate_en(1, 5).unwrap().len(), 1);
        assert!(enumerate_en(6, 5).is_err());
    }

    #[test]
    fn s_counts() {
        assert_eq!(enumerate_s(2, 0).len(), 2);
        assert_eq!(enumerate_s(2, 1).len(), 2);
        assert_eq!(enumerate_s(2, 2).len(), 1);
    }

    #[test]
    fn join_example() {
        let mu = PartitionLE2::new(5, vec![vec![1, 3], vec![2], vec![4, 5]]).unwrap();
        let nu = PartitionLE2::new(5, vec![vec![1, 2], vec![3], vec![4], vec![5]]).unwrap();
        assert_eq!(join(&mu, &nu).blocks, vec![vec![1, 2, 3], vec![4, 5]]);
    }

    #[test]
    fn classification_small() {
        assert_eq!(irreducible_indices(2, 0, false), vec![(0, vec![]), (1, vec![1]), (2, vec![2]), (2, vec![1, 1])]);
        assert_eq!(irreducible_indices(2, 2, false), vec![(0, vec![]), (1, vec![1]), (2, vec![2])]);
        assert_eq!(irreducible_indices(2, 0, true), vec![(1, vec![1]), (2, vec![2]), (2, vec![1, 1])]);
    }
}
