//! A classical Brauer product on perfect matchings, kept separate from the
//! diagram code so it can serve as an oracle.

use crate::diagram_core::{Row, SpinDiagram, Strand};

/// Points `0..n` are the top row, `n..2n` the bottom row; `partner[p]` is the
/// other end of the edge at `p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BrauerDiagram {
    pub n: usize,
    pub partner: Vec<usize>,
}

impl BrauerDiagram {
    /// `None` when the diagram has isolated vertices.
    pub fn from_spin(d: &SpinDiagram) -> Option<Self> {
        let n = d.n();
        let mut partner = vec![0; 2 * n];
        for (offset, row) in [(0, Row::Top), (n, Row::Bottom)] {
            for (i, s) in d.row(row).iter().enumerate() {
                partner[offset + i] = match *s {
                    Strand::Isolated => return None,
                    Strand::Arc(p) => offset + p - 1,
                    Strand::Through(p) => (n - offset) + p - 1,
                };
            }
        }
        Some(BrauerDiagram { n, partner })
    }

    pub fn to_spin(&self) -> SpinDiagram {
        let n = self.n;
        let strand = |p: usize, own_offset: usize| {
            let q = self.partner[p];
            if (q < n) == (own_offset == 0) {
                Strand::Arc(q - own_offset + 1)
            } else {
                Strand::Through(if q < n { q + 1 } else { q - n + 1 })
            }
        };
        let top = (0..n).map(|p| strand(p, 0)).collect();
        let bottom = (n..2 * n).map(|p| strand(p, n)).collect();
        SpinDiagram::from_strands(top, bottom).expect("a perfect matching gives a valid diagram")
    }

    /// `self` stacked above `other`: the loop count and the resulting diagram.
    pub fn stack(&self, other: &BrauerDiagram) -> (u32, BrauerDiagram) {
        let n = self.n;
        // Points of the three-row picture: 0..n top, n..2n middle, 2n..3n bottom.
        let upper = |p: usize| self.partner[p];
        let lower = |p: usize| other.partner[p - n] + n;
        let mut used_middle = vec![false; n];
        let mut partner = vec![usize::MAX; 2 * n];
        let outer = |p: usize| if p < n { p } else { p - n };
        for start in (0..n).chain(2 * n..3 * n) {
            let slot = outer(start);
            if partner[slot] != usize::MAX {
                continue;
            }
            // Alternate between the two diagrams until leaving the middle row.
            let mut p = start;
            let mut in_upper = start < n;
            loop {
                let q = if in_upper { upper(p) } else { lower(p) };
                if q < n || q >= 2 * n {
                    partner[slot] = outer(q);
                    partner[outer(q)] = slot;
                    break;
                }
                used_middle[q - n] = true;
                p = q;
                in_upper = !in_upper;
            }
        }
        let mut loops = 0;
        for m in 0..n {
            if used_middle[m] {
                continue;
            }
            loops += 1;
            let mut p = m + n;
            let mut in_upper = true;
            loop {
                used_middle[p - n] = true;
                let q = if in_upper { upper(p) } else { lower(p) };
                in_upper = !in_upper;
                if used_middle[q - n] {
                    break;
                }
                p = q;
            }
        }
        (loops, BrauerDiagram { n, partner })
    }
}

/// All perfect matchings on `2n` points.
pub fn brauer_basis(n: usize) -> Vec<BrauerDiagram> {
    fn go(free: Vec<usize>, partner: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let Some((&a, rest)) = free.split_first() else {
            out.push(partner.clone());
            return;
        };
        for k in 0..rest.len() {
            let b = rest[k];
            partner[a] = b;
            partner[b] = a;
            let remaining = rest.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, &x)| x).collect();
            go(remaining, partner, out);
        }
    }
    let mut out = Vec::new();
    go((0..2 * n).collect(), &mut vec![0; 2 * n], &mut out);
    out.into_iter().map(|partner| BrauerDiagram { n, partner }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(brauer_basis(2).len(), 3);
        assert_eq!(brauer_basis(3).len(), 15);
    }

    #[test]
    fn cap_cup_loop() {
        let cup = BrauerDiagram { n: 2, partner: vec![1, 0, 3, 2] };
        let (loops, d) = cup.stack(&cup);
        assert_eq!(loops, 1);
        assert_eq!(d, cup);
    }

    #[test]
    fn spin_round_trip() {
        for b in brauer_basis(3) {
            assert_eq!(BrauerDiagram::from_spin(&b.to_spin()), Some(b));
        }
    }
}
