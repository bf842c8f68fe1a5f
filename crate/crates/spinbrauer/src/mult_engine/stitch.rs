use crate::diagram_core::{LabeledDiagram, Row, SpinDiagram, Strand, Symbol};
use crate::error::Error;

/// Outcome of stacking two diagrams and resolving every component of the
/// middle graph, before the isolated vertices are put back in order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StitchResolution {
    /// Closed cycles plus iso–iso paths whose two ends became adjacent.
    pub circuits_closed: u32,
    /// The stacked diagram. Its word is the surviving total order.
    pub resolved: LabeledDiagram,
    /// For each slot of `resolved.word()`, its label in the combined order
    /// `U₁ < U₁′ < U₂ < U₂′` of the two factors.
    pub original_labels: Vec<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Half {
    Upper,
    Lower,
}

impl Half {
    fn other(self) -> Half {
        match self {
            Half::Upper => Half::Lower,
            Half::Lower => Half::Upper,
        }
    }
}

/// An endpoint of a middle-graph component.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum End {
    /// A vertex of the outer rows, reached along a through string.
    Ext(Row, usize),
    /// An isolated half of a middle vertex.
    Iso(Half, usize),
}

struct Middle<'a> {
    upper: &'a [Strand],
    lower: &'a [Strand],
    visited: Vec<[bool; 2]>,
}

impl Middle<'_> {
    fn strand(&self, p: usize, h: Half) -> Strand {
        match h {
            Half::Upper => self.upper[p - 1],
            Half::Lower => self.lower[p - 1],
        }
    }

    fn seen(&self, p: usize, h: Half) -> bool {
        self.visited[p - 1][h as usize]
    }

    /// Follows the component entered at middle vertex `p` through half `h`.
    /// Returns `None` when the walk comes back to where it started.
    fn walk(&mut self, mut p: usize, mut h: Half) -> Option<End> {
        loop {
            if self.seen(p, h) {
                return None;
            }
            self.visited[p - 1][h as usize] = true;
            let next = h.other();
            self.visited[p - 1][next as usize] = true;
            match self.strand(p, next) {
                Strand::Isolated => return Some(End::Iso(next, p)),
                Strand::Through(q) => {
                    return Some(End::Ext(if next == Half::Upper { Row::Top } else { Row::Bottom }, q));
                }
                Strand::Arc(r) => {
                    p = r;
                    h = next;
                }
            }
        }
    }
}

/// Stacks `top` above `bottom` and resolves the middle graph.
///
/// Each iso–iso path becomes a pair of equal `Bond` symbols in the word; a
/// bond whose two ends are adjacent is closed immediately and counted.
pub fn stitch_and_resolve(top: &SpinDiagram, bottom: &SpinDiagram) -> Result<StitchResolution, Error> {
    let n = top.n();
    if bottom.n() != n {
        return Err(Error::DimensionMismatch(format!("cannot stack n = {n} on n = {}", bottom.n())));
    }
    let mut mid = Middle { upper: top.row(Row::Bottom), lower: bottom.row(Row::Top), visited: vec![[false; 2]; n] };

    let u1 = top.isolated(Row::Top);
    let u1p = top.isolated(Row::Bottom);
    let u2 = bottom.isolated(Row::Top);
    let u2p = bottom.isolated(Row::Bottom);
    let slot_of = |h: Half, p: usize| match h {
        Half::Upper => u1.len() + u1p.binary_search(&p).expect("upper half is isolated"),
        Half::Lower => u1.len() + u1p.len() + u2.binary_search(&p).expect("lower half is isolated"),
    };

    let mut paths: Vec<(End, End)> = Vec::new();
    for (row, strands, half) in
        [(Row::Top, top.row(Row::Top), Half::Upper), (Row::Bottom, bottom.row(Row::Bottom), Half::Lower)]
    {
        for (i, s) in strands.iter().enumerate() {
            if let Strand::Through(q) = *s {
                if !mid.seen(q, half) {
                    paths.push((End::Ext(row, i + 1), mid.walk(q, half).expect("open path")));
                }
            }
        }
    }
    for p in 1..=n {
        for h in [Half::Upper, Half::Lower] {
            if mid.strand(p, h) == Strand::Isolated && !mid.seen(p, h) {
                // Enter through the isolated half and leave through the other one.
                paths.push((End::Iso(h, p), mid.walk(p, h).expect("open path")));
            }
        }
    }
    let mut cycles = 0u32;
    for p in 1..=n {
        if !mid.seen(p, Half::Upper) {
            mid.walk(p, Half::Upper);
            cycles += 1;
        }
    }

    let mut new_top = top.row(Row::Top).to_vec();
    let mut new_bottom = bottom.row(Row::Bottom).to_vec();
    let mut slots: Vec<Option<Symbol>> = u1.iter().map(|&p| Some(Symbol::Vertex(Row::Top, p))).collect();
    slots.resize(u1.len() + u1p.len() + u2.len(), None);
    slots.extend(u2p.iter().map(|&p| Some(Symbol::Vertex(Row::Bottom, p))));
    let mut next_bond = 0u32;
    for (a, b) in paths {
        match (a, b) {
            (End::Ext(ra, pa), End::Ext(rb, pb)) => {
                let link = |q: usize| {
                    if ra == rb {
                        Strand::Arc(q)
                    } else {
                        Strand::Through(q)
                    }
                };
                for (r, p, q) in [(ra, pa, pb), (rb, pb, pa)] {
                    match r {
                        Row::Top => new_top[p - 1] = link(q),
                        Row::Bottom => new_bottom[p - 1] = link(q),
                    }
                }
            }
            (End::Ext(r, p), End::Iso(h, q)) | (End::Iso(h, q), End::Ext(r, p)) => {
                match r {
                    Row::Top => new_top[p - 1] = Strand::Isolated,
                    Row::Bottom => new_bottom[p - 1] = Strand::Isolated,
                }
                slots[slot_of(h, q)] = Some(Symbol::Vertex(r, p));
            }
            (End::Iso(h1, q1), End::Iso(h2, q2)) => {
                slots[slot_of(h1, q1)] = Some(Symbol::Bond(next_bond));
                slots[slot_of(h2, q2)] = Some(Symbol::Bond(next_bond));
                next_bond += 1;
            }
        }
    }

    let mut word: Vec<(Symbol, usize)> =
        slots.into_iter().enumerate().map(|(k, s)| (s.expect("every slot resolved"), k + 1)).collect();
    let closed = close_adjacent_bonds(&mut word);
    let (word, original_labels) = word.into_iter().unzip();
    Ok(StitchResolution {
        circuits_closed: cycles + closed,
        resolved: LabeledDiagram::from_raw(new_top, new_bottom, word),
        original_labels,
    })
}

/// Removes adjacent equal bonds until none remain; returns how many were removed.
pub(crate) fn close_adjacent_bonds<T>(word: &mut Vec<(Symbol, T)>) -> u32 {
    let mut closed = 0;
    let mut out: Vec<(Symbol, T)> = Vec::with_capacity(word.len());
    for item in word.drain(..) {
        match (out.last(), &item.0) {
            (Some((Symbol::Bond(a), _)), Symbol::Bond(b)) if a == b => {
                out.pop();
                closed += 1;
            }
            _ => out.push(item),
        }
    }
    *word = out;
    closed
}

#[cfg(test)]
mod tests {
    use super::*;

    fn both_isolated() -> SpinDiagram {
        SpinDiagram::from_parts(1, &[1], &[1], &[], &[], &[]).unwrap()
    }

    #[test]
    fn single_isolated_square() {
        let r = stitch_and_resolve(&both_isolated(), &both_isolated()).unwrap();
        assert_eq!(r.circuits_closed, 1);
        assert_eq!(r.resolved.word(), &[Symbol::Vertex(Row::Top, 1), Symbol::Vertex(Row::Bottom, 1)]);
        assert_eq!(r.original_labels, vec![1, 4]);
    }

    #[test]
    fn identity_square() {
        let id = SpinDiagram::identity(3);
        let r = stitch_and_resolve(&id, &id).unwrap();
        assert_eq!(r.circuits_closed, 0);
        assert_eq!(r.resolved.underlying(), id);
        assert!(r.resolved.word().is_empty());
    }

    #[test]
    fn closed_loop() {
        let cup = SpinDiagram::from_parts(2, &[], &[], &[(1, 2)], &[(1, 2)], &[]).unwrap();
        let r = stitch_and_resolve(&cup, &cup).unwrap();
        assert_eq!(r.circuits_closed, 1);
        assert_eq!(r.resolved.underlying(), cup);
    }

    #[test]
    fn two_isolated_pairs_leave_interleaved_bonds() {
        let d = SpinDiagram::from_parts(2, &[1, 2], &[1, 2], &[], &[], &[]).unwrap();
        let r = stitch_and_resolve(&d, &d).unwrap();
        assert_eq!(r.circuits_closed, 0);
        assert_eq!(r.resolved.bond_count(), 2);
    }

    #[test]
    fn dimension_mismatch() {
        assert!(stitch_and_resolve(&SpinDiagram::identity(1), &SpinDiagram::identity(2)).is_err());
    }
}
