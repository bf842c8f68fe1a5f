use std::collections::HashMap;

use super::{DiagramError, Row, SpinDiagram, Strand};

/// One slot in the total order of a labeled diagram.
///
/// `Vertex` is an isolated vertex of the diagram. A `Bond` id occurs exactly
/// twice in a word and stands for two order slots joined through the middle
/// of a product: an isolated–isolated path whose ends are not yet adjacent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    Vertex(Row, usize),
    Bond(u32),
}

/// A diagram whose isolated vertices carry an arbitrary total order.
///
/// The order is the word itself: `word[k]` has label `k + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LabeledDiagram {
    pub(crate) top: Vec<Strand>,
    pub(crate) bottom: Vec<Strand>,
    pub(crate) word: Vec<Symbol>,
}

impl LabeledDiagram {
    /// Builds a labeled diagram from strand tables and a word, checking that
    /// every isolated vertex appears once and every bond twice.
    pub fn new(top: Vec<Strand>, bottom: Vec<Strand>, word: Vec<Symbol>) -> Result<Self, DiagramError> {
        let base = SpinDiagram::from_strands(top, bottom)?;
        let mut seen_vertex = std::collections::HashSet::new();
        let mut bonds: HashMap<u32, usize> = HashMap::new();
        for s in &word {
            match *s {
                Symbol::Vertex(r, p) => {
                    if p == 0 || p > base.n() || base.row(r)[p - 1] != Strand::Isolated {
                        return Err(DiagramError::Json(format!("{r} vertex {p} in the order is not isolated")));
                    }
                    if !seen_vertex.insert((r, p)) {
                        return Err(DiagramError::Json(format!("{r} vertex {p} labeled twice")));
                    }
                }
                Symbol::Bond(b) => *bonds.entry(b).or_default() += 1,
            }
        }
        if seen_vertex.len() != base.isolated_count() {
            return Err(DiagramError::Json("some isolated vertex has no label".into()));
        }
        if bonds.values().any(|&c| c != 2) {
            return Err(DiagramError::Json("every bond must occur exactly twice".into()));
        }
        let mut out = LabeledDiagram { top: base.top, bottom: base.bottom, word };
        out.renumber_bonds();
        Ok(out)
    }

    /// Builds a bond-free labeled diagram from `(row, position, label)` triples.
    pub fn from_labels(d: &SpinDiagram, labels: &[(Row, usize, usize)]) -> Result<Self, DiagramError> {
        let mut sorted = labels.to_vec();
        sorted.sort_by_key(|t| t.2);
        if sorted.iter().enumerate().any(|(k, t)| t.2 != k + 1) {
            return Err(DiagramError::Json("labels must be exactly 1..=t".into()));
        }
        let word = sorted.iter().map(|&(r, p, _)| Symbol::Vertex(r, p)).collect();
        LabeledDiagram::new(d.top.clone(), d.bottom.clone(), word)
    }

    /// The canonical labeling of a spin-Brauer diagram.
    pub fn from_spin_diagram(d: &SpinDiagram) -> Self {
        let word = d
            .top_isolated()
            .into_iter()
            .map(|p| Symbol::Vertex(Row::Top, p))
            .chain(d.bottom_isolated().into_iter().map(|p| Symbol::Vertex(Row::Bottom, p)))
            .collect();
        LabeledDiagram { top: d.top.clone(), bottom: d.bottom.clone(), word }
    }

    pub(crate) fn from_raw(top: Vec<Strand>, bottom: Vec<Strand>, word: Vec<Symbol>) -> Self {
        let mut out = LabeledDiagram { top, bottom, word };
        out.renumber_bonds();
        out
    }

    /// Relabels bonds 0, 1, 2, … by first occurrence so equal diagrams hash equally.
    pub(crate) fn renumber_bonds(&mut self) {
        let mut map: HashMap<u32, u32> = HashMap::new();
        for s in self.word.iter_mut() {
            if let Symbol::Bond(b) = s {
                let next = map.len() as u32;
                *b = *map.entry(*b).or_insert(next);
            }
        }
    }

    pub fn n(&self) -> usize {
        self.top.len()
    }

    pub fn word(&self) -> &[Symbol] {
        &self.word
    }

    pub fn row(&self, r: Row) -> &[Strand] {
        match r {
            Row::Top => &self.top,
            Row::Bottom => &self.bottom,
        }
    }

    pub fn bond_count(&self) -> usize {
        self.word.iter().filter(|s| matches!(s, Symbol::Bond(_))).count() / 2
    }

    /// `(row, position, label)` for every isolated vertex.
    pub fn labels(&self) -> Vec<(Row, usize, usize)> {
        self.word
            .iter()
            .enumerate()
            .filter_map(|(k, s)| match *s {
                Symbol::Vertex(r, p) => Some((r, p, k + 1)),
                Symbol::Bond(_) => None,
            })
            .collect()
    }

    /// No bonds and the order is top row left to right, then bottom row.
    pub fn is_canonical(&self) -> bool {
        self.word.windows(2).all(|w| w[0] < w[1]) && self.word.iter().all(|s| matches!(s, Symbol::Vertex(..)))
    }

    /// The underlying spin-Brauer diagram, if the labeling is canonical.
    pub fn to_spin_diagram(&self) -> Option<SpinDiagram> {
        self.is_canonical().then(|| SpinDiagram::from_strands_unchecked(self.top.clone(), self.bottom.clone()))
    }

    /// Drops the order and returns the strand structure as a diagram.
    pub fn underlying(&self) -> SpinDiagram {
        SpinDiagram::from_strands_unchecked(self.top.clone(), self.bottom.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_round_trip() {
        let d = SpinDiagram::from_parts(3, &[1, 3], &[1, 3], &[], &[], &[(2, 2)]).unwrap();
        let l = LabeledDiagram::from_spin_diagram(&d);
        assert!(l.is_canonical());
        assert_eq!(l.labels(), vec![(Row::Top, 1, 1), (Row::Top, 3, 2), (Row::Bottom, 1, 3), (Row::Bottom, 3, 4)]);
        assert_eq!(l.to_spin_diagram(), Some(d));
    }

    #[test]
    fn out_of_order_is_not_canonical() {
        let d = SpinDiagram::from_parts(2, &[1, 2], &[], &[], &[(1, 2)], &[]).unwrap();
        let l = LabeledDiagram::from_labels(&d, &[(Row::Top, 1, 2), (Row::Top, 2, 1)]).unwrap();
        assert!(!l.is_canonical());
        assert!(l.to_spin_diagram().is_none());
    }

    #[test]
    fn rejects_bad_words() {
        let d = SpinDiagram::from_parts(1, &[1], &[1], &[], &[], &[]).unwrap();
        let t = Symbol::Vertex(Row::Top, 1);
        let b = Symbol::Vertex(Row::Bottom, 1);
        assert!(LabeledDiagram::new(d.top.clone(), d.bottom.clone(), vec![t]).is_err());
        assert!(LabeledDiagram::new(d.top.clone(), d.bottom.clone(), vec![t, b, Symbol::Bond(4)]).is_err());
        let ok =
            LabeledDiagram::new(d.top.clone(), d.bottom.clone(), vec![Symbol::Bond(9), t, Symbol::Bond(9), b]).unwrap();
        assert_eq!(ok.word()[0], Symbol::Bond(0));
        assert_eq!(ok.bond_count(), 1);
    }
}
