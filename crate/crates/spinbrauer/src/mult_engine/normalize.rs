use std::collections::HashMap;

use super::stitch::close_adjacent_bonds;
use crate::diagram_core::{AlgebraElement, LabeledDiagram, Row, Strand, Symbol};
use crate::scalar_rings::DeltaPolynomial;

/// Which adjacent pair the spin-Clifford relation is applied to next.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum NormalizationStrategy {
    /// Close the tightest bond first by moving its left end right. Then fix
    /// the leftmost cross-row inversion, then the leftmost within-row one.
    #[default]
    CrossRowFirst,
    /// Close the tightest bond by moving its right end left, then insertion
    /// sort from the left.
    LeftToRight,
    /// Close the bond ending furthest right, then bubble inversions from the right.
    RightToLeft,
}

/// Expands `coeff · d` into canonical diagrams with the default strategy.
pub fn clifford_normalize(d: &LabeledDiagram, coeff: &DeltaPolynomial) -> AlgebraElement {
    clifford_normalize_with(d, coeff, NormalizationStrategy::default())
}

pub fn clifford_normalize_with(
    d: &LabeledDiagram,
    coeff: &DeltaPolynomial,
    strategy: NormalizationStrategy,
) -> AlgebraElement {
    let mut memo = HashMap::new();
    normalize(d.clone(), strategy, &mut memo).scale(coeff)
}

fn normalize(
    mut d: LabeledDiagram,
    strategy: NormalizationStrategy,
    memo: &mut HashMap<LabeledDiagram, AlgebraElement>,
) -> AlgebraElement {
    let mut tagged: Vec<(Symbol, ())> = d.word.iter().map(|&s| (s, ())).collect();
    let closed = close_adjacent_bonds(&mut tagged);
    if closed > 0 {
        d.word = tagged.into_iter().map(|t| t.0).collect();
        d.renumber_bonds();
    }
    let factor = DeltaPolynomial::delta_pow(closed);
    if let Some(sd) = d.to_spin_diagram() {
        return AlgebraElement::term(sd, factor);
    }
    if let Some(hit) = memo.get(&d) {
        return hit.scale(&factor);
    }
    let i = pick_swap(&d.word, strategy);
    let mut swapped = d.clone();
    swapped.word.swap(i, i + 1);
    swapped.renumber_bonds();
    let mut out = normalize(swapped, strategy, memo).scale(&DeltaPolynomial::constant(-1));
    let contracted = contract(&d, i);
    out.add_scaled(&normalize(contracted, strategy, memo), &DeltaPolynomial::constant(2));
    memo.insert(d, out.clone());
    out.scale(&factor)
}

fn bond_spans(word: &[Symbol]) -> Vec<(usize, usize)> {
    let mut first: HashMap<u32, usize> = HashMap::new();
    let mut spans = Vec::new();
    for (k, s) in word.iter().enumerate() {
        if let Symbol::Bond(b) = *s {
            match first.remove(&b) {
                Some(i) => spans.push((i, k)),
                None => {
                    first.insert(b, k);
                }
            }
        }
    }
    spans
}

fn cross_row(a: Symbol, b: Symbol) -> bool {
    matches!((a, b), (Symbol::Vertex(r, _), Symbol::Vertex(s, _)) if r != s)
}

/// Index `i` such that the pair `(word[i], word[i+1])` is swapped next.
fn pick_swap(word: &[Symbol], strategy: NormalizationStrategy) -> usize {
    let spans = bond_spans(word);
    if !spans.is_empty() {
        return match strategy {
            NormalizationStrategy::CrossRowFirst => {
                let &(i, _) = spans.iter().min_by_key(|&&(i, j)| (j - i, i)).unwrap();
                i
            }
            NormalizationStrategy::LeftToRight => {
                let &(_, j) = spans.iter().min_by_key(|&&(i, j)| (j - i, std::cmp::Reverse(i))).unwrap();
                j - 1
            }
            NormalizationStrategy::RightToLeft => {
                let &(i, _) = spans.iter().max_by_key(|&&(_, j)| j).unwrap();
                i
            }
        };
    }
    let inversions = (0..word.len().saturating_sub(1)).filter(|&i| word[i] > word[i + 1]);
    match strategy {
        NormalizationStrategy::CrossRowFirst => {
            let all: Vec<usize> = inversions.collect();
            all.iter().copied().find(|&i| cross_row(word[i], word[i + 1])).unwrap_or(all[0])
        }
        NormalizationStrategy::LeftToRight => inversions.min().expect("an inversion exists"),
        NormalizationStrategy::RightToLeft => inversions.max().expect("an inversion exists"),
    }
}

/// The diagram with `word[i]` and `word[i+1]` joined by an edge.
fn contract(d: &LabeledDiagram, i: usize) -> LabeledDiagram {
    let (s, t) = (d.word[i], d.word[i + 1]);
    let mut top = d.top.clone();
    let mut bottom = d.bottom.clone();
    let mut word: Vec<Symbol> = d.word[..i].iter().chain(&d.word[i + 2..]).copied().collect();
    let mut replace_bond = |b: u32, with: Symbol| {
        let slot = word.iter_mut().find(|x| **x == Symbol::Bond(b)).expect("bond has a second end");
        *slot = with;
    };
    match (s, t) {
        (Symbol::Vertex(r1, p), Symbol::Vertex(r2, q)) => {
            let (strand_p, strand_q) =
                if r1 == r2 { (Strand::Arc(q), Strand::Arc(p)) } else { (Strand::Through(q), Strand::Through(p)) };
            for (r, v, st) in [(r1, p, strand_p), (r2, q, strand_q)] {
                match r {
                    Row::Top => top[v - 1] = st,
                    Row::Bottom => bottom[v - 1] = st,
                }
            }
        }
        (Symbol::Bond(b), v @ Symbol::Vertex(..)) | (v @ Symbol::Vertex(..), Symbol::Bond(b)) => replace_bond(b, v),
        (Symbol::Bond(a), Symbol::Bond(b)) => {
            debug_assert_ne!(a, b, "adjacent equal bonds are closed before swapping");
            replace_bond(b, Symbol::Bond(a));
        }
    }
    LabeledDiagram::from_raw(top, bottom, word)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram_core::SpinDiagram;

    #[test]
    fn canonical_input_is_unchanged() {
        let d = SpinDiagram::from_parts(2, &[1, 2], &[], &[], &[(1, 2)], &[]).unwrap();
        let l = LabeledDiagram::from_spin_diagram(&d);
        let e = clifford_normalize(&l, &DeltaPolynomial::delta());
        assert_eq!(e, AlgebraElement::term(d, DeltaPolynomial::delta()));
    }

    #[test]
    fn single_within_row_swap() {
        let d = SpinDiagram::from_parts(2, &[1, 2], &[], &[], &[(1, 2)], &[]).unwrap();
        let l = LabeledDiagram::from_labels(&d, &[(Row::Top, 1, 2), (Row::Top, 2, 1)]).unwrap();
        let e = clifford_normalize(&l, &DeltaPolynomial::one());
        let arc = SpinDiagram::from_parts(2, &[], &[], &[(1, 2)], &[(1, 2)], &[]).unwrap();
        let mut expected = AlgebraElement::term(d, DeltaPolynomial::constant(-1));
        expected.add_term(arc, DeltaPolynomial::constant(2));
        assert_eq!(e, expected);
    }

    #[test]
    fn interleaved_bonds() {
        // b0 b1 b0 b1 between the outer vertices: −δ² + 2δ.
        let d = SpinDiagram::from_parts(2, &[1, 2], &[1, 2], &[], &[], &[]).unwrap();
        let t = |p| Symbol::Vertex(Row::Top, p);
        let b = |p| Symbol::Vertex(Row::Bottom, p);
        let word = vec![t(1), t(2), Symbol::Bond(0), Symbol::Bond(1), Symbol::Bond(0), Symbol::Bond(1), b(1), b(2)];
        let l = LabeledDiagram::new(d.top.clone(), d.bottom.clone(), word).unwrap();
        for s in [
            NormalizationStrategy::CrossRowFirst,
            NormalizationStrategy::LeftToRight,
            NormalizationStrategy::RightToLeft,
        ] {
            let e = clifford_normalize_with(&l, &DeltaPolynomial::one(), s);
            assert_eq!(
                e,
                AlgebraElement::term(d.clone(), DeltaPolynomial::from_terms([(2, (-1).into()), (1, 2.into())]))
            );
        }
    }
}
