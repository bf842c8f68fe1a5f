use std::collections::HashMap;

use rayon::prelude::*;

use super::space::{clifford, root_two_power, FockIndex, SpaceSpec};
use crate::diagram_core::{AlgebraElement, LabeledDiagram, Row, SpinDiagram, Strand, Symbol};
use crate::error::Error;
use crate::scalar_rings::{LinearMap, RootTwoNumber, SparseVector};

struct Eval<'a> {
    s: &'a SpaceSpec,
    word: &'a [Symbol],
    input: Vec<usize>,
    bottom_arcs: Vec<(usize, usize)>,
    out: SparseVector,
}

#[derive(Clone)]
struct State {
    slots: Vec<usize>,
    a: FockIndex,
    sign: i64,
    roots: u32,
    bonds: Vec<usize>,
}

const UNSET: usize = usize::MAX;

impl Eval<'_> {
    fn apply(&self, st: &mut State, b: usize) -> bool {
        match clifford(self.s, b, st.a) {
            Some((k, root, a)) => {
                st.sign *= k;
                st.roots += u32::from(root);
                st.a = a;
                true
            }
            None => false,
        }
    }

    fn run(&mut self, k: usize, mut st: State) {
        let Some(&sym) = self.word.get(k) else {
            return self.arcs_from(0, st);
        };
        match sym {
            Symbol::Vertex(Row::Top, p) => {
                if self.apply(&mut st, self.input[p - 1]) {
                    self.run(k + 1, st);
                }
            }
            Symbol::Vertex(Row::Bottom, q) => {
                for b in 0..self.s.big_n {
                    let mut next = st.clone();
                    next.slots[q - 1] = b;
                    if self.apply(&mut next, self.s.dual(b)) {
                        self.run(k + 1, next);
                    }
                }
            }
            Symbol::Bond(id) => {
                let id = id as usize;
                if st.bonds[id] != UNSET {
                    let b = self.s.dual(st.bonds[id]);
                    if self.apply(&mut st, b) {
                        self.run(k + 1, st);
                    }
                } else {
                    for b in 0..self.s.big_n {
                        let mut next = st.clone();
                        next.bonds[id] = b;
                        if self.apply(&mut next, b) {
                            self.run(k + 1, next);
                        }
                    }
                }
            }
        }
    }

    fn arcs_from(&mut self, k: usize, st: State) {
        let Some(&(p, q)) = self.bottom_arcs.get(k) else {
            let idx = self.s.index(&st.slots, st.a);
            self.out.add_term(idx, root_two_power(st.sign, st.roots));
            return;
        };
        for b in 0..self.s.big_n {
            let mut next = st.clone();
            next.slots[p - 1] = b;
            next.slots[q - 1] = self.s.dual(b);
            self.arcs_from(k + 1, next);
        }
    }
}

/// Image of the basis vector with index `col` under the map of `d`.
///
/// Top arcs contract by ω, then the word is read left to right: a top vertex
/// applies `P(v)` to the spinor, a bottom vertex inserts `Σ_b b ⊗ P(b*)`, and
/// the two ends of a bond apply `Σ_b P(b) ⋯ P(b*)`. Bottom arcs insert the
/// invariant `Σ_b b ⊗ b*`.
pub fn realize_column(d: &LabeledDiagram, s: &SpaceSpec, col: usize) -> SparseVector {
    let (input, a) = s.decode(col);
    let mut slots = vec![UNSET; d.n()];
    let mut bottom_arcs = Vec::new();
    for (i, st) in d.row(Row::Top).iter().enumerate() {
        match *st {
            Strand::Arc(p) if p > i + 1 && s.omega(input[i], input[p - 1]) == 0 => return SparseVector::new(),
            Strand::Through(j) => slots[j - 1] = input[i],
            _ => {}
        }
    }
    for (i, st) in d.row(Row::Bottom).iter().enumerate() {
        if let Strand::Arc(p) = *st {
            if p > i + 1 {
                bottom_arcs.push((i + 1, p));
            }
        }
    }
    let bonds =
        d.word().iter().filter_map(|x| if let Symbol::Bond(b) = x { Some(*b as usize + 1) } else { None }).max();
    let mut ev = Eval { s, word: d.word(), input, bottom_arcs, out: SparseVector::new() };
    ev.run(0, State { slots, a, sign: 1, roots: 0, bonds: vec![UNSET; bonds.unwrap_or(0)] });
    ev.out
}

fn check_n(n: usize, s: &SpaceSpec) -> Result<(), Error> {
    if n != s.n {
        return Err(Error::DimensionMismatch(format!("diagram has n = {n} but the space has n = {}", s.n)));
    }
    Ok(())
}

pub fn realize_labeled(d: &LabeledDiagram, s: &SpaceSpec) -> Result<LinearMap, Error> {
    check_n(d.n(), s)?;
    let cols: Vec<SparseVector> = (0..s.dim()).into_par_iter().map(|c| realize_column(d, s, c)).collect();
    LinearMap::from_columns(s.dim(), cols)
}

/// The equivariant map `V^{⊗n} ⊗ Δ → V^{⊗n} ⊗ Δ` of a diagram.
pub fn realize_diagram(d: &SpinDiagram, s: &SpaceSpec) -> Result<LinearMap, Error> {
    realize_labeled(&LabeledDiagram::from_spin_diagram(d), s)
}

/// Linear extension of [`realize_diagram`] with δ evaluated at `N`.
pub fn realize_element(e: &AlgebraElement, s: &SpaceSpec) -> Result<LinearMap, Error> {
    check_n(e.n(), s)?;
    let mut out = LinearMap::zero(s.dim(), s.dim());
    for (d, c) in e.terms() {
        let k = c.eval_at_integer(s.big_n as i64);
        let k = i64::try_from(k).map_err(|_| Error::OutOfRange("coefficient does not fit in i64".into()))?;
        out = out.add_scaled(&realize_diagram(d, s)?, &RootTwoNumber::from_integer(k))?;
    }
    Ok(out)
}

/// Column `col` of an element's realization, with per-diagram columns cached.
pub struct ColumnCache<'a> {
    s: &'a SpaceSpec,
    cache: HashMap<(SpinDiagram, usize), SparseVector>,
}

impl<'a> ColumnCache<'a> {
    pub fn new(s: &'a SpaceSpec) -> Self {
        ColumnCache { s, cache: HashMap::new() }
    }

    pub fn diagram_column(&mut self, d: &SpinDiagram, col: usize) -> SparseVector {
        let s = self.s;
        self.cache
            .entry((d.clone(), col))
            .or_insert_with(|| realize_column(&LabeledDiagram::from_spin_diagram(d), s, col))
            .clone()
    }

    /// `f(d)` applied to a vector, computed column by column.
    pub fn apply_diagram(&mut self, d: &SpinDiagram, v: &SparseVector) -> SparseVector {
        let mut out = SparseVector::new();
        for (c, x) in v.iter() {
            let col = self.diagram_column(d, c);
            out.add_scaled(&col, x);
        }
        out
    }

    pub fn element_column(&mut self, e: &AlgebraElement, col: usize) -> SparseVector {
        let mut out = SparseVector::new();
        for (d, c) in e.terms() {
            let k = c.eval_at_integer(self.s.big_n as i64);
            let k = RootTwoNumber::from_integer(i64::try_from(k).expect("coefficient fits in i64"));
            let column = self.diagram_column(d, col);
            out.add_scaled(&column, &k);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar_rings::Rational;

    #[test]
    fn identity_realizes_identity() {
        let s = SpaceSpec::new(3, 2).unwrap();
        assert_eq!(realize_diagram(&SpinDiagram::identity(2), &s).unwrap(), LinearMap::identity(s.dim()));
    }

    #[test]
    fn isolated_pair_on_w1() {
        let s = SpaceSpec::new(3, 1).unwrap();
        let d = SpinDiagram::from_parts(1, &[1], &[1], &[], &[], &[]).unwrap();
        let col = s.index(&[s.w(1)], FockIndex(0));
        let v = realize_column(&LabeledDiagram::from_spin_diagram(&d), &s, col);
        let mut expected = SparseVector::new();
        expected.add_term(col, RootTwoNumber::from_integer(2));
        expected.add_term(
            s.index(&[s.e().unwrap()], FockIndex::from_indices(&[1])),
            RootTwoNumber::new(Rational::zero(), Rational::from_integer(-1)),
        );
        assert_eq!(v, expected);
    }
}
