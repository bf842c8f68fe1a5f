use serde_json::{json, Value};

use super::{DiagramError, Row, SpinDiagram, Strand};

/// A set partition of `{1..n}` into blocks of size one or two.
///
/// Blocks are kept sorted internally and ordered by their smallest element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartitionLE2 {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl PartitionLE2 {
    pub fn new(n: usize, mut blocks: Vec<Vec<usize>>) -> Result<Self, DiagramError> {
        let mut seen = vec![false; n];
        for b in blocks.iter_mut() {
            b.sort_unstable();
            if b.is_empty() || b.len() > 2 {
                return Err(DiagramError::Json(format!("block {b:?} must have size 1 or 2")));
            }
            for &v in b.iter() {
                if v == 0 || v > n {
                    return Err(DiagramError::VertexOutOfRange { row: Row::Top, vertex: v, n });
                }
                if std::mem::replace(&mut seen[v - 1], true) {
                    return Err(DiagramError::Json(format!("vertex {v} lies in two blocks")));
                }
            }
        }
        if let Some(v) = seen.iter().position(|s| !s) {
            return Err(DiagramError::Json(format!("vertex {} is in no block", v + 1)));
        }
        blocks.sort();
        Ok(PartitionLE2 { n, blocks })
    }

    /// The partition a diagram row induces: arcs are pairs, everything else is a singleton.
    pub fn of_row(row: &[Strand]) -> Self {
        let mut blocks = Vec::new();
        for (i, s) in row.iter().enumerate() {
            match *s {
                Strand::Arc(p) if p < i + 1 => {}
                Strand::Arc(p) => blocks.push(vec![i + 1, p]),
                _ => blocks.push(vec![i + 1]),
            }
        }
        PartitionLE2 { n: row.len(), blocks }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// Vertices forming singleton blocks, ascending.
    pub fn singletons(&self) -> Vec<usize> {
        self.blocks.iter().filter(|b| b.len() == 1).map(|b| b[0]).collect()
    }

    /// Number of singleton blocks.
    pub fn m1(&self) -> usize {
        self.blocks.iter().filter(|b| b.len() == 1).count()
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.blocks.iter().filter(|b| b.len() == 2).map(|b| (b[0], b[1])).collect()
    }

    pub fn to_json(&self) -> Value {
        json!(self.blocks)
    }

    pub fn from_json(n: usize, v: &Value) -> Result<Self, DiagramError> {
        let blocks: Vec<Vec<usize>> =
            serde_json::from_value(v.clone()).map_err(|e| DiagramError::Json(e.to_string()))?;
        PartitionLE2::new(n, blocks)
    }
}

/// The encoding `(x,S) ⊗ (y,T) ⊗ σ` of a diagram with `ell` through strings.
///
/// `s` and `t` hold the singleton vertices in ascending order, and
/// `sigma[i-1] = j` means the through string from `s[i-1]` ends at `t[j-1]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CellTriple {
    pub ell: usize,
    pub x: PartitionLE2,
    pub s: Vec<usize>,
    pub y: PartitionLE2,
    pub t: Vec<usize>,
    pub sigma: Vec<usize>,
}

impl CellTriple {
    pub fn validate(&self) -> Result<(), DiagramError> {
        let err = |m: &str| Err(DiagramError::Json(m.to_string()));
        if self.x.n() != self.y.n() {
            return err("x and y partition different sets");
        }
        if self.s.len() != self.ell || self.t.len() != self.ell || self.sigma.len() != self.ell {
            return err("|S|, |T| and σ must all have size ℓ");
        }
        for (set, part) in [(&self.s, &self.x), (&self.t, &self.y)] {
            if set.windows(2).any(|w| w[0] >= w[1]) {
                return err("S and T must be strictly ascending");
            }
            let sing = part.singletons();
            if set.iter().any(|v| !sing.contains(v)) {
                return err("S and T must consist of singleton blocks");
            }
        }
        let mut seen = vec![false; self.ell];
        for &j in &self.sigma {
            if j == 0 || j > self.ell || std::mem::replace(&mut seen[j - 1], true) {
                return err("σ is not a permutation");
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "ell": self.ell,
            "x": self.x.to_json(),
            "S": self.s,
            "y": self.y.to_json(),
            "T": self.t,
            "sigma": self.sigma,
        })
    }
}

pub fn cell_encode(d: &SpinDiagram) -> CellTriple {
    let through = d.through();
    let s: Vec<usize> = through.iter().map(|p| p.0).collect();
    let mut t: Vec<usize> = through.iter().map(|p| p.1).collect();
    t.sort_unstable();
    let sigma = through.iter().map(|&(_, j)| t.binary_search(&j).expect("end is in T") + 1).collect();
    CellTriple { ell: s.len(), x: PartitionLE2::of_row(&d.top), s, y: PartitionLE2::of_row(&d.bottom), t, sigma }
}

pub fn cell_decode(c: &CellTriple) -> Result<SpinDiagram, DiagramError> {
    c.validate()?;
    let row = |p: &PartitionLE2, ends: &[usize], partners: &dyn Fn(usize) -> usize| {
        let mut strands = vec![Strand::Isolated; p.n()];
        for (a, b) in p.pairs() {
            strands[a - 1] = Strand::Arc(b);
            strands[b - 1] = Strand::Arc(a);
        }
        for (k, &v) in ends.iter().enumerate() {
            strands[v - 1] = Strand::Through(partners(k));
        }
        strands
    };
    let mut inverse = vec![0; c.ell];
    for (i, &j) in c.sigma.iter().enumerate() {
        inverse[j - 1] = i;
    }
    let top = row(&c.x, &c.s, &|k| c.t[c.sigma[k] - 1]);
    let bottom = row(&c.y, &c.t, &|k| c.s[inverse[k]]);
    Ok(SpinDiagram::from_strands_unchecked(top, bottom))
}
