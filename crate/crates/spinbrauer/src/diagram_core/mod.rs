//! Spin-Brauer diagrams: validation, canonical form, serialization,
//! enumeration, the row-swapping involution and the cell encoding.

mod ascii;
mod cell;
mod element;
mod enumerate;
mod labeled;

use std::fmt;

use serde_json::{json, Value};
use thiserror::Error;

pub use ascii::render_ascii;
pub use cell::{cell_decode, cell_encode, CellTriple, PartitionLE2};
pub use element::AlgebraElement;
pub use enumerate::{enumerate_basis, DEFAULT_MAX_N};
pub use labeled::{LabeledDiagram, Symbol};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Row {
    Top,
    Bottom,
}

impl Row {
    pub fn other(self) -> Row {
        match self {
            Row::Top => Row::Bottom,
            Row::Bottom => Row::Top,
        }
    }
}

impl fmt::Display for Row {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Row::Top => "top",
            Row::Bottom => "bottom",
        })
    }
}

/// What a single vertex is attached to. Partners are 1-indexed positions;
/// `Arc` partners lie in the same row, `Through` partners in the other row.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Strand {
    Isolated,
    Arc(usize),
    Through(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("{row} vertex {vertex} is outside 1..={n}")]
    VertexOutOfRange { row: Row, vertex: usize, n: usize },
    #[error("{row} vertex {vertex} {}", overlap_text(first, second))]
    Overlap { row: Row, vertex: usize, first: &'static str, second: &'static str },
    #[error("{row} vertex {vertex} is not covered by any part")]
    Uncovered { row: Row, vertex: usize },
    #[error("{row} isolated list is not strictly ascending")]
    UnsortedIsolated { row: Row },
    #[error("{row} arc ({a},{b}) must list the smaller vertex first")]
    ArcOrientation { row: Row, a: usize, b: usize },
    #[error("{row} arcs are not sorted by first vertex")]
    UnsortedArcs { row: Row },
    #[error("through pairs are not sorted by first coordinate")]
    UnsortedThrough,
    #[error("strand table is inconsistent at {row} vertex {vertex}")]
    InconsistentStrands { row: Row, vertex: usize },
    #[error("malformed diagram JSON: {0}")]
    Json(String),
}

fn overlap_text(first: &str, second: &str) -> String {
    if first == second {
        format!("is {first} twice")
    } else {
        format!("is both {first} and {second}")
    }
}

/// A canonical spin-Brauer diagram. Isolated labels are implicit: top row
/// left to right, then bottom row left to right.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct SpinDiagram {
    pub(crate) top: Vec<Strand>,
    pub(crate) bottom: Vec<Strand>,
}

fn place(
    table: &mut [Option<(Strand, &'static str)>],
    row: Row,
    v: usize,
    s: Strand,
    what: &'static str,
) -> Result<(), DiagramError> {
    let n = table.len();
    if v == 0 || v > n {
        return Err(DiagramError::VertexOutOfRange { row, vertex: v, n });
    }
    if let Some((_, first)) = table[v - 1] {
        return Err(DiagramError::Overlap { row, vertex: v, first, second: what });
    }
    table[v - 1] = Some((s, what));
    Ok(())
}

impl SpinDiagram {
    /// Builds and validates a diagram from its five parts.
    pub fn from_parts(
        n: usize,
        top_isolated: &[usize],
        bottom_isolated: &[usize],
        top_arcs: &[(usize, usize)],
        bottom_arcs: &[(usize, usize)],
        through: &[(usize, usize)],
    ) -> Result<Self, DiagramError> {
        let mut top = vec![None; n];
        let mut bottom = vec![None; n];
        for (row, iso, arcs, table) in
            [(Row::Top, top_isolated, top_arcs, &mut top), (Row::Bottom, bottom_isolated, bottom_arcs, &mut bottom)]
        {
            for &v in iso {
                place(table, row, v, Strand::Isolated, "isolated")?;
            }
            if iso.windows(2).any(|w| w[0] >= w[1]) {
                return Err(DiagramError::UnsortedIsolated { row });
            }
            for &(a, b) in arcs {
                if a >= b {
                    return Err(DiagramError::ArcOrientation { row, a, b });
                }
                place(table, row, a, Strand::Arc(b), "in an arc")?;
                place(table, row, b, Strand::Arc(a), "in an arc")?;
            }
            if arcs.windows(2).any(|w| w[0].0 >= w[1].0) {
                return Err(DiagramError::UnsortedArcs { row });
            }
        }
        for &(i, j) in through {
            place(&mut top, Row::Top, i, Strand::Through(j), "a through-string end")?;
            place(&mut bottom, Row::Bottom, j, Strand::Through(i), "a through-string end")?;
        }
        if through.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(DiagramError::UnsortedThrough);
        }
        let finish = |row: Row, t: Vec<Option<(Strand, &'static str)>>| {
            t.into_iter()
                .enumerate()
                .map(|(i, s)| s.map(|x| x.0).ok_or(DiagramError::Uncovered { row, vertex: i + 1 }))
                .collect::<Result<Vec<_>, _>>()
        };
        Ok(SpinDiagram { top: finish(Row::Top, top)?, bottom: finish(Row::Bottom, bottom)? })
    }

    /// Validates a raw strand table.
    pub fn from_strands(top: Vec<Strand>, bottom: Vec<Strand>) -> Result<Self, DiagramError> {
        let n = top.len();
        if bottom.len() != n {
            return Err(DiagramError::Json(format!("rows of length {} and {}", n, bottom.len())));
        }
        for (row, this, other) in [(Row::Top, &top, &bottom), (Row::Bottom, &bottom, &top)] {
            for (i, s) in this.iter().enumerate() {
                let v = i + 1;
                let ok = match *s {
                    Strand::Isolated => true,
                    Strand::Arc(p) => p != v && p >= 1 && p <= n && this[p - 1] == Strand::Arc(v),
                    Strand::Through(p) => p >= 1 && p <= n && other[p - 1] == Strand::Through(v),
                };
                if !ok {
                    return Err(DiagramError::InconsistentStrands { row, vertex: v });
                }
            }
        }
        Ok(SpinDiagram { top, bottom })
    }

    pub(crate) fn from_strands_unchecked(top: Vec<Strand>, bottom: Vec<Strand>) -> Self {
        debug_assert!(Self::from_strands(top.clone(), bottom.clone()).is_ok());
        SpinDiagram { top, bottom }
    }

    pub fn identity(n: usize) -> Self {
        let strands: Vec<Strand> = (1..=n).map(Strand::Through).collect();
        SpinDiagram { top: strands.clone(), bottom: strands }
    }

    pub fn n(&self) -> usize {
        self.top.len()
    }

    pub fn row(&self, r: Row) -> &[Strand] {
        match r {
            Row::Top => &self.top,
            Row::Bottom => &self.bottom,
        }
    }

    pub fn isolated(&self, r: Row) -> Vec<usize> {
        self.row(r).iter().enumerate().filter(|(_, s)| **s == Strand::Isolated).map(|(i, _)| i + 1).collect()
    }

    pub fn top_isolated(&self) -> Vec<usize> {
        self.isolated(Row::Top)
    }

    pub fn bottom_isolated(&self) -> Vec<usize> {
        self.isolated(Row::Bottom)
    }

    pub fn arcs(&self, r: Row) -> Vec<(usize, usize)> {
        self.row(r)
            .iter()
            .enumerate()
            .filter_map(|(i, s)| match *s {
                Strand::Arc(p) if p > i + 1 => Some((i + 1, p)),
                _ => None,
            })
            .collect()
    }

    pub fn top_arcs(&self) -> Vec<(usize, usize)> {
        self.arcs(Row::Top)
    }

    pub fn bottom_arcs(&self) -> Vec<(usize, usize)> {
        self.arcs(Row::Bottom)
    }

    /// Through strings as `(top, bottom)` pairs sorted by top vertex.
    pub fn through(&self) -> Vec<(usize, usize)> {
        self.top
            .iter()
            .enumerate()
            .filter_map(|(i, s)| match *s {
                Strand::Through(j) => Some((i + 1, j)),
                _ => None,
            })
            .collect()
    }

    pub fn through_count(&self) -> usize {
        self.top.iter().filter(|s| matches!(s, Strand::Through(_))).count()
    }

    pub fn isolated_count(&self) -> usize {
        self.top.iter().chain(&self.bottom).filter(|s| **s == Strand::Isolated).count()
    }

    pub fn has_isolated(&self) -> bool {
        self.isolated_count() > 0
    }

    /// Exchanges the rows and inverts the through-string bijection.
    pub fn involution(&self) -> SpinDiagram {
        SpinDiagram { top: self.bottom.clone(), bottom: self.top.clone() }
    }

    pub fn to_json(&self) -> Value {
        let row = |r: Row| {
            json!({
                "arcs": self.arcs(r).iter().map(|&(a, b)| json!([a, b])).collect::<Vec<_>>(),
                "isolated": self.isolated(r),
            })
        };
        json!({
            "bottom": row(Row::Bottom),
            "n": self.n(),
            "through": self.through().iter().map(|&(a, b)| json!([a, b])).collect::<Vec<_>>(),
            "top": row(Row::Top),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self, DiagramError> {
        let bad = |m: &str| DiagramError::Json(m.to_string());
        let obj = v.as_object().ok_or_else(|| bad("expected an object"))?;
        for k in obj.keys() {
            if !matches!(k.as_str(), "n" | "top" | "bottom" | "through") {
                return Err(DiagramError::Json(format!("unknown key {k:?}")));
            }
        }
        let n = obj.get("n").and_then(Value::as_u64).ok_or_else(|| bad("missing or invalid \"n\""))? as usize;
        let uint = |x: &Value| x.as_u64().map(|u| u as usize).ok_or_else(|| bad("expected a nonnegative integer"));
        let pairs = |x: Option<&Value>, what: &str| -> Result<Vec<(usize, usize)>, DiagramError> {
            let Some(x) = x else { return Ok(Vec::new()) };
            x.as_array()
                .ok_or_else(|| DiagramError::Json(format!("{what} must be a list")))?
                .iter()
                .map(|p| match p.as_array().map(Vec::as_slice) {
                    Some([a, b]) => Ok((uint(a)?, uint(b)?)),
                    _ => Err(DiagramError::Json(format!("{what} entries must be pairs"))),
                })
                .collect()
        };
        let row = |key: &str| -> Result<(Vec<usize>, Vec<(usize, usize)>), DiagramError> {
            let Some(r) = obj.get(key) else {
                return Ok((Vec::new(), Vec::new()));
            };
            let r = r.as_object().ok_or_else(|| DiagramError::Json(format!("\"{key}\" must be an object")))?;
            for k in r.keys() {
                if k != "isolated" && k != "arcs" {
                    return Err(DiagramError::Json(format!("unknown key {k:?} in \"{key}\"")));
                }
            }
            let iso = match r.get("isolated") {
                None => Vec::new(),
                Some(x) => x
                    .as_array()
                    .ok_or_else(|| bad("isolated must be a list"))?
                    .iter()
                    .map(uint)
                    .collect::<Result<_, _>>()?,
            };
            Ok((iso, pairs(r.get("arcs"), "arcs")?))
        };
        let (ti, ta) = row("top")?;
        let (bi, ba) = row("bottom")?;
        let th = pairs(obj.get("through"), "through")?;
        SpinDiagram::from_parts(n, &ti, &bi, &ta, &ba, &th)
    }

    /// Compact JSON text; keys are sorted, so this is a canonical serialization.
    pub fn to_json_string(&self) -> String {
        self.to_json().to_string()
    }
}

/// Parses and validates diagram JSON text.
pub fn parse_diagram(text: &str) -> Result<SpinDiagram, DiagramError> {
    let v: Value = serde_json::from_str(text).map_err(|e| DiagramError::Json(e.to_string()))?;
    SpinDiagram::from_json(&v)
}

pub fn emit_diagram(d: &SpinDiagram) -> String {
    d.to_json_string()
}

pub fn involution(d: &SpinDiagram) -> SpinDiagram {
    d.involution()
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn datum_example() -> SpinDiagram {
        SpinDiagram::from_parts(5, &[2, 5], &[1, 4], &[(1, 3)], &[(2, 5)], &[(4, 3)]).unwrap()
    }

    #[test]
    fn five_vertex_datum() {
        let d = datum_example();
        assert_eq!(d.top_isolated(), vec![2, 5]);
        assert_eq!(d.bottom_isolated(), vec![1, 4]);
        assert_eq!(d.through(), vec![(4, 3)]);
        assert_eq!(d.through_count(), 1);
    }

    #[test]
    fn identity_strand() {
        let d = SpinDiagram::from_parts(1, &[], &[], &[], &[], &[(1, 1)]).unwrap();
        assert_eq!(d, SpinDiagram::identity(1));
    }

    #[test]
    fn overlap_is_reported() {
        let e = SpinDiagram::from_parts(2, &[1], &[1, 2], &[(1, 2)], &[], &[]).unwrap_err();
        assert_eq!(e, DiagramError::Overlap { row: Row::Top, vertex: 1, first: "isolated", second: "in an arc" });
        assert_eq!(e.to_string(), "top vertex 1 is both isolated and in an arc");
    }

    #[test]
    fn unsorted_and_uncovered() {
        assert_eq!(
            SpinDiagram::from_parts(2, &[2, 1], &[1, 2], &[], &[], &[]).unwrap_err(),
            DiagramError::UnsortedIsolated { row: Row::Top }
        );
        assert_eq!(
            SpinDiagram::from_parts(2, &[1], &[1, 2], &[], &[], &[]).unwrap_err(),
            DiagramError::Uncovered { row: Row::Top, vertex: 2 }
        );
        // A through string pairing two top vertices with one bottom vertex.
        assert!(matches!(
            SpinDiagram::from_parts(2, &[], &[2], &[], &[], &[(1, 1), (2, 1)]).unwrap_err(),
            DiagramError::Overlap { row: Row::Bottom, vertex: 1, .. }
        ));
    }

    #[test]
    fn involution_of_datum_example() {
        let i = datum_example().involution();
        let expected = SpinDiagram::from_parts(5, &[1, 4], &[2, 5], &[(2, 5)], &[(1, 3)], &[(3, 4)]).unwrap();
        assert_eq!(i, expected);
        assert_eq!(i.involution(), datum_example());
    }

    #[test]
    fn json_is_byte_stable() {
        let d = datum_example();
        let text = emit_diagram(&d);
        assert_eq!(
            text,
            r#"{"bottom":{"arcs":[[2,5]],"isolated":[1,4]},"n":5,"through":[[4,3]],"top":{"arcs":[[1,3]],"isolated":[2,5]}}"#
        );
        assert_eq!(parse_diagram(&text).unwrap(), d);
        assert_eq!(emit_diagram(&parse_diagram(&text).unwrap()), text);
    }

    #[test]
    fn json_rejects_unknown_keys() {
        assert!(parse_diagram(r#"{"n":1,"through":[[1,1]],"extra":0}"#).is_err());
    }

    #[test]
    fn strand_table_validation() {
        assert!(SpinDiagram::from_strands(vec![Strand::Arc(2), Strand::Isolated], vec![Strand::Isolated; 2]).is_err());
        assert!(SpinDiagram::from_strands(vec![Strand::Through(2)], vec![Strand::Through(1)]).is_err());
    }
}
