use serde_json::json;

use super::homomorphism::vector_json;
use super::{Parameters, VerificationReport};
use crate::error::Error;
use crate::pin_realization::{
    act_gamma, act_so, apply_equivariant_map, build_equivariant_map, so_basis, EquivariantMapSpec, SpaceSpec,
};
use crate::scalar_rings::{LinearMap, RootTwoNumber, SparseVector};

use EquivariantMapSpec::{Contraction, Immersion, Injection, Projection, Swap};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapKind {
    Projection,
    Injection,
    Immersion,
    Contraction,
    Swap,
}

impl MapKind {
    pub fn name(self) -> &'static str {
        match self {
            MapKind::Projection => "projection",
            MapKind::Injection => "injection",
            MapKind::Immersion => "immersion",
            MapKind::Contraction => "contraction",
            MapKind::Swap => "swap",
        }
    }

    /// Every instance with domain and codomain arity at most 2.
    fn instances(self) -> Vec<(usize, EquivariantMapSpec)> {
        match self {
            MapKind::Projection => vec![(1, Projection { i: 1 }), (2, Projection { i: 1 }), (2, Projection { i: 2 })],
            MapKind::Injection => vec![(0, Injection { j: 1 }), (1, Injection { j: 1 }), (1, Injection { j: 2 })],
            MapKind::Immersion => vec![(0, Immersion { i: 1, j: 2 })],
            MapKind::Contraction => vec![(2, Contraction { i: 1, j: 2 })],
            MapKind::Swap => vec![(2, Swap { sigma: vec![2, 1] })],
        }
    }
}

/// `f ∘ g = g ∘ f` for every so(N) basis element `g` and for `γ`, over all
/// small instances of the map kind. For the immersion this says so(N)
/// annihilates `Σ b ⊗ b*`.
pub fn verify_equivariance(big_n: usize, kind: MapKind) -> Result<VerificationReport, Error> {
    let report = VerificationReport::new("equivariance", Parameters::new(None, Some(big_n)).with_variant(kind.name()));
    let mut checked = 0;
    for (n, spec) in kind.instances() {
        let dom = SpaceSpec::new(big_n, n)?;
        let cod = dom.with_n(spec.codomain_n(n).expect("instances are well formed"));
        let f = build_equivariant_map(&spec, &dom)?;
        let mut actions: Vec<(String, LinearMap, LinearMap)> =
            vec![("gamma".to_string(), act_gamma(&dom), act_gamma(&cod))];
        for g in so_basis(&dom) {
            actions.push((format!("{g:?}"), act_so(g, &dom)?, act_so(g, &cod)?));
        }
        for (name, on_dom, on_cod) in actions {
            if f.compose(&on_dom)? != on_cod.compose(&f)? {
                return Ok(report.fail(json!({ "map": format!("{spec:?}"), "domain_n": n, "element": name })));
            }
            checked += 1;
        }
    }
    Ok(report.observe(json!({ "commutations_checked": checked })))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CircuitType {
    I,
    II,
    III,
    IV,
    V,
}

impl CircuitType {
    pub fn name(self) -> &'static str {
        match self {
            CircuitType::I => "I",
            CircuitType::II => "II",
            CircuitType::III => "III",
            CircuitType::IV => "IV",
            CircuitType::V => "V",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [CircuitType::I, CircuitType::II, CircuitType::III, CircuitType::IV, CircuitType::V]
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Half {
    Isolated,
    Arc(usize),
}

/// Upper and lower halves of a closed circuit on `k` middle vertices (0-based).
fn layout(circuit: CircuitType, arcs: usize) -> (Vec<Half>, Vec<Half>) {
    let pairs = |k: usize, from: usize, to: usize| {
        let mut h = vec![Half::Isolated; k];
        let mut p = from;
        while p < to {
            h[p] = Half::Arc(p + 1);
            h[p + 1] = Half::Arc(p);
            p += 2;
        }
        h
    };
    match circuit {
        CircuitType::I => {
            let k = 2 * arcs + 2;
            let upper = pairs(k, 0, k - 1);
            let mut lower = pairs(k, 1, k - 2);
            lower[0] = Half::Arc(k - 1);
            lower[k - 1] = Half::Arc(0);
            (upper, lower)
        }
        CircuitType::II => {
            let k = 2 * arcs + 2;
            (pairs(k, 1, k - 2), pairs(k, 0, k - 1))
        }
        CircuitType::III => {
            let k = 2 * arcs + 2;
            (pairs(k, 0, k - 1), pairs(k, 1, k - 2))
        }
        CircuitType::IV => {
            let k = 2 * arcs + 1;
            (pairs(k, 1, k - 1), pairs(k, 0, k.saturating_sub(2)))
        }
        CircuitType::V => {
            let k = 2 * arcs + 1;
            (pairs(k, 0, k.saturating_sub(2)), pairs(k, 1, k - 1))
        }
    }
}

/// The elementary maps of a circuit, in application order, starting from one
/// spectator factor. Upper halves are inserted (immersions, then injections
/// left to right), lower halves removed (projections left to right, then
/// contractions).
fn circuit_steps(upper: &[Half], lower: &[Half]) -> Vec<EquivariantMapSpec> {
    let k = upper.len();
    let mut present = vec![false; k];
    let rank = |present: &[bool], p: usize| 2 + present[..p].iter().filter(|&&b| b).count();
    let mut steps = Vec::new();
    for p in 0..k {
        if let Half::Arc(q) = upper[p] {
            if p < q {
                present[p] = true;
                present[q] = true;
                steps.push(Immersion { i: rank(&present, p), j: rank(&present, q) });
            }
        }
    }
    for p in 0..k {
        if upper[p] == Half::Isolated {
            present[p] = true;
            steps.push(Injection { j: rank(&present, p) });
        }
    }
    for p in 0..k {
        if lower[p] == Half::Isolated {
            steps.push(Projection { i: rank(&present, p) });
            present[p] = false;
        }
    }
    for p in 0..k {
        if let Half::Arc(q) = lower[p] {
            if p < q {
                steps.push(Contraction { i: rank(&present, p), j: rank(&present, q) });
                present[p] = false;
                present[q] = false;
            }
        }
    }
    steps
}

fn compose_steps(big_n: usize, start_n: usize, steps: &[EquivariantMapSpec]) -> Result<LinearMap, Error> {
    let s0 = SpaceSpec::new(big_n, start_n)?;
    let mut end_n = start_n;
    for step in steps {
        end_n = step.codomain_n(end_n).ok_or_else(|| Error::OutOfRange(format!("{step:?} on {end_n} factors")))?;
    }
    let columns = (0..s0.dim())
        .map(|col| {
            let mut v = SparseVector::unit(col);
            let mut s = s0;
            for step in steps {
                v = apply_equivariant_map(step, &s, &v)?;
                s = s.with_n(step.codomain_n(s.n).expect("checked above"));
            }
            Ok(v)
        })
        .collect::<Result<Vec<_>, Error>>()?;
    LinearMap::from_columns(s0.with_n(end_n).dim(), columns)
}

/// The composite of a closed circuit's maps on one spectator factor ⊗ Δ.
pub fn circuit_composite(big_n: usize, circuit: CircuitType, arcs: usize) -> Result<LinearMap, Error> {
    if arcs > 2 {
        return Err(Error::BoundExceeded(format!("circuits are limited to at most 2 arcs, got {arcs}")));
    }
    let (upper, lower) = layout(circuit, arcs);
    compose_steps(big_n, 1, &circuit_steps(&upper, &lower))
}

fn scaled_identity(dim: usize, k: i64) -> LinearMap {
    LinearMap::identity(dim).scale(&RootTwoNumber::from_integer(k))
}

/// A closed circuit composes to `N · id`.
pub fn verify_circuit_scaling(big_n: usize, circuit: CircuitType, arcs: usize) -> Result<VerificationReport, Error> {
    let mut params = Parameters::new(Some(1), Some(big_n)).with_variant(format!("{}({arcs})", circuit.name()));
    params.n = Some(1);
    let report = VerificationReport::new("circuit_scaling", params);
    let m = circuit_composite(big_n, circuit, arcs)?;
    let expected = scaled_identity(m.domain_dim(), big_n as i64);
    if m != expected {
        let col = (0..m.domain_dim()).find(|&c| m.column(c) != expected.column(c)).expect("maps differ");
        return Ok(report.fail(json!({ "column": col, "composite_column": vector_json(m.column(col)) })));
    }
    let (upper, lower) = layout(circuit, arcs);
    let steps: Vec<String> = circuit_steps(&upper, &lower).iter().map(|s| format!("{s:?}")).collect();
    Ok(report.observe(json!({ "steps": steps })))
}

/// A through string that meets an isolated vertex replaces it:
/// `κ_{1,2} ∘ ι_2 = π_1` and `π_1 ∘ ψ_{1,2} = ι_1`.
pub fn verify_through_string(big_n: usize) -> Result<VerificationReport, Error> {
    let report = VerificationReport::new("through_string", Parameters::new(None, Some(big_n)));
    let s1 = SpaceSpec::new(big_n, 1)?;
    let s0 = s1.with_n(0);
    let cases = [
        (
            "contraction_after_injection",
            1,
            vec![Injection { j: 2 }, Contraction { i: 1, j: 2 }],
            Projection { i: 1 },
            &s1,
        ),
        ("projection_after_immersion", 0, vec![Immersion { i: 1, j: 2 }, Projection { i: 1 }], Injection { j: 1 }, &s0),
    ];
    for (name, n, steps, replaced, dom) in cases {
        if compose_steps(big_n, n, &steps)? != build_equivariant_map(&replaced, dom)? {
            return Ok(report.fail(json!({ "case": name })));
        }
    }
    Ok(report)
}

/// Swapping two adjacent spin operators on `n = 2`:
/// swapped = −original + 2·(edge composite), for projection/projection,
/// projection/injection and injection/injection.
pub fn verify_clifford_relation(big_n: usize) -> Result<VerificationReport, Error> {
    let report = VerificationReport::new("clifford_relation", Parameters::new(Some(2), Some(big_n)));
    let two = RootTwoNumber::from_integer(2);
    let proj_proj = (
        compose_steps(big_n, 2, &[Projection { i: 2 }, Projection { i: 1 }])?,
        compose_steps(big_n, 2, &[Projection { i: 1 }, Projection { i: 1 }])?,
        compose_steps(big_n, 2, &[Contraction { i: 1, j: 2 }])?,
    );
    let proj_inj = (
        compose_steps(big_n, 1, &[Injection { j: 2 }, Projection { i: 1 }])?,
        compose_steps(big_n, 1, &[Projection { i: 1 }, Injection { j: 1 }])?,
        LinearMap::identity(SpaceSpec::new(big_n, 1)?.dim()),
    );
    let inj_inj = (
        compose_steps(big_n, 0, &[Injection { j: 1 }, Injection { j: 1 }])?,
        compose_steps(big_n, 0, &[Injection { j: 1 }, Injection { j: 2 }])?,
        compose_steps(big_n, 0, &[Immersion { i: 1, j: 2 }])?,
    );
    for (name, (original, swapped, edge)) in
        [("projection/projection", proj_proj), ("projection/injection", proj_inj), ("injection/injection", inj_inj)]
    {
        let expected = edge.scale(&two).sub(&original)?;
        if swapped != expected {
            return Ok(report.fail(json!({ "swap": name })));
        }
    }
    Ok(report)
}
