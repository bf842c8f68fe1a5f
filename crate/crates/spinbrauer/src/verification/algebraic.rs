use rayon::prelude::*;
use serde_json::{json, Value};

use super::{select_tuples, Mode, Parameters, VerificationReport};
use crate::cellularity::{enumerate_s, invert_permutation, modmult_prediction, phi_ell};
use crate::diagram_core::{cell_encode, enumerate_basis, AlgebraElement, CellTriple, SpinDiagram, DEFAULT_MAX_N};
use crate::error::Error;
use crate::mult_engine::{
    involution_element, multiply_diagrams, multiply_diagrams_with, multiply_elements, spin_involution,
    spin_involution_element, NormalizationStrategy,
};

fn basis(n: usize) -> Result<Vec<SpinDiagram>, Error> {
    enumerate_basis(n, DEFAULT_MAX_N.max(n))
}

/// Runs `f` on every ordered pair of basis diagrams in parallel and returns
/// the first counterexample in enumeration order, with the number of pairs.
fn over_pairs<F>(n: usize, f: F) -> Result<(usize, Option<Value>), Error>
where
    F: Fn(&SpinDiagram, &SpinDiagram) -> Result<Option<Value>, Error> + Sync,
{
    let b = basis(n)?;
    let results: Vec<Option<Value>> = (0..b.len() * b.len())
        .into_par_iter()
        .map(|k| f(&b[k / b.len()], &b[k % b.len()]))
        .collect::<Result<_, Error>>()?;
    Ok((results.len(), results.into_iter().flatten().next()))
}

fn finish(report: VerificationReport, checked: usize, bad: Option<Value>) -> VerificationReport {
    match bad {
        Some(c) => report.fail(c),
        None => report.observe(json!({ "cases_checked": checked })),
    }
}

/// `(ab)c = a(bc)` in ℤ[δ] on triples of basis diagrams.
pub fn verify_associativity(n: usize, mode: Mode) -> Result<VerificationReport, Error> {
    let b = basis(n)?;
    let report = VerificationReport::new("associativity", Parameters::new(Some(n), None).with_mode(mode));
    let triples = select_tuples(b.len(), 3, mode);
    let bad = triples
        .par_iter()
        .map(|t| {
            let (x, y, z) = (&b[t[0]], &b[t[1]], &b[t[2]]);
            let left = multiply_elements(&multiply_diagrams(x, y)?, &AlgebraElement::from_diagram(z.clone()))?;
            let right = multiply_elements(&AlgebraElement::from_diagram(x.clone()), &multiply_diagrams(y, z)?)?;
            Ok((left != right).then(|| {
                json!({ "a": x.to_json(), "b": y.to_json(), "c": z.to_json(),
                        "ab_c": left.to_json(), "a_bc": right.to_json() })
            }))
        })
        .collect::<Result<Vec<_>, Error>>()?
        .into_iter()
        .flatten()
        .next();
    Ok(finish(report, triples.len(), bad))
}

/// The identity diagram is a two-sided unit.
pub fn verify_identity(n: usize) -> Result<VerificationReport, Error> {
    let report = VerificationReport::new("identity", Parameters::new(Some(n), None));
    let id = SpinDiagram::identity(n);
    let b = basis(n)?;
    for d in &b {
        let one = AlgebraElement::from_diagram(d.clone());
        if multiply_diagrams(&id, d)? != one || multiply_diagrams(d, &id)? != one {
            return Ok(report.fail(json!({ "diagram": d.to_json() })));
        }
    }
    Ok(finish(report, b.len(), None))
}

/// Every term of a product has at most as many through strings as either factor.
pub fn verify_filtration(n: usize) -> Result<VerificationReport, Error> {
    let report = VerificationReport::new("filtration", Parameters::new(Some(n), None));
    let (checked, bad) = over_pairs(n, |x, y| {
        let p = multiply_diagrams(x, y)?;
        let bound = x.through_count().min(y.through_count());
        let exceeds = p.terms().any(|(d, _)| d.through_count() > bound);
        Ok(exceeds.then(|| json!({ "first": x.to_json(), "second": y.to_json(), "product": p.to_json() })))
    })?;
    Ok(finish(report, checked, bad))
}

/// The top-layer term of each product against the `φ_ℓ` prediction. Also
/// reports how many pairs disagree.
pub fn verify_modmult(n: usize) -> Result<VerificationReport, Error> {
    let report = VerificationReport::new("modmult", Parameters::new(Some(n), None));
    let b = basis(n)?;
    let mut checked = 0;
    let mut failures = 0;
    let mut first = None;
    for x in &b {
        for y in &b {
            let Some(predicted) = modmult_prediction(x, y)? else {
                continue;
            };
            checked += 1;
            let actual = multiply_diagrams(x, y)?.with_through_count(x.through_count());
            if actual != predicted {
                failures += 1;
                first.get_or_insert_with(|| {
                    json!({ "first": x.to_json(), "second": y.to_json(),
                            "predicted": predicted.to_json(), "actual": actual.to_json() })
                });
            }
        }
    }
    let observed = json!({ "pairs_checked": checked, "failures": failures });
    Ok(match first {
        Some(c) => report.fail(c).observe(observed),
        None => report.observe(observed),
    })
}

/// `φ_ℓ(v₂, v₁)` is `φ_ℓ(v₁, v₂)` with its permutation inverted.
pub fn verify_tau_symmetry(n: usize) -> Result<VerificationReport, Error> {
    let report = VerificationReport::new("tau_symmetry", Parameters::new(Some(n), None));
    let mut checked = 0;
    for ell in 0..=n {
        let sides = enumerate_s(n, ell);
        for (x, s) in &sides {
            for (y, t) in &sides {
                let forward = phi_ell(ell, x, s, y, t)?;
                let backward = phi_ell(ell, y, t, x, s)?;
                let mut inverted = forward.clone();
                inverted.perm = invert_permutation(&forward.perm);
                checked += 1;
                if inverted != backward {
                    return Ok(report.fail(json!({
                        "ell": ell, "x": x.to_json(), "S": s, "y": y.to_json(), "T": t,
                        "forward": forward.to_json(), "backward": backward.to_json(),
                    })));
                }
            }
        }
    }
    Ok(finish(report, checked, None))
}

/// The involution swaps the two sides of the cell encoding and inverts σ.
pub fn verify_involution_compatibility(n: usize) -> Result<VerificationReport, Error> {
    let report = VerificationReport::new("involution_compatibility", Parameters::new(Some(n), None));
    let b = basis(n)?;
    for d in &b {
        let c = cell_encode(d);
        let expected = CellTriple {
            ell: c.ell,
            x: c.y.clone(),
            s: c.t.clone(),
            y: c.x.clone(),
            t: c.s.clone(),
            sigma: invert_permutation(&c.sigma),
        };
        if cell_encode(&d.involution()) != expected {
            return Ok(report.fail(json!({ "diagram": d.to_json() })));
        }
    }
    Ok(finish(report, b.len(), None))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InvolutionKind {
    /// Row swap only.
    Plain,
    /// Row swap with the isolated-vertex order reversed.
    Spin,
}

/// `i(ab) = i(b) i(a)` over all basis pairs.
pub fn verify_anti_automorphism(n: usize, kind: InvolutionKind) -> Result<VerificationReport, Error> {
    let variant = match kind {
        InvolutionKind::Plain => "plain",
        InvolutionKind::Spin => "spin",
    };
    let report = VerificationReport::new("anti_automorphism", Parameters::new(Some(n), None).with_variant(variant));
    let on_diagram = |d: &SpinDiagram| match kind {
        InvolutionKind::Plain => AlgebraElement::from_diagram(d.involution()),
        InvolutionKind::Spin => spin_involution(d),
    };
    let (checked, bad) = over_pairs(n, |x, y| {
        let p = multiply_diagrams(x, y)?;
        let left = match kind {
            InvolutionKind::Plain => involution_element(&p),
            InvolutionKind::Spin => spin_involution_element(&p),
        };
        let right = multiply_elements(&on_diagram(y), &on_diagram(x))?;
        Ok((left != right).then(|| {
            json!({ "first": x.to_json(), "second": y.to_json(),
                    "involution_of_product": left.to_json(), "product_of_involutions": right.to_json() })
        }))
    })?;
    Ok(finish(report, checked, bad))
}

/// All normal-ordering strategies give the same product.
pub fn verify_strategy_independence(n: usize) -> Result<VerificationReport, Error> {
    let report = VerificationReport::new("strategy_independence", Parameters::new(Some(n), None));
    let (checked, bad) = over_pairs(n, |x, y| {
        let reference = multiply_diagrams_with(x, y, NormalizationStrategy::CrossRowFirst)?;
        for s in [NormalizationStrategy::LeftToRight, NormalizationStrategy::RightToLeft] {
            if multiply_diagrams_with(x, y, s)? != reference {
                return Ok(Some(json!({ "first": x.to_json(), "second": y.to_json(), "strategy": format!("{s:?}") })));
            }
        }
        Ok(None)
    })?;
    Ok(finish(report, checked, bad))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_algebraic_checks() {
        assert!(verify_identity(2).unwrap().passed);
        assert!(verify_filtration(2).unwrap().passed);
        assert!(verify_associativity(2, Mode::Random { samples: 20, seed: 1 }).unwrap().passed);
        assert!(verify_involution_compatibility(2).unwrap().passed);
        assert!(verify_tau_symmetry(2).unwrap().passed);
        assert!(verify_anti_automorphism(2, InvolutionKind::Spin).unwrap().passed);
        assert!(verify_strategy_independence(2).unwrap().passed);
    }

    #[test]
    fn plain_involution_is_not_anti_multiplicative() {
        assert!(!verify_anti_automorphism(2, InvolutionKind::Plain).unwrap().passed);
    }

    #[test]
    fn modmult_counts_at_one_strand() {
        let r = verify_modmult(1).unwrap();
        assert!(r.passed, "{r:?}");
    }
}
