use std::collections::HashMap;

use rayon::prelude::*;
use serde_json::{json, Value};

use super::brauer::{brauer_basis, BrauerDiagram};
use super::{select_tuples, Mode, Parameters, VerificationReport};
use crate::diagram_core::{enumerate_basis, AlgebraElement, LabeledDiagram, SpinDiagram, DEFAULT_MAX_N};
use crate::error::Error;
use crate::mult_engine::multiply_diagrams;
use crate::pin_realization::{realize_column, realize_diagram, SpaceSpec};
use crate::scalar_rings::{rank_of_vectors, DeltaPolynomial, LinearMap, RootTwoNumber, SparseVector};

// Below this dimension every basis realization is built once up front.
const CACHE_DIMENSION: usize = 1024;

pub(crate) fn vector_json(v: &SparseVector) -> Value {
    Value::Array(v.iter().map(|(i, c)| json!([i, c.to_json()])).collect())
}

fn space(n: usize, big_n: usize, bound: usize) -> Result<SpaceSpec, Error> {
    let s = SpaceSpec::new(big_n, n)?;
    if s.dim() > bound {
        return Err(Error::BoundExceeded(format!("dimension {} exceeds the bound {bound}", s.dim())));
    }
    Ok(s)
}

fn evaluated_coefficient(c: &DeltaPolynomial, big_n: usize) -> Result<RootTwoNumber, Error> {
    let k = c.eval_at_integer(big_n as i64);
    let k = i64::try_from(k).map_err(|_| Error::OutOfRange("coefficient does not fit in i64".into()))?;
    Ok(RootTwoNumber::from_integer(k))
}

/// `realize(multiply(Ω₁, Ω₂))` at `δ = N` against `realize(Ω₂) ∘ realize(Ω₁)`,
/// as exact matrices, for the chosen pairs of basis diagrams.
pub fn verify_homomorphism(n: usize, big_n: usize, mode: Mode, bound: usize) -> Result<VerificationReport, Error> {
    let s = space(n, big_n, bound)?;
    let basis = enumerate_basis(n, DEFAULT_MAX_N.max(n))?;
    let report = VerificationReport::new("homomorphism", Parameters::new(Some(n), Some(big_n)).with_mode(mode));
    let cache: HashMap<SpinDiagram, LinearMap> = if s.dim() <= CACHE_DIMENSION {
        basis.par_iter().map(|d| Ok((d.clone(), realize_diagram(d, &s)?))).collect::<Result<_, Error>>()?
    } else {
        HashMap::new()
    };
    let pairs = select_tuples(basis.len(), 2, mode);
    let mut checked = 0;
    for pair in &pairs {
        let (first, second) = (&basis[pair[0]], &basis[pair[1]]);
        let product = multiply_diagrams(first, second)?;
        if let Some((col, lhs, rhs)) = first_mismatch(first, second, &product, &s, &cache)? {
            return Ok(report.fail(json!({
                "first": first.to_json(),
                "second": second.to_json(),
                "product": product.to_json(),
                "column": col,
                "product_column": vector_json(&lhs),
                "composite_column": vector_json(&rhs),
            })));
        }
        checked += 1;
    }
    Ok(report.observe(json!({ "pairs_checked": checked, "dimension": s.dim() })))
}

type Mismatch = (usize, SparseVector, SparseVector);

fn first_mismatch(
    first: &SpinDiagram,
    second: &SpinDiagram,
    product: &AlgebraElement,
    s: &SpaceSpec,
    cache: &HashMap<SpinDiagram, LinearMap>,
) -> Result<Option<Mismatch>, Error> {
    let fetch = |d: &SpinDiagram| -> Result<std::borrow::Cow<'_, LinearMap>, Error> {
        Ok(match cache.get(d) {
            Some(m) => std::borrow::Cow::Borrowed(m),
            None => std::borrow::Cow::Owned(realize_diagram(d, s)?),
        })
    };
    let m1 = fetch(first)?;
    let m2 = fetch(second)?;
    let terms: Vec<(LabeledDiagram, Option<&LinearMap>, RootTwoNumber)> = product
        .terms()
        .map(|(d, c)| Ok((LabeledDiagram::from_spin_diagram(d), cache.get(d), evaluated_coefficient(c, s.big_n)?)))
        .collect::<Result<_, Error>>()?;
    (0..s.dim())
        .into_par_iter()
        .map(|col| -> Result<Option<Mismatch>, Error> {
            let rhs = m2.apply(m1.column(col))?;
            let mut lhs = SparseVector::new();
            for (labeled, cached, k) in &terms {
                match cached {
                    Some(m) => lhs.add_scaled(m.column(col), k),
                    None => lhs.add_scaled(&realize_column(labeled, s, col), k),
                }
            }
            Ok((lhs != rhs).then_some((col, lhs, rhs)))
        })
        .collect::<Result<Vec<_>, Error>>()
        .map(|v| v.into_iter().flatten().next())
}

/// Rank of the span of all basis realizations. Only asserted when `N ≥ 2n`.
pub fn verify_rank(n: usize, big_n: usize, bound: usize) -> Result<VerificationReport, Error> {
    let s = space(n, big_n, bound)?;
    let basis = enumerate_basis(n, DEFAULT_MAX_N.max(n))?;
    let flattened =
        basis.par_iter().map(|d| Ok(realize_diagram(d, &s)?.flatten())).collect::<Result<Vec<_>, Error>>()?;
    let rank = rank_of_vectors(flattened);
    let asserted = big_n >= 2 * n;
    let observed = json!({ "basis_size": basis.len(), "rank": rank, "asserted": asserted });
    let report = VerificationReport::new("rank", Parameters::new(Some(n), Some(big_n)));
    if asserted && rank != basis.len() {
        return Ok(report.fail(observed));
    }
    Ok(report.observe(observed))
}

/// Products of isolated-free diagrams against a classical Brauer product.
pub fn verify_brauer_consistency(n: usize) -> Result<VerificationReport, Error> {
    if n > 4 {
        return Err(Error::BoundExceeded(format!("Brauer consistency is limited to n ≤ 4, got {n}")));
    }
    let report = VerificationReport::new("brauer_consistency", Parameters::new(Some(n), None));
    let oracle = brauer_basis(n);
    let mut ours: Vec<BrauerDiagram> =
        enumerate_basis(n, DEFAULT_MAX_N.max(n))?.iter().filter_map(BrauerDiagram::from_spin).collect();
    let mut sorted = oracle.clone();
    ours.sort_by(|a, b| a.partner.cmp(&b.partner));
    sorted.sort_by(|a, b| a.partner.cmp(&b.partner));
    if ours != sorted {
        return Ok(report.fail(json!({ "basis_count": ours.len(), "oracle_count": sorted.len() })));
    }
    for p in &oracle {
        for q in &oracle {
            let (loops, r) = p.stack(q);
            let expected = AlgebraElement::term(r.to_spin(), DeltaPolynomial::delta_pow(loops));
            let actual = multiply_diagrams(&p.to_spin(), &q.to_spin())?;
            if actual != expected {
                return Ok(report.fail(json!({
                    "first": p.to_spin().to_json(),
                    "second": q.to_spin().to_json(),
                    "expected": expected.to_json(),
                    "actual": actual.to_json(),
                })));
            }
        }
    }
    Ok(report.observe(json!({ "diagrams": oracle.len(), "pairs_checked": oracle.len() * oracle.len() })))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_homomorphism() {
        let r = verify_homomorphism(1, 3, Mode::Exhaustive, 4096).unwrap();
        assert!(r.passed, "{r:?}");
        assert_eq!(r.observed.unwrap()["pairs_checked"], 4);
    }

    #[test]
    fn bound_is_enforced() {
        assert!(matches!(verify_homomorphism(3, 7, Mode::Exhaustive, 1000), Err(Error::BoundExceeded(_))));
    }

    #[test]
    fn rank_examples() {
        let r = verify_rank(1, 3, 4096).unwrap();
        assert!(r.passed);
        assert_eq!(r.observed.unwrap()["rank"], 2);
        let r = verify_rank(2, 2, 4096).unwrap();
        assert!(r.passed);
        assert_eq!(r.observed.unwrap()["asserted"], false);
    }

    #[test]
    fn brauer_small() {
        assert!(verify_brauer_consistency(2).unwrap().passed);
    }
}
