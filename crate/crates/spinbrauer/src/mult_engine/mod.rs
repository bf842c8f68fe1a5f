//! The product of spin-Brauer diagrams: stacking, resolution of the middle
//! graph, and spin-Clifford normal ordering.

mod normalize;
mod stitch;

use crate::diagram_core::{AlgebraElement, LabeledDiagram, Row, SpinDiagram, Symbol};
use crate::error::Error;
use crate::scalar_rings::DeltaPolynomial;

pub use normalize::{clifford_normalize, clifford_normalize_with, NormalizationStrategy};
pub use stitch::{stitch_and_resolve, StitchResolution};

/// The product with `top` stacked above `bottom`.
///
/// Under the realization this is `f(bottom) ∘ f(top)`.
pub fn multiply_diagrams(top: &SpinDiagram, bottom: &SpinDiagram) -> Result<AlgebraElement, Error> {
    multiply_diagrams_with(top, bottom, NormalizationStrategy::default())
}

pub fn multiply_diagrams_with(
    top: &SpinDiagram,
    bottom: &SpinDiagram,
    strategy: NormalizationStrategy,
) -> Result<AlgebraElement, Error> {
    let r = stitch_and_resolve(top, bottom)?;
    Ok(clifford_normalize_with(&r.resolved, &DeltaPolynomial::delta_pow(r.circuits_closed), strategy))
}

/// Bilinear extension of [`multiply_diagrams`]; `a` is stacked above `b`.
pub fn multiply_elements(a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement, Error> {
    if a.n() != b.n() {
        return Err(Error::DimensionMismatch(format!("n = {} and n = {}", a.n(), b.n())));
    }
    let mut out = AlgebraElement::zero(a.n());
    for (d1, c1) in a.terms() {
        for (d2, c2) in b.terms() {
            out.add_scaled(&multiply_diagrams(d1, d2)?, &(c1 * c2));
        }
    }
    Ok(out)
}

pub fn evaluate_at(a: &AlgebraElement, value: i64) -> AlgebraElement {
    a.evaluate_at(value)
}

/// The row swap together with the reversal of the isolated-vertex order in
/// each row, normal ordered. This is the diagram of the adjoint map.
pub fn spin_involution(d: &SpinDiagram) -> AlgebraElement {
    let swapped = d.involution();
    let word: Vec<Symbol> = swapped
        .isolated(Row::Top)
        .into_iter()
        .rev()
        .map(|p| Symbol::Vertex(Row::Top, p))
        .chain(swapped.isolated(Row::Bottom).into_iter().rev().map(|p| Symbol::Vertex(Row::Bottom, p)))
        .collect();
    let l = LabeledDiagram::from_raw(swapped.top.clone(), swapped.bottom.clone(), word);
    clifford_normalize(&l, &DeltaPolynomial::one())
}

/// Linear extension of [`spin_involution`].
pub fn spin_involution_element(a: &AlgebraElement) -> AlgebraElement {
    let mut out = AlgebraElement::zero(a.n());
    for (d, c) in a.terms() {
        out.add_scaled(&spin_involution(d), c);
    }
    out
}

/// Linear extension of the plain row swap.
pub fn involution_element(a: &AlgebraElement) -> AlgebraElement {
    a.map_diagrams(SpinDiagram::involution)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn worked_top() -> SpinDiagram {
        SpinDiagram::from_parts(7, &[4], &[2, 5, 7], &[(2, 3), (6, 7)], &[(3, 4)], &[(1, 1), (5, 6)]).unwrap()
    }

    fn worked_bottom() -> SpinDiagram {
        SpinDiagram::from_parts(7, &[6], &[5], &[(2, 3), (4, 5)], &[(3, 4), (6, 7)], &[(1, 1), (7, 2)]).unwrap()
    }

    fn result_a() -> SpinDiagram {
        SpinDiagram::from_parts(7, &[4, 5], &[2, 5], &[(2, 3), (6, 7)], &[(3, 4), (6, 7)], &[(1, 1)]).unwrap()
    }

    fn result_b() -> SpinDiagram {
        SpinDiagram::from_parts(7, &[4], &[5], &[(2, 3), (6, 7)], &[(3, 4), (6, 7)], &[(1, 1), (5, 2)]).unwrap()
    }

    #[test]
    fn worked_product_first_stage() {
        let r = stitch_and_resolve(&worked_top(), &worked_bottom()).unwrap();
        assert_eq!(r.circuits_closed, 1);
        let w = r.resolved.word();
        assert_eq!(
            w,
            &[
                Symbol::Vertex(Row::Top, 4),
                Symbol::Vertex(Row::Bottom, 2),
                Symbol::Vertex(Row::Top, 5),
                Symbol::Vertex(Row::Bottom, 5)
            ]
        );
        assert_eq!(r.original_labels, vec![1, 4, 5, 6]);
    }

    #[test]
    fn worked_product() {
        let e = multiply_diagrams(&worked_top(), &worked_bottom()).unwrap();
        let mut expected = AlgebraElement::term(result_a(), DeltaPolynomial::monomial((-1).into(), 1));
        expected.add_term(result_b(), DeltaPolynomial::monomial(2.into(), 1));
        assert_eq!(e, expected);
        let at7 = e.evaluate_at(7);
        assert_eq!(at7.coefficient(&result_a()), DeltaPolynomial::constant(-7));
        assert_eq!(at7.coefficient(&result_b()), DeltaPolynomial::constant(14));
    }

    #[test]
    fn isolated_square_is_delta() {
        let d = SpinDiagram::from_parts(1, &[1], &[1], &[], &[], &[]).unwrap();
        assert_eq!(multiply_diagrams(&d, &d).unwrap(), AlgebraElement::term(d, DeltaPolynomial::delta()));
    }

    #[test]
    fn identity_is_neutral() {
        let id = SpinDiagram::identity(2);
        for d in crate::diagram_core::enumerate_basis(2, 2).unwrap() {
            assert_eq!(multiply_diagrams(&id, &d).unwrap(), AlgebraElement::from_diagram(d.clone()));
            assert_eq!(multiply_diagrams(&d, &id).unwrap(), AlgebraElement::from_diagram(d.clone()));
        }
    }

    #[test]
    fn spin_involution_of_canonical_single_isolated_rows() {
        let d = SpinDiagram::from_parts(5, &[2, 5], &[1, 4], &[(1, 3)], &[(2, 5)], &[(4, 3)]).unwrap();
        let e = spin_involution(&d);
        assert!(e.terms().any(|(x, _)| *x == d.involution()));
    }
}
