use std::sync::OnceLock;

use num_bigint::BigInt;
use proptest::prelude::*;
use spinbrauer::cellularity::{enumerate_en, modmult_prediction};
use spinbrauer::diagram_core::{cell_decode, cell_encode, enumerate_basis, parse_diagram, SpinDiagram};
use spinbrauer::mult_engine::{multiply_diagrams, multiply_elements};
use spinbrauer::pin_realization::{realize_diagram, realize_element, SpaceSpec};
use spinbrauer::verification::BrauerDiagram;
use spinbrauer::{AlgebraElement, DeltaPolynomial, Rational, RootTwoNumber};

fn basis(n: usize) -> &'static [SpinDiagram] {
    static CACHE: OnceLock<Vec<Vec<SpinDiagram>>> = OnceLock::new();
    &CACHE.get_or_init(|| (0..=4).map(|n| enumerate_basis(n, 4).unwrap()).collect())[n]
}

fn diagram(n: usize) -> impl Strategy<Value = SpinDiagram> {
    (0..basis(n).len()).prop_map(move |i| basis(n)[i].clone())
}

fn any_diagram() -> impl Strategy<Value = SpinDiagram> {
    (1usize..=4).prop_flat_map(diagram)
}

fn rational() -> impl Strategy<Value = Rational> {
    (-50i64..50, 1i64..20).prop_map(|(a, b)| Rational::new(a, b))
}

fn root_two() -> impl Strategy<Value = RootTwoNumber> {
    (rational(), rational()).prop_map(|(a, b)| RootTwoNumber::new(a, b))
}

fn polynomial() -> impl Strategy<Value = DeltaPolynomial> {
    proptest::collection::vec((0u32..5, -9i64..9), 0..4)
        .prop_map(|t| DeltaPolynomial::from_terms(t.into_iter().map(|(e, c)| (e, BigInt::from(c)))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rational_field_laws(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, Rational::zero());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.recip().unwrap(), Rational::one());
        }
        prop_assert_eq!(a.to_string().parse::<Rational>().unwrap(), a);
    }

    #[test]
    fn root_two_ring_laws(a in root_two(), b in root_two(), c in root_two()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!((&a * &b).norm(), &a.norm() * &b.norm());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inv().unwrap(), RootTwoNumber::one());
        }
    }

    #[test]
    fn polynomial_evaluation_is_a_ring_map(p in polynomial(), q in polynomial(), k in -6i64..7) {
        prop_assert_eq!((&p * &q).eval_at_integer(k), p.eval_at_integer(k) * q.eval_at_integer(k));
        prop_assert_eq!((&p + &q).eval_at_integer(k), p.eval_at_integer(k) + q.eval_at_integer(k));
        prop_assert_eq!(DeltaPolynomial::from_json(&p.to_json()).unwrap(), p);
    }

    #[test]
    fn diagram_json_round_trip(d in any_diagram()) {
        prop_assert_eq!(parse_diagram(&d.to_json_string()).unwrap(), d.clone());
        prop_assert_eq!(SpinDiagram::from_json(&d.to_json()).unwrap(), d);
    }

    #[test]
    fn cell_encoding_round_trip(d in any_diagram()) {
        let c = cell_encode(&d);
        prop_assert!(c.validate().is_ok());
        prop_assert_eq!(cell_decode(&c).unwrap(), d);
    }

    #[test]
    fn involution_is_an_involution(d in any_diagram()) {
        prop_assert_eq!(d.involution().involution(), d);
    }

    #[test]
    fn associativity(n in 1usize..=3, i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>(),
                     k in any::<prop::sample::Index>()) {
        let b = basis(n);
        let (x, y, z) = (&b[i.index(b.len())], &b[j.index(b.len())], &b[k.index(b.len())]);
        let one = |d: &SpinDiagram| AlgebraElement::from_diagram(d.clone());
        let left = multiply_elements(&multiply_diagrams(x, y).unwrap(), &one(z)).unwrap();
        let right = multiply_elements(&one(x), &multiply_diagrams(y, z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn products_never_raise_the_through_count(x in diagram(3), y in diagram(3)) {
        let bound = x.through_count().min(y.through_count());
        prop_assert!(multiply_diagrams(&x, &y).unwrap().terms().all(|(d, _)| d.through_count() <= bound));
    }

    #[test]
    fn top_layer_has_the_predicted_support(x in diagram(3), y in diagram(3)) {
        if let Some(predicted) = modmult_prediction(&x, &y).unwrap() {
            let actual = multiply_diagrams(&x, &y).unwrap().with_through_count(x.through_count());
            let support = |e: &AlgebraElement| e.terms().map(|(d, _)| d.clone()).collect::<Vec<_>>();
            prop_assert_eq!(support(&actual), support(&predicted));
        }
    }

    #[test]
    fn realization_is_multiplicative(n in 1usize..=2, big_n in 2usize..=5,
                                     i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let b = basis(n);
        let (x, y) = (&b[i.index(b.len())], &b[j.index(b.len())]);
        let s = SpaceSpec::new(big_n, n).unwrap();
        let lhs = realize_element(&multiply_diagrams(x, y).unwrap(), &s).unwrap();
        let rhs = realize_diagram(y, &s).unwrap().compose(&realize_diagram(x, &s).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn brauer_products_agree(n in 1usize..=4, seed in any::<(prop::sample::Index, prop::sample::Index)>()) {
        let b: Vec<BrauerDiagram> = basis(n).iter().filter_map(BrauerDiagram::from_spin).collect();
        let (p, q) = (&b[seed.0.index(b.len())], &b[seed.1.index(b.len())]);
        let (loops, r) = p.stack(q);
        let expected = AlgebraElement::term(r.to_spin(), DeltaPolynomial::delta_pow(loops));
        prop_assert_eq!(multiply_diagrams(&p.to_spin(), &q.to_spin()).unwrap(), expected);
    }
}

#[test]
fn basis_sizes_follow_row_counts() {
    // |basis| = Σ_ℓ (Σ_x C(m₁(x), ℓ))² ℓ!
    for n in 0..=4 {
        let rows = enumerate_en(n, 5).unwrap();
        let expected: usize = (0..=n)
            .map(|ell| {
                let sides: usize = rows.iter().map(|x| binomial(x.m1(), ell)).sum();
                sides * sides * (1..=ell).product::<usize>()
            })
            .sum();
        assert_eq!(basis(n).len(), expected, "n = {n}");
    }
}

fn binomial(m: usize, k: usize) -> usize {
    if k > m {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (m - i) / (i + 1))
}
