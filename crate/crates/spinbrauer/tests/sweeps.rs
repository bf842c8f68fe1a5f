//! Wider runs of the verification checks, including the ones whose outcome
//! departs from the expected identities.

use spinbrauer::verification::*;

#[test]
fn homomorphism_small_n_all_parities() {
    for (n, big_n) in [(1, 2), (2, 2), (2, 3), (3, 3), (3, 4)] {
        let r = verify_homomorphism(n, big_n, Mode::Exhaustive, DEFAULT_DIMENSION_BOUND).unwrap();
        assert!(r.passed, "{}", r.to_json_line());
    }
}

#[test]
fn every_map_kind_is_equivariant() {
    for big_n in 2..=5 {
        for kind in [MapKind::Projection, MapKind::Injection, MapKind::Immersion, MapKind::Contraction, MapKind::Swap] {
            let r = verify_equivariance(big_n, kind).unwrap();
            assert!(r.passed, "{}", r.to_json_line());
        }
    }
}

#[test]
fn strategies_and_spin_involution_at_three_strands() {
    assert!(verify_strategy_independence(3).unwrap().passed);
    assert!(verify_anti_automorphism(3, InvolutionKind::Spin).unwrap().passed);
    assert!(verify_involution_compatibility(3).unwrap().passed);
    assert!(verify_identity(3).unwrap().passed);
}

#[test]
fn rank_below_the_stable_range_is_reported() {
    let r = verify_rank(2, 2, DEFAULT_DIMENSION_BOUND).unwrap();
    assert!(r.passed);
    let observed = r.observed.unwrap();
    assert_eq!(observed["asserted"], false);
    assert!(observed["rank"].as_u64().unwrap() < 10);
}

#[test]
fn plain_row_swap_is_not_anti_multiplicative() {
    let r = verify_anti_automorphism(2, InvolutionKind::Plain).unwrap();
    assert!(!r.passed);
    assert!(r.counterexample.is_some());
}

#[test]
fn modmult_scalar_departs_when_bonds_interleave() {
    let r = verify_modmult(2).unwrap();
    assert_eq!(r.observed.as_ref().unwrap()["failures"], 4);
    assert_eq!(r.observed.as_ref().unwrap()["pairs_checked"], 36);
    let r = verify_modmult(3).unwrap();
    assert_eq!(r.observed.as_ref().unwrap()["failures"], 336);
}

#[test]
fn tau_symmetry_breaks_at_three_strands() {
    assert!(verify_tau_symmetry(2).unwrap().passed);
    let r = verify_tau_symmetry(3).unwrap();
    assert!(!r.passed);
    assert_eq!(r.counterexample.unwrap()["ell"], 1);
}

#[test]
fn brauer_four_strands() {
    let r = verify_brauer_consistency(4).unwrap();
    assert!(r.passed, "{}", r.to_json_line());
    assert_eq!(r.observed.unwrap()["diagrams"], 105);
}
