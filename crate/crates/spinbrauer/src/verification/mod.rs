//! Executable checks that compare the combinatorial algebra against its
//! matrix realization, plus the symbolic and cellular properties.

mod algebraic;
mod brauer;
mod circuits;
mod homomorphism;

use serde::Serialize;
use serde_json::Value;

pub use algebraic::{
    verify_anti_automorphism, verify_associativity, verify_filtration, verify_identity,
    verify_involution_compatibility, verify_modmult, verify_strategy_independence, verify_tau_symmetry, InvolutionKind,
};
pub use brauer::{brauer_basis, BrauerDiagram};
pub use circuits::{
    circuit_composite, verify_circuit_scaling, verify_clifford_relation, verify_equivariance, verify_through_string,
    CircuitType, MapKind,
};
pub use homomorphism::{verify_brauer_consistency, verify_homomorphism, verify_rank};

/// Largest `N^n · 2^m` a matrix check will build unless told otherwise.
pub const DEFAULT_DIMENSION_BOUND: usize = 4096;

/// How pairs (or triples) of basis diagrams are chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exhaustive,
    Random { samples: usize, seed: u64 },
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Parameters {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(rename = "N", skip_serializing_if = "Option::is_none")]
    pub big_n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub variant: Option<String>,
}

impl Parameters {
    pub fn new(n: Option<usize>, big_n: Option<usize>) -> Self {
        Parameters { n, big_n, ..Default::default() }
    }

    pub(crate) fn with_mode(mut self, mode: Mode) -> Self {
        if let Mode::Random { samples, seed } = mode {
            self.samples = Some(samples);
            self.seed = Some(seed);
        }
        self
    }

    pub(crate) fn with_variant(mut self, v: impl Into<String>) -> Self {
        self.variant = Some(v.into());
        self
    }
}

/// Outcome of one check. A failed report always carries a counterexample.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub check_name: String,
    pub parameters: Parameters,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub observed: Option<Value>,
}

impl VerificationReport {
    pub(crate) fn new(check_name: &str, parameters: Parameters) -> Self {
        VerificationReport {
            check_name: check_name.to_string(),
            parameters,
            passed: true,
            counterexample: None,
            observed: None,
        }
    }

    pub(crate) fn fail(mut self, counterexample: Value) -> Self {
        self.passed = false;
        self.counterexample = Some(counterexample);
        self
    }

    pub(crate) fn observe(mut self, observed: Value) -> Self {
        self.observed = Some(observed);
        self
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("reports serialize")
    }

    /// One line of JSON with sorted keys.
    pub fn to_json_line(&self) -> String {
        self.to_json().to_string()
    }
}

/// Indices into a list of length `len`: all `k`-tuples, or `samples` uniform draws.
pub(crate) fn select_tuples(len: usize, k: usize, mode: Mode) -> Vec<Vec<usize>> {
    use rand::{Rng, SeedableRng};
    match mode {
        Mode::Exhaustive => {
            let mut out = vec![Vec::new()];
            for _ in 0..k {
                out = out.into_iter().flat_map(|t| (0..len).map(move |i| [t.clone(), vec![i]].concat())).collect();
            }
            out
        }
        Mode::Random { samples, seed } => {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            (0..samples).map(|_| (0..k).map(|_| rng.random_range(0..len)).collect()).collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tuple_selection() {
        assert_eq!(select_tuples(3, 2, Mode::Exhaustive).len(), 9);
        let a = select_tuples(10, 3, Mode::Random { samples: 5, seed: 7 });
        assert_eq!(a, select_tuples(10, 3, Mode::Random { samples: 5, seed: 7 }));
        assert_eq!(a.len(), 5);
        assert!(a.iter().flatten().all(|&i| i < 10));
    }

    #[test]
    fn report_json_keys() {
        let r = VerificationReport::new("x", Parameters::new(Some(2), Some(5))).fail(serde_json::json!({"k": 1}));
        assert_eq!(
            r.to_json_line(),
            r#"{"check_name":"x","counterexample":{"k":1},"parameters":{"N":5,"n":2},"passed":false}"#
        );
    }
}
