//! Exact computations in the spin-Brauer diagram algebra SB_n(δ): diagrams,
//! their product, the realization on V^{⊗n} ⊗ Δ for Pin(N), and the cellular
//! structure.

pub mod cellularity;
pub mod diagram_core;
pub mod error;
pub mod mult_engine;
pub mod pin_realization;
pub mod scalar_rings;
pub mod verification;

pub use diagram_core::{AlgebraElement, Row, SpinDiagram, Strand};
pub use error::{Error, Result};
pub use scalar_rings::{DeltaPolynomial, LinearMap, Rational, RootTwoNumber};
