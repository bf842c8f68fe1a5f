//! Exact scalars: ℚ, ℤ[δ], ℚ(√2), and sparse linear maps over ℚ(√2).

mod linear_map;
mod poly;
mod rational;
mod root2;

pub use linear_map::{rank_of_vectors, LinearMap, SparseVector};
pub use poly::DeltaPolynomial;
pub use rational::Rational;
pub use root2::RootTwoNumber;

/// Rank of a linear map over ℚ(√2).
pub fn matrix_rank(m: &LinearMap) -> usize {
    m.rank()
}
