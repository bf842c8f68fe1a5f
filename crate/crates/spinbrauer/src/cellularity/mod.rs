//! The cellular structure: row partitions `E_n`, the sets `S_ℓ`, the form
//! `φ_ℓ`, the congruence of products modulo fewer through strings, and the
//! indexing of irreducible representations.

mod partitions;
mod phi;

pub use partitions::{a_regular_partitions, enumerate_en, enumerate_s, irreducible_indices, join, JoinPartition};
pub use phi::{beta, compose_permutations, invert_permutation, modmult_check, modmult_prediction, phi_ell, PhiValue};
