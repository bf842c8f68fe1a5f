//! The realization of spin-Brauer diagrams as Pin(N)-equivariant maps on
//! `V^{⊗n} ⊗ Δ`, together with the so(N) and γ actions used to check it.

mod action;
mod maps;
mod realize;
mod space;

pub use action::{act_gamma, act_gamma_with_sign, act_so, so_basis, SoElement};
pub use maps::{apply_equivariant_map, build_equivariant_map, EquivariantMapSpec};
pub use realize::{realize_column, realize_diagram, realize_element, realize_labeled, ColumnCache};
pub use space::{apply_fock_operator, FockIndex, FockOp, Parity, SpaceSpec};
