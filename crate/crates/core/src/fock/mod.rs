//! Truncated two-mode Fock space: basis, ladder operators, states and the
//! builders for every state family used in the analysis.

mod builders;
mod operator;
mod space;
mod state;

pub use builders::{
    coherent_state, kerr_evolve, number_state, pair_coherent, squeeze_magnitudes,
    squeeze_unitary, squeezed_thermal, squeezed_vacuum, thermal_state, TAIL_LIMIT,
};
pub use operator::{annihilator, bilinear, creator, MatrixOperator};
pub use space::{make_space, FockSpace, Mode};
pub use state::{InvariantReport, Repr, State};
