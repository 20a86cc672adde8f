//! Two-mode quantized-radiation states in a truncated Fock space, and the
//! photon-number criteria that separate classical from nonclassical light.
//!
//! The central object is the 4×4 fluctuation matrix
//! `A_μν = Δ(N̂_μ, N̂_ν) − ℓ_μνλ ⟨N̂_λ⟩` built from the four number-like
//! operators `N̂_μ = â†σ_μâ`. It is positive semidefinite for every classical
//! and semiclassical-I state; its single-mode projections `ξ(α)ᵀ A ξ(α)`
//! reproduce the Mandel combination `(ΔN̂(α))² − ⟨N̂(α)⟩` for every mode
//! `â(α) = α†â` obtained by mixing the two original modes.
//!
//! Module map:
//!
//! * [`fock`]: Fock space, ladder operators, states and state builders.
//! * [`moments`]: normal-ordered moments (`n_μ`, `q_jk`, `γ^(j)`, factorial
//!   moments, photon distributions) and the covariance matrices.
//! * [`su2`]: mode-mixing unitaries, Wigner D matrices, `ξ_μ(α)` geometry.
//! * [`classify`]: fluctuation matrix, Mandel Q, projection scans, Lee report,
//!   inequality batteries and verdicts.
//! * [`oracles`]: closed-form reference values for squeezed states.

pub mod classify;
pub mod error;
pub mod fock;
mod linalg;
pub mod moments;
pub mod oracles;
pub mod su2;

pub use error::{Error, Result};
pub use num_complex::Complex64 as C64;
