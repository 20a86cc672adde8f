use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Probability weight lost to (or piled up at) the truncation edge is
    /// larger than the allowed limit.
    #[error("cutoff too small: tail mass {tail_mass:.3e} exceeds {limit:.1e}")]
    CutoffTooSmall { tail_mass: f64, limit: f64 },

    /// A moment of the requested order needs more photons than the space holds.
    #[error("moment order {order} needs cutoff >= {order}, space has {cutoff}")]
    OrderTooHigh { order: usize, cutoff: usize },

    #[error("level ({n1}, {n2}) outside space with cutoffs ({cutoff1}, {cutoff2})")]
    OutOfRange {
        n1: usize,
        n2: usize,
        cutoff1: usize,
        cutoff2: usize,
    },

    #[error("invalid mode index {0}; expected 1 or 2")]
    InvalidMode(u8),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("expectation value has imaginary residue {0:.3e}")]
    ImaginaryResidue(f64),

    #[error("anticommutator paths disagree by {0:.3e}")]
    DecompositionMismatch(f64),

    #[error("Lee identity residual {0:.3e}")]
    IdentityMismatch(f64),

    #[error("Mandel Q undefined: mean photon number {0:.3e} in the selected mode")]
    VacuumMode(f64),

    #[error("matrix is not unitary (residual {0:.3e})")]
    NonUnitaryInput(f64),
}
