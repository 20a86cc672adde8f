//! Closed-form reference values.
//!
//! The squeezed-state diagonals are transcribed verbatim. Two known
//! defects of those expressions are kept visible rather than patched:
//! the squeezed-thermal prefactor, which [`a_matrix_squeezed_thermal_normalized`]
//! corrects, and the `A₀₀` entry, which disagrees with the truncated-Fock
//! computation for every `a > 0` (the computed `A₀₀` equals `A₃₃`).

/// A labelled tuple of reference values.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    pub values: Vec<(&'static str, f64)>,
    pub source: &'static str,
}

impl OracleResult {
    fn diag(values: [f64; 4], source: &'static str) -> Self {
        OracleResult {
            values: ["A00", "A11", "A22", "A33"].into_iter().zip(values).collect(),
            source,
        }
    }

    /// The values as a 4-array, for diagonal results.
    pub fn diagonal(&self) -> [f64; 4] {
        let mut out = [0.0; 4];
        for (slot, (_, v)) in out.iter_mut().zip(&self.values) {
            *slot = *v;
        }
        out
    }

    pub fn get(&self, label: &str) -> Option<f64> {
        self.values.iter().find(|(l, _)| *l == label).map(|(_, v)| *v)
    }
}

/// Reference diagonal of `A` for the two-mode squeezed vacuum:
/// `(½(−3 + 7 cosh 2a) sinh²a, 2 cosh 2a sinh²a, −2 sinh²a, 2 cosh 2a sinh²a)`.
pub fn a_matrix_squeezed_vacuum(a: f64) -> OracleResult {
    let s2 = a.sinh().powi(2);
    let c2 = (2.0 * a).cosh();
    OracleResult::diag(
        [0.5 * (-3.0 + 7.0 * c2) * s2, 2.0 * c2 * s2, -2.0 * s2, 2.0 * c2 * s2],
        "reference closed form, squeezed vacuum",
    )
}

/// Reference diagonal of `A` for the squeezed thermal state, including its
/// `(e^β − 1)²` prefactor.
pub fn a_matrix_squeezed_thermal(a: f64, beta: f64) -> OracleResult {
    let e = beta.exp();
    let e2 = (2.0 * beta).exp();
    let c2 = (2.0 * a).cosh();
    let c4 = (4.0 * a).cosh();
    let pre = (e - 1.0).powi(2);
    let d00 = (13.0 - 14.0 * e + 13.0 * e2 + 20.0 * (1.0 - e2) * c2 + 7.0 * (1.0 + e).powi(2) * c4)
        / 8.0;
    let d11 = 0.5 * ((1.0 - e).powi(2) + 2.0 * (1.0 - e2) * c2 + (1.0 + e).powi(2) * c4);
    let d22 = 1.0 + e2 + (1.0 - e2) * c2;
    OracleResult::diag(
        [pre * d00, pre * d11, pre * d22, pre * d11],
        "reference closed form, squeezed thermal (as transcribed)",
    )
}

/// The squeezed-thermal diagonal with prefactor `(e^β − 1)⁻²`.
///
/// This is the normalization that reproduces the truncated-Fock numerics,
/// the thermal limit `A₂₂(0, β) = 2n̄²`, and the squeezed-vacuum limit as
/// `β → ∞`.
pub fn a_matrix_squeezed_thermal_normalized(a: f64, beta: f64) -> OracleResult {
    let transcribed = a_matrix_squeezed_thermal(a, beta).diagonal();
    let scale = (beta.exp() - 1.0).powi(4);
    OracleResult::diag(
        transcribed.map(|x| x / scale),
        "reference closed form, squeezed thermal, prefactor (e^β − 1)⁻²",
    )
}

/// `a* = ln coth(β/2)`: quadrature squeezing of the squeezed thermal state
/// sets in for `a > a*`.
pub fn squeezing_onset(beta: f64) -> f64 {
    (1.0 / (beta / 2.0).tanh()).ln()
}

/// `a* = ½ arccosh(coth β)`: the zero of the normalized `A₂₂(a, β)`.
pub fn subpoissonian_onset(beta: f64) -> f64 {
    0.5 * (1.0 / beta.tanh()).acosh()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ReferenceKind {
    Coherent,
    Thermal { nbar: f64 },
    Number,
}

/// Textbook Mandel Q values.
pub fn reference_q(kind: ReferenceKind) -> f64 {
    match kind {
        ReferenceKind::Coherent => 0.0,
        ReferenceKind::Thermal { nbar } => nbar,
        ReferenceKind::Number => -1.0,
    }
}

/// Bose-Einstein mean occupation `1/(e^β − 1)`.
pub fn thermal_mean(beta: f64) -> f64 {
    1.0 / beta.exp_m1()
}
