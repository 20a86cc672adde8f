//! Parameter sweeps written as CSV.

use std::fmt::Write as _;

use nonclass::classify::{
    a_matrix_parts, least_eigenvalue, mandel_q_from, min_projection_with, DEFAULT_REFINE_STEPS,
    DEFAULT_SAMPLES, DEFAULT_SEED,
};
use nonclass::fock::Mode;
use nonclass::oracles::squeezing_onset;
use nonclass::su2::ModeVector;
use nonclass::Error;
use rayon::prelude::*;

use crate::build::build_state;
use crate::error::CliResult;
use crate::spec::{Family, SweepSpec};

pub const HEADER: &str = "param_value,least_eig,A00,A11,A22,A33,min_projection,mandel_q_mode1,mandel_q_mode2,squeezing_onset_marker";

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub param_value: f64,
    pub cutoffs: (usize, usize),
    pub least_eig: f64,
    pub diagonal: [f64; 4],
    pub min_projection: f64,
    pub mandel_q: [f64; 2],
    /// `NaN` outside the squeezed-thermal family.
    pub onset_marker: f64,
}

/// Twelve significant digits, `nan` for undefined values.
pub fn fmt_num(x: f64) -> String {
    if x.is_nan() {
        "nan".to_string()
    } else {
        format!("{x:.11e}")
    }
}

fn compute_row(spec: &SweepSpec, i: usize, cap: usize) -> CliResult<SweepRow> {
    let rs = spec.row_spec(i);
    let state = build_state(&rs, cap)?;
    let parts = a_matrix_parts(&state)?;
    let a = parts.a;
    let scan = min_projection_with(
        &a,
        spec.samples.unwrap_or(DEFAULT_SAMPLES),
        spec.seed.unwrap_or(DEFAULT_SEED),
        DEFAULT_REFINE_STEPS,
    );
    let mut mandel_q = [f64::NAN; 2];
    for mode in Mode::BOTH {
        mandel_q[mode.index()] = match mandel_q_from(&parts, &ModeVector::bare(mode)) {
            Ok(q) => q,
            Err(Error::VacuumMode(_)) => f64::NAN,
            Err(e) => return Err(e.into()),
        };
    }
    let onset_marker = if spec.family == Family::SqueezedThermal {
        let sq = rs.param("a") >= squeezing_onset(rs.param("beta"));
        if sq { 1.0 } else { 0.0 }
    } else {
        f64::NAN
    };
    Ok(SweepRow {
        param_value: spec.value(i),
        cutoffs: state.space().cutoffs(),
        least_eig: least_eigenvalue(&a),
        diagonal: a.diagonal(),
        min_projection: scan.value,
        mandel_q,
        onset_marker,
    })
}

/// All rows in parameter order; rows are computed in parallel.
pub fn run_sweep(spec: &SweepSpec, cap: usize) -> CliResult<Vec<SweepRow>> {
    (0..spec.steps)
        .into_par_iter()
        .map(|i| compute_row(spec, i, cap))
        .collect()
}

pub fn render_csv(rows: &[SweepRow]) -> String {
    let mut out = String::new();
    for (i, r) in rows.iter().enumerate() {
        let _ = writeln!(out, "# row {i} cutoffs {} {}", r.cutoffs.0, r.cutoffs.1);
    }
    out.push_str(HEADER);
    out.push('\n');
    for r in rows {
        let marker = if r.onset_marker.is_nan() {
            "nan".to_string()
        } else {
            format!("{}", r.onset_marker as u8)
        };
        let cols = [
            fmt_num(r.param_value),
            fmt_num(r.least_eig),
            fmt_num(r.diagonal[0]),
            fmt_num(r.diagonal[1]),
            fmt_num(r.diagonal[2]),
            fmt_num(r.diagonal[3]),
            fmt_num(r.min_projection),
            fmt_num(r.mandel_q[0]),
            fmt_num(r.mandel_q[1]),
            marker,
        ];
        out.push_str(&cols.join(","));
        out.push('\n');
    }
    out
}
