//! The `analyze` report: a human-readable summary followed by a JSON block.

use std::fmt::Write as _;

use nonclass::classify::{verdict, FactorialBound, ProjectionArgmin, Verdict, VerdictConfig};
use nonclass::classify::mandel_q_from;
use nonclass::fock::{Mode, State};
use nonclass::su2::ModeVector;
use nonclass::Error;
use serde_json::{json, Value};

use crate::error::CliResult;

/// Line that separates the human text from the machine block.
pub const MACHINE_MARKER: &str = "--- machine ---";

pub struct Analysis {
    pub state: State,
    pub verdict: Verdict,
    /// Mandel Q of each bare mode; `None` for a vacuum mode.
    pub mandel_q: [Option<f64>; 2],
}

pub fn analyze_state(state: State, config: &VerdictConfig) -> CliResult<Analysis> {
    let v = verdict(&state, config)?;
    let mut mandel_q = [None, None];
    for mode in Mode::BOTH {
        mandel_q[mode.index()] = match mandel_q_from(&v.parts, &ModeVector::bare(mode)) {
            Ok(q) => Some(q),
            Err(Error::VacuumMode(_)) => None,
            Err(e) => return Err(e.into()),
        };
    }
    Ok(Analysis {
        state,
        verdict: v,
        mandel_q,
    })
}

fn rows(m: &nonclass::classify::FluctuationMatrix) -> Vec<Vec<f64>> {
    (0..4).map(|i| (0..4).map(|j| m.a[(i, j)]).collect()).collect()
}

fn bound_str(b: FactorialBound) -> &'static str {
    match b {
        FactorialBound::Lower => "lower",
        FactorialBound::Upper => "upper",
    }
}

pub fn machine_block(an: &Analysis) -> Value {
    let v = &an.verdict;
    let (c1, c2) = an.state.space().cutoffs();
    let argmin = match v.min_projection.argmin {
        ProjectionArgmin::TotalNumber => json!("total_number"),
        ProjectionArgmin::Mode(m) => {
            let (a1, a2) = m.components();
            json!({"alpha1": [a1.re, a1.im], "alpha2": [a2.re, a2.im]})
        }
    };
    json!({
        "cutoffs": [c1, c2],
        "tail_mass": an.state.tail_mass(),
        "n": v.parts.n.n,
        "a_matrix": rows(&v.parts.a),
        "least_eigenvalue": v.least_eig,
        "a_psd": v.a_psd,
        "min_projection": {
            "value": v.min_projection.value,
            "samples": v.min_projection.samples,
            "refine_steps": v.min_projection.refine_steps,
            "seed": v.min_projection.seed,
            "argmin": argmin,
        },
        "mandel_q": {"mode1": an.mandel_q[0], "mode2": an.mandel_q[1]},
        "lee": {
            "lhs": v.lee.lhs,
            "a33": v.lee.a33,
            "n3": v.lee.n3,
            "q_combination": v.lee.q_combination,
            "identity_residual": v.lee.identity_residual,
            "violated": v.lee_violated,
            "sharpened_violated": v.sharpened_lee_violated,
        },
        "phase_insensitive_psd": v.phase_insensitive_psd,
        "covariance_psd": v.any_state_psd_ok,
        "dual_path_residual": v.parts.covariance.dual_path_residual,
        "factorial_violations": v.factorial_violations.iter().map(|(mode, f)| json!({
            "mode": mode.index() + 1,
            "m": f.m,
            "n": f.n,
            "bound": bound_str(f.bound),
            "smaller": f.smaller,
            "larger": f.larger,
        })).collect::<Vec<_>>(),
        "local_pn_violations": v.local_pn_violations.iter().map(|p| json!({
            "mode": p.mode.index() + 1,
            "n0": p.n0,
            "least_eigenvalue": p.least_eigenvalue,
        })).collect::<Vec<_>>(),
        "verdict": v.verdict_text.as_str(),
    })
}

fn fmt_q(q: Option<f64>) -> String {
    q.map_or_else(|| "undefined (vacuum)".to_string(), |q| format!("{q:.9}"))
}

pub fn render(an: &Analysis) -> String {
    let v = &an.verdict;
    let (c1, c2) = an.state.space().cutoffs();
    let mut out = String::new();
    let _ = writeln!(out, "# cutoffs {c1} {c2}");
    let _ = writeln!(out, "# tail_mass {:.3e}", an.state.tail_mass());
    let n = v.parts.n.n;
    let _ = writeln!(out, "n = ({:.9}, {:.9}, {:.9}, {:.9})", n[0], n[1], n[2], n[3]);
    let _ = writeln!(out, "A =");
    for r in rows(&v.parts.a) {
        let _ = writeln!(out, "  [{:>16.9} {:>16.9} {:>16.9} {:>16.9}]", r[0], r[1], r[2], r[3]);
    }
    let _ = writeln!(out, "least eigenvalue of A: {:.9}", v.least_eig);
    let _ = writeln!(
        out,
        "min single-mode projection: {:.9} ({} samples, seed {})",
        v.min_projection.value, v.min_projection.samples, v.min_projection.seed
    );
    let _ = writeln!(out, "Mandel Q mode 1: {}", fmt_q(an.mandel_q[0]));
    let _ = writeln!(out, "Mandel Q mode 2: {}", fmt_q(an.mandel_q[1]));
    let _ = writeln!(
        out,
        "Lee: lhs {:.9}, A33 {:.9}{}{}",
        v.lee.lhs,
        v.lee.a33,
        if v.lee_violated { ", violated" } else { "" },
        if v.sharpened_lee_violated { ", sharpened form violated" } else { "" },
    );
    let _ = writeln!(out, "factorial-moment violations: {}", v.factorial_violations.len());
    for (mode, f) in &v.factorial_violations {
        let _ = writeln!(
            out,
            "  mode {} m={} n={} {} bound: {:.6e} < {:.6e}",
            mode.index() + 1,
            f.m,
            f.n,
            bound_str(f.bound),
            f.smaller,
            f.larger
        );
    }
    let _ = writeln!(out, "local p(n) violations: {}", v.local_pn_violations.len());
    for p in &v.local_pn_violations {
        let _ = writeln!(
            out,
            "  mode {} n0={} least eigenvalue {:.6e}",
            p.mode.index() + 1,
            p.n0,
            p.least_eigenvalue
        );
    }
    let _ = writeln!(out, "verdict: {}", v.verdict_text);
    let _ = writeln!(out, "{MACHINE_MARKER}");
    let _ = writeln!(
        out,
        "{}",
        serde_json::to_string_pretty(&machine_block(an)).expect("report serializes")
    );
    out
}

/// Extracts the JSON block from a rendered report.
pub fn parse_machine_block(report: &str) -> Option<Value> {
    let (_, rest) = report.split_once(MACHINE_MARKER)?;
    serde_json::from_str(rest.trim()).ok()
}
