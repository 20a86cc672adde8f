//! Quick invariant and oracle checks, including two negative controls.

use nonclass::classify::{a_matrix, lee_report, least_eigenvalue};
use nonclass::fock::{
    coherent_state, kerr_evolve, make_space, number_state, pair_coherent, squeezed_thermal,
    squeezed_vacuum, State,
};
use nonclass::moments::{covariance_matrices_with, gamma_moment_matrix, OrderingTensors};
use nonclass::oracles::{
    a_matrix_squeezed_thermal_normalized, a_matrix_squeezed_vacuum, squeezing_onset,
    subpoissonian_onset,
};
use nonclass::su2::{transform_gamma, u2_unitary, U2Element};
use nonclass::{Error, C64};

use crate::build::build_state;
use crate::spec::{Cutoffs, Family, StateSpec};

#[derive(Debug, Clone)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn rel(x: f64, y: f64) -> f64 {
    (x - y).abs() / y.abs().max(1e-300)
}

fn run(name: &'static str, f: impl FnOnce() -> nonclass::Result<(bool, String)>) -> Check {
    match f() {
        Ok((passed, detail)) => Check { name, passed, detail },
        Err(e) => Check {
            name,
            passed: false,
            detail: format!("error: {e}"),
        },
    }
}

fn sample_states() -> nonclass::Result<Vec<State>> {
    Ok(vec![
        coherent_state(make_space(30, 30), C64::new(1.0, 0.5), C64::new(-0.3, 0.8))?,
        number_state(make_space(6, 6), 2, 1)?,
        squeezed_vacuum(make_space(60, 60), 0.5, 0.0)?,
        squeezed_thermal(make_space(60, 60), 0.3, 0.0, 2.0)?,
        pair_coherent(make_space(40, 40), C64::new(2.0, 0.0), 1)?,
    ])
}

pub fn run_selftest() -> Vec<Check> {
    let mut out = Vec::new();

    out.push(run("coherent state has A = 0", || {
        let st = coherent_state(make_space(30, 30), C64::new(1.0, 1.0), C64::new(0.5, -0.2))?;
        let m = a_matrix(&st)?.max_abs();
        Ok((m < 1e-9, format!("max|A| = {m:.2e}")))
    }));

    out.push(run("squeezed vacuum matches closed form", || {
        let st = squeezed_vacuum(make_space(60, 60), 0.5, 0.0)?;
        let a = a_matrix(&st)?;
        let d = a.diagonal();
        let o = a_matrix_squeezed_vacuum(0.5).diagonal();
        let worst = (1..4).map(|i| rel(d[i], o[i])).fold(0.0, f64::max);
        // A00 is pinned by N0² − |N|² = 0 on two-mode states instead
        let n = nonclass::moments::stokes_vector(&st)?.n;
        let casimir = (d[1] + d[2] + d[3] - d[0]) - (n[0] * n[0] - n[1] * n[1] - n[2] * n[2] - n[3] * n[3]);
        let ok = worst < 1e-6 && casimir.abs() < 1e-9 && a.max_off_diagonal() < 1e-8;
        Ok((ok, format!("A11..A33 rel err {worst:.2e}, Casimir residual {casimir:.2e}")))
    }));

    out.push(run("squeezed thermal matches normalized closed form", || {
        let st = squeezed_thermal(make_space(60, 60), 0.3, 0.0, 2.0)?;
        let d = a_matrix(&st)?.diagonal();
        let o = a_matrix_squeezed_thermal_normalized(0.3, 2.0).diagonal();
        let worst = (1..4).map(|i| rel(d[i], o[i])).fold(0.0, f64::max);
        Ok((worst < 1e-5, format!("A11..A33 rel err {worst:.2e}")))
    }));

    out.push(run("dual-path decomposition", || {
        let t = OrderingTensors::new();
        let mut worst: f64 = 0.0;
        for st in sample_states()? {
            worst = worst.max(covariance_matrices_with(&st, &t)?.dual_path_residual);
        }
        Ok((worst < 1e-9, format!("max residual {worst:.2e}")))
    }));

    out.push(run("corrupted ordering tensor is flagged", || {
        let mut t = OrderingTensors::new();
        t.l[1][1][0] += 1.0;
        let st = squeezed_vacuum(make_space(40, 40), 0.3, 0.0)?;
        match covariance_matrices_with(&st, &t) {
            Err(Error::DecompositionMismatch(r)) => Ok((true, format!("residual {r:.2e}"))),
            Err(e) => Ok((false, format!("unexpected error {e}"))),
            Ok(_) => Ok((false, "corruption went unnoticed".into())),
        }
    }));

    out.push(run("Lee identity", || {
        let mut worst: f64 = 0.0;
        for st in sample_states()? {
            worst = worst.max(lee_report(&st)?.identity_residual);
        }
        let lhs = lee_report(&number_state(make_space(4, 4), 1, 1)?)?.lhs;
        Ok((
            worst < 1e-9 && (lhs + 2.0).abs() < 1e-12,
            format!("max residual {worst:.2e}, |1,1> lhs {lhs}"),
        ))
    }));

    out.push(run("U(2) equivariance of moment matrices", || {
        let u = U2Element::beamsplitter();
        let mut worst: f64 = 0.0;
        for st in sample_states()? {
            let moved = st.transform(&u2_unitary(st.space(), &u)?)?;
            for tj in [1, 2] {
                let via = transform_gamma(&gamma_moment_matrix(&st, tj)?, &u);
                let direct = gamma_moment_matrix(&moved, tj)?;
                worst = worst.max((via.gamma - direct.gamma).camax());
            }
        }
        Ok((worst < 1e-9, format!("max deviation {worst:.2e}")))
    }));

    out.push(run("Kerr evolution keeps photon statistics", || {
        let st = coherent_state(make_space(40, 40), C64::new(1.5, 0.0), C64::new(1.5, 0.0))?;
        let k = kerr_evolve(&st, 0.7, 1.3, 1.0)?;
        let dp = (st.photon_dist() - k.photon_dist()).abs().max();
        let dpur = (k.purity() - 1.0).abs();
        Ok((dp < 1e-12 && dpur < 1e-10, format!("max |dp| {dp:.2e}, purity drift {dpur:.2e}")))
    }));

    out.push(run("squeezed vacuum least eigenvalue", || {
        let st = squeezed_vacuum(make_space(60, 60), 0.5, 0.0)?;
        let l = least_eigenvalue(&a_matrix(&st)?);
        let want = -2.0 * 0.5f64.sinh().powi(2);
        Ok(((l - want).abs() < 1e-6, format!("{l:.9} vs {want:.9}")))
    }));

    out.push(run("subpoissonian onset precedes squeezing onset", || {
        let ok = [1.0, 2.0, 4.0]
            .iter()
            .all(|&b| subpoissonian_onset(b) < squeezing_onset(b));
        Ok((ok, "beta in {1, 2, 4}".into()))
    }));

    out.push(run("cutoff cap 5 surfaces CutoffTooSmall", || {
        let spec = StateSpec {
            family: Family::SqueezedVacuum,
            params: [("a".to_string(), 1.0)].into_iter().collect(),
            cutoffs: Cutoffs::default(),
        };
        match build_state(&spec, 5) {
            Err(crate::CliError::Core(Error::CutoffTooSmall { tail_mass, .. })) => {
                Ok((true, format!("tail {tail_mass:.2e}")))
            }
            Err(e) => Ok((false, format!("unexpected error {e}"))),
            Ok(_) => Ok((false, "state built despite cap".into())),
        }
    }));

    out
}

pub fn render(checks: &[Check]) -> String {
    let mut s = String::new();
    for c in checks {
        let tag = if c.passed { "PASS" } else { "FAIL" };
        s.push_str(&format!("[{tag}] {}: {}\n", c.name, c.detail));
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    s.push_str(&format!("{} checks, {} failed\n", checks.len(), failed));
    s
}
