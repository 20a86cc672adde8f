//! Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
//! criterion fails.

use std::collections::BTreeMap;
use std::time::Instant;

use nonclass::classify::{
    a_matrix, a_matrix_parts, lee_report, least_eigenvalue, mandel_q, min_projection_with,
    projection_value, verdict, FactorialBound, VerdictConfig, DEFAULT_REFINE_STEPS,
};
use nonclass::fock::{
    coherent_state, kerr_evolve, make_space, number_state, pair_coherent, Mode, State,
};
use nonclass::moments::gamma_moment_matrix;
use nonclass::oracles::{
    a_matrix_squeezed_thermal_normalized, a_matrix_squeezed_vacuum, squeezing_onset,
    subpoissonian_onset,
};
use nonclass::su2::{single_mode_number_moments, transform_gamma, u2_unitary, ModeVector, U2Element};
use nonclass::C64;
use nonclass_cli::build::{build_in, build_state, DEFAULT_MAX_CUTOFF};
use nonclass_cli::spec::{Cutoffs, Family, StateSpec, SweepSpec};
use nonclass_cli::sweep::run_sweep;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// Cap for the squeezed-thermal runs: β = 1 near a = 1 needs about 240
/// levels per mode to push the tail below 1e-10.
const WIDE_CAP: usize = 320;
const SEED: u64 = 20240607;

type Outcome = Result<String, String>;

fn spec(family: Family, params: &[(&str, f64)]) -> StateSpec {
    StateSpec {
        family,
        params: params.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
        cutoffs: Cutoffs::default(),
    }
}

fn rel(x: f64, y: f64) -> f64 {
    (x - y).abs() / y.abs().max(1e-300)
}

/// Doubles the cutoff from 20 until the tail mass is below `tail`.
fn build_tight(s: &StateSpec, tail: f64) -> State {
    let mut c = 20;
    loop {
        if let Ok(st) = build_in(s, make_space(c, c)) {
            if st.tail_mass() < tail {
                return st;
            }
        }
        assert!(c < WIDE_CAP, "no cutoff up to {WIDE_CAP} reaches tail {tail} for {s:?}");
        c *= 2;
    }
}

fn c01_squeezed_vacuum_oracle() -> Outcome {
    let mut lines = Vec::new();
    let mut ok = true;
    for a in [0.1, 0.25, 0.5, 0.75, 1.0] {
        let t0 = Instant::now();
        let st = build_state(&spec(Family::SqueezedVacuum, &[("a", a)]), DEFAULT_MAX_CUTOFF)
            .map_err(|e| e.to_string())?;
        let m = a_matrix(&st).map_err(|e| e.to_string())?;
        let secs = t0.elapsed().as_secs_f64();
        let d = m.diagonal();
        let o = a_matrix_squeezed_vacuum(a).diagonal();
        let errs: Vec<f64> = (0..4).map(|i| rel(d[i], o[i])).collect();
        let off = m.max_off_diagonal();
        let point_ok = off < 1e-8 && errs.iter().all(|e| *e < 1e-6) && secs < 10.0;
        ok &= point_ok;
        lines.push(format!(
            "a={a}: off-diag {off:.1e}, rel err A00..A33 [{:.1e} {:.1e} {:.1e} {:.1e}], A00 {:.6} vs closed form {:.6}, {secs:.2}s",
            errs[0], errs[1], errs[2], errs[3], d[0], o[0]
        ));
    }
    let msg = lines.join("; ");
    if ok { Ok(msg) } else { Err(msg) }
}

fn c02_squeezed_thermal_oracle() -> Outcome {
    let jobs: Vec<(f64, f64)> = [1.0, 2.0, 4.0]
        .iter()
        .flat_map(|&b| (0..11).map(move |i| (b, i as f64 / 10.0)))
        .collect();
    let results: Vec<Result<[f64; 4], String>> = jobs
        .par_iter()
        .map(|&(beta, a)| {
            let st = build_state(&spec(Family::SqueezedThermal, &[("a", a), ("beta", beta)]), WIDE_CAP)
                .map_err(|e| e.to_string())?;
            let d = a_matrix(&st).map_err(|e| e.to_string())?.diagonal();
            let o = a_matrix_squeezed_thermal_normalized(a, beta).diagonal();
            Ok(std::array::from_fn(|i| (d[i] - o[i]).abs() / (o[i].abs() + 1e-12)))
        })
        .collect();
    let mut worst = [0.0f64; 4];
    let mut worst_at = [(0.0, 0.0); 4];
    for (r, job) in results.into_iter().zip(&jobs) {
        let e = r?;
        for i in 0..4 {
            if e[i] > worst[i] {
                worst[i] = e[i];
                worst_at[i] = *job;
            }
        }
    }
    let msg = format!(
        "33 points, worst rel err A00 {:.1e} (beta={}, a={}), A11 {:.1e}, A22 {:.1e}, A33 {:.1e}",
        worst[0], worst_at[0].0, worst_at[0].1, worst[1], worst[2], worst[3]
    );
    if worst.iter().all(|w| *w < 1e-5) { Ok(msg) } else { Err(msg) }
}

fn sweep(family: Family, fixed: &[(&str, f64)]) -> Result<Vec<nonclass_cli::sweep::SweepRow>, String> {
    let s = SweepSpec {
        family,
        param: "a".into(),
        min: 0.0,
        max: 1.0,
        steps: 51,
        params: fixed.iter().map(|(k, v)| (k.to_string(), *v)).collect::<BTreeMap<_, _>>(),
        cutoffs: Cutoffs::default(),
        samples: Some(5000),
        seed: Some(SEED),
    };
    run_sweep(&s, WIDE_CAP).map_err(|e| e.to_string())
}

fn c03_least_eig_curves() -> Outcome {
    let step = 0.02;
    let mut lines = Vec::new();
    let mut ok = true;

    let vac = sweep(Family::SqueezedVacuum, &[])?;
    let dev = vac
        .iter()
        .map(|r| (r.least_eig + 2.0 * r.param_value.sinh().powi(2)).abs())
        .fold(0.0, f64::max);
    let neg = vac.iter().skip(1).all(|r| r.least_eig < 0.0);
    ok &= dev < 1e-6 && neg;
    lines.push(format!("vacuum: max |lambda + 2 sinh^2 a| {dev:.1e}, negative for a>0: {neg}"));

    for (beta, quoted) in [(4.0, 0.0183), (2.0, 0.1363), (1.0, 0.3821)] {
        let rows = sweep(Family::SqueezedThermal, &[("beta", beta)])?;
        let cross = rows.iter().find(|r| r.least_eig < 0.0).map(|r| r.param_value);
        let flip = rows.iter().find(|r| r.onset_marker == 1.0).map(|r| r.param_value);
        let (cross, flip) = match (cross, flip) {
            (Some(c), Some(f)) => (c, f),
            _ => {
                ok = false;
                lines.push(format!("beta={beta}: no crossing or no marker flip"));
                continue;
            }
        };
        let a_star = subpoissonian_onset(beta);
        let a_sq = squeezing_onset(beta);
        let row_ok = (cross - a_star).abs() <= step + 1e-12
            && (cross - quoted).abs() <= step + 1e-12
            && (flip - a_sq).abs() <= step + 1e-12
            && cross <= flip
            && a_star < a_sq;
        ok &= row_ok;
        lines.push(format!(
            "beta={beta}: lambda<0 from a={cross:.2} (exact {a_star:.6}, quoted {quoted}), marker from a={flip:.2} (exact {a_sq:.6})"
        ));
    }
    let msg = lines.join("; ");
    if ok { Ok(msg) } else { Err(msg) }
}

fn c04_two_mode_signature() -> Outcome {
    let cases = [
        spec(Family::SqueezedVacuum, &[("a", 0.25)]),
        spec(Family::SqueezedVacuum, &[("a", 0.5)]),
        spec(Family::SqueezedVacuum, &[("a", 1.0)]),
        spec(Family::SqueezedThermal, &[("a", 0.6), ("beta", 1.0)]),
    ];
    let mut lines = Vec::new();
    let mut ok = true;
    for s in &cases {
        let st = build_state(s, WIDE_CAP).map_err(|e| e.to_string())?;
        let a = a_matrix(&st).map_err(|e| e.to_string())?;
        let scan = min_projection_with(&a, 100_000, SEED, DEFAULT_REFINE_STEPS);
        let l = least_eigenvalue(&a);
        ok &= scan.value >= -1e-9 && l < -1e-3;
        lines.push(format!("{:?} {:?}: min projection {:.3e}, lambda {l:.6}", s.family, s.params, scan.value));
    }
    let msg = lines.join("; ");
    if ok { Ok(msg) } else { Err(msg) }
}

/// `(ζ, q)` → (mode-2 Q, λ_min, projection at α = (0,1)), from the first run.
const PAIR_BASELINES: [((f64, usize), [f64; 3]); 4] = [
    ((1.0, 0), [-0.264647231242, -1.395549315928, -0.184664131261]),
    ((2.0, 0), [-0.410950687330, -3.454090444098, -0.709730421052]),
    ((2.0, 1), [-0.276799184362, -3.878866337037, -0.364293893754]),
    ((3.0, 2), [-0.277911161726, -6.508948903666, -0.537274545380]),
];

fn c05_pair_coherent() -> Outcome {
    let mut lines = Vec::new();
    let mut ok = true;
    for ((zeta, q), base) in PAIR_BASELINES {
        let st = build_state(
            &spec(Family::PairCoherent, &[("zeta_re", zeta), ("q", q as f64)]),
            DEFAULT_MAX_CUTOFF,
        )
        .map_err(|e| e.to_string())?;
        let a = a_matrix(&st).map_err(|e| e.to_string())?;
        let bare2 = ModeVector::bare(Mode::Two);
        let mq = mandel_q(&st, &bare2).map_err(|e| e.to_string())?;
        let l = least_eigenvalue(&a);
        let p = projection_value(&a, &bare2);
        let got = [mq, l, p];
        let matches = base.iter().zip(got).all(|(b, g)| (g - b).abs() <= 1e-9 * b.abs().max(1.0));
        ok &= mq < 0.0 && l < 0.0 && p < 0.0 && matches;
        lines.push(format!("zeta={zeta},q={q}: Q2 {mq:.12}, lambda {l:.12}, proj {p:.12}"));
    }
    let msg = lines.join("; ");
    if ok { Ok(msg) } else { Err(msg) }
}

fn random_z(rng: &mut ChaCha8Rng, r: f64) -> (f64, f64) {
    (rng.random_range(-r..r), rng.random_range(-r..r))
}

fn c06_coherent_null() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let (a, b) = random_z(&mut rng, 2.0);
        let (c, d) = random_z(&mut rng, 2.0);
        let s = spec(Family::Coherent, &[("z1_re", a), ("z1_im", b), ("z2_re", c), ("z2_im", d)]);
        let st = build_state(&s, DEFAULT_MAX_CUTOFF).map_err(|e| e.to_string())?;
        worst = worst.max(a_matrix(&st).map_err(|e| e.to_string())?.max_abs());
    }
    let msg = format!("20 states, max |A| {worst:.2e}");
    if worst < 1e-9 { Ok(msg) } else { Err(msg) }
}

/// A random state spec from every family, with moderate photon numbers.
fn random_spec(rng: &mut ChaCha8Rng, k: usize) -> StateSpec {
    let u = |rng: &mut ChaCha8Rng, lo: f64, hi: f64| rng.random_range(lo..hi);
    match k % 7 {
        0 => {
            let (a, b) = random_z(rng, 1.5);
            let (c, d) = random_z(rng, 1.5);
            spec(Family::Coherent, &[("z1_re", a), ("z1_im", b), ("z2_re", c), ("z2_im", d)])
        }
        1 => spec(
            Family::Number,
            &[("n1", rng.random_range(0..6) as f64), ("n2", rng.random_range(0..6) as f64)],
        ),
        2 => spec(Family::Thermal, &[("beta", u(rng, 0.7, 4.0))]),
        3 => {
            let a = u(rng, 0.0, 0.8);
            spec(Family::SqueezedVacuum, &[("a", a), ("b", u(rng, 0.0, a))])
        }
        4 => {
            let a = u(rng, 0.0, 0.6);
            spec(Family::SqueezedThermal, &[("a", a), ("b", u(rng, 0.0, a)), ("beta", u(rng, 1.5, 4.0))])
        }
        5 => spec(
            Family::PairCoherent,
            &[("zeta_re", u(rng, 0.2, 3.0)), ("zeta_im", u(rng, -1.0, 1.0)), ("q", rng.random_range(0..3) as f64)],
        ),
        _ => {
            let (a, b) = random_z(rng, 1.2);
            let (c, d) = random_z(rng, 1.2);
            spec(
                Family::KerrCoherent,
                &[
                    ("z1_re", a),
                    ("z1_im", b),
                    ("z2_re", c),
                    ("z2_im", d),
                    ("kerr_alpha", u(rng, -2.0, 2.0)),
                    ("kerr_beta", u(rng, -2.0, 2.0)),
                    ("t", u(rng, 0.0, 3.0)),
                ],
            )
        }
    }
}

fn test_states() -> Vec<State> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0x7);
    let specs: Vec<_> = (0..50).map(|k| random_spec(&mut rng, k)).collect();
    specs.par_iter().map(|s| build_tight(s, 1e-12)).collect()
}

fn c07_dual_path(states: &[State]) -> Outcome {
    let mut worst: f64 = 0.0;
    for st in states {
        let parts = a_matrix_parts(st).map_err(|e| e.to_string())?;
        worst = worst.max(parts.covariance.dual_path_residual);
    }
    let msg = format!("{} states, max |direct - (t.q + l.n)| {worst:.2e}", states.len());
    if worst < 1e-9 { Ok(msg) } else { Err(msg) }
}

fn c08_equivariance() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0x8);
    let states = [
        coherent_state(make_space(30, 30), C64::new(0.9, -0.4), C64::new(0.2, 0.7)),
        build_in(&spec(Family::SqueezedVacuum, &[("a", 0.5)]), make_space(60, 60)),
        pair_coherent(make_space(40, 40), C64::new(2.0, 0.5), 1),
    ]
    .into_iter()
    .collect::<Result<Vec<_>, _>>()
    .map_err(|e| e.to_string())?;
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let u = U2Element::random(&mut rng);
        for st in &states {
            let moved = st.transform(&u2_unitary(st.space(), &u).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
            for tj in [1, 2] {
                let g = gamma_moment_matrix(st, tj).map_err(|e| e.to_string())?;
                let via = transform_gamma(&g, &u);
                let direct = gamma_moment_matrix(&moved, tj).map_err(|e| e.to_string())?;
                worst = worst.max((via.gamma - direct.gamma).camax());
            }
        }
    }
    let msg = format!("20 unitaries x 3 states x j in {{1/2, 1}}, max deviation {worst:.2e}");
    if worst < 1e-9 { Ok(msg) } else { Err(msg) }
}

fn c09_lee(states: &[State]) -> Outcome {
    let mut worst: f64 = 0.0;
    for st in states {
        worst = worst.max(lee_report(st).map_err(|e| e.to_string())?.identity_residual);
    }
    let lhs = lee_report(&number_state(make_space(4, 4), 1, 1).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?
        .lhs;
    let msg = format!("{} states, max identity residual {worst:.2e}; |1,1> lhs = {lhs}", states.len());
    if worst < 1e-9 && lhs == -2.0 { Ok(msg) } else { Err(msg) }
}

fn c10_kerr() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0x10);
    let z = C64::new(1.5, 0.0);
    let st = coherent_state(make_space(40, 40), z, z).map_err(|e| e.to_string())?;
    let p0 = st.photon_dist();
    let (mut dp, mut dpur): (f64, f64) = (0.0, 0.0);
    for _ in 0..10 {
        let (at, bt) = (rng.random_range(-5.0..5.0), rng.random_range(-5.0..5.0));
        let k = kerr_evolve(&st, at, bt, 1.0).map_err(|e| e.to_string())?;
        dp = dp.max((k.photon_dist() - &p0).abs().max());
        dpur = dpur.max((k.purity() - st.purity()).abs());
    }
    let msg = format!("10 runs, max |dp(n)| {dp:.1e}, purity drift {dpur:.1e}");
    if dp < 1e-12 && dpur < 1e-10 { Ok(msg) } else { Err(msg) }
}

fn c11_projection_identity(states: &[State]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0x11);
    let mut worst: f64 = 0.0;
    for st in states.iter().take(10) {
        let a = a_matrix(st).map_err(|e| e.to_string())?;
        for _ in 0..100 {
            let alpha = ModeVector::random(&mut rng);
            let (mean, second) = single_mode_number_moments(st, &alpha).map_err(|e| e.to_string())?;
            let lhs = projection_value(&a, &alpha);
            worst = worst.max((lhs - (second - mean * mean - mean)).abs());
        }
    }
    let msg = format!("1000 mode vectors over 10 states, max deviation {worst:.2e}");
    if worst < 1e-9 { Ok(msg) } else { Err(msg) }
}

fn c12_batteries() -> Outcome {
    let config = VerdictConfig::default();
    let cases: Vec<(&str, StateSpec, bool)> = vec![
        ("coherent", spec(Family::Coherent, &[("z1_re", 1.0), ("z2_im", 0.7)]), false),
        ("coherent", spec(Family::Coherent, &[("z1_re", 2.0)]), false),
        ("thermal", spec(Family::Thermal, &[("beta", 1.0)]), false),
        ("thermal", spec(Family::Thermal, &[("beta", 0.5)]), false),
        ("number", spec(Family::Number, &[("n1", 1.0), ("n2", 0.0)]), true),
        ("number", spec(Family::Number, &[("n1", 3.0), ("n2", 2.0)]), true),
    ];
    let mut lines = Vec::new();
    let mut ok = true;
    for (name, s, expect_violation) in cases {
        let st = build_state(&s, DEFAULT_MAX_CUTOFF).map_err(|e| e.to_string())?;
        let t0 = Instant::now();
        let v = verdict(&st, &config).map_err(|e| e.to_string())?;
        let secs = t0.elapsed().as_secs_f64();
        let count = v.factorial_violations.len() + v.local_pn_violations.len();
        let gamma12 = v
            .factorial_violations
            .iter()
            .any(|(_, f)| f.m == 1 && f.n == 1 && f.bound == FactorialBound::Lower);
        let case_ok = secs < 5.0 && if expect_violation { gamma12 } else { count == 0 };
        ok &= case_ok;
        lines.push(format!("{name} {:?}: {count} violations, gamma1^2>gamma2 {gamma12}, {secs:.2}s", s.params));
    }
    let msg = lines.join("; ");
    if ok { Ok(msg) } else { Err(msg) }
}

fn main() {
    let states = test_states();
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        ("C01 squeezed vacuum oracle", Box::new(c01_squeezed_vacuum_oracle)),
        ("C02 squeezed thermal oracle", Box::new(c02_squeezed_thermal_oracle)),
        ("C03 least-eigenvalue curves", Box::new(c03_least_eig_curves)),
        ("C04 irreducible two-mode signature", Box::new(c04_two_mode_signature)),
        ("C05 pair coherent states", Box::new(c05_pair_coherent)),
        ("C06 coherent null", Box::new(c06_coherent_null)),
        ("C07 dual-path decomposition", Box::new(|| c07_dual_path(&states))),
        ("C08 U(2) equivariance", Box::new(c08_equivariance)),
        ("C09 Lee identity", Box::new(|| c09_lee(&states))),
        ("C10 Kerr invariance", Box::new(c10_kerr)),
        ("C11 projection identity", Box::new(|| c11_projection_identity(&states))),
        ("C12 inequality batteries", Box::new(c12_batteries)),
    ];
    let mut failed = 0;
    for (name, run) in &criteria {
        let t0 = Instant::now();
        let outcome = run();
        let secs = t0.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("[PASS] {name} ({secs:.1}s): {msg}"),
            Err(msg) => {
                failed += 1;
                println!("[FAIL] {name} ({secs:.1}s): {msg}");
            }
        }
    }
    println!("{} criteria, {} passed, {} failed", criteria.len(), criteria.len() - failed, failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
