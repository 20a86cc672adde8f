use nalgebra::{DMatrix, DVector};

use super::operator::{single_mode_annihilator, MatrixOperator};
use super::space::{FockSpace, Mode};
use super::state::State;
use crate::linalg::{kron_vec, real_to_complex};
use crate::{Error, Result, C64};

/// Builders fail when the tail mass exceeds this.
pub const TAIL_LIMIT: f64 = 1e-8;

/// Extra levels used when squeezing a mixed marginal, so the block kept on
/// the target space is free of truncation artifacts.
const EXP_PADDING: usize = 40;

fn ln_factorials(n: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(0.0);
    for k in 1..=n {
        out.push(out[k - 1] + (k as f64).ln());
    }
    out
}

fn check_tail(tail_mass: f64) -> Result<()> {
    if tail_mass > TAIL_LIMIT || !tail_mass.is_finite() {
        return Err(Error::CutoffTooSmall {
            tail_mass,
            limit: TAIL_LIMIT,
        });
    }
    Ok(())
}

/// Edge weight of a single-mode probability vector (its last two entries).
fn edge_weight(p: &[f64]) -> f64 {
    p.iter().rev().take(2).sum()
}

/// Poisson amplitudes `e^{-|z|²/2} zⁿ/√n!` for `n ≤ cutoff`, and the weight
/// beyond the cutoff.
fn coherent_amplitudes(z: C64, cutoff: usize) -> (DVector<C64>, f64) {
    let lf = ln_factorials(cutoff);
    let r2 = z.norm_sqr();
    let v = DVector::from_fn(cutoff + 1, |n, _| {
        if r2 == 0.0 {
            return if n == 0 { C64::new(1.0, 0.0) } else { C64::default() };
        }
        let mag = (-0.5 * r2 + n as f64 * z.norm().ln() - 0.5 * lf[n]).exp();
        C64::from_polar(mag, n as f64 * z.arg())
    });
    let lost = (1.0 - v.norm_squared()).max(0.0);
    (v, lost)
}

pub fn coherent_state(space: FockSpace, z1: C64, z2: C64) -> Result<State> {
    let (v1, lost1) = coherent_amplitudes(z1, space.cutoff(Mode::One));
    let (v2, lost2) = coherent_amplitudes(z2, space.cutoff(Mode::Two));
    let p1: Vec<f64> = v1.iter().map(|c| c.norm_sqr()).collect();
    let p2: Vec<f64> = v2.iter().map(|c| c.norm_sqr()).collect();
    let tail = lost1 + lost2 + edge_weight(&p1) + edge_weight(&p2);
    check_tail(tail)?;
    State::pure(space, kron_vec(&v1, &v2), tail)
}

/// `|n1, n2⟩`. Never fails on tail mass; a level on the edge layers is
/// reported through `tail_mass`.
pub fn number_state(space: FockSpace, n1: usize, n2: usize) -> Result<State> {
    let idx = space.index(n1, n2)?;
    let mut v = DVector::zeros(space.dim());
    v[idx] = C64::new(1.0, 0.0);
    let tail = if space.is_edge(n1, n2) { 1.0 } else { 0.0 };
    State::pure(space, v, tail)
}

fn thermal_marginal(beta: f64, cutoff: usize) -> (DMatrix<C64>, f64, f64) {
    let q = (-beta).exp();
    let p: Vec<f64> = (0..=cutoff).map(|n| (1.0 - q) * q.powi(n as i32)).collect();
    let lost = q.powi(cutoff as i32 + 1);
    let edge = edge_weight(&p);
    let m = DMatrix::from_diagonal(&DVector::from_iterator(
        cutoff + 1,
        p.into_iter().map(|x| C64::new(x, 0.0)),
    ));
    (m, lost, edge)
}

/// Product of two thermal states with weights `∝ e^{-β(n1+n2)}`.
pub fn thermal_state(space: FockSpace, beta: f64) -> Result<State> {
    if !(beta > 0.0) || !beta.is_finite() {
        return Err(Error::InvalidParameter(format!("beta must be positive, got {beta}")));
    }
    let (m1, l1, e1) = thermal_marginal(beta, space.cutoff(Mode::One));
    let (m2, l2, e2) = thermal_marginal(beta, space.cutoff(Mode::Two));
    let tail = l1 + l2 + e1 + e2;
    check_tail(tail)?;
    State::product(space, m1, m2, tail)
}

fn check_squeeze(a: f64, b: f64) -> Result<()> {
    if !(a >= b && b >= 0.0) || !a.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "squeeze parameters need a >= b >= 0, got a={a}, b={b}"
        )));
    }
    Ok(())
}

/// Per-mode squeeze magnitudes `(a − b, a + b)`.
///
/// With this scaling the `b = 0` fluctuation matrix has least eigenvalue
/// `−2 sinh² a` and the squeezed-thermal crossing sits at
/// `½ arccosh(coth β)`; see the repository's decision notes.
pub fn squeeze_magnitudes(a: f64, b: f64) -> (f64, f64) {
    (a - b, a + b)
}

/// `exp[(r/2)(â†² − â²)]` with the generator truncated to `levels` levels.
/// The truncated generator is antisymmetric, so the result is exactly
/// orthogonal; its matrix elements are exact away from the edge.
fn single_mode_squeezer(levels: usize, r: f64) -> DMatrix<C64> {
    if r == 0.0 {
        return DMatrix::identity(levels, levels);
    }
    let a = single_mode_annihilator(levels);
    let a2 = &a * &a;
    let g = (a2.transpose() - a2) * (0.5 * r);
    real_to_complex(&g.exp())
}

/// `exp[((a−b)/2)(â₁†² − â₁²)] · exp[((a+b)/2)(â₂†² − â₂²)]`, stored in
/// factored form.
pub fn squeeze_unitary(space: FockSpace, a: f64, b: f64) -> Result<MatrixOperator> {
    check_squeeze(a, b)?;
    let (r1, r2) = squeeze_magnitudes(a, b);
    MatrixOperator::local(
        space,
        single_mode_squeezer(space.levels(Mode::One), r1),
        single_mode_squeezer(space.levels(Mode::Two), r2),
    )
}

/// Single-mode squeezed vacuum
/// `(cosh r)^{-1/2} Σ (tanh r)ⁿ √((2n)!)/(2ⁿ n!) |2n⟩`.
fn squeezed_vacuum_amplitudes(r: f64, cutoff: usize) -> (DVector<C64>, f64) {
    let lf = ln_factorials(cutoff);
    let t = r.tanh();
    let v = DVector::from_fn(cutoff + 1, |k, _| {
        if k % 2 == 1 {
            return C64::default();
        }
        if r == 0.0 {
            return C64::new(if k == 0 { 1.0 } else { 0.0 }, 0.0);
        }
        let n = k / 2;
        let ln_mag = -0.5 * r.cosh().ln() + n as f64 * t.abs().ln() + 0.5 * lf[k]
            - n as f64 * std::f64::consts::LN_2
            - lf[n];
        C64::new(ln_mag.exp() * t.signum().powi(n as i32), 0.0)
    });
    let lost = (1.0 - v.norm_squared()).max(0.0);
    (v, lost)
}

/// The squeezer applied to `|0,0⟩`, using the closed-form number-basis
/// amplitudes of each single-mode factor.
pub fn squeezed_vacuum(space: FockSpace, a: f64, b: f64) -> Result<State> {
    check_squeeze(a, b)?;
    let (r1, r2) = squeeze_magnitudes(a, b);
    let (v1, l1) = squeezed_vacuum_amplitudes(r1, space.cutoff(Mode::One));
    let (v2, l2) = squeezed_vacuum_amplitudes(r2, space.cutoff(Mode::Two));
    let p1: Vec<f64> = v1.iter().map(|c| c.norm_sqr()).collect();
    let p2: Vec<f64> = v2.iter().map(|c| c.norm_sqr()).collect();
    let tail = l1 + l2 + edge_weight(&p1) + edge_weight(&p2);
    check_tail(tail)?;
    State::pure(space, kron_vec(&v1, &v2), tail)
}

/// `U ρ_th(β) U†` with `U` the squeezer.
pub fn squeezed_thermal(space: FockSpace, a: f64, b: f64, beta: f64) -> Result<State> {
    check_squeeze(a, b)?;
    if !(beta > 0.0) || !beta.is_finite() {
        return Err(Error::InvalidParameter(format!("beta must be positive, got {beta}")));
    }
    let (r1, r2) = squeeze_magnitudes(a, b);
    let mut marg = Vec::with_capacity(2);
    let mut tail = 0.0;
    for (mode, r) in [(Mode::One, r1), (Mode::Two, r2)] {
        let c = space.cutoff(mode);
        // squeeze on a padded space so the kept block is free of edge
        // effects, then measure what fell outside
        let big = c + EXP_PADDING;
        let (th, lost_th, _) = thermal_marginal(beta, big);
        let s = single_mode_squeezer(big + 1, r);
        let rho_big = &s * th * s.adjoint();
        let rho = rho_big.view((0, 0), (c + 1, c + 1)).into_owned();
        let p: Vec<f64> = (0..=c).map(|n| rho[(n, n)].re).collect();
        let kept: f64 = p.iter().sum();
        tail += (1.0 - kept).max(0.0) + lost_th + edge_weight(&p);
        marg.push(rho);
    }
    check_tail(tail)?;
    let rho2 = marg.pop().unwrap();
    let rho1 = marg.pop().unwrap();
    State::product(space, rho1, rho2, tail)
}

/// `|ζ,q⟩ = N_q Σ ζⁿ / √(n!(n+q)!) |n+q, n⟩`.
pub fn pair_coherent(space: FockSpace, zeta: C64, q: usize) -> Result<State> {
    let (c1, c2) = space.cutoffs();
    if q > c1 {
        return Err(Error::CutoffTooSmall {
            tail_mass: 1.0,
            limit: TAIL_LIMIT,
        });
    }
    let r = zeta.norm();
    let ln_r = r.ln();
    let nmax_space = (c1 - q).min(c2);
    // normalization series, summed past the peak until terms are negligible
    let mut lf = ln_factorials(q + 64);
    let ln_term = |n: usize, lf: &Vec<f64>| -> f64 {
        if r == 0.0 {
            return if n == 0 { -lf[q] } else { f64::NEG_INFINITY };
        }
        2.0 * n as f64 * ln_r - lf[n] - lf[n + q]
    };
    let mut terms = Vec::new();
    let mut n = 0usize;
    loop {
        while lf.len() <= n + q + 1 {
            let k = lf.len();
            lf.push(lf[k - 1] + (k as f64).ln());
        }
        let t = ln_term(n, &lf);
        terms.push(t);
        let peak = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        // term ratio falls below 1 once n(n+q) > |ζ|²
        let decreasing = (n * (n + q)) as f64 > r * r;
        if (decreasing && t - peak < (1e-16f64).ln()) || r == 0.0 {
            break;
        }
        n += 1;
    }
    let peak = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let ln_norm = peak + terms.iter().map(|t| (t - peak).exp()).sum::<f64>().ln();
    let mut v = DVector::zeros(space.dim());
    let mut kept = 0.0;
    let mut edge = 0.0;
    while lf.len() <= nmax_space + q + 1 {
        let k = lf.len();
        lf.push(lf[k - 1] + (k as f64).ln());
    }
    for k in 0..=nmax_space {
        // amplitudes beyond the series cut are still far above rounding
        let w = (ln_term(k, &lf) - ln_norm).exp();
        if w == 0.0 {
            break;
        }
        kept += w;
        if space.is_edge(k + q, k) {
            edge += w;
        }
        let amp = C64::from_polar(w.sqrt(), k as f64 * zeta.arg());
        v[space.index(k + q, k)?] = amp;
    }
    let tail = (1.0 - kept).max(0.0) + edge;
    check_tail(tail)?;
    State::pure(space, v, tail)
}

/// `ρ → e^{-iHt} ρ e^{iHt}` with `H = α n̂₁ + β n̂₁²` on mode 1.
pub fn kerr_evolve(state: &State, alpha_coef: f64, beta_coef: f64, t: f64) -> Result<State> {
    let space = state.space();
    let l1 = space.levels(Mode::One);
    let phases = DVector::from_fn(l1, |n, _| {
        let n = n as f64;
        C64::from_polar(1.0, -t * (alpha_coef * n + beta_coef * n * n))
    });
    let u = MatrixOperator::local(
        space,
        DMatrix::from_diagonal(&phases),
        DMatrix::identity(space.levels(Mode::Two), space.levels(Mode::Two)),
    )?;
    state.transform(&u)
}
