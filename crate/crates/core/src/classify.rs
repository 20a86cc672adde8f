//! The fluctuation matrix `A_μν` and the nonclassicality criteria built on
//! it: Mandel Q for any mode, single-mode projection scans, the Lee
//! inequality, factorial-moment and local photon-distribution batteries, and
//! a conservative verdict.

use nalgebra::{Matrix2, Matrix4, SymmetricEigen};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::fock::{Mode, State};
use crate::linalg::symmetric_eigenvalues4;
use crate::moments::{
    covariance_matrices, factorial_moments, marginal_dist, q_matrix, stokes_vector,
    CovarianceMatrix, OrderingTensors, StokesVector,
};
use crate::su2::{xi_vector, ModeVector, XiVector};
use crate::{Error, Result};

/// Relative slack of the factorial-moment inequalities.
pub const FACTORIAL_SLACK: f64 = 1e-9;
/// Relative eigenvalue floor for positive-semidefiniteness tests.
pub const PSD_FLOOR: f64 = 1e-9;
/// Lee-identity residual treated as a logic error.
pub const IDENTITY_LIMIT: f64 = 1e-7;

/// `A_μν = Δ(N̂_μ,N̂_ν) − ℓ_μνλ n_λ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FluctuationMatrix {
    pub a: Matrix4<f64>,
}

impl FluctuationMatrix {
    pub fn diagonal(&self) -> [f64; 4] {
        [self.a[(0, 0)], self.a[(1, 1)], self.a[(2, 2)], self.a[(3, 3)]]
    }

    pub fn max_abs(&self) -> f64 {
        self.a.abs().max()
    }

    pub fn max_off_diagonal(&self) -> f64 {
        let mut m: f64 = 0.0;
        for r in 0..4 {
            for c in 0..4 {
                if r != c {
                    m = m.max(self.a[(r, c)].abs());
                }
            }
        }
        m
    }

    /// Eigenvalue floor below which the matrix counts as indefinite.
    pub fn psd_floor(&self) -> f64 {
        -PSD_FLOOR * self.max_abs().max(1.0)
    }

    pub fn is_psd(&self) -> bool {
        least_eigenvalue(self) >= self.psd_floor()
    }
}

/// The moment objects behind one evaluation of `A`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FluctuationParts {
    pub a: FluctuationMatrix,
    pub n: StokesVector,
    pub covariance: CovarianceMatrix,
}

pub fn a_matrix_parts(state: &State) -> Result<FluctuationParts> {
    let covariance = covariance_matrices(state)?;
    let n = stokes_vector(state)?;
    let l = OrderingTensors::new().l_dot(&n);
    let raw = covariance.delta - l;
    Ok(FluctuationParts {
        a: FluctuationMatrix {
            a: (raw + raw.transpose()) * 0.5,
        },
        n,
        covariance,
    })
}

pub fn a_matrix(state: &State) -> Result<FluctuationMatrix> {
    Ok(a_matrix_parts(state)?.a)
}

pub fn least_eigenvalue(a: &FluctuationMatrix) -> f64 {
    symmetric_eigenvalues4(&a.a)[0]
}

/// `ξ(α)ᵀ A ξ(α)`, which equals `(ΔN̂(α))² − ⟨N̂(α)⟩`.
pub fn projection_value(a: &FluctuationMatrix, alpha: &ModeVector) -> f64 {
    xi_projection(a, &xi_vector(alpha))
}

pub fn xi_projection(a: &FluctuationMatrix, xi: &XiVector) -> f64 {
    let v = xi.as_vector();
    (v.transpose() * a.a * v)[(0, 0)]
}

/// Where a projection scan found its minimum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ProjectionArgmin {
    Mode(ModeVector),
    /// `ξ = (1,0,0,0)`, the total photon number.
    TotalNumber,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjectionScan {
    /// Smallest projection found; an upper bound on the true minimum.
    pub value: f64,
    pub argmin: ProjectionArgmin,
    pub samples: usize,
    pub refine_steps: usize,
    pub seed: u64,
}

pub const DEFAULT_SAMPLES: usize = 100_000;
pub const DEFAULT_REFINE_STEPS: usize = 100;
pub const DEFAULT_SEED: u64 = 0x5eed_0f_a11;

/// Minimum of `ξ(α)ᵀAξ(α)` over `n_samples` seeded uniform mode vectors,
/// refined by coordinate descent on the sphere angles, and compared with the
/// total-number projection `A₀₀`.
pub fn min_projection(a: &FluctuationMatrix, n_samples: usize) -> ProjectionScan {
    min_projection_with(a, n_samples, DEFAULT_SEED, DEFAULT_REFINE_STEPS)
}

pub fn min_projection_with(
    a: &FluctuationMatrix,
    n_samples: usize,
    seed: u64,
    refine_steps: usize,
) -> ProjectionScan {
    let n_samples = n_samples.max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = ModeVector::random(&mut rng);
    let mut best_val = projection_value(a, &best);
    for _ in 1..n_samples {
        let m = ModeVector::random(&mut rng);
        let v = projection_value(a, &m);
        if v < best_val {
            best_val = v;
            best = m;
        }
    }

    let (mut theta, mut phi) = best.angles();
    let eval = |t: f64, p: f64| projection_value(a, &ModeVector::from_angles(t, p));
    let mut cur = eval(theta, phi);
    let mut step = 0.05;
    for _ in 0..refine_steps {
        let mut moved = false;
        for (dt, dp) in [(step, 0.0), (-step, 0.0), (0.0, step), (0.0, -step)] {
            let v = eval(theta + dt, phi + dp);
            if v < cur {
                cur = v;
                theta += dt;
                phi += dp;
                moved = true;
            }
        }
        if !moved {
            step *= 0.5;
        }
    }
    if cur < best_val {
        best_val = cur;
        best = ModeVector::from_angles(theta, phi);
    }

    let total = a.a[(0, 0)];
    let (value, argmin) = if total < best_val {
        (total, ProjectionArgmin::TotalNumber)
    } else {
        (best_val, ProjectionArgmin::Mode(best))
    };
    ProjectionScan {
        value,
        argmin,
        samples: n_samples,
        refine_steps,
        seed,
    }
}

/// Mandel `Q = ((ΔN)² − ⟨N⟩)/⟨N⟩` for the mode `â(α)`, from the
/// `ξ`-contraction of `A` and `n`.
pub fn mandel_q(state: &State, alpha: &ModeVector) -> Result<f64> {
    let parts = a_matrix_parts(state)?;
    mandel_q_from(&parts, alpha)
}

pub fn mandel_q_from(parts: &FluctuationParts, alpha: &ModeVector) -> Result<f64> {
    let xi = xi_vector(alpha);
    let mean = xi.as_vector().dot(&parts.n.as_vector());
    if mean <= 1e-12 {
        return Err(Error::VacuumMode(mean));
    }
    Ok(xi_projection(&parts.a, &xi) / mean)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LeeReport {
    /// `⟨n̂₁(n̂₁−1) + n̂₂(n̂₂−1) − 2n̂₁n̂₂⟩` from the photon distribution.
    pub lhs: f64,
    /// `max(|lhs − (A₃₃ + n₃²)|, |lhs − ½(q₁₁ + q₂₂ − q₃₃)|)`.
    pub identity_residual: f64,
    pub a33: f64,
    pub n3: f64,
    /// `½(q₁₁ + q₂₂ − q₃₃)`.
    pub q_combination: f64,
}

impl LeeReport {
    pub fn violated(&self) -> bool {
        self.lhs < -PSD_FLOOR * self.lhs.abs().max(1.0)
    }

    pub fn sharpened_violated(&self) -> bool {
        self.a33 < -PSD_FLOOR * self.a33.abs().max(1.0)
    }
}

pub fn lee_report(state: &State) -> Result<LeeReport> {
    let parts = a_matrix_parts(state)?;
    lee_report_from(state, &parts)
}

pub fn lee_report_from(state: &State, parts: &FluctuationParts) -> Result<LeeReport> {
    let p = state.photon_dist();
    let mut lhs = 0.0;
    for n1 in 0..p.nrows() {
        for n2 in 0..p.ncols() {
            let (x, y) = (n1 as f64, n2 as f64);
            lhs += p[(n1, n2)] * (x * (x - 1.0) + y * (y - 1.0) - 2.0 * x * y);
        }
    }
    let q = q_matrix(state).q;
    let qc = 0.5 * (q[(0, 0)] + q[(1, 1)] - q[(2, 2)]).re;
    let a33 = parts.a.a[(3, 3)];
    let n3 = parts.n.n[3];
    let residual = (lhs - (a33 + n3 * n3)).abs().max((lhs - qc).abs());
    if residual > IDENTITY_LIMIT * lhs.abs().max(1.0) || !residual.is_finite() {
        return Err(Error::IdentityMismatch(residual));
    }
    Ok(LeeReport {
        lhs,
        identity_residual: residual,
        a33,
        n3,
        q_combination: qc,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FactorialBound {
    /// `γ_m γ_n ≤ γ_{m+n}`.
    Lower,
    /// `γ_{m+n} ≤ √(γ_{2m} γ_{2n})`.
    Upper,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FactorialViolation {
    pub m: usize,
    pub n: usize,
    pub bound: FactorialBound,
    /// The side that should be smaller.
    pub smaller: f64,
    /// The side that should be larger.
    pub larger: f64,
}

/// All `(m, n)` with `1 ≤ m ≤ n` whose indices fit the list, checked against
/// both factorial-moment inequalities.
pub fn factorial_inequality_report(gammas: &[f64]) -> Vec<FactorialViolation> {
    let top = gammas.len().saturating_sub(1);
    let mut out = Vec::new();
    let breaks = |small: f64, large: f64| {
        small - large > FACTORIAL_SLACK * small.abs().max(large.abs())
    };
    for m in 1..=top {
        for n in m..=top {
            if m + n <= top {
                let (s, l) = (gammas[m] * gammas[n], gammas[m + n]);
                if breaks(s, l) {
                    out.push(FactorialViolation {
                        m,
                        n,
                        bound: FactorialBound::Lower,
                        smaller: s,
                        larger: l,
                    });
                }
            }
            if 2 * n <= top {
                let (s, l) = (gammas[m + n], (gammas[2 * m] * gammas[2 * n]).max(0.0).sqrt());
                if breaks(s, l) {
                    out.push(FactorialViolation {
                        m,
                        n,
                        bound: FactorialBound::Upper,
                        smaller: s,
                        larger: l,
                    });
                }
            }
        }
    }
    out
}

/// `a²p(n₀) + 2(n₀+1)ab·p(n₀+1) + (n₀+1)(n₀+2)b²p(n₀+2)`.
pub fn local_pn_value(p: &[f64], n0: usize, a: f64, b: f64) -> Result<f64> {
    let m = local_pn_matrix(p, n0)?;
    Ok(a * a * m[(0, 0)] + 2.0 * a * b * m[(0, 1)] + b * b * m[(1, 1)])
}

/// The 2×2 matrix of the local quadratic form at `n₀`.
pub fn local_pn_matrix(p: &[f64], n0: usize) -> Result<Matrix2<f64>> {
    if n0 + 2 >= p.len() {
        return Err(Error::OutOfRange {
            n1: n0 + 2,
            n2: 0,
            cutoff1: p.len().saturating_sub(1),
            cutoff2: 0,
        });
    }
    let k = (n0 + 1) as f64;
    Ok(Matrix2::new(
        p[n0],
        k * p[n0 + 1],
        k * p[n0 + 1],
        k * (k + 1.0) * p[n0 + 2],
    ))
}

/// Least eigenvalue of the local form, the minimum over unit `(a, b)`.
pub fn local_pn_min(p: &[f64], n0: usize) -> Result<f64> {
    let m = local_pn_matrix(p, n0)?;
    let ev = SymmetricEigen::new(m).eigenvalues;
    Ok(ev[0].min(ev[1]))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalPnViolation {
    pub mode: Mode,
    pub n0: usize,
    pub least_eigenvalue: f64,
}

/// Scan `n₀` over a single-mode distribution, skipping the two outermost
/// levels.
pub fn local_pn_report(p: &[f64], mode: Mode) -> Vec<LocalPnViolation> {
    let mut out = Vec::new();
    let usable = p.len().saturating_sub(2);
    for n0 in 0..usable.saturating_sub(2) {
        let m = local_pn_matrix(p, n0).expect("index checked");
        let ev = SymmetricEigen::new(m).eigenvalues;
        let least = ev[0].min(ev[1]);
        let floor = -(PSD_FLOOR * m.abs().max()).max(1e-12);
        if least < floor {
            out.push(LocalPnViolation {
                mode,
                n0,
                least_eigenvalue: least,
            });
        }
    }
    out
}

/// `[[A₀₀, A₀₃], [A₃₀, A₃₃]]` from the photon distribution alone.
pub fn phase_insensitive_block(state: &State) -> Matrix2<f64> {
    let p = state.photon_dist();
    let (mut s, mut d, mut ss, mut dd, mut sd) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for n1 in 0..p.nrows() {
        for n2 in 0..p.ncols() {
            let w = p[(n1, n2)];
            let (x, y) = (n1 as f64, n2 as f64);
            s += w * (x + y);
            d += w * (x - y);
            ss += w * (x + y) * (x + y);
            dd += w * (x - y) * (x - y);
            sd += w * (x + y) * (x - y);
        }
    }
    // ℓ·n contributes n₀ on the diagonal and n₃ off it
    Matrix2::new(ss - s * s - s, sd - s * d - d, sd - s * d - d, dd - d * d - s)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerdictConfig {
    pub samples: usize,
    pub seed: u64,
    pub refine_steps: usize,
    /// Highest factorial moment used; `None` picks `min(8, cutoff/2)`.
    pub factorial_m_max: Option<usize>,
}

impl Default for VerdictConfig {
    fn default() -> Self {
        VerdictConfig {
            samples: DEFAULT_SAMPLES,
            seed: DEFAULT_SEED,
            refine_steps: DEFAULT_REFINE_STEPS,
            factorial_m_max: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerdictText {
    ConsistentWithClassicalOrSemiI,
    NotClassicalNotSemiI,
}

impl VerdictText {
    pub fn as_str(&self) -> &'static str {
        match self {
            VerdictText::ConsistentWithClassicalOrSemiI => "consistent-with-classical-or-semiI",
            VerdictText::NotClassicalNotSemiI => "not-classical-not-semiI",
        }
    }
}

impl std::fmt::Display for VerdictText {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    /// Both covariance matrices positive semidefinite.
    pub any_state_psd_ok: bool,
    pub a_psd: bool,
    pub least_eig: f64,
    pub min_projection: ProjectionScan,
    pub lee: LeeReport,
    pub lee_violated: bool,
    pub sharpened_lee_violated: bool,
    /// `[[A₀₀, A₀₃], [A₃₀, A₃₃]]` positive semidefinite.
    pub phase_insensitive_psd: bool,
    pub factorial_violations: Vec<(Mode, FactorialViolation)>,
    pub local_pn_violations: Vec<LocalPnViolation>,
    pub parts: FluctuationParts,
    pub verdict_text: VerdictText,
}

fn psd4(m: &Matrix4<f64>) -> bool {
    symmetric_eigenvalues4(m)[0] >= -PSD_FLOOR * m.abs().max().max(1.0)
}

/// Runs every battery. The text only ever certifies exclusion from the
/// classical and semiclassical-I levels; it never certifies membership.
pub fn verdict(state: &State, config: &VerdictConfig) -> Result<Verdict> {
    let parts = a_matrix_parts(state)?;
    let a = parts.a;
    let least_eig = least_eigenvalue(&a);
    let a_psd = a.is_psd();
    let scan = min_projection_with(&a, config.samples, config.seed, config.refine_steps);
    let lee = lee_report_from(state, &parts)?;

    let block = Matrix2::new(a.a[(0, 0)], a.a[(0, 3)], a.a[(3, 0)], a.a[(3, 3)]);
    let bev = SymmetricEigen::new(block).eigenvalues;
    let phase_insensitive_psd = bev[0].min(bev[1]) >= -PSD_FLOOR * block.abs().max().max(1.0);

    let mut factorial_violations = Vec::new();
    let mut local_pn_violations = Vec::new();
    for mode in Mode::BOTH {
        let cutoff = state.space().cutoff(mode);
        let m_max = config.factorial_m_max.unwrap_or((cutoff / 2).min(8)).min(cutoff);
        let g = factorial_moments(state, mode, m_max)?;
        factorial_violations.extend(factorial_inequality_report(&g).into_iter().map(|v| (mode, v)));
        local_pn_violations.extend(local_pn_report(&marginal_dist(state, mode), mode));
    }

    let any_state_psd_ok = psd4(&parts.covariance.delta) && psd4(&parts.covariance.anticomm);
    let nonclassical = !a_psd
        || lee.violated()
        || !factorial_violations.is_empty()
        || !local_pn_violations.is_empty();
    Ok(Verdict {
        any_state_psd_ok,
        a_psd,
        least_eig,
        min_projection: scan,
        lee_violated: lee.violated(),
        sharpened_lee_violated: lee.sharpened_violated(),
        lee,
        phase_insensitive_psd,
        factorial_violations,
        local_pn_violations,
        parts,
        verdict_text: if nonclassical {
            VerdictText::NotClassicalNotSemiI
        } else {
            VerdictText::ConsistentWithClassicalOrSemiI
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::*;
    use crate::su2::single_mode_number_moments;
    use crate::C64;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn quick() -> VerdictConfig {
        VerdictConfig {
            samples: 2000,
            ..VerdictConfig::default()
        }
    }

    #[test]
    fn coherent_state_has_zero_a() {
        let s = make_space(30, 30);
        let st = coherent_state(s, c(1.2, -0.4), c(0.3, 0.9)).unwrap();
        assert!(a_matrix(&st).unwrap().max_abs() < 1e-9);
        let v = verdict(&st, &quick()).unwrap();
        assert_eq!(v.verdict_text, VerdictText::ConsistentWithClassicalOrSemiI);
        assert!(v.a_psd);
    }

    #[test]
    fn mandel_examples() {
        let s = make_space(30, 30);
        let coh = coherent_state(s, c(1.0, 0.0), C64::default()).unwrap();
        assert_abs_diff_eq!(mandel_q(&coh, &ModeVector::bare(Mode::One)).unwrap(), 0.0, epsilon = 1e-9);
        let num = number_state(s, 5, 0).unwrap();
        assert_abs_diff_eq!(mandel_q(&num, &ModeVector::bare(Mode::One)).unwrap(), -1.0, epsilon = 1e-12);
        assert!(matches!(
            mandel_q(&num, &ModeVector::bare(Mode::Two)),
            Err(Error::VacuumMode(_))
        ));
        let pc = pair_coherent(make_space(40, 40), c(2.0, 0.0), 0).unwrap();
        assert!(mandel_q(&pc, &ModeVector::bare(Mode::Two)).unwrap() < 0.0);
    }

    #[test]
    fn squeezed_vacuum_a_matrix() {
        let s = make_space(60, 60);
        let st = squeezed_vacuum(s, 0.5, 0.0).unwrap();
        let a = a_matrix(&st).unwrap();
        assert!(a.max_off_diagonal() < 1e-9);
        let sh = 0.5f64.sinh().powi(2);
        let ch = 1f64.cosh();
        let d = a.diagonal();
        assert_abs_diff_eq!(d[1], 2.0 * ch * sh, epsilon = 1e-10);
        assert_abs_diff_eq!(d[2], -2.0 * sh, epsilon = 1e-10);
        assert_abs_diff_eq!(d[3], 2.0 * ch * sh, epsilon = 1e-10);
        // total-number variance fixes A₀₀: Σ_j A_jj − A₀₀ = n₀² − |n⃗|²
        let n = stokes_vector(&st).unwrap().n;
        let cas = d[1] + d[2] + d[3] - d[0];
        assert_abs_diff_eq!(cas, n[0] * n[0] - (n[1] * n[1] + n[2] * n[2] + n[3] * n[3]), epsilon = 1e-9);
        assert_abs_diff_eq!(least_eigenvalue(&a), -2.0 * sh, epsilon = 1e-10);
        let scan = min_projection(&a, 20_000);
        assert!(scan.value >= -1e-9);
    }

    #[test]
    fn projection_identity_random_modes() {
        let s = make_space(30, 30);
        let st = pair_coherent(s, c(1.0, 0.5), 1).unwrap();
        let a = a_matrix(&st).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
        for _ in 0..50 {
            let al = ModeVector::random(&mut rng);
            let (m, m2) = single_mode_number_moments(&st, &al).unwrap();
            assert_abs_diff_eq!(projection_value(&a, &al), m2 - m * m - m, epsilon = 1e-9);
        }
    }

    #[test]
    fn lee_examples() {
        let s = make_space(6, 6);
        let r = lee_report(&number_state(s, 0, 0).unwrap()).unwrap();
        assert_eq!(r.lhs, 0.0);
        let r = lee_report(&number_state(s, 1, 1).unwrap()).unwrap();
        assert_eq!(r.lhs, -2.0);
        assert!(r.violated() && r.sharpened_violated());
        assert!(r.identity_residual < 1e-12);
    }

    #[test]
    fn factorial_battery() {
        let coh: Vec<f64> = (0..9).map(|m| 2.5f64.powi(m)).collect();
        assert!(factorial_inequality_report(&coh).is_empty());
        let nb: f64 = 0.58;
        let mut f = 1.0;
        let th: Vec<f64> = (0..9)
            .map(|m| {
                if m > 0 {
                    f *= m as f64;
                }
                f * nb.powi(m)
            })
            .collect();
        assert!(factorial_inequality_report(&th).is_empty());
        let num = [1.0, 3.0, 6.0, 6.0, 0.0];
        let v = factorial_inequality_report(&num);
        assert!(v.iter().any(|x| x.m == 1 && x.n == 1 && x.bound == FactorialBound::Lower
            && x.smaller == 9.0 && x.larger == 6.0));
    }

    #[test]
    fn local_pn_examples() {
        // |2⟩: at n₀ = 1 the form is 4ab·p(2), negative for ab < 0
        let mut p = vec![0.0; 8];
        p[2] = 1.0;
        assert_eq!(local_pn_value(&p, 1, 1.0, -1.0).unwrap(), -4.0);
        assert_eq!(local_pn_value(&p, 2, 1.0, 0.0).unwrap(), 1.0);
        assert_eq!(local_pn_value(&p, 0, 0.0, 1.0).unwrap(), 2.0);
        let v = local_pn_report(&p, Mode::One);
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].n0, 1);
        assert_abs_diff_eq!(v[0].least_eigenvalue, -2.0, epsilon = 1e-14);
        assert!(matches!(local_pn_value(&p, 6, 1.0, 0.0), Err(Error::OutOfRange { .. })));

        let s = make_space(40, 40);
        let sv = squeezed_vacuum(s, 0.5, 0.0).unwrap();
        let marg = marginal_dist(&sv, Mode::One);
        assert!(!local_pn_report(&marg, Mode::One).is_empty());
        let coh = coherent_state(s, c(1.5, 0.0), C64::default()).unwrap();
        assert!(local_pn_report(&marginal_dist(&coh, Mode::One), Mode::One).is_empty());
    }

    #[test]
    fn phase_insensitive_block_matches_a() {
        let s = make_space(40, 40);
        let st = pair_coherent(s, c(2.0, 0.0), 1).unwrap();
        let a = a_matrix(&st).unwrap().a;
        let b = phase_insensitive_block(&st);
        assert_abs_diff_eq!(b[(0, 0)], a[(0, 0)], epsilon = 1e-9);
        assert_abs_diff_eq!(b[(0, 1)], a[(0, 3)], epsilon = 1e-9);
        assert_abs_diff_eq!(b[(1, 1)], a[(3, 3)], epsilon = 1e-9);
    }

    #[test]
    fn verdicts_for_examples() {
        let s = make_space(40, 40);
        let sv = verdict(&squeezed_vacuum(s, 0.5, 0.0).unwrap(), &quick()).unwrap();
        assert_eq!(sv.verdict_text, VerdictText::NotClassicalNotSemiI);
        assert!(!sv.a_psd);
        assert!(sv.min_projection.value >= -1e-9);
        let pc = verdict(&pair_coherent(s, c(2.0, 0.0), 0).unwrap(), &quick()).unwrap();
        assert_eq!(pc.verdict_text, VerdictText::NotClassicalNotSemiI);
        assert!(pc.min_projection.value < 0.0);
    }
}
