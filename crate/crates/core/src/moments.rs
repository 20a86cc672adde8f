//! Normal-ordered moments: the Stokes-like vector `n_μ = ⟨N̂_μ⟩`, the pair
//! matrix `q_jk = ⟨Â_j†Â_k⟩`, the moment matrices `γ^(j)`, factorial moments,
//! and the 4×4 covariance and anticommutator matrices of the `N̂_μ`.
//!
//! Conventions: `N̂_μ = Σ_rs (σ_μ)_rs â_r†â_s` with `σ_0 = 1`, and
//! `Â_j = i âᵀσ₂σ_j â`, which gives `Â₁ = â₁² − â₂²`, `Â₂ = i(â₁² + â₂²)`,
//! `Â₃ = −2â₁â₂`.

use nalgebra::{DMatrix, Matrix2, Matrix3, Matrix4, Vector4};

use crate::fock::{bilinear, Mode, State};
use crate::{Error, Result, C64};

const IM_FAIL: f64 = 1e-8;
/// Relative disagreement between the two anticommutator paths that is
/// treated as a logic error rather than truncation noise.
pub const DECOMPOSITION_LIMIT: f64 = 1e-7;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);
const I: C64 = C64::new(0.0, 1.0);

pub fn pauli(mu: usize) -> Matrix2<C64> {
    match mu {
        0 => Matrix2::new(ONE, ZERO, ZERO, ONE),
        1 => Matrix2::new(ZERO, ONE, ONE, ZERO),
        2 => Matrix2::new(ZERO, -I, I, ZERO),
        3 => Matrix2::new(ONE, ZERO, ZERO, -ONE),
        _ => panic!("pauli index {mu} out of range"),
    }
}

/// Coefficients `c` of `Â_j = Σ_rs c_rs â_r â_s` (j = 1, 2, 3), symmetrized.
pub fn pair_coefficients(j: usize) -> Matrix2<C64> {
    let c = pauli(2) * pauli(j) * I;
    (c + c.transpose()) * C64::new(0.5, 0.0)
}

/// Levi-Civita symbol on three indices in `1..=3`; zero if any index is 0.
pub fn levi_civita(a: usize, b: usize, c: usize) -> f64 {
    if a == 0 || b == 0 || c == 0 {
        return 0.0;
    }
    match (a, b, c) {
        (1, 2, 3) | (2, 3, 1) | (3, 1, 2) => 1.0,
        (3, 2, 1) | (1, 3, 2) | (2, 1, 3) => -1.0,
        _ => 0.0,
    }
}

fn delta(a: usize, b: usize) -> f64 {
    if a == b {
        1.0
    } else {
        0.0
    }
}

/// Drop a small imaginary part, fail on a large one.
pub(crate) fn coerce_real(z: C64) -> Result<f64> {
    let scale = z.re.abs().max(1.0);
    if z.im.abs() > IM_FAIL * scale {
        return Err(Error::ImaginaryResidue(z.im.abs()));
    }
    Ok(z.re)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StokesVector {
    pub n: [f64; 4],
}

impl StokesVector {
    pub fn as_vector(&self) -> Vector4<f64> {
        Vector4::from(self.n)
    }

    /// `n₀ − |n⃗|`, nonnegative for every state.
    pub fn cone_gap(&self) -> f64 {
        let [n0, n1, n2, n3] = self.n;
        n0 - (n1 * n1 + n2 * n2 + n3 * n3).sqrt()
    }
}

/// `⟨â_r†â_s⟩` as a 2×2 matrix.
pub fn ladder_correlations(state: &State) -> Matrix2<C64> {
    let idx = |r: usize| if r == 0 { (1, 0) } else { (0, 1) };
    Matrix2::from_fn(|r, s| {
        let (p1, p2) = idx(r);
        let (r1, r2) = idx(s);
        state.normal_moment(p1, p2, r1, r2)
    })
}

pub fn stokes_vector(state: &State) -> Result<StokesVector> {
    let g = ladder_correlations(state);
    let mut n = [0.0; 4];
    for (mu, slot) in n.iter_mut().enumerate() {
        let s = pauli(mu);
        let mut acc = ZERO;
        for r in 0..2 {
            for c in 0..2 {
                acc += s[(r, c)] * g[(r, c)];
            }
        }
        *slot = coerce_real(acc)?;
    }
    Ok(StokesVector { n })
}

/// `⟨â_r†â_s†â_tâ_u⟩` for all mode labels.
fn quartic_moments(state: &State) -> [[[[C64; 2]; 2]; 2]; 2] {
    let mut out = [[[[ZERO; 2]; 2]; 2]; 2];
    let count = |x: usize, y: usize| -> (usize, usize) {
        let ones = (x == 0) as usize + (y == 0) as usize;
        (ones, 2 - ones)
    };
    for r in 0..2 {
        for s in 0..2 {
            for t in 0..2 {
                for u in 0..2 {
                    let (p1, p2) = count(r, s);
                    let (r1, r2) = count(t, u);
                    out[r][s][t][u] = state.normal_moment(p1, p2, r1, r2);
                }
            }
        }
    }
    out
}

/// 3×3 Hermitian matrix `q_jk = ⟨Â_j†Â_k⟩`, indices `j, k = 1..3` stored at
/// `0..2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QMatrix {
    pub q: Matrix3<C64>,
}

pub fn q_matrix(state: &State) -> QMatrix {
    let m = quartic_moments(state);
    let coeffs: Vec<Matrix2<C64>> = (1..=3).map(pair_coefficients).collect();
    let q = Matrix3::from_fn(|j, k| {
        let (cj, ck) = (&coeffs[j], &coeffs[k]);
        let mut acc = ZERO;
        for r in 0..2 {
            for s in 0..2 {
                for t in 0..2 {
                    for u in 0..2 {
                        // Â_j† = Σ c̄_rs â_s†â_r†
                        acc += cj[(r, s)].conj() * ck[(t, u)] * m[s][r][t][u];
                    }
                }
            }
        }
        acc
    });
    QMatrix { q }
}

/// Constants that split `⟨½{N̂_μ, N̂_ν}⟩` into its normal-ordered quartic part
/// and a quadratic remainder:
///
/// `⟨½{N̂_μ,N̂_ν}⟩ = t_μνjk q_jk + ℓ_μνλ n_λ`, with
///
/// `t_μνjk = ½(δ_μν δ_jk − δ_μj δ_νk − δ_νj δ_μk − i δ_μ0 ε_νjk − i δ_ν0 ε_μjk)`,
/// `ℓ_μνλ = δ_μν δ_λ0 + δ_μ0 δ_νλ + δ_ν0 δ_μλ − 2 δ_μ0 δ_ν0 δ_λ0`.
#[derive(Debug, Clone, PartialEq)]
pub struct OrderingTensors {
    /// `t[μ][ν][j−1][k−1]`.
    pub t: [[[[C64; 3]; 3]; 4]; 4],
    pub l: [[[f64; 4]; 4]; 4],
}

impl Default for OrderingTensors {
    fn default() -> Self {
        Self::new()
    }
}

impl OrderingTensors {
    pub fn new() -> Self {
        let mut t = [[[[ZERO; 3]; 3]; 4]; 4];
        let mut l = [[[0.0; 4]; 4]; 4];
        for mu in 0..4 {
            for nu in 0..4 {
                for j in 1..4 {
                    for k in 1..4 {
                        let re = delta(mu, nu) * delta(j, k)
                            - delta(mu, j) * delta(nu, k)
                            - delta(nu, j) * delta(mu, k);
                        let im = -delta(mu, 0) * levi_civita(nu, j, k)
                            - delta(nu, 0) * levi_civita(mu, j, k);
                        t[mu][nu][j - 1][k - 1] = C64::new(0.5 * re, 0.5 * im);
                    }
                }
                for (lam, slot) in l[mu][nu].iter_mut().enumerate() {
                    *slot = delta(mu, nu) * delta(lam, 0)
                        + delta(mu, 0) * delta(nu, lam)
                        + delta(nu, 0) * delta(mu, lam)
                        - 2.0 * delta(mu, 0) * delta(nu, 0) * delta(lam, 0);
                }
            }
        }
        OrderingTensors { t, l }
    }

    /// `ℓ_μνλ n_λ`.
    pub fn l_dot(&self, n: &StokesVector) -> Matrix4<f64> {
        Matrix4::from_fn(|mu, nu| (0..4).map(|lam| self.l[mu][nu][lam] * n.n[lam]).sum())
    }

    /// `Re t_μνjk q_jk`, failing on a non-negligible imaginary part.
    pub fn t_dot(&self, q: &QMatrix) -> Result<Matrix4<f64>> {
        let mut out = Matrix4::zeros();
        for mu in 0..4 {
            for nu in 0..4 {
                let mut acc = ZERO;
                for j in 0..3 {
                    for k in 0..3 {
                        acc += self.t[mu][nu][j][k] * q.q[(j, k)];
                    }
                }
                out[(mu, nu)] = coerce_real(acc)?;
            }
        }
        Ok(out)
    }
}

/// `Δ(N̂_μ,N̂_ν)` and `⟨½{N̂_μ,N̂_ν}⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CovarianceMatrix {
    pub delta: Matrix4<f64>,
    pub anticomm: Matrix4<f64>,
    /// Max entrywise difference between the operator-product path and the
    /// `t·q + ℓ·n` path.
    pub dual_path_residual: f64,
}

/// `N̂_μ` on the given space.
pub fn number_operator(space: crate::fock::FockSpace, mu: usize) -> crate::fock::MatrixOperator {
    bilinear(space, &pauli(mu))
}

/// `⟨N̂_μ N̂_ν⟩` from explicit operator products. The state is first
/// embedded two levels deeper in each mode so that no product leaves the
/// space.
pub fn number_products(state: &State) -> Result<Matrix4<C64>> {
    let space = state.space().padded(2);
    let st = state.embed(space)?;
    let ops: Vec<_> = (0..4).map(|mu| number_operator(space, mu)).collect();
    let mut out = Matrix4::zeros();
    for mu in 0..4 {
        for nu in mu..4 {
            let v = st.expect(&ops[mu].compose(&ops[nu])?)?;
            out[(mu, nu)] = v;
            if nu != mu {
                out[(nu, mu)] = st.expect(&ops[nu].compose(&ops[mu])?)?;
            }
        }
    }
    Ok(out)
}

pub fn covariance_matrices(state: &State) -> Result<CovarianceMatrix> {
    covariance_matrices_with(state, &OrderingTensors::new())
}

/// As [`covariance_matrices`], with caller-supplied ordering constants.
pub fn covariance_matrices_with(
    state: &State,
    tensors: &OrderingTensors,
) -> Result<CovarianceMatrix> {
    let n = stokes_vector(state)?;
    let q = q_matrix(state);
    let decomposed = tensors.t_dot(&q)? + tensors.l_dot(&n);

    let prod = number_products(state)?;
    let mut direct = Matrix4::zeros();
    for mu in 0..4 {
        for nu in 0..4 {
            direct[(mu, nu)] = coerce_real((prod[(mu, nu)] + prod[(nu, mu)]) * 0.5)?;
        }
    }
    let residual = (direct - decomposed).abs().max();
    let scale = direct.abs().max().max(1.0);
    if residual > DECOMPOSITION_LIMIT * scale || !residual.is_finite() {
        return Err(Error::DecompositionMismatch(residual));
    }
    let nv = n.as_vector();
    Ok(CovarianceMatrix {
        delta: direct - nv * nv.transpose(),
        anticomm: direct,
        dual_path_residual: residual,
    })
}

/// `max_μν |⟨[N̂_μ,N̂_ν]⟩ − 2i ε_μνλ n_λ|`.
pub fn commutator_check(state: &State) -> Result<f64> {
    let n = stokes_vector(state)?;
    let prod = number_products(state)?;
    let mut worst: f64 = 0.0;
    for mu in 0..4 {
        for nu in 0..4 {
            let lhs = prod[(mu, nu)] - prod[(nu, mu)];
            let rhs: f64 = (1..4).map(|lam| 2.0 * levi_civita(mu, nu, lam) * n.n[lam]).sum();
            worst = worst.max((lhs - I * rhs).norm());
        }
    }
    Ok(worst)
}

/// `γ^(j)` for spin `j = twice_j / 2`.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentMatrix {
    pub twice_j: usize,
    /// Row/column `i` carries `m = j − i`.
    pub gamma: DMatrix<C64>,
}

impl MomentMatrix {
    pub fn j(&self) -> f64 {
        self.twice_j as f64 / 2.0
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        crate::linalg::hermitian_eigenvalues(&crate::linalg::hermitian_part(&self.gamma))
    }
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// `γ^(j)_{m₁m₂} = ⟨B̂_{m₁}† B̂_{m₂}⟩` with
/// `B̂_m = â₁^{j+m} â₂^{j−m} / √((j+m)!(j−m)!)`.
///
/// This index order makes `γ^(j)` Hermitian positive semidefinite and gives
/// the covariance law `γ' = D(u) γ D(u)†` for `ρ' = 𝒰(u) ρ 𝒰(u)†`.
pub fn gamma_moment_matrix(state: &State, twice_j: usize) -> Result<MomentMatrix> {
    let (c1, c2) = state.space().cutoffs();
    let cutoff = c1.min(c2);
    if twice_j > cutoff {
        return Err(Error::OrderTooHigh {
            order: twice_j,
            cutoff,
        });
    }
    let d = twice_j + 1;
    // i ↦ (j+m, j−m) = (twice_j − i, i)
    let norm: Vec<f64> = (0..d)
        .map(|i| (factorial(twice_j - i) * factorial(i)).sqrt())
        .collect();
    let gamma = DMatrix::from_fn(d, d, |a, b| {
        state.normal_moment(twice_j - a, a, twice_j - b, b) / (norm[a] * norm[b])
    });
    Ok(MomentMatrix { twice_j, gamma })
}

/// Rows express `Â_j` (j = 1..3) in the `j = 1` basis `B̂_m` (m = 1, 0, −1):
/// `Â = C B̂`, so `q = C̄ γ^(1) Cᵀ`.
pub fn cartesian_from_spherical() -> Matrix3<C64> {
    let s = std::f64::consts::SQRT_2;
    Matrix3::new(
        C64::new(s, 0.0),
        ZERO,
        C64::new(-s, 0.0),
        C64::new(0.0, s),
        ZERO,
        C64::new(0.0, s),
        ZERO,
        C64::new(-2.0, 0.0),
        ZERO,
    )
}

/// `γ_m = ⟨â†^m â^m⟩` for `m = 0..=m_max`.
pub fn factorial_moments(state: &State, mode: Mode, m_max: usize) -> Result<Vec<f64>> {
    let cutoff = state.space().cutoff(mode);
    if m_max > cutoff {
        return Err(Error::OrderTooHigh {
            order: m_max,
            cutoff,
        });
    }
    (0..=m_max)
        .map(|m| {
            let z = match mode {
                Mode::One => state.normal_moment(m, 0, m, 0),
                Mode::Two => state.normal_moment(0, m, 0, m),
            };
            coerce_real(z)
        })
        .collect()
}

/// `p(n1, n2)`.
pub fn photon_dist(state: &State) -> DMatrix<f64> {
    state.photon_dist()
}

/// Photon distribution of one mode, summed over the other.
pub fn marginal_dist(state: &State, mode: Mode) -> Vec<f64> {
    let p = state.photon_dist();
    match mode {
        Mode::One => p.row_iter().map(|r| r.sum()).collect(),
        Mode::Two => p.column_iter().map(|c| c.sum()).collect(),
    }
}
