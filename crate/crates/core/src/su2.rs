//! Mode mixing: U(2) unitaries on the truncated space, Wigner D matrices,
//! covariance of the moment matrices, and the projection vectors `ξ_μ(α)`.

use nalgebra::{DMatrix, Matrix2, SymmetricEigen, Vector2, Vector4};
use nalgebra_sparse::{CooMatrix, CsrMatrix};
use rand::Rng;
use rand_distr::StandardNormal;

use crate::fock::{bilinear, FockSpace, MatrixOperator, Mode, State};
use crate::moments::{pauli, MomentMatrix};
use crate::{Error, Result, C64};

const UNITARITY_TOL: f64 = 1e-12;

/// A 2×2 unitary matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct U2Element {
    u: Matrix2<C64>,
}

impl U2Element {
    pub fn new(u: Matrix2<C64>) -> Result<Self> {
        let r = (u.adjoint() * u - Matrix2::identity()).camax();
        if r > UNITARITY_TOL || !r.is_finite() {
            return Err(Error::NonUnitaryInput(r));
        }
        Ok(U2Element { u })
    }

    pub fn identity() -> Self {
        U2Element {
            u: Matrix2::identity(),
        }
    }

    /// Balanced beamsplitter `(1/√2)[[1, i], [i, 1]]`.
    pub fn beamsplitter() -> Self {
        let h = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let ih = C64::new(0.0, std::f64::consts::FRAC_1_SQRT_2);
        U2Element {
            u: Matrix2::new(h, ih, ih, h),
        }
    }

    /// `diag(e^{iθ₁}, e^{iθ₂})`.
    pub fn phases(theta1: f64, theta2: f64) -> Self {
        U2Element {
            u: Matrix2::new(
                C64::from_polar(1.0, theta1),
                C64::default(),
                C64::default(),
                C64::from_polar(1.0, theta2),
            ),
        }
    }

    /// Haar-random element: a random unit quaternion times a random phase.
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let mut q = [0.0f64; 4];
        loop {
            for x in q.iter_mut() {
                *x = rng.sample(StandardNormal);
            }
            let n = q.iter().map(|x| x * x).sum::<f64>().sqrt();
            if n > 1e-8 {
                q.iter_mut().for_each(|x| *x /= n);
                break;
            }
        }
        let a = C64::new(q[0], q[1]);
        let b = C64::new(q[2], q[3]);
        let phase = C64::from_polar(1.0, rng.random_range(0.0..std::f64::consts::TAU));
        U2Element {
            u: Matrix2::new(a, -b.conj(), b, a.conj()) * phase,
        }
    }

    pub fn matrix(&self) -> &Matrix2<C64> {
        &self.u
    }

    /// Principal logarithm, anti-Hermitian: `u = e^{iφ} a` with `a ∈ SU(2)`
    /// and `Re tr a ≥ 0`, then `log a = (θ/2)/sin(θ/2) · (a − a†)/2`.
    pub fn log(&self) -> Matrix2<C64> {
        let det = self.u.determinant();
        let mut phi = det.arg() / 2.0;
        let mut a = self.u * C64::from_polar(1.0, -phi);
        if a.trace().re < 0.0 {
            a = -a;
            phi += std::f64::consts::PI;
        }
        let half_cos = (a.trace().re / 2.0).clamp(-1.0, 1.0);
        let half = half_cos.acos();
        let factor = if half.abs() < 1e-8 {
            1.0 + half * half / 6.0
        } else {
            half / half.sin()
        };
        let anti = (a - a.adjoint()) * C64::new(0.5 * factor, 0.0);
        Matrix2::identity() * C64::new(0.0, phi) + anti
    }
}

/// `𝒰(u)` with `𝒰(u) â_r 𝒰(u)⁻¹ = u_sr â_s`, equivalently `𝒰(u)|z⟩ = |u* z⟩`
/// on coherent states.
///
/// Built as `exp(Σ_rs M_rs â_r†â_s)` with `M = −(log u)ᵀ`. The generator
/// conserves total photon number, so it is exponentiated one sector
/// `n1 + n2 = N` at a time (by Hermitian eigendecomposition of `−iG`).
pub fn u2_unitary(space: FockSpace, u: &U2Element) -> Result<MatrixOperator> {
    let m = -u.log().transpose();
    let gen = bilinear(space, &m);
    let (c1, c2) = space.cutoffs();
    let d = space.dim();
    let mut coo = CooMatrix::new(d, d);
    for total in 0..=(c1 + c2) {
        let members: Vec<usize> = (0..=total)
            .filter(|&n1| n1 <= c1 && total - n1 <= c2)
            .map(|n1| space.index(n1, total - n1))
            .collect::<Result<_>>()?;
        let k = members.len();
        let h = DMatrix::from_fn(k, k, |r, c| gen.entry(members[r], members[c]) * C64::new(0.0, -1.0));
        let h = (&h + h.adjoint()) * C64::new(0.5, 0.0);
        let eig = SymmetricEigen::new(h);
        let phases = DMatrix::from_diagonal(
            &eig.eigenvalues.map(|l| C64::from_polar(1.0, l)),
        );
        let block = &eig.eigenvectors * phases * eig.eigenvectors.adjoint();
        for r in 0..k {
            for c in 0..k {
                let v = block[(r, c)];
                if v.norm() > 1e-300 {
                    coo.push(members[r], members[c], v);
                }
            }
        }
    }
    MatrixOperator::from_sparse(space, CsrMatrix::from(&coo))
}

fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// Spin-`j` representation matrix of a 2×2 matrix `a` (`j = twice_j / 2`),
/// rows and columns ordered `m = j, j−1, …, −j`.
///
/// Defined through the action on homogeneous polynomials,
/// `x^{j+m} y^{j−m} ↦ (a₁₁x + a₂₁y)^{j+m} (a₁₂x + a₂₂y)^{j−m}`, normalized
/// so that the result is unitary for unitary `a`. For `j = ½` this is `a`
/// itself; for `SU(2)` elements it agrees with the Condon-Shortley `D^(j)`.
pub fn wigner_d(twice_j: usize, a: &Matrix2<C64>) -> DMatrix<C64> {
    let d = twice_j + 1;
    let (a11, a12, a21, a22) = (a[(0, 0)], a[(0, 1)], a[(1, 0)], a[(1, 1)]);
    let pow = |z: C64, n: usize| z.powu(n as u32);
    DMatrix::from_fn(d, d, |row, col| {
        // m' ↦ x-degree jm' = twice_j − row, m ↦ p = twice_j − col
        let jmp = twice_j - row;
        let p = twice_j - col;
        let q = col;
        let norm = (factorial(jmp) * factorial(twice_j - jmp) / (factorial(p) * factorial(q))).sqrt();
        let mut acc = C64::default();
        for k in 0..=p.min(jmp) {
            let l = jmp - k;
            if l > q {
                continue;
            }
            acc += pow(a11, k) * pow(a21, p - k) * pow(a12, l) * pow(a22, q - l)
                * (binomial(p, k) * binomial(q, l));
        }
        acc * norm
    })
}

/// `γ' = D(u) γ D(u)†`.
pub fn transform_gamma(gamma: &MomentMatrix, u: &U2Element) -> MomentMatrix {
    let d = wigner_d(gamma.twice_j, u.matrix());
    MomentMatrix {
        twice_j: gamma.twice_j,
        gamma: &d * &gamma.gamma * d.adjoint(),
    }
}

/// A normalized mode vector `α`, defining `â(α) = α†â`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeVector {
    alpha: Vector2<C64>,
}

impl ModeVector {
    pub fn new(a1: C64, a2: C64) -> Result<Self> {
        let n = (a1.norm_sqr() + a2.norm_sqr() - 1.0).abs();
        if n > 1e-12 {
            return Err(Error::InvalidParameter(format!(
                "mode vector not normalized (|α|² − 1 = {n:.3e})"
            )));
        }
        Ok(ModeVector {
            alpha: Vector2::new(a1, a2),
        })
    }

    /// Normalizes the input.
    pub fn normalized(a1: C64, a2: C64) -> Result<Self> {
        let n = (a1.norm_sqr() + a2.norm_sqr()).sqrt();
        if !(n > 0.0) || !n.is_finite() {
            return Err(Error::InvalidParameter("zero mode vector".into()));
        }
        Ok(ModeVector {
            alpha: Vector2::new(a1 / n, a2 / n),
        })
    }

    pub fn bare(mode: Mode) -> Self {
        let (one, zero) = (C64::new(1.0, 0.0), C64::default());
        ModeVector {
            alpha: match mode {
                Mode::One => Vector2::new(one, zero),
                Mode::Two => Vector2::new(zero, one),
            },
        }
    }

    /// `α = (cos θ/2, e^{iφ} sin θ/2)`.
    pub fn from_angles(theta: f64, phi: f64) -> Self {
        ModeVector {
            alpha: Vector2::new(
                C64::new((theta / 2.0).cos(), 0.0),
                C64::from_polar((theta / 2.0).sin(), phi),
            ),
        }
    }

    /// Uniform on the unit 3-sphere via a normalized complex Gaussian pair.
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        loop {
            let mut g = || C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal));
            let (a, b) = (g(), g());
            if let Ok(m) = Self::normalized(a, b) {
                return m;
            }
        }
    }

    pub fn components(&self) -> (C64, C64) {
        (self.alpha[0], self.alpha[1])
    }

    pub fn as_vector(&self) -> &Vector2<C64> {
        &self.alpha
    }

    /// `(θ, φ)` with `α ≃ (cos θ/2, e^{iφ} sin θ/2)` up to a global phase.
    pub fn angles(&self) -> (f64, f64) {
        let theta = 2.0 * self.alpha[1].norm().atan2(self.alpha[0].norm());
        let phi = self.alpha[1].arg() - self.alpha[0].arg();
        (theta, phi)
    }
}

/// `ξ_μ`, real four-vector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XiVector {
    pub xi: [f64; 4],
}

impl XiVector {
    /// `ξ = (1, 0, 0, 0)`, which projects onto the total photon number.
    pub fn total_number() -> Self {
        XiVector {
            xi: [1.0, 0.0, 0.0, 0.0],
        }
    }

    pub fn as_vector(&self) -> Vector4<f64> {
        Vector4::from(self.xi)
    }

    /// `max_λ |ℓ_μνλ ξ_μ ξ_ν − ξ_λ|`.
    pub fn cone_residual(&self) -> f64 {
        let l = crate::moments::OrderingTensors::new().l;
        (0..4)
            .map(|lam| {
                let mut s = 0.0;
                for mu in 0..4 {
                    for nu in 0..4 {
                        s += l[mu][nu][lam] * self.xi[mu] * self.xi[nu];
                    }
                }
                (s - self.xi[lam]).abs()
            })
            .fold(0.0, f64::max)
    }
}

/// `ξ_μ(α) = ½ α†σ_μα`.
pub fn xi_vector(alpha: &ModeVector) -> XiVector {
    let a = alpha.as_vector();
    let mut xi = [0.0; 4];
    for (mu, slot) in xi.iter_mut().enumerate() {
        *slot = 0.5 * (a.adjoint() * pauli(mu) * a)[(0, 0)].re;
    }
    XiVector { xi }
}

/// `N̂(α) = â(α)†â(α) = Σ_rs α_r ᾱ_s â_r†â_s` and its square.
pub fn single_mode_number_ops(
    space: FockSpace,
    alpha: &ModeVector,
) -> (MatrixOperator, MatrixOperator) {
    let a = alpha.as_vector();
    let k = Matrix2::from_fn(|r, s| a[r] * a[s].conj());
    let n = bilinear(space, &k);
    let n2 = n.compose(&n).expect("same space");
    (n, n2)
}

/// `(⟨N̂(α)⟩, ⟨N̂(α)²⟩)`, evaluated on a copy of the state embedded two levels
/// deeper so the operator square is exact.
pub fn single_mode_number_moments(state: &State, alpha: &ModeVector) -> Result<(f64, f64)> {
    let space = state.space().padded(2);
    let st = state.embed(space)?;
    let (n, n2) = single_mode_number_ops(space, alpha);
    Ok((
        crate::moments::coerce_real(st.expect(&n)?)?,
        crate::moments::coerce_real(st.expect(&n2)?)?,
    ))
}
