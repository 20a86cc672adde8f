use nalgebra::{DMatrix, DVector, SymmetricEigen};

use super::operator::{from_grid, to_grid, MatrixOperator};
use super::space::{FockSpace, Mode};
use crate::linalg::{falling_sqrt, hermitian_eigenvalues, kron_vec};
use crate::{Error, Result, C64};

/// Mixture components lighter than this are dropped when a product state is
/// expanded into a mixture; the discarded weight is added to `tail_mass`.
const MIXTURE_WEIGHT_FLOOR: f64 = 1e-16;

/// A normalized two-mode density operator.
///
/// The density matrix of a two-mode state at a few hundred photons per mode
/// has ~10¹⁰ entries, so `ρ` is kept in one of three factored forms. Every
/// method behaves as if it acted on the full matrix; [`State::density_matrix`]
/// materializes it on small spaces.
#[derive(Debug, Clone)]
pub struct State {
    space: FockSpace,
    repr: Repr,
    tail_mass: f64,
}

#[derive(Debug, Clone)]
pub enum Repr {
    /// `|ψ⟩⟨ψ|`.
    Pure(DVector<C64>),
    /// `ρ₁ ⊗ ρ₂` with single-mode density matrices.
    Product { mode1: DMatrix<C64>, mode2: DMatrix<C64> },
    /// `Σ w_i |ψ_i⟩⟨ψ_i|`, weights summing to one.
    Mixture(Vec<(f64, DVector<C64>)>),
}

/// Residuals of the density-matrix invariants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InvariantReport {
    pub hermiticity: f64,
    pub trace_error: f64,
    pub min_eigenvalue: f64,
}

impl InvariantReport {
    pub fn holds(&self) -> bool {
        self.hermiticity <= 1e-12 && self.trace_error <= 1e-10 && self.min_eigenvalue >= -1e-10
    }
}

impl State {
    /// Normalizes `psi` and records `tail_mass`.
    pub fn pure(space: FockSpace, psi: DVector<C64>, tail_mass: f64) -> Result<State> {
        if psi.len() != space.dim() {
            return Err(Error::DimensionMismatch {
                expected: space.dim(),
                found: psi.len(),
            });
        }
        let norm = psi.norm();
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::InvalidState("zero or non-finite state vector".into()));
        }
        Ok(State {
            space,
            repr: Repr::Pure(psi.unscale(norm)),
            tail_mass,
        })
    }

    /// `rho1 ⊗ rho2`; each factor is Hermitized and normalized to unit trace.
    pub fn product(
        space: FockSpace,
        rho1: DMatrix<C64>,
        rho2: DMatrix<C64>,
        tail_mass: f64,
    ) -> Result<State> {
        let fix = |m: DMatrix<C64>, mode: Mode| -> Result<DMatrix<C64>> {
            let l = space.levels(mode);
            if m.nrows() != l || m.ncols() != l {
                return Err(Error::DimensionMismatch {
                    expected: l,
                    found: m.nrows(),
                });
            }
            let h = (&m + m.adjoint()).scale(0.5);
            let tr = h.trace().re;
            if !(tr > 0.0 && tr.is_finite()) {
                return Err(Error::InvalidState("marginal with non-positive trace".into()));
            }
            Ok(h.unscale(tr))
        };
        Ok(State {
            space,
            repr: Repr::Product {
                mode1: fix(rho1, Mode::One)?,
                mode2: fix(rho2, Mode::Two)?,
            },
            tail_mass,
        })
    }

    /// Mixture of (not necessarily normalized) vectors with nonnegative weights.
    pub fn mixture(
        space: FockSpace,
        components: Vec<(f64, DVector<C64>)>,
        tail_mass: f64,
    ) -> Result<State> {
        let mut out = Vec::with_capacity(components.len());
        let mut total = 0.0;
        for (w, v) in components {
            if v.len() != space.dim() {
                return Err(Error::DimensionMismatch {
                    expected: space.dim(),
                    found: v.len(),
                });
            }
            if w < 0.0 || !w.is_finite() {
                return Err(Error::InvalidState(format!("mixture weight {w}")));
            }
            let n2 = v.norm_squared();
            if w == 0.0 || n2 == 0.0 {
                continue;
            }
            total += w * n2;
            out.push((w * n2, v.unscale(n2.sqrt())));
        }
        if total <= 0.0 {
            return Err(Error::InvalidState("empty mixture".into()));
        }
        out.iter_mut().for_each(|(w, _)| *w /= total);
        Ok(State {
            space,
            repr: Repr::Mixture(out),
            tail_mass,
        })
    }

    pub fn space(&self) -> FockSpace {
        self.space
    }

    pub fn repr(&self) -> &Repr {
        &self.repr
    }

    /// Probability weight lost beyond the cutoff plus the weight on the two
    /// outermost layers of either mode.
    pub fn tail_mass(&self) -> f64 {
        self.tail_mass
    }

    pub fn with_tail_mass(mut self, tail_mass: f64) -> State {
        self.tail_mass = tail_mass;
        self
    }

    /// Weight on the two outermost layers of either mode.
    pub fn edge_mass(&self) -> f64 {
        let p = self.photon_dist();
        let mut edge = 0.0;
        for n1 in 0..p.nrows() {
            for n2 in 0..p.ncols() {
                if self.space.is_edge(n1, n2) {
                    edge += p[(n1, n2)];
                }
            }
        }
        edge
    }

    /// `ρ(row, col)` for basis indices.
    pub fn rho_entry(&self, row: usize, col: usize) -> C64 {
        match &self.repr {
            Repr::Pure(psi) => psi[row] * psi[col].conj(),
            Repr::Product { mode1, mode2 } => {
                let (r1, r2) = self.space.levels_of(row);
                let (c1, c2) = self.space.levels_of(col);
                mode1[(r1, c1)] * mode2[(r2, c2)]
            }
            Repr::Mixture(c) => c.iter().map(|(w, v)| v[row] * v[col].conj() * *w).sum(),
        }
    }

    /// Full density matrix; memory grows as `dim²`.
    pub fn density_matrix(&self) -> DMatrix<C64> {
        match &self.repr {
            Repr::Pure(psi) => psi * psi.adjoint(),
            Repr::Product { mode1, mode2 } => mode1.kronecker(mode2),
            Repr::Mixture(c) => {
                let d = self.space.dim();
                let mut rho = DMatrix::zeros(d, d);
                for (w, v) in c {
                    rho += v * v.adjoint() * C64::new(*w, 0.0);
                }
                rho
            }
        }
    }

    /// `Tr(ρ · op)`.
    pub fn expect(&self, op: &MatrixOperator) -> Result<C64> {
        if op.space() != self.space {
            return Err(Error::DimensionMismatch {
                expected: self.space.dim(),
                found: op.space().dim(),
            });
        }
        Ok(match &self.repr {
            Repr::Pure(psi) => psi.dotc(&op.apply(psi)?),
            Repr::Mixture(c) => {
                let mut acc = C64::default();
                for (w, v) in c {
                    acc += v.dotc(&op.apply(v)?) * *w;
                }
                acc
            }
            Repr::Product { .. } => {
                let mut acc = C64::default();
                op.for_each_entry(|r, c, x| acc += x * self.rho_entry(c, r));
                acc
            }
        })
    }

    /// `⟨â₁†^p1 â₂†^p2 â₁^r1 â₂^r2⟩` evaluated from the ladder action on the
    /// state itself, so truncation only enters through the state's support.
    pub fn normal_moment(&self, p1: usize, p2: usize, r1: usize, r2: usize) -> C64 {
        let (c1, c2) = self.space.cutoffs();
        if p1.max(r1) > c1 || p2.max(r2) > c2 {
            return C64::default();
        }
        match &self.repr {
            Repr::Pure(psi) => pure_moment(&self.space, psi, p1, p2, r1, r2),
            Repr::Mixture(c) => c
                .iter()
                .map(|(w, v)| pure_moment(&self.space, v, p1, p2, r1, r2) * *w)
                .sum(),
            Repr::Product { mode1, mode2 } => {
                single_mode_moment(mode1, p1, r1) * single_mode_moment(mode2, p2, r2)
            }
        }
    }

    /// `p(n1, n2) = ⟨n1,n2|ρ|n1,n2⟩` as a `(cutoff1+1) × (cutoff2+1)` table.
    pub fn photon_dist(&self) -> DMatrix<f64> {
        let (l1, l2) = (self.space.levels(Mode::One), self.space.levels(Mode::Two));
        match &self.repr {
            Repr::Pure(psi) => DMatrix::from_fn(l1, l2, |a, b| psi[a * l2 + b].norm_sqr()),
            Repr::Product { mode1, mode2 } => {
                DMatrix::from_fn(l1, l2, |a, b| mode1[(a, a)].re * mode2[(b, b)].re)
            }
            Repr::Mixture(c) => {
                let mut p = DMatrix::zeros(l1, l2);
                for (w, v) in c {
                    for i in 0..v.len() {
                        p[(i / l2, i % l2)] += w * v[i].norm_sqr();
                    }
                }
                p
            }
        }
    }

    /// `ρ → U ρ U†`.
    ///
    /// A product state stays a product under an operator stored as `U₁ ⊗ U₂`;
    /// otherwise it is expanded into the mixture of its marginal eigenvectors.
    pub fn transform(&self, u: &MatrixOperator) -> Result<State> {
        if u.space() != self.space {
            return Err(Error::DimensionMismatch {
                expected: self.space.dim(),
                found: u.space().dim(),
            });
        }
        let tail = self.tail_mass;
        match &self.repr {
            Repr::Pure(psi) => Ok(State {
                space: self.space,
                repr: Repr::Pure(u.apply(psi)?),
                tail_mass: tail,
            }),
            Repr::Mixture(c) => {
                let comps = c
                    .iter()
                    .map(|(w, v)| Ok((*w, u.apply(v)?)))
                    .collect::<Result<Vec<_>>>()?;
                Ok(State {
                    space: self.space,
                    repr: Repr::Mixture(comps),
                    tail_mass: tail,
                })
            }
            Repr::Product { mode1, mode2 } => {
                if let Some((u1, u2)) = u.local_factors() {
                    return Ok(State {
                        space: self.space,
                        repr: Repr::Product {
                            mode1: u1 * mode1 * u1.adjoint(),
                            mode2: u2 * mode2 * u2.adjoint(),
                        },
                        tail_mass: tail,
                    });
                }
                let (mixed, dropped) = self.product_as_mixture(mode1, mode2);
                let comps = mixed
                    .into_iter()
                    .map(|(w, v)| Ok((w, u.apply(&v)?)))
                    .collect::<Result<Vec<_>>>()?;
                State::mixture(self.space, comps, tail + dropped)
            }
        }
    }

    fn product_as_mixture(
        &self,
        rho1: &DMatrix<C64>,
        rho2: &DMatrix<C64>,
    ) -> (Vec<(f64, DVector<C64>)>, f64) {
        let e1 = SymmetricEigen::new(rho1.clone());
        let e2 = SymmetricEigen::new(rho2.clone());
        let mut out = Vec::new();
        let mut dropped = 0.0;
        for i in 0..e1.eigenvalues.len() {
            for k in 0..e2.eigenvalues.len() {
                let w = e1.eigenvalues[i].max(0.0) * e2.eigenvalues[k].max(0.0);
                if w < MIXTURE_WEIGHT_FLOOR {
                    dropped += w;
                    continue;
                }
                let v = kron_vec(
                    &e1.eigenvectors.column(i).into_owned(),
                    &e2.eigenvectors.column(k).into_owned(),
                );
                out.push((w, v));
            }
        }
        (out, dropped)
    }

    /// The same state in a space with cutoffs at least as large; amplitudes
    /// beyond the old cutoffs are zero.
    pub fn embed(&self, target: FockSpace) -> Result<State> {
        if !target.contains(&self.space) {
            return Err(Error::DimensionMismatch {
                expected: self.space.dim(),
                found: target.dim(),
            });
        }
        let pad_vec = |v: &DVector<C64>| {
            let g = to_grid(&self.space, v);
            let mut big =
                DMatrix::zeros(target.levels(Mode::One), target.levels(Mode::Two));
            big.view_mut((0, 0), (g.nrows(), g.ncols())).copy_from(&g);
            from_grid(&big)
        };
        let pad_mat = |m: &DMatrix<C64>, l: usize| {
            let mut big = DMatrix::zeros(l, l);
            big.view_mut((0, 0), (m.nrows(), m.ncols())).copy_from(m);
            big
        };
        let repr = match &self.repr {
            Repr::Pure(psi) => Repr::Pure(pad_vec(psi)),
            Repr::Mixture(c) => Repr::Mixture(c.iter().map(|(w, v)| (*w, pad_vec(v))).collect()),
            Repr::Product { mode1, mode2 } => Repr::Product {
                mode1: pad_mat(mode1, target.levels(Mode::One)),
                mode2: pad_mat(mode2, target.levels(Mode::Two)),
            },
        };
        Ok(State {
            space: target,
            repr,
            tail_mass: self.tail_mass,
        })
    }

    /// `Tr ρ²`.
    pub fn purity(&self) -> f64 {
        match &self.repr {
            Repr::Pure(psi) => psi.norm_squared().powi(2),
            Repr::Product { mode1, mode2 } => {
                (mode1 * mode1).trace().re * (mode2 * mode2).trace().re
            }
            Repr::Mixture(c) => {
                let mut acc = 0.0;
                for (wi, vi) in c {
                    for (wj, vj) in c {
                        acc += wi * wj * vi.dotc(vj).norm_sqr();
                    }
                }
                acc
            }
        }
    }

    pub fn trace(&self) -> f64 {
        match &self.repr {
            Repr::Pure(psi) => psi.norm_squared(),
            Repr::Product { mode1, mode2 } => mode1.trace().re * mode2.trace().re,
            Repr::Mixture(c) => c.iter().map(|(w, v)| w * v.norm_squared()).sum(),
        }
    }

    /// Hermiticity, trace and eigenvalue-floor residuals, computed on the
    /// factored form (pure and mixture forms are Hermitian PSD by
    /// construction; a product's spectrum is the product of its marginals').
    pub fn invariant_report(&self) -> InvariantReport {
        let trace_error = (self.trace() - 1.0).abs();
        match &self.repr {
            Repr::Pure(_) => InvariantReport {
                hermiticity: 0.0,
                trace_error,
                min_eigenvalue: 0.0,
            },
            Repr::Mixture(c) => InvariantReport {
                hermiticity: 0.0,
                trace_error,
                min_eigenvalue: c.iter().map(|(w, _)| *w).fold(0.0, f64::min),
            },
            Repr::Product { mode1, mode2 } => {
                let herm = crate::linalg::hermiticity_residual(mode1)
                    .max(crate::linalg::hermiticity_residual(mode2));
                let e1 = hermitian_eigenvalues(mode1);
                let e2 = hermitian_eigenvalues(mode2);
                let ext = |e: &[f64]| [e[0], e[e.len() - 1]];
                let mut min_ev = 0.0f64;
                for x in ext(&e1) {
                    for y in ext(&e2) {
                        min_ev = min_ev.min(x * y);
                    }
                }
                InvariantReport {
                    hermiticity: herm,
                    trace_error,
                    min_eigenvalue: min_ev,
                }
            }
        }
    }

    /// `½‖ρ − σ‖₁`. Closed form for pure pairs and for products differing in
    /// one factor; dense otherwise.
    pub fn trace_distance(&self, other: &State) -> Result<f64> {
        if self.space != other.space {
            return Err(Error::DimensionMismatch {
                expected: self.space.dim(),
                found: other.space.dim(),
            });
        }
        if let (Repr::Pure(a), Repr::Pure(b)) = (&self.repr, &other.repr) {
            return Ok((1.0 - a.dotc(b).norm_sqr()).max(0.0).sqrt());
        }
        if let (
            Repr::Product { mode1: a1, mode2: a2 },
            Repr::Product { mode1: b1, mode2: b2 },
        ) = (&self.repr, &other.repr)
        {
            if a2 == b2 {
                return Ok(half_trace_norm(&(a1 - b1)));
            }
            if a1 == b1 {
                return Ok(half_trace_norm(&(a2 - b2)));
            }
        }
        Ok(half_trace_norm(&(self.density_matrix() - other.density_matrix())))
    }
}

fn half_trace_norm(m: &DMatrix<C64>) -> f64 {
    0.5 * hermitian_eigenvalues(m).iter().map(|x| x.abs()).sum::<f64>()
}

/// Grid of `â₁^k1 â₂^k2 ψ`, with shape `(L1 − k1) × (L2 − k2)`.
fn lowered(space: &FockSpace, psi: &DVector<C64>, k1: usize, k2: usize) -> DMatrix<C64> {
    let l1 = space.levels(Mode::One);
    let l2 = space.levels(Mode::Two);
    DMatrix::from_fn(l1 - k1, l2 - k2, |n1, n2| {
        psi[(n1 + k1) * l2 + n2 + k2] * (falling_sqrt(n1 + k1, k1) * falling_sqrt(n2 + k2, k2))
    })
}

fn pure_moment(
    space: &FockSpace,
    psi: &DVector<C64>,
    p1: usize,
    p2: usize,
    r1: usize,
    r2: usize,
) -> C64 {
    let left = lowered(space, psi, p1, p2);
    let right = lowered(space, psi, r1, r2);
    let rows = left.nrows().min(right.nrows());
    let cols = left.ncols().min(right.ncols());
    let mut acc = C64::default();
    for i in 0..rows {
        for j in 0..cols {
            acc += left[(i, j)].conj() * right[(i, j)];
        }
    }
    acc
}

/// `Tr(ρ â†^p â^r) = Σ_m ρ(m+r, m+p) √((m+r)!/m!) √((m+p)!/m!)`.
fn single_mode_moment(rho: &DMatrix<C64>, p: usize, r: usize) -> C64 {
    let l = rho.nrows();
    let mut acc = C64::default();
    let top = l.saturating_sub(p.max(r));
    for m in 0..top {
        acc += rho[(m + r, m + p)] * (falling_sqrt(m + r, r) * falling_sqrt(m + p, p));
    }
    acc
}
