use nalgebra::{DMatrix, DVector};
use nalgebra_sparse::{CooMatrix, CsrMatrix};

use super::space::{FockSpace, Mode};
use crate::{Error, Result, C64};

/// A linear operator on a truncated two-mode space.
///
/// Ladder-type operators are stored sparse; operators that factor into a
/// mode-1 part times a mode-2 part (squeezers, Kerr phases) keep the two
/// single-mode factors so they can act on large spaces without forming the
/// Kronecker product.
#[derive(Debug, Clone)]
pub struct MatrixOperator {
    space: FockSpace,
    repr: OpRepr,
}

#[derive(Debug, Clone)]
enum OpRepr {
    Sparse(CsrMatrix<C64>),
    Local { mode1: DMatrix<C64>, mode2: DMatrix<C64> },
}

impl MatrixOperator {
    pub fn from_sparse(space: FockSpace, matrix: CsrMatrix<C64>) -> Result<Self> {
        check_square(space.dim(), matrix.nrows(), matrix.ncols())?;
        Ok(MatrixOperator {
            space,
            repr: OpRepr::Sparse(matrix),
        })
    }

    /// Build from `(row, col, value)` triplets; duplicates are summed.
    pub fn from_triplets(
        space: FockSpace,
        triplets: impl IntoIterator<Item = (usize, usize, C64)>,
    ) -> Self {
        let d = space.dim();
        let mut coo = CooMatrix::new(d, d);
        for (r, c, v) in triplets {
            if v != C64::new(0.0, 0.0) {
                coo.push(r, c, v);
            }
        }
        MatrixOperator {
            space,
            repr: OpRepr::Sparse(CsrMatrix::from(&coo)),
        }
    }

    /// `mode1 ⊗ mode2`.
    pub fn local(space: FockSpace, mode1: DMatrix<C64>, mode2: DMatrix<C64>) -> Result<Self> {
        check_square(space.levels(Mode::One), mode1.nrows(), mode1.ncols())?;
        check_square(space.levels(Mode::Two), mode2.nrows(), mode2.ncols())?;
        Ok(MatrixOperator {
            space,
            repr: OpRepr::Local { mode1, mode2 },
        })
    }

    pub fn from_dense(space: FockSpace, m: &DMatrix<C64>) -> Result<Self> {
        check_square(space.dim(), m.nrows(), m.ncols())?;
        let trip = (0..m.nrows())
            .flat_map(|r| (0..m.ncols()).map(move |c| (r, c)))
            .map(|(r, c)| (r, c, m[(r, c)]));
        Ok(Self::from_triplets(space, trip))
    }

    pub fn identity(space: FockSpace) -> Self {
        MatrixOperator {
            space,
            repr: OpRepr::Sparse(CsrMatrix::identity(space.dim())),
        }
    }

    pub fn space(&self) -> FockSpace {
        self.space
    }

    /// The single-mode factors, if this operator is stored as `A ⊗ B`.
    pub fn local_factors(&self) -> Option<(&DMatrix<C64>, &DMatrix<C64>)> {
        match &self.repr {
            OpRepr::Local { mode1, mode2 } => Some((mode1, mode2)),
            OpRepr::Sparse(_) => None,
        }
    }

    pub fn apply(&self, v: &DVector<C64>) -> Result<DVector<C64>> {
        if v.len() != self.space.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.space.dim(),
                found: v.len(),
            });
        }
        Ok(match &self.repr {
            OpRepr::Sparse(m) => csr_matvec(m, v),
            OpRepr::Local { mode1, mode2 } => {
                let grid = to_grid(&self.space, v);
                from_grid(&(mode1 * grid * mode2.transpose()))
            }
        })
    }

    pub fn adjoint(&self) -> MatrixOperator {
        let repr = match &self.repr {
            OpRepr::Sparse(m) => {
                let mut t = m.transpose();
                t.values_mut().iter_mut().for_each(|z| *z = z.conj());
                OpRepr::Sparse(t)
            }
            OpRepr::Local { mode1, mode2 } => OpRepr::Local {
                mode1: mode1.adjoint(),
                mode2: mode2.adjoint(),
            },
        };
        MatrixOperator {
            space: self.space,
            repr,
        }
    }

    /// Operator product `self · rhs`.
    pub fn compose(&self, rhs: &MatrixOperator) -> Result<MatrixOperator> {
        if self.space != rhs.space {
            return Err(Error::DimensionMismatch {
                expected: self.space.dim(),
                found: rhs.space.dim(),
            });
        }
        let repr = match (&self.repr, &rhs.repr) {
            (
                OpRepr::Local { mode1: a1, mode2: a2 },
                OpRepr::Local { mode1: b1, mode2: b2 },
            ) => OpRepr::Local {
                mode1: a1 * b1,
                mode2: a2 * b2,
            },
            _ => OpRepr::Sparse(&self.to_csr() * &rhs.to_csr()),
        };
        Ok(MatrixOperator {
            space: self.space,
            repr,
        })
    }

    pub fn scale(&self, s: C64) -> MatrixOperator {
        let repr = match &self.repr {
            OpRepr::Sparse(m) => OpRepr::Sparse(m * s),
            OpRepr::Local { mode1, mode2 } => OpRepr::Local {
                mode1: mode1 * s,
                mode2: mode2.clone(),
            },
        };
        MatrixOperator {
            space: self.space,
            repr,
        }
    }

    pub fn add(&self, rhs: &MatrixOperator) -> Result<MatrixOperator> {
        if self.space != rhs.space {
            return Err(Error::DimensionMismatch {
                expected: self.space.dim(),
                found: rhs.space.dim(),
            });
        }
        Ok(MatrixOperator {
            space: self.space,
            repr: OpRepr::Sparse(&self.to_csr() + &rhs.to_csr()),
        })
    }

    pub fn entry(&self, row: usize, col: usize) -> C64 {
        match &self.repr {
            OpRepr::Sparse(m) => m
                .get_entry(row, col)
                .map(|e| e.into_value())
                .unwrap_or_default(),
            OpRepr::Local { mode1, mode2 } => {
                let (r1, r2) = self.space.levels_of(row);
                let (c1, c2) = self.space.levels_of(col);
                mode1[(r1, c1)] * mode2[(r2, c2)]
            }
        }
    }

    pub fn to_csr(&self) -> CsrMatrix<C64> {
        match &self.repr {
            OpRepr::Sparse(m) => m.clone(),
            OpRepr::Local { mode1, mode2 } => {
                let d = self.space.dim();
                let mut coo = CooMatrix::new(d, d);
                for r in 0..d {
                    let (r1, r2) = self.space.levels_of(r);
                    for c1 in 0..mode1.ncols() {
                        let x = mode1[(r1, c1)];
                        if x == C64::default() {
                            continue;
                        }
                        for c2 in 0..mode2.ncols() {
                            let y = mode2[(r2, c2)];
                            if y != C64::default() {
                                coo.push(r, c1 * mode2.ncols() + c2, x * y);
                            }
                        }
                    }
                }
                CsrMatrix::from(&coo)
            }
        }
    }

    /// Dense matrix; only sensible on small spaces.
    pub fn to_dense(&self) -> DMatrix<C64> {
        let d = self.space.dim();
        let mut out = DMatrix::zeros(d, d);
        match &self.repr {
            OpRepr::Sparse(m) => {
                for (r, c, v) in m.triplet_iter() {
                    out[(r, c)] = *v;
                }
            }
            OpRepr::Local { .. } => {
                for r in 0..d {
                    for c in 0..d {
                        out[(r, c)] = self.entry(r, c);
                    }
                }
            }
        }
        out
    }

    /// Iterate stored nonzero entries `(row, col, value)`.
    pub(crate) fn for_each_entry(&self, mut f: impl FnMut(usize, usize, C64)) {
        match &self.repr {
            OpRepr::Sparse(m) => {
                for (r, c, v) in m.triplet_iter() {
                    f(r, c, *v)
                }
            }
            OpRepr::Local { .. } => {
                for (r, c, v) in self.to_csr().triplet_iter() {
                    f(r, c, *v)
                }
            }
        }
    }
}

fn check_square(expected: usize, rows: usize, cols: usize) -> Result<()> {
    if rows != expected || cols != expected {
        return Err(Error::DimensionMismatch {
            expected,
            found: if rows != expected { rows } else { cols },
        });
    }
    Ok(())
}

pub(crate) fn csr_matvec(m: &CsrMatrix<C64>, v: &DVector<C64>) -> DVector<C64> {
    let mut out = DVector::zeros(m.nrows());
    for (i, row) in m.row_iter().enumerate() {
        let mut acc = C64::default();
        for (c, x) in row.col_indices().iter().zip(row.values()) {
            acc += x * v[*c];
        }
        out[i] = acc;
    }
    out
}

/// View a two-mode vector as a `(cutoff1+1) × (cutoff2+1)` amplitude grid.
pub(crate) fn to_grid(space: &FockSpace, v: &DVector<C64>) -> DMatrix<C64> {
    let l2 = space.levels(Mode::Two);
    DMatrix::from_fn(space.levels(Mode::One), l2, |n1, n2| v[n1 * l2 + n2])
}

pub(crate) fn from_grid(g: &DMatrix<C64>) -> DVector<C64> {
    let l2 = g.ncols();
    DVector::from_fn(g.nrows() * l2, |i, _| g[(i / l2, i % l2)])
}

/// Single-mode annihilator on `levels` levels.
pub(crate) fn single_mode_annihilator(levels: usize) -> DMatrix<f64> {
    DMatrix::from_fn(levels, levels, |r, c| {
        if c == r + 1 {
            (c as f64).sqrt()
        } else {
            0.0
        }
    })
}

/// `â_mode` on the truncated two-mode space: `â|n⟩ = √n |n−1⟩` on the chosen
/// mode, identity on the other.
pub fn annihilator(space: FockSpace, mode: Mode) -> MatrixOperator {
    let trip = (0..space.dim()).filter_map(|col| {
        let (n1, n2) = space.levels_of(col);
        let (n, target) = match mode {
            Mode::One if n1 > 0 => (n1, space.index(n1 - 1, n2).ok()?),
            Mode::Two if n2 > 0 => (n2, space.index(n1, n2 - 1).ok()?),
            _ => return None,
        };
        Some((target, col, C64::new((n as f64).sqrt(), 0.0)))
    });
    MatrixOperator::from_triplets(space, trip)
}

pub fn creator(space: FockSpace, mode: Mode) -> MatrixOperator {
    annihilator(space, mode).adjoint()
}

/// `Σ_rs k_rs â_r† â_s` assembled directly from its matrix elements, so the
/// truncation only removes transitions that leave the space.
pub fn bilinear(space: FockSpace, k: &nalgebra::Matrix2<C64>) -> MatrixOperator {
    let mut trip = Vec::with_capacity(3 * space.dim());
    for col in 0..space.dim() {
        let (n1, n2) = space.levels_of(col);
        let diag = k[(0, 0)] * n1 as f64 + k[(1, 1)] * n2 as f64;
        trip.push((col, col, diag));
        // â1† â2 |n1,n2⟩ = √((n1+1) n2) |n1+1, n2−1⟩
        if n2 > 0 {
            if let Ok(row) = space.index(n1 + 1, n2 - 1) {
                trip.push((row, col, k[(0, 1)] * (((n1 + 1) * n2) as f64).sqrt()));
            }
        }
        if n1 > 0 {
            if let Ok(row) = space.index(n1 - 1, n2 + 1) {
                trip.push((row, col, k[(1, 0)] * ((n1 * (n2 + 1)) as f64).sqrt()));
            }
        }
    }
    MatrixOperator::from_triplets(space, trip)
}
