use nalgebra::{DMatrix, DVector, Matrix4, SymmetricEigen};

use crate::C64;

/// Eigenvalues of a Hermitian matrix, ascending.
pub(crate) fn hermitian_eigenvalues(m: &DMatrix<C64>) -> Vec<f64> {
    let mut ev: Vec<f64> = SymmetricEigen::new(m.clone()).eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

pub(crate) fn symmetric_eigenvalues4(m: &Matrix4<f64>) -> [f64; 4] {
    let mut ev: [f64; 4] = SymmetricEigen::new(*m).eigenvalues.into();
    ev.sort_by(f64::total_cmp);
    ev
}

/// `max |m − m†|` entrywise.
pub(crate) fn hermiticity_residual(m: &DMatrix<C64>) -> f64 {
    let n = m.nrows();
    let mut r: f64 = 0.0;
    for i in 0..n {
        for j in i..n {
            r = r.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    r
}

pub(crate) fn hermitian_part(m: &DMatrix<C64>) -> DMatrix<C64> {
    (m + m.adjoint()).scale(0.5)
}

pub(crate) fn kron_vec(a: &DVector<C64>, b: &DVector<C64>) -> DVector<C64> {
    DVector::from_fn(a.len() * b.len(), |i, _| a[i / b.len()] * b[i % b.len()])
}

pub(crate) fn real_to_complex(m: &DMatrix<f64>) -> DMatrix<C64> {
    m.map(|x| C64::new(x, 0.0))
}

/// `sqrt(n! / (n-k)!)`, the coefficient of `â^k |n⟩`.
#[inline]
pub(crate) fn falling_sqrt(n: usize, k: usize) -> f64 {
    debug_assert!(k <= n);
    let mut acc = 1.0;
    for i in 0..k {
        acc *= (n - i) as f64;
    }
    acc.sqrt()
}

