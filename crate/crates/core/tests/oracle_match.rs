use nonclass::classify::{a_matrix, least_eigenvalue};
use nonclass::fock::*;
use nonclass::moments::stokes_vector;
use nonclass::oracles::*;

fn rel(x: f64, y: f64) -> f64 {
    (x - y).abs() / y.abs().max(1e-300)
}

#[test]
fn squeezed_vacuum_matches_a11_to_a33() {
    for a in [0.1, 0.25, 0.5, 0.75, 1.0] {
        let st = squeezed_vacuum(make_space(140, 140), a, 0.0).unwrap();
        let am = a_matrix(&st).unwrap();
        let d = am.diagonal();
        let o = a_matrix_squeezed_vacuum(a).diagonal();
        assert!(am.max_off_diagonal() < 1e-8);
        for k in 1..4 {
            assert!(rel(d[k], o[k]) < 1e-6, "a={a} k={k}: {} vs {}", d[k], o[k]);
        }
        assert!(rel(least_eigenvalue(&am), -2.0 * a.sinh().powi(2)) < 1e-6);
    }
}

/// `N₁² + N₂² + N₃² = N₀(N₀ + 2)` forces `Σ_j A_jj − A₀₀ = n₀² − |n⃗|²`;
/// the computed `A₀₀` obeys it, the transcribed closed form does not.
#[test]
fn a00_obeys_casimir_identity() {
    for a in [0.25, 0.5, 1.0] {
        let st = squeezed_vacuum(make_space(140, 140), a, 0.0).unwrap();
        let d = a_matrix(&st).unwrap().diagonal();
        let n = stokes_vector(&st).unwrap().n;
        let want = n[0] * n[0] - (n[1] * n[1] + n[2] * n[2] + n[3] * n[3]);
        assert!((d[1] + d[2] + d[3] - d[0] - want).abs() < 1e-8);
        let o = a_matrix_squeezed_vacuum(a).diagonal();
        assert!((o[1] + o[2] + o[3] - o[0] - want).abs() > 1e-3);
        assert!(rel(d[0], d[3]) < 1e-9);
    }
}

#[test]
fn squeezed_thermal_matches_normalized_form() {
    for beta in [2.0, 4.0] {
        for a in [0.0, 0.3, 0.6] {
            let st = squeezed_thermal(make_space(100, 100), a, 0.0, beta).unwrap();
            let d = a_matrix(&st).unwrap().diagonal();
            let o = a_matrix_squeezed_thermal_normalized(a, beta).diagonal();
            for k in 1..4 {
                assert!((d[k] - o[k]).abs() <= 1e-5 * o[k].abs().max(1e-12), "β={beta} a={a} k={k}");
            }
            // the transcribed form is off by (e^β − 1)⁴
            let transcribed = a_matrix_squeezed_thermal(a, beta).diagonal();
            if a > 0.0 {
                assert!(rel(transcribed[1], d[1]) > 1.0);
            }
        }
    }
}
