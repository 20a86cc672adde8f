#![allow(dead_code)]

use nonclass::fock::*;
use nonclass::C64;
use proptest::prelude::*;

#[derive(Debug, Clone)]
pub enum Family {
    Coherent(f64, f64, f64, f64),
    Number(usize, usize),
    Thermal(f64),
    SqueezedVacuum(f64, f64),
    SqueezedThermal(f64, f64),
    PairCoherent(f64, f64, usize),
    Kerr(f64, f64, f64),
}

impl Family {
    pub fn build(&self) -> State {
        self.build_with_extra(0)
    }

    /// Build with every cutoff raised by `extra`.
    pub fn build_with_extra(&self, extra: usize) -> State {
        let sp = |c: usize| make_space(c + extra, c + extra);
        match *self {
            Family::Coherent(a, b, c, d) => {
                coherent_state(sp(30), C64::new(a, b), C64::new(c, d)).unwrap()
            }
            Family::Number(n1, n2) => number_state(sp(8), n1, n2).unwrap(),
            Family::Thermal(beta) => thermal_state(sp(40), beta).unwrap(),
            Family::SqueezedVacuum(a, frac) => squeezed_vacuum(sp(70), a, a * frac).unwrap(),
            Family::SqueezedThermal(a, beta) => squeezed_thermal(sp(60), a, 0.0, beta).unwrap(),
            Family::PairCoherent(re, im, q) => {
                pair_coherent(sp(30), C64::new(re, im), q).unwrap()
            }
            Family::Kerr(re, alpha_t, beta_t) => {
                let c = coherent_state(sp(30), C64::new(re, 0.3), C64::new(0.5, 0.0)).unwrap();
                kerr_evolve(&c, alpha_t, beta_t, 1.0).unwrap()
            }
        }
    }
}

pub fn arb_family() -> impl Strategy<Value = Family> {
    prop_oneof![
        (-1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64)
            .prop_map(|(a, b, c, d)| Family::Coherent(a, b, c, d)),
        (0usize..6, 0usize..6).prop_map(|(a, b)| Family::Number(a, b)),
        (1.0..4.0f64).prop_map(Family::Thermal),
        (0.0..0.4f64, 0.0..1.0f64).prop_map(|(a, f)| Family::SqueezedVacuum(a, f)),
        (0.0..0.3f64, 1.5..4.0f64).prop_map(|(a, b)| Family::SqueezedThermal(a, b)),
        (-1.5..1.5f64, -1.0..1.0f64, 0usize..3).prop_map(|(r, i, q)| Family::PairCoherent(r, i, q)),
        (-1.0..1.0f64, -3.0..3.0f64, -3.0..3.0f64).prop_map(|(r, a, b)| Family::Kerr(r, a, b)),
    ]
}

/// Families whose states are pure.
pub fn arb_pure_family() -> impl Strategy<Value = Family> {
    prop_oneof![
        (-1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64)
            .prop_map(|(a, b, c, d)| Family::Coherent(a, b, c, d)),
        (0.0..0.4f64, 0.0..1.0f64).prop_map(|(a, f)| Family::SqueezedVacuum(a, f)),
        (-1.5..1.5f64, -1.0..1.0f64, 0usize..3).prop_map(|(r, i, q)| Family::PairCoherent(r, i, q)),
    ]
}
