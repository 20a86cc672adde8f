//! Turning a spec into a state, with automatic cutoff selection.

use nonclass::fock::{self, make_space, FockSpace, State};
use nonclass::{Error, C64};

use crate::error::CliResult;
use crate::spec::{Cutoffs, Family, StateSpec};

pub const AUTO_START: usize = 20;
pub const DEFAULT_MAX_CUTOFF: usize = 120;
/// Tail mass an automatically chosen cutoff must beat.
pub const AUTO_TAIL: f64 = 1e-10;
pub const MAX_CUTOFF_ENV: &str = "NONCLASS_MAX_CUTOFF";

/// The cutoff cap, from `NONCLASS_MAX_CUTOFF` when set and valid.
pub fn max_cutoff_from_env() -> usize {
    std::env::var(MAX_CUTOFF_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_CUTOFF)
}

pub fn build_in(spec: &StateSpec, space: FockSpace) -> nonclass::Result<State> {
    let p = |k: &str| spec.param(k);
    let z = |re: &str, im: &str| C64::new(p(re), p(im));
    match spec.family {
        Family::Coherent => fock::coherent_state(space, z("z1_re", "z1_im"), z("z2_re", "z2_im")),
        Family::Number => fock::number_state(space, p("n1") as usize, p("n2") as usize),
        Family::Thermal => fock::thermal_state(space, p("beta")),
        Family::SqueezedVacuum => fock::squeezed_vacuum(space, p("a"), p("b")),
        Family::SqueezedThermal => fock::squeezed_thermal(space, p("a"), p("b"), p("beta")),
        Family::PairCoherent => fock::pair_coherent(space, z("zeta_re", "zeta_im"), p("q") as usize),
        Family::KerrCoherent => {
            let c = fock::coherent_state(space, z("z1_re", "z1_im"), z("z2_re", "z2_im"))?;
            let t = spec.params.get("t").copied().unwrap_or(1.0);
            fock::kerr_evolve(&c, p("kerr_alpha"), p("kerr_beta"), t)
        }
    }
}

/// Build at the spec's cutoffs, or search: start at 20 per mode and double
/// (clamped to `cap`) until the tail mass is below `1e-10`.
pub fn build_state(spec: &StateSpec, cap: usize) -> CliResult<State> {
    if let Cutoffs::Fixed([c1, c2]) = spec.cutoffs {
        return Ok(build_in(spec, make_space(c1, c2))?);
    }
    let mut c = AUTO_START.min(cap);
    loop {
        let last_tail = match build_in(spec, make_space(c, c)) {
            Ok(st) if st.tail_mass() < AUTO_TAIL => return Ok(st),
            Ok(st) => st.tail_mass(),
            Err(Error::CutoffTooSmall { tail_mass, .. }) => tail_mass,
            Err(Error::OutOfRange { .. }) => 1.0,
            Err(e) => return Err(e.into()),
        };
        if c >= cap {
            return Err(Error::CutoffTooSmall {
                tail_mass: last_tail,
                limit: AUTO_TAIL,
            }
            .into());
        }
        c = (2 * c).min(cap);
    }
}
