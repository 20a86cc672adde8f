//! JSON state and sweep specifications.
//!
//! ```json
//! {"family": "squeezed_thermal", "params": {"a": 0.5, "beta": 1.0}, "cutoffs": "auto"}
//! {"family": "squeezed_vacuum", "param": "a", "min": 0.0, "max": 1.0, "steps": 51}
//! ```

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Coherent,
    Number,
    Thermal,
    SqueezedVacuum,
    SqueezedThermal,
    PairCoherent,
    KerrCoherent,
}

impl Family {
    /// `(name, required)` for every accepted parameter.
    pub fn params(&self) -> &'static [(&'static str, bool)] {
        match self {
            Family::Coherent => &[("z1_re", false), ("z1_im", false), ("z2_re", false), ("z2_im", false)],
            Family::Number => &[("n1", true), ("n2", true)],
            Family::Thermal => &[("beta", true)],
            Family::SqueezedVacuum => &[("a", true), ("b", false)],
            Family::SqueezedThermal => &[("a", true), ("b", false), ("beta", true)],
            Family::PairCoherent => &[("zeta_re", true), ("zeta_im", false), ("q", false)],
            Family::KerrCoherent => &[
                ("z1_re", false),
                ("z1_im", false),
                ("z2_re", false),
                ("z2_im", false),
                ("kerr_alpha", false),
                ("kerr_beta", false),
                ("t", false),
            ],
        }
    }

    fn integer_params(&self) -> &'static [&'static str] {
        match self {
            Family::Number => &["n1", "n2"],
            Family::PairCoherent => &["q"],
            _ => &[],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AutoTag {
    Auto,
}

/// `"auto"` or `[cutoff1, cutoff2]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Cutoffs {
    Auto(AutoTag),
    Fixed([usize; 2]),
}

impl Default for Cutoffs {
    fn default() -> Self {
        Cutoffs::Auto(AutoTag::Auto)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateSpec {
    pub family: Family,
    #[serde(default)]
    pub params: BTreeMap<String, f64>,
    #[serde(default)]
    pub cutoffs: Cutoffs,
}

impl StateSpec {
    pub fn param(&self, name: &str) -> f64 {
        self.params.get(name).copied().unwrap_or(0.0)
    }

    pub fn validate(&self) -> CliResult<()> {
        validate_params(self.family, &self.params, None)
    }
}

fn validate_params(
    family: Family,
    params: &BTreeMap<String, f64>,
    swept: Option<&str>,
) -> CliResult<()> {
    let allowed = family.params();
    for (k, v) in params {
        if !allowed.iter().any(|(n, _)| n == k) {
            return Err(CliError::Parse(format!("unknown parameter `{k}` for {family:?}")));
        }
        if !v.is_finite() {
            return Err(CliError::Parse(format!("parameter `{k}` is not finite")));
        }
        if family.integer_params().contains(&k.as_str()) && (v.fract() != 0.0 || *v < 0.0) {
            return Err(CliError::Parse(format!(
                "parameter `{k}` must be a nonnegative integer, got {v}"
            )));
        }
    }
    for (name, required) in allowed {
        if *required && !params.contains_key(*name) && swept != Some(*name) {
            return Err(CliError::Parse(format!("missing parameter `{name}` for {family:?}")));
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub family: Family,
    /// Name of the swept parameter.
    pub param: String,
    pub min: f64,
    pub max: f64,
    pub steps: usize,
    #[serde(default)]
    pub params: BTreeMap<String, f64>,
    #[serde(default)]
    pub cutoffs: Cutoffs,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl SweepSpec {
    pub fn validate(&self) -> CliResult<()> {
        if self.steps < 2 {
            return Err(CliError::Parse(format!("steps must be >= 2, got {}", self.steps)));
        }
        if !(self.min < self.max) || !self.min.is_finite() || !self.max.is_finite() {
            return Err(CliError::Parse(format!(
                "need finite min < max, got [{}, {}]",
                self.min, self.max
            )));
        }
        if !self.family.params().iter().any(|(n, _)| *n == self.param) {
            return Err(CliError::Parse(format!(
                "cannot sweep `{}` for {:?}",
                self.param, self.family
            )));
        }
        if self.family.integer_params().contains(&self.param.as_str()) {
            return Err(CliError::Parse(format!("cannot sweep integer parameter `{}`", self.param)));
        }
        if self.params.contains_key(&self.param) {
            return Err(CliError::Parse(format!("`{}` is both swept and fixed", self.param)));
        }
        validate_params(self.family, &self.params, Some(&self.param))
    }

    /// Parameter value at row `i`; endpoints are exact.
    pub fn value(&self, i: usize) -> f64 {
        if i + 1 == self.steps {
            return self.max;
        }
        self.min + (self.max - self.min) * i as f64 / (self.steps - 1) as f64
    }

    /// The state spec of row `i`.
    pub fn row_spec(&self, i: usize) -> StateSpec {
        let mut params = self.params.clone();
        params.insert(self.param.clone(), self.value(i));
        StateSpec {
            family: self.family,
            params,
            cutoffs: self.cutoffs,
        }
    }
}

pub fn parse_state_spec(text: &str) -> CliResult<StateSpec> {
    let spec: StateSpec =
        serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
    spec.validate()?;
    Ok(spec)
}

pub fn parse_sweep_spec(text: &str) -> CliResult<SweepSpec> {
    let spec: SweepSpec =
        serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
    spec.validate()?;
    Ok(spec)
}

pub fn to_json<T: Serialize>(spec: &T) -> String {
    serde_json::to_string_pretty(spec).expect("specs serialize")
}
