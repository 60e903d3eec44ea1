//! Rates, sweeps over the array size, breakeven element counts and
//! required-transmit-power curves.

use std::fmt;
use std::str::FromStr;

use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::links::{
    irs_snr_closed_form, irs_snr_exact, mmimo_snr_closed_form, LinkError, RadioBudget,
};
use crate::propagation::{
    far_field_gain, free_space_gain, planar_exact_gain, rule_of_thumb_max, ElementGeometry,
    PropagationError, PropagationPath,
};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Upper end of the breakeven bracketing search.
pub const BREAKEVEN_SEARCH_CAP: u64 = 1_000_000_000_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalysisError {
    #[error("SNR must be non-negative, got {0}")]
    NegativeSnr(f64),
    #[error("invalid N grid: {0}")]
    BadGrid(String),
    #[error("{0} must be finite and > 0")]
    NonPositive(&'static str),
    #[error("target rate {target_rate} bpcu unreachable with N <= {cap}; best rate {best_rate} bpcu")]
    Unreachable {
        target_rate: f64,
        best_rate: f64,
        cap: u64,
    },
    #[error(transparent)]
    Link(#[from] LinkError),
    #[error(transparent)]
    Propagation(#[from] PropagationError),
}

/// Information rate `log2(1 + snr)` in bits per channel use.
pub fn rate(snr: f64) -> Result<f64, AnalysisError> {
    if snr >= 0.0 {
        Ok(snr.ln_1p() / std::f64::consts::LN_2)
    } else {
        Err(AnalysisError::NegativeSnr(snr))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LinkModel {
    Mmimo,
    IrsFarField,
    IrsExact,
}

impl LinkModel {
    pub const ALL: [LinkModel; 3] = [LinkModel::Mmimo, LinkModel::IrsFarField, LinkModel::IrsExact];

    pub fn name(self) -> &'static str {
        match self {
            LinkModel::Mmimo => "mmimo",
            LinkModel::IrsFarField => "irs-far-field",
            LinkModel::IrsExact => "irs-exact",
        }
    }
}

impl fmt::Display for LinkModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LinkModel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().replace('_', "-").as_str() {
            "mmimo" => Ok(LinkModel::Mmimo),
            "irs-far-field" => Ok(LinkModel::IrsFarField),
            "irs-exact" => Ok(LinkModel::IrsExact),
            other => Err(format!("unknown model `{other}`")),
        }
    }
}

/// Log-spaced integer grid `n_min ..= n_max`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LogGrid {
    pub n_min: u64,
    pub n_max: u64,
    pub points_per_decade: u32,
}

impl Default for LogGrid {
    fn default() -> Self {
        Self {
            n_min: 1,
            n_max: 1_000_000,
            points_per_decade: 40,
        }
    }
}

impl LogGrid {
    pub fn new(n_min: u64, n_max: u64, points_per_decade: u32) -> Result<Self, AnalysisError> {
        if n_min == 0 {
            return Err(AnalysisError::BadGrid("n_min must be >= 1".into()));
        }
        if n_max < n_min {
            return Err(AnalysisError::BadGrid(format!(
                "n_max ({n_max}) < n_min ({n_min})"
            )));
        }
        if points_per_decade == 0 {
            return Err(AnalysisError::BadGrid("points_per_decade must be >= 1".into()));
        }
        Ok(Self {
            n_min,
            n_max,
            points_per_decade,
        })
    }

    /// Strictly increasing points; always contains both end points.
    pub fn points(&self) -> Vec<u64> {
        let decades = (self.n_max as f64 / self.n_min as f64).log10();
        let steps = (decades * self.points_per_decade as f64).ceil() as u64;
        let mut out = Vec::with_capacity(steps as usize + 1);
        for k in 0..=steps {
            let x = self.n_min as f64 * 10f64.powf(k as f64 / self.points_per_decade as f64);
            let n = (x.round() as u64).clamp(self.n_min, self.n_max);
            if out.last() != Some(&n) {
                out.push(n);
            }
        }
        if out.last() != Some(&self.n_max) {
            out.push(self.n_max);
        }
        out
    }
}

/// Full experiment parameterisation.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub geometry: ElementGeometry,
    /// Transmitter to array (mMIMO receiver or IRS).
    pub d_h: PropagationPath,
    /// IRS to receiver.
    pub d_g: PropagationPath,
    pub budget: RadioBudget,
    pub mu: f64,
    pub beta_h_override: Option<f64>,
    pub beta_g_override: Option<f64>,
    pub grid: LogGrid,
    pub seed: u64,
}

impl Scenario {
    /// `beta_h`, either pinned or from the free-space model at `d_h`.
    pub fn beta_h(&self) -> Result<f64, AnalysisError> {
        match self.beta_h_override {
            Some(b) => Ok(b),
            None => Ok(free_space_gain(&self.geometry, &self.d_h)?),
        }
    }

    pub fn beta_g(&self) -> Result<f64, AnalysisError> {
        match self.beta_g_override {
            Some(b) => Ok(b),
            None => Ok(free_space_gain(&self.geometry, &self.d_g)?),
        }
    }

    pub fn n_grid(&self) -> Vec<u64> {
        self.grid.points()
    }

    /// Which convention produced each channel gain.
    pub fn beta_convention(&self) -> (&'static str, &'static str) {
        let tag = |o: Option<f64>| if o.is_some() { "override" } else { "free-space" };
        (tag(self.beta_h_override), tag(self.beta_g_override))
    }

    /// SHA-256 of the canonical scenario document.
    pub fn digest(&self) -> String {
        let text = crate::config::scenario_document(self);
        hex::encode(Sha256::digest(text.as_bytes()))
    }

    /// `G` such that `SNR = G * P_tx / sigma^2` under `model` with `n` elements.
    pub fn effective_gain(&self, model: LinkModel, n: u64) -> Result<f64, AnalysisError> {
        let unit = RadioBudget::new(1.0, 1.0)?;
        self.snr_with(model, n, &unit)
    }

    pub fn snr(&self, model: LinkModel, n: u64) -> Result<f64, AnalysisError> {
        self.snr_with(model, n, &self.budget)
    }

    fn snr_with(&self, model: LinkModel, n: u64, budget: &RadioBudget) -> Result<f64, AnalysisError> {
        if n == 0 {
            return Err(PropagationError::EmptyArray.into());
        }
        let beta_h = self.beta_h()?;
        Ok(match model {
            LinkModel::Mmimo => mmimo_snr_closed_form(n, beta_h, budget),
            LinkModel::IrsFarField => irs_snr_closed_form(n, self.beta_g()?, beta_h, self.mu, budget),
            LinkModel::IrsExact => irs_snr_exact(n, &self.geometry, &self.d_g, beta_h, self.mu, budget)?,
        })
    }

    pub fn rate(&self, model: LinkModel, n: u64) -> Result<f64, AnalysisError> {
        rate(self.snr(model, n)?)
    }
}

/// One `(n, model)` point of a rate sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkResult {
    pub n: u64,
    pub model: LinkModel,
    pub snr: f64,
    pub rate: f64,
    /// Every far-field hop the model relies on is within the rule-of-thumb limit.
    pub far_field_valid: bool,
    /// mMIMO and exact IRS: `N beta_h > 1`. Far-field IRS: `N beta_g > 1`,
    /// past which its curve is no longer physical.
    pub energy_bound_exceeded: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    pub scenario_digest: String,
    pub seed: u64,
    pub tool_version: String,
    pub rows: Vec<LinkResult>,
}

fn link_result(s: &Scenario, model: LinkModel, n: u64) -> Result<LinkResult, AnalysisError> {
    let snr = s.snr(model, n)?;
    let h_valid = n <= rule_of_thumb_max(&s.geometry, &s.d_h);
    let g_valid = n <= rule_of_thumb_max(&s.geometry, &s.d_g);
    let nf = n as f64;
    let (far_field_valid, energy_bound_exceeded) = match model {
        LinkModel::Mmimo | LinkModel::IrsExact => (h_valid, nf * s.beta_h()? > 1.0),
        LinkModel::IrsFarField => (h_valid && g_valid, nf * s.beta_g()? > 1.0),
    };
    Ok(LinkResult {
        n,
        model,
        snr,
        rate: rate(snr)?,
        far_field_valid,
        energy_bound_exceeded,
    })
}

/// Evaluates every model at every grid point. Rows are ordered by
/// `(model, n)` and each pair appears once, whatever the order of `models`.
pub fn run_sweep(scenario: &Scenario, models: &[LinkModel]) -> Result<SweepTable, AnalysisError> {
    let mut models = models.to_vec();
    models.sort();
    models.dedup();
    let grid = scenario.n_grid();
    let mut rows = Vec::with_capacity(models.len() * grid.len());
    for &model in &models {
        for &n in &grid {
            rows.push(link_result(scenario, model, n)?);
        }
    }
    Ok(SweepTable {
        scenario_digest: scenario.digest(),
        seed: scenario.seed,
        tool_version: TOOL_VERSION.to_string(),
        rows,
    })
}

/// Total gain of an `n`-element planar array at the transmitter-side distance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GainRow {
    pub n: u64,
    pub rho_exact: f64,
    pub rho_far_field: f64,
    pub relative_error: f64,
    pub far_field_valid: bool,
}

/// Exact and far-field total gain versus `n`, evaluated at `d_h`.
pub fn gain_sweep(scenario: &Scenario) -> Result<Vec<GainRow>, AnalysisError> {
    scenario
        .n_grid()
        .into_iter()
        .map(|n| {
            let exact = planar_exact_gain(n, &scenario.geometry, &scenario.d_h)?;
            let far = far_field_gain(n, &scenario.geometry, &scenario.d_h)?;
            Ok(GainRow {
                n,
                rho_exact: exact.value,
                rho_far_field: far.value,
                relative_error: (far.value - exact.value).abs() / exact.value,
                far_field_valid: far.far_field_valid,
            })
        })
        .collect()
}

/// Smallest `N` for which `model` reaches the rate of an `n_ref`-antenna
/// mMIMO array. Doubling brackets the answer, then integer bisection pins it.
pub fn breakeven_elements(
    scenario: &Scenario,
    model: LinkModel,
    n_ref: u64,
) -> Result<u64, AnalysisError> {
    let target = scenario.snr(LinkModel::Mmimo, n_ref)?;
    // Rates are monotone in SNR, so compare SNRs directly.
    let reaches = |n: u64| -> Result<bool, AnalysisError> { Ok(scenario.snr(model, n)? >= target) };

    if reaches(1)? {
        return Ok(1);
    }
    let mut lo = 1u64;
    let mut hi = 2u64;
    loop {
        if hi >= BREAKEVEN_SEARCH_CAP {
            hi = BREAKEVEN_SEARCH_CAP;
            if !reaches(hi)? {
                return Err(AnalysisError::Unreachable {
                    target_rate: rate(target)?,
                    best_rate: scenario.rate(model, hi)?,
                    cap: hi,
                });
            }
            break;
        }
        if reaches(hi)? {
            break;
        }
        lo = hi;
        hi *= 2;
    }
    // invariant: !reaches(lo) && reaches(hi)
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if reaches(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// Transmit power needed for `target_snr` with `n` elements under `model`.
pub fn required_power(
    scenario: &Scenario,
    model: LinkModel,
    n: u64,
    target_snr: f64,
) -> Result<f64, AnalysisError> {
    if !(target_snr.is_finite() && target_snr > 0.0) {
        return Err(AnalysisError::NonPositive("target SNR"));
    }
    let g = scenario.effective_gain(model, n)?;
    Ok(target_snr * scenario.budget.noise() / g)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerRow {
    pub n: u64,
    pub model: LinkModel,
    pub required_power_w: f64,
}

pub fn power_scaling(
    scenario: &Scenario,
    models: &[LinkModel],
    target_snr: f64,
) -> Result<Vec<PowerRow>, AnalysisError> {
    let mut models = models.to_vec();
    models.sort();
    models.dedup();
    let grid = scenario.n_grid();
    let mut rows = Vec::new();
    for &model in &models {
        for &n in &grid {
            rows.push(PowerRow {
                n,
                model,
                required_power_w: required_power(scenario, model, n, target_snr)?,
            });
        }
    }
    Ok(rows)
}
