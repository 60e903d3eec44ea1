//! Line-of-sight channel vectors, receive combining and IRS phase control.
//!
//! Both setups share the same single-antenna transmitter. In the mMIMO setup
//! an `N`-antenna array receives through `h`; in the IRS setup `N` passive
//! elements reflect the signal arriving over `h` towards a single-antenna
//! receiver over `g`. The data symbol and noise realisation are never drawn:
//! everything is reduced to SNR.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::Rng;
use thiserror::Error;

use crate::propagation::{planar_exact_gain, ElementGeometry, PropagationError, PropagationPath};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LinkError {
    #[error("channel gain {0} outside [0, 1]")]
    GainOutOfRange(f64),
    #[error("channel must have at least one element")]
    Empty,
    #[error("non-finite phase at index {0}")]
    BadPhase(usize),
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("combiner is all-zero")]
    ZeroCombiner,
    #[error("reflection coefficient {0} outside (0, 1]")]
    BadReflection(f64),
    #[error("invalid radio budget: p_tx = {p_tx}, noise = {noise}")]
    BadBudget { p_tx: f64, noise: f64 },
    #[error(transparent)]
    Propagation(#[from] PropagationError),
}

/// LoS channel `sqrt(gain) * [e^{j phase_1}, ..., e^{j phase_N}]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelVector {
    gain: f64,
    phases: Vec<f64>,
}

/// Builds a LoS channel; phases are wrapped into `[0, 2 pi)`.
pub fn build_los_channel(gain: f64, phases: &[f64]) -> Result<ChannelVector, LinkError> {
    if !(0.0..=1.0).contains(&gain) {
        return Err(LinkError::GainOutOfRange(gain));
    }
    if phases.is_empty() {
        return Err(LinkError::Empty);
    }
    let phases = phases
        .iter()
        .enumerate()
        .map(|(i, &p)| if p.is_finite() { Ok(wrap_phase(p)) } else { Err(LinkError::BadPhase(i)) })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ChannelVector { gain, phases })
}

fn wrap_phase(p: f64) -> f64 {
    let w = p.rem_euclid(TAU);
    // rem_euclid can round up to exactly TAU for tiny negative inputs
    if w >= TAU {
        0.0
    } else {
        w
    }
}

/// `n` phases drawn uniformly from `[0, 2 pi)`.
pub fn random_phases<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(0.0..TAU)).collect()
}

impl ChannelVector {
    pub fn len(&self) -> usize {
        self.phases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phases.is_empty()
    }

    pub fn gain(&self) -> f64 {
        self.gain
    }

    pub fn phases(&self) -> &[f64] {
        &self.phases
    }

    pub fn entries(&self) -> impl Iterator<Item = Complex64> + '_ {
        let amp = self.gain.sqrt();
        self.phases.iter().map(move |&p| Complex64::from_polar(amp, p))
    }

    /// `||h||^2` summed over the complex entries.
    pub fn norm_sqr(&self) -> f64 {
        self.entries().map(|z| z.norm_sqr()).sum()
    }
}

/// Receive combining vector `v`.
#[derive(Debug, Clone, PartialEq)]
pub struct Combiner {
    weights: Vec<Complex64>,
}

impl Combiner {
    pub fn new(weights: Vec<Complex64>) -> Result<Self, LinkError> {
        if weights.iter().all(|w| w.norm_sqr() == 0.0) {
            return Err(LinkError::ZeroCombiner);
        }
        Ok(Self { weights })
    }

    /// Maximum ratio combining, `v = conj(h) / ||h||`.
    pub fn mrc(h: &ChannelVector) -> Result<Self, LinkError> {
        let norm = h.norm_sqr().sqrt();
        Self::new(h.entries().map(|z| z.conj() / norm).collect())
    }

    pub fn weights(&self) -> &[Complex64] {
        &self.weights
    }

    pub fn norm_sqr(&self) -> f64 {
        self.weights.iter().map(|w| w.norm_sqr()).sum()
    }
}

/// Transmit power and receiver noise power, both in watts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadioBudget {
    p_tx: f64,
    noise: f64,
}

impl RadioBudget {
    pub fn new(p_tx: f64, noise: f64) -> Result<Self, LinkError> {
        let ok = |x: f64| x.is_finite() && x > 0.0;
        if ok(p_tx) && ok(noise) {
            Ok(Self { p_tx, noise })
        } else {
            Err(LinkError::BadBudget { p_tx, noise })
        }
    }

    pub fn p_tx(&self) -> f64 {
        self.p_tx
    }

    pub fn noise(&self) -> f64 {
        self.noise
    }

    /// `P_tx / sigma^2`.
    pub fn ratio(&self) -> f64 {
        self.p_tx / self.noise
    }
}

/// IRS reflection: amplitude `mu` and per-element phase shifts `theta_n`,
/// i.e. `Theta = mu * diag(e^{-j theta_1}, ..., e^{-j theta_N})`.
#[derive(Debug, Clone, PartialEq)]
pub struct ReflectionConfig {
    mu: f64,
    thetas: Vec<f64>,
}

impl ReflectionConfig {
    pub fn new(mu: f64, thetas: Vec<f64>) -> Result<Self, LinkError> {
        check_mu(mu)?;
        if thetas.is_empty() {
            return Err(LinkError::Empty);
        }
        Ok(Self { mu, thetas })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn thetas(&self) -> &[f64] {
        &self.thetas
    }
}

fn check_mu(mu: f64) -> Result<(), LinkError> {
    if mu > 0.0 && mu <= 1.0 {
        Ok(())
    } else {
        Err(LinkError::BadReflection(mu))
    }
}

fn same_len(a: usize, b: usize) -> Result<(), LinkError> {
    if a == b {
        Ok(())
    } else {
        Err(LinkError::LengthMismatch { left: a, right: b })
    }
}

/// `|v^T h|^2 P_tx / (||v||^2 sigma^2)` for an arbitrary combiner.
pub fn combiner_snr(
    v: &Combiner,
    h: &ChannelVector,
    budget: &RadioBudget,
) -> Result<f64, LinkError> {
    same_len(v.weights.len(), h.len())?;
    let inner: Complex64 = v.weights.iter().zip(h.entries()).map(|(w, z)| w * z).sum();
    Ok(inner.norm_sqr() * budget.ratio() / v.norm_sqr())
}

/// SNR with maximum ratio combining, `N beta_h P_tx / sigma^2`.
pub fn mrc_snr(h: &ChannelVector, budget: &RadioBudget) -> f64 {
    mmimo_snr_closed_form(h.len() as u64, h.gain(), budget)
}

pub fn mmimo_snr_closed_form(n: u64, beta_h: f64, budget: &RadioBudget) -> f64 {
    n as f64 * beta_h * budget.ratio()
}

/// Optimal-phase IRS SNR under the far-field model on both hops,
/// `mu^2 N^2 beta_g beta_h P_tx / sigma^2`.
pub fn irs_snr_closed_form(n: u64, beta_g: f64, beta_h: f64, mu: f64, budget: &RadioBudget) -> f64 {
    let n = n as f64;
    mu * mu * n * n * beta_g * beta_h * budget.ratio()
}

/// `theta_n = phi_n + psi_n`, which aligns every term of `g^T Theta h`.
pub fn optimal_irs_phases(h: &ChannelVector, g: &ChannelVector) -> Result<Vec<f64>, LinkError> {
    same_len(h.len(), g.len())?;
    Ok(h.phases
        .iter()
        .zip(&g.phases)
        .map(|(phi, psi)| wrap_phase(phi + psi))
        .collect())
}

/// `g^T Theta h`, including the amplitude `mu`.
pub fn cascaded_channel(
    h: &ChannelVector,
    g: &ChannelVector,
    cfg: &ReflectionConfig,
) -> Result<Complex64, LinkError> {
    same_len(h.len(), g.len())?;
    same_len(h.len(), cfg.thetas.len())?;
    let sum: Complex64 = g
        .entries()
        .zip(h.entries())
        .zip(&cfg.thetas)
        .map(|((gn, hn), &theta)| gn * hn * Complex64::from_polar(1.0, -theta))
        .sum();
    Ok(sum * cfg.mu)
}

/// Received SNR of the IRS-aided link, `|g^T Theta h|^2 P_tx / sigma^2`.
///
/// `Theta` carries the amplitude `mu`, so the SNR scales with `mu^2`; with
/// optimal phases this is `mu^2 N^2 beta_g beta_h P_tx / sigma^2`.
pub fn irs_snr(
    h: &ChannelVector,
    g: &ChannelVector,
    cfg: &ReflectionConfig,
    budget: &RadioBudget,
) -> Result<f64, LinkError> {
    Ok(cascaded_channel(h, g, cfg)?.norm_sqr() * budget.ratio())
}

/// Optimal-phase IRS SNR split into the fraction of power reflected onward
/// to the receiver and the SNR the same array would reach as an mMIMO receiver.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IrsFactorization {
    pub reflected_fraction: f64,
    pub mmimo_snr: f64,
    pub product: f64,
    /// `reflected_fraction > 1`: the far-field model is used past `N = 1/beta_g`.
    pub energy_bound_exceeded: bool,
}

pub fn irs_snr_factorized(
    h: &ChannelVector,
    g: &ChannelVector,
    mu: f64,
    budget: &RadioBudget,
) -> Result<IrsFactorization, LinkError> {
    check_mu(mu)?;
    same_len(h.len(), g.len())?;
    let reflected_fraction = mu * mu * g.len() as f64 * g.gain();
    let mmimo_snr = mrc_snr(h, budget);
    Ok(IrsFactorization {
        reflected_fraction,
        mmimo_snr,
        product: reflected_fraction * mmimo_snr,
        energy_bound_exceeded: reflected_fraction > 1.0,
    })
}

/// `||Theta g||^2 = mu^2 ||g||^2`: the loss incurred when the IRS is viewed
/// as an mMIMO receiver using the combiner `v = Theta g` instead of MRC.
pub fn irs_combiner_loss(g: &ChannelVector, mu: f64) -> Result<f64, LinkError> {
    check_mu(mu)?;
    Ok(mu * mu * g.norm_sqr())
}

/// IRS SNR with the exact planar gain on the IRS-to-receiver hop:
/// `mu^2 N alpha_g beta_h P_tx / sigma^2`.
pub fn irs_snr_exact(
    n: u64,
    geom: &ElementGeometry,
    d_g: &PropagationPath,
    beta_h: f64,
    mu: f64,
    budget: &RadioBudget,
) -> Result<f64, LinkError> {
    check_mu(mu)?;
    if !(0.0..=1.0).contains(&beta_h) {
        return Err(LinkError::GainOutOfRange(beta_h));
    }
    let alpha_g = planar_exact_gain(n, geom, d_g)?.value;
    Ok(mu * mu * n as f64 * alpha_g * beta_h * budget.ratio())
}
