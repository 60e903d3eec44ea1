//! Free-space link models for comparing a massive-MIMO receiver with an
//! intelligent reflecting surface (IRS) of the same size at the same spot.
//!
//! * [`propagation`]: element and array gains (free-space, spherical,
//!   exact planar, far-field) and their validity limits.
//! * [`links`]: LoS channel vectors, receive combining, IRS phase
//!   optimisation and the SNR of each setup.
//! * [`analysis`]: rates, sweeps over `N`, breakeven array sizes and
//!   required-power curves.
//! * [`config`] and [`report`]: scenario documents, presets, CSV tables and
//!   run manifests; [`cli`] wires them into the `reflect-lab` binary.
//!
//! ```
//! use reflect_lab::config::preset;
//! use reflect_lab::analysis::{breakeven_elements, LinkModel};
//!
//! let near = preset("fig4-near").unwrap();
//! let n = breakeven_elements(&near.scenario, LinkModel::IrsExact, 64).unwrap();
//! assert!((2_500..=3_500).contains(&n));
//! ```

pub mod analysis;
pub mod cli;
pub mod config;
pub mod links;
pub mod propagation;
pub mod report;

pub use analysis::{LinkModel, LinkResult, Scenario, SweepTable};
pub use links::{ChannelVector, RadioBudget};
pub use propagation::{ElementGeometry, PropagationPath, TotalGain};
