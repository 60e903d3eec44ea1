//! CSV tables and run manifests.
//!
//! Numbers are written in scientific notation with 12 significant digits,
//! one row per line, `\n` terminated, so identical inputs give identical bytes.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde::Serialize;
use thiserror::Error;

use crate::analysis::{GainRow, PowerRow, SweepTable};

pub const SWEEP_HEADER: &str = "n,model,snr,snr_db,rate_bpcu,far_field_valid,energy_bound_exceeded";
pub const GAIN_HEADER: &str = "n,rho_exact,rho_far_field,relative_error,far_field_valid";
pub const POWER_HEADER: &str = "n,model,required_power_w,required_power_dbm";
pub const BREAKEVEN_HEADER: &str = "model,n_ref,n_breakeven,target_rate_bpcu,rate_bpcu";

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("nothing to write: table is empty")]
    Empty,
    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("cannot encode manifest: {0}")]
    Encode(#[from] serde_json::Error),
}

/// Scientific notation, 12 significant digits.
pub fn fmt_num(x: f64) -> String {
    format!("{x:.11e}")
}

pub fn db(x: f64) -> f64 {
    10.0 * x.log10()
}

pub fn sweep_csv(table: &SweepTable) -> Result<String, ReportError> {
    if table.rows.is_empty() {
        return Err(ReportError::Empty);
    }
    let mut out = String::from(SWEEP_HEADER);
    out.push('\n');
    for r in &table.rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            r.n,
            r.model,
            fmt_num(r.snr),
            fmt_num(db(r.snr)),
            fmt_num(r.rate),
            r.far_field_valid,
            r.energy_bound_exceeded
        ));
    }
    Ok(out)
}

pub fn gain_csv(rows: &[GainRow]) -> Result<String, ReportError> {
    if rows.is_empty() {
        return Err(ReportError::Empty);
    }
    let mut out = String::from(GAIN_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            r.n,
            fmt_num(r.rho_exact),
            fmt_num(r.rho_far_field),
            fmt_num(r.relative_error),
            r.far_field_valid
        ));
    }
    Ok(out)
}

pub fn power_csv(rows: &[PowerRow]) -> Result<String, ReportError> {
    if rows.is_empty() {
        return Err(ReportError::Empty);
    }
    let mut out = String::from(POWER_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{}\n",
            r.n,
            r.model,
            fmt_num(r.required_power_w),
            fmt_num(db(r.required_power_w * 1e3))
        ));
    }
    Ok(out)
}

pub fn write_file(path: &Path, contents: &str) -> Result<(), ReportError> {
    fs::write(path, contents).map_err(|source| ReportError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Writes `table` as CSV to `destination`.
pub fn emit_csv(table: &SweepTable, destination: &Path) -> Result<(), ReportError> {
    write_file(destination, &sweep_csv(table)?)
}

#[derive(Debug, Clone, Serialize)]
pub struct GainSource {
    pub value: f64,
    /// `override` or `free-space`.
    pub convention: &'static str,
}

/// Everything needed to reproduce an output file, written next to it.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub tool: &'static str,
    pub tool_version: String,
    pub command: String,
    /// `preset:<name>` or `config:<path as given>`.
    pub source: String,
    pub scenario_digest: String,
    pub seed: u64,
    pub beta_h: GainSource,
    pub beta_g: GainSource,
    pub arguments: Vec<(String, String)>,
    pub outputs: Vec<String>,
    /// The effective configuration document.
    pub config: String,
}

impl RunManifest {
    pub fn to_json(&self) -> Result<String, ReportError> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }
}
