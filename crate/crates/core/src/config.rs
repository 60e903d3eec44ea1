//! Scenario documents and bundled presets.
//!
//! A document is a flat `key = value` file split into `[geometry]`, `[link]`,
//! `[budget]` and `[sweep]` sections. Lines starting with `#` or `;` are
//! comments; a `#` after a value starts a trailing comment.
//!
//! ```text
//! [geometry]
//! frequency_hz = 3e9          # or wavelength_m
//! element_area_m2 = isotropic # lambda^2 / (4 pi), or a number
//!
//! [link]
//! d_h_m = 25
//! d_g_m = 25
//! mu = 1
//! beta_h_override = 1e-4      # optional, likewise beta_g_override
//!
//! [budget]
//! p_tx_w = 0.01
//! noise_w = 1e-8
//!
//! [sweep]
//! n_min = 1
//! n_max = 1e6
//! points_per_decade = 40
//! models = mmimo,irs-far-field,irs-exact
//! seed = 0
//! ```

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::analysis::{LinkModel, LogGrid, Scenario};
use crate::links::RadioBudget;
use crate::propagation::{ElementGeometry, PropagationPath, SPEED_OF_LIGHT};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: unknown section [{name}]")]
    UnknownSection { line: usize, name: String },
    #[error("line {line}: unknown key `{key}` in [{section}]")]
    UnknownKey {
        line: usize,
        key: String,
        section: String,
    },
    #[error("line {line}: duplicate key `{key}`")]
    Duplicate { line: usize, key: String },
    #[error("line {line}: `{key}` conflicts with `{other}` on line {other_line}")]
    Conflict {
        line: usize,
        key: String,
        other: String,
        other_line: usize,
    },
    #[error("missing required key `{0}`")]
    Missing(String),
    #[error("line {line}: invalid value for `{key}`: {msg}")]
    Invalid { line: usize, key: String, msg: String },
    #[error("unknown preset `{0}` (expected one of: example1, fig2, fig4-far, fig4-near)")]
    UnknownPreset(String),
}

/// A parsed document: the scenario plus the models to evaluate.
#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    pub scenario: Scenario,
    pub models: Vec<LinkModel>,
}

const SECTIONS: &[(&str, &[&str])] = &[
    ("geometry", &["frequency_hz", "wavelength_m", "element_area_m2"]),
    ("link", &["d_h_m", "d_g_m", "mu", "beta_h_override", "beta_g_override"]),
    ("budget", &["p_tx_w", "noise_w"]),
    ("sweep", &["n_min", "n_max", "points_per_decade", "models", "seed"]),
];

struct Entry {
    line: usize,
    value: String,
}

struct Entries(HashMap<&'static str, Entry>);

impl Entries {
    fn get(&self, key: &str) -> Option<&Entry> {
        self.0.get(key)
    }

    fn required(&self, key: &str) -> Result<&Entry, ConfigError> {
        self.get(key).ok_or_else(|| ConfigError::Missing(key.to_string()))
    }

    fn float(&self, key: &str) -> Result<Option<(f64, usize)>, ConfigError> {
        let Some(e) = self.get(key) else { return Ok(None) };
        let v: f64 = e.value.parse().map_err(|_| invalid(e, key, "not a number"))?;
        if !v.is_finite() {
            return Err(invalid(e, key, "must be finite"));
        }
        Ok(Some((v, e.line)))
    }

    fn positive(&self, key: &str) -> Result<Option<f64>, ConfigError> {
        match self.float(key)? {
            Some((v, _)) if v > 0.0 => Ok(Some(v)),
            Some(_) => Err(invalid(self.required(key)?, key, "must be > 0")),
            None => Ok(None),
        }
    }

    fn required_positive(&self, key: &str) -> Result<f64, ConfigError> {
        self.positive(key)?.ok_or_else(|| ConfigError::Missing(key.to_string()))
    }

    fn integer(&self, key: &str) -> Result<Option<u64>, ConfigError> {
        let Some(e) = self.get(key) else { return Ok(None) };
        if let Ok(v) = e.value.parse::<u64>() {
            return Ok(Some(v));
        }
        // accept integral floats such as `1e6`
        match e.value.parse::<f64>() {
            Ok(v) if v.is_finite() && v >= 0.0 && v.fract() == 0.0 && v <= u64::MAX as f64 => {
                Ok(Some(v as u64))
            }
            _ => Err(invalid(e, key, "not a non-negative integer")),
        }
    }

    fn unit_interval(&self, key: &str, allow_zero: bool) -> Result<Option<f64>, ConfigError> {
        match self.float(key)? {
            Some((v, line)) => {
                if (allow_zero || v > 0.0) && (0.0..=1.0).contains(&v) {
                    Ok(Some(v))
                } else {
                    let range = if allow_zero { "[0, 1]" } else { "(0, 1]" };
                    Err(ConfigError::Invalid {
                        line,
                        key: key.to_string(),
                        msg: format!("must lie in {range}"),
                    })
                }
            }
            None => Ok(None),
        }
    }
}

fn invalid(e: &Entry, key: &str, msg: impl Into<String>) -> ConfigError {
    ConfigError::Invalid {
        line: e.line,
        key: key.to_string(),
        msg: msg.into(),
    }
}

fn tokenize(text: &str) -> Result<Entries, ConfigError> {
    let mut section: Option<&'static str> = None;
    let mut keys: &[&'static str] = &[];
    let mut map = HashMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') || trimmed.starts_with(';') {
            continue;
        }
        let content = trimmed.split('#').next().unwrap_or("").trim();
        if let Some(rest) = content.strip_prefix('[') {
            let name = rest.strip_suffix(']').ok_or_else(|| ConfigError::Syntax {
                line,
                msg: "unterminated section header".into(),
            })?;
            let name = name.trim();
            let (sec, sec_keys) = SECTIONS
                .iter()
                .find(|(s, _)| *s == name)
                .ok_or_else(|| ConfigError::UnknownSection {
                    line,
                    name: name.to_string(),
                })?;
            section = Some(sec);
            keys = sec_keys;
            continue;
        }
        let (key, value) = content.split_once('=').ok_or_else(|| ConfigError::Syntax {
            line,
            msg: format!("expected `key = value`, got `{content}`"),
        })?;
        let (key, value) = (key.trim(), value.trim());
        let Some(sec) = section else {
            return Err(ConfigError::Syntax {
                line,
                msg: format!("key `{key}` appears before any section header"),
            });
        };
        let key = *keys.iter().find(|k| **k == key).ok_or_else(|| ConfigError::UnknownKey {
            line,
            key: key.to_string(),
            section: sec.to_string(),
        })?;
        if value.is_empty() {
            return Err(ConfigError::Invalid {
                line,
                key: key.to_string(),
                msg: "empty value".into(),
            });
        }
        if map
            .insert(key, Entry { line, value: value.to_string() })
            .is_some()
        {
            return Err(ConfigError::Duplicate {
                line,
                key: key.to_string(),
            });
        }
    }
    Ok(Entries(map))
}

/// Parses and validates a scenario document. Defaults: isotropic aperture,
/// `mu = 1`, the default [`LogGrid`], all three models and seed 0.
pub fn parse_config(text: &str) -> Result<Config, ConfigError> {
    let e = tokenize(text)?;

    let wavelength = match (e.get("frequency_hz"), e.get("wavelength_m")) {
        (Some(f), Some(w)) => {
            let (first, second, key, other) = if f.line < w.line {
                (f, w, "wavelength_m", "frequency_hz")
            } else {
                (w, f, "frequency_hz", "wavelength_m")
            };
            return Err(ConfigError::Conflict {
                line: second.line,
                key: key.into(),
                other: other.into(),
                other_line: first.line,
            });
        }
        (Some(_), None) => SPEED_OF_LIGHT / e.required_positive("frequency_hz")?,
        (None, Some(_)) => e.required_positive("wavelength_m")?,
        (None, None) => return Err(ConfigError::Missing("frequency_hz or wavelength_m".into())),
    };

    let geometry = match e.get("element_area_m2") {
        Some(a) if a.value.eq_ignore_ascii_case("isotropic") => ElementGeometry::isotropic(wavelength),
        Some(_) => ElementGeometry::new(wavelength, e.required_positive("element_area_m2")?),
        None => ElementGeometry::isotropic(wavelength),
    }
    .map_err(|err| ConfigError::Invalid {
        line: e.get("element_area_m2").map_or(0, |x| x.line),
        key: "element_area_m2".into(),
        msg: err.to_string(),
    })?;

    let path = |key: &str| -> Result<PropagationPath, ConfigError> {
        let d = e.required_positive(key)?;
        PropagationPath::new(d).map_err(|err| invalid(e.required(key).unwrap(), key, err.to_string()))
    };
    let d_h = path("d_h_m")?;
    let d_g = path("d_g_m")?;

    let p_tx = e.required_positive("p_tx_w")?;
    let noise = e.required_positive("noise_w")?;
    let budget = RadioBudget::new(p_tx, noise).map_err(|err| ConfigError::Invalid {
        line: e.get("p_tx_w").map_or(0, |x| x.line),
        key: "p_tx_w".into(),
        msg: err.to_string(),
    })?;

    let mu = e.unit_interval("mu", false)?.unwrap_or(1.0);
    let beta_h_override = e.unit_interval("beta_h_override", true)?;
    let beta_g_override = e.unit_interval("beta_g_override", true)?;

    let defaults = LogGrid::default();
    let n_min = e.integer("n_min")?.unwrap_or(defaults.n_min);
    let n_max = e.integer("n_max")?.unwrap_or(defaults.n_max);
    let ppd = match e.integer("points_per_decade")? {
        Some(p) => u32::try_from(p).map_err(|_| {
            invalid(e.required("points_per_decade").unwrap(), "points_per_decade", "too large")
        })?,
        None => defaults.points_per_decade,
    };
    let grid = LogGrid::new(n_min, n_max, ppd).map_err(|err| {
        let line = ["n_max", "n_min", "points_per_decade"]
            .iter()
            .find_map(|k| e.get(k).map(|x| x.line))
            .unwrap_or(0);
        ConfigError::Invalid {
            line,
            key: "n_min/n_max/points_per_decade".into(),
            msg: err.to_string(),
        }
    })?;

    let models = match e.get("models") {
        Some(m) => {
            let mut out = Vec::new();
            for name in m.value.split(',').filter(|s| !s.trim().is_empty()) {
                let model = name.parse::<LinkModel>().map_err(|msg| invalid(m, "models", msg))?;
                if !out.contains(&model) {
                    out.push(model);
                }
            }
            if out.is_empty() {
                return Err(invalid(m, "models", "no models listed"));
            }
            out
        }
        None => LinkModel::ALL.to_vec(),
    };
    let seed = e.integer("seed")?.unwrap_or(0);

    Ok(Config {
        scenario: Scenario {
            geometry,
            d_h,
            d_g,
            budget,
            mu,
            beta_h_override,
            beta_g_override,
            grid,
            seed,
        },
        models,
    })
}

/// Canonical text for a scenario. Floats use the shortest representation
/// that parses back to the same value, so the document round-trips exactly.
pub fn scenario_document(s: &Scenario) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "[geometry]");
    let _ = writeln!(out, "wavelength_m = {:?}", s.geometry.wavelength());
    let _ = writeln!(out, "element_area_m2 = {:?}", s.geometry.area());
    let _ = writeln!(out, "\n[link]");
    let _ = writeln!(out, "d_h_m = {:?}", s.d_h.distance());
    let _ = writeln!(out, "d_g_m = {:?}", s.d_g.distance());
    let _ = writeln!(out, "mu = {:?}", s.mu);
    if let Some(b) = s.beta_h_override {
        let _ = writeln!(out, "beta_h_override = {b:?}");
    }
    if let Some(b) = s.beta_g_override {
        let _ = writeln!(out, "beta_g_override = {b:?}");
    }
    let _ = writeln!(out, "\n[budget]");
    let _ = writeln!(out, "p_tx_w = {:?}", s.budget.p_tx());
    let _ = writeln!(out, "noise_w = {:?}", s.budget.noise());
    let _ = writeln!(out, "\n[sweep]");
    let _ = writeln!(out, "n_min = {}", s.grid.n_min);
    let _ = writeln!(out, "n_max = {}", s.grid.n_max);
    let _ = writeln!(out, "points_per_decade = {}", s.grid.points_per_decade);
    let _ = writeln!(out, "seed = {}", s.seed);
    out
}

pub fn serialize_config(c: &Config) -> String {
    let models: Vec<&str> = c.models.iter().map(|m| m.name()).collect();
    format!("{}models = {}\n", scenario_document(&c.scenario), models.join(","))
}

pub const PRESET_NAMES: [&str; 4] = ["example1", "fig2", "fig4-far", "fig4-near"];

const EXAMPLE1: &str = "\
# 3 GHz isotropic elements over the 2.5 m .. 25 m distance range
[geometry]
frequency_hz = 3e9
element_area_m2 = isotropic

[link]
d_h_m = 2.5
d_g_m = 25
mu = 1

[budget]
p_tx_w = 0.01
noise_w = 1e-8

[sweep]
n_min = 1
n_max = 1e6
points_per_decade = 40
models = mmimo,irs-far-field,irs-exact
seed = 0
";

const FIG2: &str = "\
# Total gain of a square planar array versus N at d = 2.5 m
[geometry]
wavelength_m = 0.1
element_area_m2 = isotropic

[link]
d_h_m = 2.5
d_g_m = 2.5
mu = 1

[budget]
p_tx_w = 0.01
noise_w = 1e-8

[sweep]
n_min = 1
n_max = 1e10
points_per_decade = 40
models = mmimo,irs-far-field,irs-exact
seed = 0
";

// beta_h is pinned so that beta_h * p_tx / noise = 20 dB.
const FIG4_FAR: &str = "\
# Rate comparison, receiver 25 m from the IRS
[geometry]
frequency_hz = 3e9
element_area_m2 = isotropic

[link]
d_h_m = 25
d_g_m = 25
mu = 1
beta_h_override = 1e-4

[budget]
p_tx_w = 0.01
noise_w = 1e-8

[sweep]
n_min = 1
n_max = 1e6
points_per_decade = 40
models = mmimo,irs-far-field,irs-exact
seed = 0
";

const FIG4_NEAR: &str = "\
# Rate comparison, receiver 2.5 m from the IRS
[geometry]
frequency_hz = 3e9
element_area_m2 = isotropic

[link]
d_h_m = 25
d_g_m = 2.5
mu = 1
beta_h_override = 1e-4

[budget]
p_tx_w = 0.01
noise_w = 1e-8

[sweep]
n_min = 1
n_max = 1e6
points_per_decade = 40
models = mmimo,irs-far-field,irs-exact
seed = 0
";

/// Document text of a bundled preset.
pub fn preset_text(name: &str) -> Result<&'static str, ConfigError> {
    match name {
        "example1" => Ok(EXAMPLE1),
        "fig2" => Ok(FIG2),
        "fig4-far" => Ok(FIG4_FAR),
        "fig4-near" => Ok(FIG4_NEAR),
        other => Err(ConfigError::UnknownPreset(other.to_string())),
    }
}

pub fn preset(name: &str) -> Result<Config, ConfigError> {
    parse_config(preset_text(name)?)
}
