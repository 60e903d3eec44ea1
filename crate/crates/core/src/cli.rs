//! `reflect-lab` command-line front end.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use crate::analysis::{
    breakeven_elements, gain_sweep, power_scaling, run_sweep, AnalysisError, LinkModel,
    TOOL_VERSION,
};
use crate::config::{parse_config, preset, preset_text, serialize_config, Config, ConfigError};
use crate::report::{
    fmt_num, gain_csv, power_csv, sweep_csv, write_file, GainSource, ReportError, RunManifest,
    BREAKEVEN_HEADER,
};

pub const SEED_ENV: &str = "REFLECT_LAB_SEED";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Model(#[from] AnalysisError),
    #[error(transparent)]
    Io(#[from] ReportError),
}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        CliError::Config(e.to_string())
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Model(_) => 3,
            CliError::Io(_) => 4,
        }
    }

    pub fn category(&self) -> &'static str {
        match self {
            CliError::Config(_) => "config",
            CliError::Model(_) => "model",
            CliError::Io(_) => "io",
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "reflect-lab", version, about = "mMIMO versus IRS link simulator")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact and far-field total gain of a planar array versus N
    GainSweep(RunArgs),
    /// SNR and rate of each link model versus N
    RateCompare(RunArgs),
    /// Smallest IRS matching the rate of a reference mMIMO array
    Breakeven {
        #[command(flatten)]
        run: RunArgs,
        /// Reference mMIMO array size
        #[arg(long = "ref", default_value_t = 64)]
        n_ref: u64,
        #[arg(long, default_value = "irs-exact")]
        model: LinkModel,
    },
    /// Transmit power needed for a target SNR versus N
    PowerScaling {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, default_value_t = 20.0, allow_negative_numbers = true)]
        target_snr_db: f64,
    },
    /// Print a bundled preset document
    Preset {
        name: String,
        /// Also write `<name>.cfg` into this directory
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    #[arg(long, conflicts_with = "preset", required_unless_present = "preset")]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub preset: Option<String>,
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
}

struct Loaded {
    config: Config,
    source: String,
}

fn load(run: &RunArgs, seed_env: Option<&str>) -> Result<Loaded, CliError> {
    let (mut config, source) = match (&run.config, &run.preset) {
        (Some(path), _) => {
            let text = fs::read_to_string(path).map_err(|source| ReportError::Io {
                path: path.clone(),
                source,
            })?;
            (parse_config(&text)?, format!("config:{}", path.display()))
        }
        (None, Some(name)) => (preset(name)?, format!("preset:{name}")),
        (None, None) => return Err(CliError::Config("one of --config or --preset is required".into())),
    };
    if let Some(raw) = seed_env {
        config.scenario.seed = raw
            .trim()
            .parse()
            .map_err(|_| CliError::Config(format!("{SEED_ENV}=`{raw}` is not an unsigned integer")))?;
    }
    Ok(Loaded { config, source })
}

fn manifest(
    loaded: &Loaded,
    command: &str,
    arguments: Vec<(String, String)>,
    outputs: Vec<String>,
) -> Result<RunManifest, CliError> {
    let s = &loaded.config.scenario;
    let (h_conv, g_conv) = s.beta_convention();
    Ok(RunManifest {
        tool: "reflect-lab",
        tool_version: TOOL_VERSION.to_string(),
        command: command.to_string(),
        source: loaded.source.clone(),
        scenario_digest: s.digest(),
        seed: s.seed,
        beta_h: GainSource {
            value: s.beta_h()?,
            convention: h_conv,
        },
        beta_g: GainSource {
            value: s.beta_g()?,
            convention: g_conv,
        },
        arguments,
        outputs,
        config: serialize_config(&loaded.config),
    })
}

fn write_outputs(
    dir: &Path,
    stem: &str,
    csv: &str,
    loaded: &Loaded,
    command: &str,
    arguments: Vec<(String, String)>,
) -> Result<(), CliError> {
    fs::create_dir_all(dir).map_err(|source| ReportError::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    let csv_name = format!("{stem}.csv");
    let m = manifest(loaded, command, arguments, vec![csv_name.clone()])?;
    write_file(&dir.join(&csv_name), csv)?;
    write_file(&dir.join(format!("{stem}.manifest.json")), &m.to_json()?)?;
    Ok(())
}

/// Executes one parsed command; `seed_env` is the value of `REFLECT_LAB_SEED`.
pub fn run_command(cli: Cli, seed_env: Option<&str>, stdout: &mut dyn Write) -> Result<(), CliError> {
    let io = |e: std::io::Error| {
        CliError::Io(ReportError::Io {
            path: PathBuf::from("<stdout>"),
            source: e,
        })
    };
    match cli.command {
        Command::GainSweep(run) => {
            let loaded = load(&run, seed_env)?;
            let csv = gain_csv(&gain_sweep(&loaded.config.scenario)?)?;
            write_outputs(&run.out, "gain_sweep", &csv, &loaded, "gain-sweep", vec![])?;
        }
        Command::RateCompare(run) => {
            let loaded = load(&run, seed_env)?;
            let table = run_sweep(&loaded.config.scenario, &loaded.config.models)?;
            let csv = sweep_csv(&table)?;
            write_outputs(&run.out, "rate_compare", &csv, &loaded, "rate-compare", vec![])?;
        }
        Command::Breakeven { run, n_ref, model } => {
            if n_ref == 0 {
                return Err(CliError::Config("--ref must be >= 1".into()));
            }
            let loaded = load(&run, seed_env)?;
            let s = &loaded.config.scenario;
            let n = breakeven_elements(s, model, n_ref)?;
            let csv = format!(
                "{BREAKEVEN_HEADER}\n{model},{n_ref},{n},{},{}\n",
                fmt_num(s.rate(LinkModel::Mmimo, n_ref)?),
                fmt_num(s.rate(model, n)?)
            );
            let args = vec![
                ("ref".to_string(), n_ref.to_string()),
                ("model".to_string(), model.to_string()),
            ];
            write_outputs(&run.out, "breakeven", &csv, &loaded, "breakeven", args)?;
            writeln!(stdout, "{n}").map_err(io)?;
        }
        Command::PowerScaling { run, target_snr_db } => {
            if !target_snr_db.is_finite() {
                return Err(CliError::Config("--target-snr-db must be finite".into()));
            }
            let loaded = load(&run, seed_env)?;
            let target = 10f64.powf(target_snr_db / 10.0);
            let rows = power_scaling(&loaded.config.scenario, &loaded.config.models, target)?;
            let csv = power_csv(&rows)?;
            let args = vec![("target_snr_db".to_string(), format!("{target_snr_db:?}"))];
            write_outputs(&run.out, "power_scaling", &csv, &loaded, "power-scaling", args)?;
        }
        Command::Preset { name, out } => {
            let text = preset_text(&name)?;
            if let Some(dir) = out {
                fs::create_dir_all(&dir).map_err(|source| ReportError::Io {
                    path: dir.clone(),
                    source,
                })?;
                write_file(&dir.join(format!("{name}.cfg")), text)?;
            }
            stdout.write_all(text.as_bytes()).map_err(io)?;
        }
    }
    Ok(())
}

/// Parses `args`, runs the command and returns the process exit code.
/// Failures print one `reflect-lab: error[<category>]: <message>` line.
pub fn main_with<I, T>(args: I, seed_env: Option<&str>, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() {
                write!(stderr, "{}", e.render())
            } else {
                write!(stdout, "{}", e.render())
            };
            return code;
        }
    };
    match run_command(cli, seed_env, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let msg = e.to_string().replace('\n', " ");
            let _ = writeln!(stderr, "reflect-lab: error[{}]: {msg}", e.category());
            e.exit_code()
        }
    }
}
