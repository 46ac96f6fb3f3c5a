//! Command line front end: dispersion calculations, simulations and the
//! validation suites, all writing CSV.
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use roadfield::{ModelParams, ParamConfig, Preset};

mod commands;
mod validate;

#[derive(Parser)]
#[command(version, about = "Spreading speeds for a road-field KPP model", long_about = None)]
struct Cli {
    #[command(flatten)]
    common: Common,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
pub struct Common {
    /// Parameter file with `key=value` lines (D, d, mu, nu, fp0, reaction)
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Override a parameter after the config file is read (repeatable)
    #[arg(long = "set", value_name = "KEY=VALUE", global = true)]
    overrides: Vec<String>,

    /// Directory for CSV output (created if missing)
    #[arg(long, default_value = ".", global = true)]
    out_dir: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Spreading speed c* for the configured parameters
    Speed,
    /// c* over a list of road diffusivities
    Sweep {
        /// Comma separated, increasing road diffusivities
        #[arg(long = "D-list", value_delimiter = ',', required = true, num_args = 1..)]
        d_list: Vec<f64>,
    },
    /// Critical speed when the field is a strip of width L
    Strip {
        /// Strip width
        #[arg(long = "L")]
        width: f64,
    },
    /// Large road diffusivity limit of c*/sqrt(D)
    Limit,
    /// Run a simulation preset and measure its front
    Simulate {
        /// conservation, kpp, enhanced or steady
        #[arg(long)]
        preset: Preset,
        #[command(flatten)]
        sizing: SizingArgs,
    },
    /// Property suites: kpp, cfl, equilibrium, ordering, conservation, steady
    Validate {
        #[command(flatten)]
        sizing: SizingArgs,
    },
}

#[derive(Args, Clone, Copy)]
pub struct SizingArgs {
    /// Final time (preset default if omitted)
    #[arg(long)]
    t_end: Option<f64>,
    /// Grid spacing in x and y
    #[arg(long)]
    dx: Option<f64>,
    /// Fraction of the stable time step, in (0, 1]
    #[arg(long)]
    safety: Option<f64>,
}

impl From<SizingArgs> for roadfield::Sizing {
    fn from(a: SizingArgs) -> Self {
        roadfield::Sizing {
            spacing: a.dx,
            t_end: a.t_end,
            safety: a.safety,
        }
    }
}

impl Common {
    pub fn params(&self) -> anyhow::Result<ModelParams> {
        let mut config = ParamConfig::default();
        if let Some(path) = &self.config {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            config
                .apply_text(&text)
                .with_context(|| format!("in config file {}", path.display()))?;
        }
        for pair in &self.overrides {
            config
                .apply_override(pair)
                .with_context(|| format!("in --set {pair}"))?;
        }
        Ok(config.build()?)
    }

    /// Writes all files at once, after every computation has succeeded.
    pub fn write_outputs(&self, files: &[(&str, String)]) -> anyhow::Result<()> {
        std::fs::create_dir_all(&self.out_dir)
            .with_context(|| format!("creating output directory {}", self.out_dir.display()))?;
        for (name, content) in files {
            let path = self.out_dir.join(name);
            std::fs::write(&path, content).with_context(|| format!("writing {}", path.display()))?;
        }
        Ok(())
    }
}

fn init_threads() -> anyhow::Result<()> {
    let Ok(raw) = std::env::var("ROADFIELD_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .with_context(|| format!("ROADFIELD_THREADS must be a count, got `{raw}`"))?;
    // 0 keeps rayon's default (one worker per core)
    if n > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .context("configuring the worker pool")?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}

fn execute(cli: Cli) -> anyhow::Result<()> {
    init_threads()?;
    match cli.command {
        Command::Speed => commands::speed(&cli.common),
        Command::Sweep { d_list } => commands::sweep(&cli.common, &d_list),
        Command::Strip { width } => commands::strip(&cli.common, width),
        Command::Limit => commands::limit(&cli.common),
        Command::Simulate { preset, sizing } => commands::simulate(&cli.common, preset, sizing.into()),
        Command::Validate { sizing } => {
            let report = validate::run_all(&cli.common, sizing)?;
            if !report.all_passed() {
                bail!("validation failed: {}", report.failed_names().join(", "));
            }
            Ok(())
        }
    }
}
