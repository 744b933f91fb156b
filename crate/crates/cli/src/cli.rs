use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use rheology::MaterialParams64;

use crate::commands::{cmd_creep, cmd_rate, cmd_relax, cmd_spectrum, OutputRequest};
use crate::error::{CliError, Result};
use crate::figures::{cmd_figures, FigureOptions};
use crate::grid::{GridSpec, Scale};
use crate::table::Format;
use crate::validate::{report, run_checks, ValidateOptions};

#[derive(Debug, Parser)]
#[command(
    name = "rheology",
    version,
    about = "Becker and Lomnitz creep, relaxation and retardation spectra"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Creep functions ψ(t) (and compliance J).
    Creep(Common),
    /// Rates of creep dψ/dt.
    Rate(Common),
    /// Relaxation functions φ(t) from the Volterra equation.
    Relax {
        #[command(flatten)]
        common: Common,
        /// Solver step in dimensionless time.
        #[arg(long, default_value_t = 5e-3)]
        step: f64,
    },
    /// Retardation spectra R(τ); the grid flags range over τ.
    Spectrum(Common),
    /// Write the four comparison figures (CSV + SVG) into a directory.
    Figures {
        #[arg(long, default_value = "figures")]
        out: PathBuf,
        #[arg(long, default_value_t = 1.0)]
        q: f64,
        #[arg(long, default_value_t = 5e-3)]
        step: f64,
    },
    /// Run the built-in accuracy and consistency checks.
    Validate {
        /// Scale factor applied to the spectra in the round-trip check.
        #[arg(long, default_value_t = 1.0)]
        spectrum_scale: f64,
        /// Solver step used by the small-time series check.
        #[arg(long, default_value_t = 1e-4)]
        small_t_step: f64,
    },
}

#[derive(Debug, Args)]
struct Common {
    #[arg(long)]
    tmin: Option<f64>,
    #[arg(long)]
    tmax: Option<f64>,
    #[arg(long)]
    points: Option<usize>,
    #[arg(long, value_enum)]
    scale: Option<Scale>,
    #[arg(long, default_value_t = 1.0)]
    q: f64,
    #[arg(long, default_value_t = 1.0)]
    tau0: f64,
    #[arg(long, default_value_t = 1.0)]
    ju: f64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Table output file (standard output when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also draw an SVG chart to this path.
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Comma-separated columns to emit.
    #[arg(long, value_delimiter = ',')]
    columns: Vec<String>,
}

struct Defaults {
    linear: (f64, f64, usize),
    log: (f64, f64, usize),
    scale: Scale,
}

const TIME_DEFAULTS: Defaults = Defaults {
    linear: (0.0, 10.0, 101),
    log: (1e-2, 1e2, 201),
    scale: Scale::Linear,
};
const TAU_DEFAULTS: Defaults = Defaults {
    linear: (0.1, 10.0, 100),
    log: (1e-2, 1e3, 201),
    scale: Scale::Log,
};

impl Common {
    fn grid(&self, d: &Defaults) -> Result<GridSpec> {
        let scale = self.scale.unwrap_or(d.scale);
        let (lo, hi, n) = match scale {
            Scale::Linear => d.linear,
            Scale::Log => d.log,
        };
        GridSpec::new(
            self.tmin.unwrap_or(lo),
            self.tmax.unwrap_or(hi),
            self.points.unwrap_or(n),
            scale,
        )
    }

    fn params(&self) -> Result<MaterialParams64> {
        Ok(MaterialParams64::new(self.ju, self.q, self.tau0)?)
    }

    fn output(&self) -> OutputRequest {
        OutputRequest {
            format: self.format,
            out: self.out.clone(),
            chart_path: self.svg.clone(),
            columns: self.columns.clone(),
        }
    }
}

fn execute(command: Command) -> Result<()> {
    match command {
        Command::Creep(c) => cmd_creep(&c.grid(&TIME_DEFAULTS)?, &c.params()?, &c.output()),
        Command::Rate(c) => cmd_rate(&c.grid(&TIME_DEFAULTS)?, &c.params()?, &c.output()),
        Command::Spectrum(c) => cmd_spectrum(&c.grid(&TAU_DEFAULTS)?, &c.output()),
        Command::Relax { common: c, step } => {
            let scale = c.scale.unwrap_or(Scale::Linear);
            // every solver node unless a sampling grid is asked for
            let sampling = if scale == Scale::Log || c.points.is_some() {
                Some(c.grid(&TIME_DEFAULTS)?)
            } else {
                None
            };
            let t_max = match (&sampling, c.tmax) {
                (Some(g), _) => g.t_max,
                (None, Some(t)) => t,
                (None, None) => TIME_DEFAULTS.linear.1,
            };
            if sampling.is_none() && c.tmin.is_some_and(|t| t != 0.0) {
                return Err(CliError::Usage(
                    "--tmin needs --points or --scale log for relax".into(),
                ));
            }
            cmd_relax(t_max, step, &c.params()?, sampling.as_ref(), &c.output())
        }
        Command::Figures { out, q, step } => {
            let written = cmd_figures(&out, &FigureOptions { q, step })?;
            let mut stdout = std::io::stdout().lock();
            for p in written {
                writeln!(stdout, "{}", p.display())
                    .map_err(|e| CliError::Io(format!("stdout: {e}")))?;
            }
            Ok(())
        }
        Command::Validate {
            spectrum_scale,
            small_t_step,
        } => {
            let outcomes = run_checks(&ValidateOptions {
                spectrum_scale,
                small_t_step,
            })?;
            print!("{}", report(&outcomes));
            let failed: Vec<&str> = outcomes
                .iter()
                .filter(|o| !o.passed)
                .map(|o| o.name.as_str())
                .collect();
            if failed.is_empty() {
                Ok(())
            } else {
                Err(CliError::Validation(format!(
                    "failed checks: {}",
                    failed.join("; ")
                )))
            }
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match execute(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
