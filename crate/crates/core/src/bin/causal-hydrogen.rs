use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use causal_hydrogen::commands::{self, GridSpec, RunSpec};
use causal_hydrogen::constants::CONSTANTS_ENV;
use causal_hydrogen::io::Format;
use causal_hydrogen::{Error, PhysConsts, Vec3};

/// Causal-trajectory model of hydrogen eigenstates.
///
/// Constants default to CODATA 2018; a `key = value` override file may be
/// named by the CAUSAL_HYDROGEN_CONSTANTS environment variable.
#[derive(Parser)]
#[command(name = "causal-hydrogen", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form orbit samples (t, r, v, L, F_net).
    Orbit(RunArgs),
    /// RK4 orbit of an n=2, l=1 state in axes rotated by --beta-deg about y.
    RotatedOrbit(RunArgs),
    /// S, |∇S|, KE, Q, V, F_net and L on a grid.
    Fields(RunArgs),
    /// Energy bookkeeping E_n, E_CI, KE, V, Q in units of 1e-19 J.
    Report(RunArgs),
    /// Run every named check; exit 1 if any fails.
    Check(OutArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Args)]
struct OutArgs {
    /// Output format; `report` prints text unless json is requested.
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    /// Output path (stdout if omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, default_value_t = 2, allow_negative_numbers = true)]
    n: i32,
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    l: i32,
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    m: i32,
    /// Rotation of the axes about y (degrees).
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    beta_deg: f64,
    /// Electron distance from the nucleus (m); defaults to n²a_μ/Z.
    #[arg(long)]
    re_m: Option<f64>,
    /// Orbit phase at t = 0 (degrees); 0 for orbit and fields, 90 for rotated-orbit.
    #[arg(long, allow_negative_numbers = true)]
    phase_deg: Option<f64>,
    /// Duration in orbital periods.
    #[arg(long, default_value_t = 1.0)]
    periods: f64,
    /// Steps per period (dt = T / divisor).
    #[arg(long, default_value_t = 2048)]
    dt_divisor: usize,
    /// Keep every k-th step.
    #[arg(long, default_value_t = 16)]
    record_every: usize,
    /// ring:N or box:N:HALFWIDTH_M.
    #[arg(long, default_value = "ring:16")]
    grid: String,
    /// Position X,Y,Z (m) of a stationary m=0 electron.
    #[arg(
        long,
        value_delimiter = ',',
        num_args = 3,
        allow_negative_numbers = true
    )]
    start: Option<Vec<f64>>,
    #[command(flatten)]
    output: OutArgs,
}

impl RunArgs {
    fn spec(&self) -> Result<RunSpec, Error> {
        Ok(RunSpec {
            n: self.n,
            l: self.l,
            m: self.m,
            r_e: self.re_m,
            beta_deg: self.beta_deg,
            phase_deg: self.phase_deg,
            periods: self.periods,
            dt_divisor: self.dt_divisor,
            record_every: self.record_every,
            grid: self.grid.parse::<GridSpec>()?,
            start: self.start.as_ref().map(|v| Vec3::new(v[0], v[1], v[2])),
        })
    }
}

fn open_output(path: &Option<PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(io::stdout().lock()),
    })
}

fn write_text(out: &OutArgs, text: &str) -> Result<(), Error> {
    let mut w = open_output(&out.out)?;
    w.write_all(text.as_bytes())?;
    w.flush()?;
    Ok(())
}

impl OutArgs {
    fn table_format(&self) -> Format {
        match self.format {
            Some(FormatArg::Json) => Format::Json,
            _ => Format::Csv,
        }
    }

    fn wants_json(&self) -> bool {
        matches!(self.format, Some(FormatArg::Json))
    }
}

fn run(cli: Cli) -> Result<i32, Error> {
    let consts = PhysConsts::from_env()?;
    match cli.command {
        Command::Orbit(a) => {
            let table = commands::cmd_orbit(&a.spec()?, &consts)?;
            write_text(&a.output, &table.render(a.output.table_format())?)?;
        }
        Command::RotatedOrbit(a) => {
            let table = commands::cmd_rotated_orbit(&a.spec()?, &consts)?;
            write_text(&a.output, &table.render(a.output.table_format())?)?;
        }
        Command::Fields(a) => {
            let table = commands::cmd_fields(&a.spec()?, &consts)?;
            write_text(&a.output, &table.render(a.output.table_format())?)?;
        }
        Command::Report(a) => {
            let report = commands::cmd_report(&a.spec()?, &consts)?;
            let text = if a.output.wants_json() {
                serde_json::to_string_pretty(&report.to_json())? + "\n"
            } else {
                report.text()
            };
            write_text(&a.output, &text)?;
        }
        Command::Check(out) => {
            let summary = commands::cmd_check(&consts);
            write_text(&out, &(serde_json::to_string_pretty(&summary)? + "\n"))?;
            for name in &summary.failed {
                eprintln!("FAILED {name}");
            }
            return Ok(summary.exit_code());
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            if let Error::StepAborted { point, .. } = &e {
                eprintln!("  at point {point}");
            }
            if std::env::var_os(CONSTANTS_ENV).is_some() {
                eprintln!("  (constants overridden via {CONSTANTS_ENV})");
            }
            ExitCode::from(commands::exit_code(&e) as u8)
        }
    }
}
