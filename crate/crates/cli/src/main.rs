mod csv;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use sinc_bound::experiments::{
    default_n_values, example, half_line_grid, sweep, whole_line_grid, ExampleId, Variant,
};
use sinc_bound::verify::run_suite;
use sinc_bound::Real;

#[derive(Parser)]
#[command(
    name = "sinc-bound",
    version,
    about = "SE/DE-Sinc approximation sweeps with explicit error bounds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Approximate an example for a range of n and write n,h,M,N,max_error,bound as CSV
    Sweep(RunArgs),
    /// Print the bound constant C and the bound value for each n
    Bound(RunArgs),
    /// Check the auxiliary inequalities on random and edge-case points
    Verify {
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        #[arg(long, default_value_t = 20_170_321)]
        seed: u64,
    },
    /// Print the evaluation grid, one point per line
    Grid {
        #[arg(long, value_enum, default_value_t = GridKind::Whole)]
        interval: GridKind,
    },
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, value_parser = parse_example)]
    example: ExampleId,
    #[arg(long, value_parser = parse_variant)]
    variant: Variant,
    #[arg(long)]
    n_min: Option<usize>,
    #[arg(long)]
    n_max: Option<usize>,
    #[arg(long)]
    n_step: Option<usize>,
    /// Output file, or `-` for standard output
    #[arg(long, default_value = "-")]
    output: PathBuf,
    #[arg(long, value_enum, default_value_t = Precision::Double)]
    precision: Precision,
}

#[derive(Clone, Copy, ValueEnum)]
enum Precision {
    Double,
    /// IEEE binary128
    Quad,
}

#[derive(Clone, Copy, ValueEnum)]
enum GridKind {
    Whole,
    Half,
}

fn parse_example(s: &str) -> Result<ExampleId, String> {
    s.parse()
}

fn parse_variant(s: &str) -> Result<Variant, String> {
    s.parse()
}

/// I/O failures map to exit status 2, everything else to 1.
#[derive(Debug)]
struct IoFailure(io::Error);

impl std::fmt::Display for IoFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

impl std::error::Error for IoFailure {}

fn io_err(e: io::Error) -> anyhow::Error {
    IoFailure(e).into()
}

impl RunArgs {
    fn n_values(&self) -> Result<Vec<usize>> {
        let defaults = default_n_values::<f64>(self.example, self.variant);
        let n_min = self.n_min.unwrap_or(defaults[0]);
        let n_max = self.n_max.unwrap_or(100);
        let n_step = self.n_step.unwrap_or(2);
        if n_min == 0 || n_step == 0 {
            bail!("--n-min and --n-step must be positive");
        }
        if n_min > n_max {
            bail!("--n-min ({n_min}) exceeds --n-max ({n_max})");
        }
        Ok((n_min..=n_max).step_by(n_step).collect())
    }

    fn open_output(&self) -> Result<Box<dyn Write>> {
        if self.output.as_os_str() == "-" {
            return Ok(Box::new(BufWriter::new(io::stdout().lock())));
        }
        let file = File::create(&self.output)
            .map_err(io_err)
            .with_context(|| format!("cannot create {}", self.output.display()))?;
        Ok(Box::new(BufWriter::new(file)))
    }
}

fn run_sweep<T: Real>(args: &RunArgs) -> Result<()> {
    let ns = args.n_values()?;
    let records = sweep::<T>(args.example, args.variant, &ns)
        .with_context(|| format!("{} {} sweep", args.example, args.variant))?;
    let mut out = args.open_output()?;
    csv::write_sweep(&mut out, &records).map_err(io_err)?;
    out.flush().map_err(io_err)?;
    Ok(())
}

fn run_bound<T: Real>(args: &RunArgs) -> Result<()> {
    let ex = example::<T>(args.example);
    let class = match args.variant {
        Variant::Se => ex.se_class,
        Variant::De => ex.de_class,
    };
    let Some(class) = class else {
        bail!(
            "{} does not satisfy the DE case-1 analyticity assumptions; no explicit error bound applies",
            args.example
        );
    };
    let bound = class.error_bound()?;
    let mut out = args.open_output()?;
    for n in args.n_values()? {
        let v = bound
            .value(n)
            .and_then(|v| class.select_params(n).map(|_| v))
            .with_context(|| format!("bound at n = {n}"))?;
        writeln!(
            out,
            "{n},{},{}",
            csv::float(bound.constant().to_f64_lossy()),
            csv::float(v.to_f64_lossy())
        )
        .map_err(io_err)?;
    }
    out.flush().map_err(io_err)?;
    Ok(())
}

fn run_verify(samples: usize, seed: u64) -> Result<()> {
    let reports = run_suite::<f64>(samples, seed);
    let mut out = io::stdout().lock();
    for r in &reports {
        writeln!(
            out,
            "{:<24} {:>8} passed {:>8} failed",
            r.name, r.passed, r.failed
        )
        .map_err(io_err)?;
    }
    if let Some(bad) = reports.iter().find(|r| !r.ok()) {
        let (x, y) = bad.first_failure.clone().unwrap_or_default();
        bail!(
            "{} failed {} times; first at x = {x}, y = {y}",
            bad.name,
            bad.failed
        );
    }
    Ok(())
}

fn run_grid(kind: GridKind) -> Result<()> {
    let grid = match kind {
        GridKind::Whole => whole_line_grid::<f64>(),
        GridKind::Half => half_line_grid::<f64>(),
    };
    let mut out = BufWriter::new(io::stdout().lock());
    for t in grid {
        writeln!(out, "{}", csv::float(t)).map_err(io_err)?;
    }
    out.flush().map_err(io_err)?;
    Ok(())
}

fn configure_threads() -> Result<()> {
    let Ok(raw) = std::env::var("SINC_BOUND_THREADS") else {
        return Ok(());
    };
    let n: usize = raw.trim().parse().with_context(|| {
        format!("SINC_BOUND_THREADS must be a non-negative integer, got {raw:?}")
    })?;
    if n > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    configure_threads()?;
    match cli.command {
        Command::Sweep(args) => match args.precision {
            Precision::Double => run_sweep::<f64>(&args),
            Precision::Quad => run_sweep::<sinc_bound::Quad>(&args),
        },
        Command::Bound(args) => match args.precision {
            Precision::Double => run_bound::<f64>(&args),
            Precision::Quad => run_bound::<sinc_bound::Quad>(&args),
        },
        Command::Verify { samples, seed } => run_verify(samples, seed),
        Command::Grid { interval } => run_grid(interval),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.chain().any(|c| c.is::<IoFailure>()) {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
