use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use conformal::experiments::{self as ex, ExperimentResult};

#[derive(Parser)]
#[command(name = "conformal", about = "Run the conformal-geometry experiments and check their results")]
struct Cli {
    #[command(subcommand)]
    experiment: Experiment,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,

    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Experiment {
    /// Hypervolume of one expansion-contraction cycle of the closed model.
    FriedmanVolume {
        #[arg(long, default_value_t = 1.0)]
        r0: f64,
        #[arg(long, default_value_t = 4096)]
        steps: usize,
    },
    /// Kinked conformal factor, curvature vector and geodesics in region II.
    Schwarzschild {
        #[arg(long, default_value_t = 1.0)]
        m: f64,
        #[arg(long, default_value_t = 0.0)]
        e: f64,
        #[arg(long, default_value_t = 2.0)]
        k: f64,
        #[arg(long, default_value_t = 1.0)]
        b: f64,
    },
    /// Exact power-series coefficients of the regular interior solution.
    YamabeSeries {
        #[arg(long, default_value_t = 60)]
        order: usize,
    },
    /// Continue the series numerically and build the smooth deformation.
    YamabeShoot {
        #[arg(long, default_value_t = 60)]
        order: usize,
        #[arg(long, default_value_t = 0.1)]
        r0: f64,
        #[arg(long, default_value_t = 1000)]
        steps: usize,
        #[arg(long, default_value_t = 0.5)]
        m: f64,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    /// Asymptotic series of the interior equation in Duffing form.
    Duffing {
        #[arg(long = "T", default_value_t = 60.0)]
        t: f64,
        #[arg(long = "grid-points", default_value_t = 4096)]
        grid_points: usize,
        #[arg(long, default_value_t = 3)]
        steps: usize,
    },
    /// Action functionals, curvature norms and physical constants.
    Norms {
        #[arg(long = "grid-points", default_value_t = 64)]
        grid_points: usize,
    },
    /// Split a symmetric form into a unimodular form and a density.
    Decompose {
        /// Diagonal entries.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with = "matrix")]
        diag: Option<Vec<f64>>,
        /// n*n entries, row-major.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        matrix: Option<Vec<f64>>,
        /// Gauge factor.
        #[arg(long, default_value_t = 2.0, allow_hyphen_values = true)]
        u: f64,
    },
}

fn run(e: Experiment) -> conformal::Result<ExperimentResult> {
    match e {
        Experiment::FriedmanVolume { r0, steps } => ex::friedman_volume(&ex::FriedmanParams { r0, steps }),
        Experiment::Schwarzschild { m, e, k, b } => {
            ex::schwarzschild(&ex::SchwarzschildParams { m, e, k, b, ..Default::default() })
        }
        Experiment::YamabeSeries { order } => ex::yamabe_series(&ex::SeriesParams { order }),
        Experiment::YamabeShoot { order, r0, steps, m, tol } => ex::yamabe_shoot(&ex::ShootParams { order, r0, steps, m, tol }),
        Experiment::Duffing { t, grid_points, steps } => {
            ex::duffing(&ex::DuffingParams { half_width: t, points: grid_points, steps })
        }
        Experiment::Norms { grid_points } => ex::norms(&ex::NormsParams { points: grid_points }),
        Experiment::Decompose { diag, matrix, u } => {
            let form = match (diag, matrix) {
                (_, Some(m)) => ex::FormEntries::RowMajor(m),
                (Some(d), None) => ex::FormEntries::Diagonal(d),
                (None, None) => ex::DecomposeParams::default().form,
            };
            ex::decompose(&ex::DecomposeParams { form, u })
        }
    }
}

fn emit(result: &ExperimentResult, format: Format, out: Option<&PathBuf>) -> io::Result<()> {
    let mut sink: Box<dyn Write> = match out {
        Some(p) => Box::new(File::create(p)?),
        None => Box::new(io::stdout().lock()),
    };
    match format {
        Format::Json => writeln!(sink, "{}", result.to_json()),
        Format::Csv => result.write_csv(&mut sink).map_err(io::Error::other),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match run(cli.experiment) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if let Err(e) = emit(&result, cli.format, cli.out.as_ref()) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    for c in result.checks.iter().filter(|c| !c.pass) {
        eprintln!("FAIL {}: got {}, expected {}", c.name, c.got, c.expected);
    }
    if result.all_pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
