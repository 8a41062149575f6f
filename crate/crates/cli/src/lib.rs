//! Command-line frontend tying the numerical modules into reproducible
//! experiments: closed-form soliton tables, solver runs, bound-check
//! diagnostics, distance/volume reports and degenerate-plane curvature
//! minimization.
//!
//! Exit codes: 0 = success / all checks pass; 1 = a bound or invariant
//! check failed (reports still emitted); 2 = input or configuration error;
//! 3 = numerical failure (Newton breakdown, positivity loss).

pub mod commands;
pub mod config;
pub mod csvio;
pub mod summary;
pub mod tensorio;

use clap::{Parser, Subcommand};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INPUT_ERROR: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("input error: {0}")]
    Input(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) | CliError::Io(_) => EXIT_INPUT_ERROR,
            CliError::Numerical(_) => EXIT_NUMERICAL,
        }
    }
}

impl From<planeflow_core::Error> for CliError {
    fn from(e: planeflow_core::Error) -> Self {
        use planeflow_core::Error as E;
        match e {
            E::NewtonFailure { .. } | E::Positivity(_) => CliError::Numerical(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

const AFTER_HELP: &str = "\
Defaults:
  soliton   --fd-step 1e-4, --out - (stdout), no summary file
  evolve    dt = h^2/4 when [evolution].dt is omitted; newton_tol 1e-12;
            newton_max_iter 50; output_times = [t_end]
  diagnose  --alpha 1.0, --tol-coef 0.05 (tolerance tol-coef/(t - t-start)),
            --t-start 0.0, --t-min 0.0, --tol-order 10.0
  distance  [distance].stencil_order 2 (16-neighbor), honors the global seed
  pic1      --samples 2000, --refine-iters 10, --tol 1e-8, --seed 0;
            [pic1] config values fill unset flags, the global seed applies

Config files are TOML; unknown keys are rejected. See `planeflow help
<subcommand>` and the README for the full schema.";

#[derive(Parser, Debug)]
#[command(
    name = "planeflow",
    version,
    about = "Translation-invariant Ricci flow on the plane: logarithmic fast diffusion solver, curvature-bound verifier and K_IC1 curvature lab",
    after_help = AFTER_HELP
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Emit the analytic soliton table (t,x,u,K,w,q) and a PDE-residual summary
    Soliton {
        /// Time t > 0 of the snapshot
        #[arg(long)]
        t: f64,
        /// Half-width of the symmetric grid [-xmax, xmax]
        #[arg(long)]
        xmax: f64,
        /// Node count (>= 3)
        #[arg(long)]
        n: usize,
        /// Step for the finite-difference residual check
        #[arg(long, default_value_t = 1e-4)]
        fd_step: f64,
        /// Output CSV path ("-" for stdout)
        #[arg(long, default_value = "-")]
        out: String,
        /// Optional JSON summary path
        #[arg(long)]
        summary: Option<String>,
    },
    /// Run the implicit solver from a TOML experiment config
    Evolve {
        #[arg(long)]
        config: String,
    },
    /// Run every pressure-module check on a trajectory CSV
    Diagnose {
        /// Trajectory CSV produced by `evolve` (or `soliton`)
        #[arg(long)]
        traj: String,
        /// Maximum-principle exponent alpha in q <= 1/(alpha t)
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
        /// Bound tolerance coefficient: tol = tol_coef / (t - t_start)
        #[arg(long, default_value_t = 0.05)]
        tol_coef: f64,
        /// Flow start time used for the tolerance window
        #[arg(long, default_value_t = 0.0)]
        t_start: f64,
        /// Skip bound checks for states with t - t_start below this value
        #[arg(long, default_value_t = 0.0)]
        t_min: f64,
        /// q-evolution residual must stay below tol_order*(dt + h^2)
        #[arg(long, default_value_t = 10.0)]
        tol_order: f64,
        /// Optional JSON summary path
        #[arg(long)]
        summary: Option<String>,
    },
    /// Attainment report and volume-ratio tables from a TOML config
    Distance {
        #[arg(long)]
        config: String,
    },
    /// Minimize complex sectional curvature over degenerate 2-planes
    Pic1 {
        /// Tensor JSON: {"dimension": n, "components": [[i,j,k,l,value], ...]}
        #[arg(long)]
        input: String,
        /// Optional experiment config supplying [pic1] defaults and the seed
        #[arg(long)]
        config: Option<String>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        refine_iters: Option<usize>,
        /// WPIC1 verdict tolerance: pass iff min_ic1 >= -tol
        #[arg(long)]
        tol: Option<f64>,
        /// Optional JSON report path
        #[arg(long)]
        summary: Option<String>,
    },
}

/// Parse argv and run; returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            // clap handles --help/--version with its own formatting
            let code = if e.use_stderr() {
                EXIT_INPUT_ERROR
            } else {
                EXIT_OK
            };
            let _ = e.print();
            return code;
        }
    };
    let outcome = match cli.command {
        Command::Soliton {
            t,
            xmax,
            n,
            fd_step,
            out,
            summary,
        } => commands::soliton::run(t, xmax, n, fd_step, &out, summary.as_deref()),
        Command::Evolve { config } => commands::evolve::run(&config),
        Command::Diagnose {
            traj,
            alpha,
            tol_coef,
            t_start,
            t_min,
            tol_order,
            summary,
        } => commands::diagnose::run(
            &traj,
            alpha,
            tol_coef,
            t_start,
            t_min,
            tol_order,
            summary.as_deref(),
        ),
        Command::Distance { config } => commands::distance::run(&config),
        Command::Pic1 {
            input,
            config,
            samples,
            seed,
            refine_iters,
            tol,
            summary,
        } => commands::pic1::run(
            &input,
            config.as_deref(),
            samples,
            seed,
            refine_iters,
            tol,
            summary.as_deref(),
        ),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("planeflow: {e}");
            e.exit_code()
        }
    }
}
