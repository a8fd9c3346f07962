use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use tschur::cpmaps::default_rank_tol;
use tschur::{PsdTolerance, Seed};
use tschur_cli::commands::{self, FuzzArgs, SuiteChoice};
use tschur_cli::report::Report;

#[derive(Parser)]
#[command(name = "tschur", version, about = "Tensorial Schur products, Choi matrices and CP-map checks")]
struct Cli {
    /// Add `elapsed_ms` to the report (makes output run-dependent).
    #[arg(long, global = true)]
    timing: bool,

    /// Relative PSD tolerance (multiplies the Frobenius norm).
    #[arg(long, global = true, default_value_t = 1e-10)]
    rtol: f64,

    /// Absolute PSD tolerance.
    #[arg(long, global = true, default_value_t = 1e-12)]
    atol: f64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Positivity verdict for a matrix, block or map file.
    Psd { file: PathBuf },
    /// Tensorial Schur product of two block files.
    Tschur {
        r: PathBuf,
        s: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Choi matrix of a map file, written as a block file.
    Choi {
        map: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Complete-positivity verdict via the Choi matrix.
    CpCheck { map: PathBuf },
    /// Kraus decomposition of a CP map.
    Kraus {
        map: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Relative eigenvalue cutoff for the Kraus rank.
        #[arg(long)]
        rank_tol: Option<f64>,
    },
    /// Amplified map id ⊗ φ applied to a block file.
    Extend {
        map: PathBuf,
        block: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Randomized search for a PSD input with non-PSD image.
    Falsify {
        map: PathBuf,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value = "0")]
        seed: Seed,
    },
    /// Seeded property campaigns.
    Fuzz {
        /// prop4, cor6, cor7, schur, kron or all.
        #[arg(long, default_value = "all")]
        suite: SuiteChoice,
        /// Decimal or 0x-prefixed hexadecimal.
        #[arg(long, default_value = "0")]
        seed: Seed,
        #[arg(long, default_value_t = 100)]
        instances: usize,
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long)]
        max_m: Option<usize>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Psd { .. } => "psd",
            Command::Tschur { .. } => "tschur",
            Command::Choi { .. } => "choi",
            Command::CpCheck { .. } => "cp-check",
            Command::Kraus { .. } => "kraus",
            Command::Extend { .. } => "extend",
            Command::Falsify { .. } => "falsify",
            Command::Fuzz { .. } => "fuzz",
        }
    }
}

fn run(cli: &Cli) -> anyhow::Result<Report> {
    let tol = PsdTolerance::new(cli.rtol, cli.atol);
    match &cli.command {
        Command::Psd { file } => commands::psd(file, tol),
        Command::Tschur { r, s, out } => commands::tschur(r, s, out.as_ref(), tol),
        Command::Choi { map, out } => commands::choi_cmd(map, out.as_ref(), tol),
        Command::CpCheck { map } => commands::cp_check(map, tol),
        Command::Kraus { map, out, rank_tol } => {
            commands::kraus_cmd(map, out.as_ref(), rank_tol.unwrap_or_else(default_rank_tol), tol)
        }
        Command::Extend { map, block, out } => commands::extend(map, block, out.as_ref(), tol),
        Command::Falsify { map, trials, seed } => commands::falsify(map, *trials, *seed, tol),
        Command::Fuzz {
            suite,
            seed,
            instances,
            max_n,
            max_m,
        } => commands::fuzz(&FuzzArgs {
            suite: *suite,
            seed: *seed,
            instances: *instances,
            max_n: *max_n,
            max_m: *max_m,
            tol,
        }),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .target(env_logger::Target::Stderr)
        .init();
    let cli = Cli::parse();
    let start = Instant::now();
    let mut report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            log::error!("{e:#}");
            Report::error(cli.command.name(), format!("{e:#}"))
        }
    };
    let elapsed = start.elapsed();
    log::info!("{} finished in {elapsed:?}", cli.command.name());
    if cli.timing {
        report.elapsed_ms = Some(elapsed.as_secs_f64() * 1e3);
    }
    println!("{}", report.to_line());
    ExitCode::from(report.verdict.exit_code())
}
