//! `capax` — capacity of two intervals: exact value, bounds, verification
//! and oracle pinning.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage/domain error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use capax_cli::{
    cap_record, pin_record, run_sweep, run_verify, CapRecord, RunConfig, SweepSpec,
};

#[derive(Parser)]
#[command(name = "capax", version, about = "Logarithmic capacity of two real intervals")]
struct Cli {
    /// Theta-series truncation override, in [1e-16, 1e-8].
    #[arg(long, global = true, default_value_t = 1e-16)]
    tolerance: f64,

    /// Seed for randomized sweeps (verify --bracket).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// rayon thread-pool size (defaults to the number of cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one pair: capacity, chart and all bounds.
    Cap {
        #[arg(allow_negative_numbers = true)]
        alpha: f64,
        #[arg(allow_negative_numbers = true)]
        beta: f64,
        /// Output format.
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Sweep beta for each alpha; one CSV per alpha plus a plot script.
    Sweep {
        /// Comma-separated alphas (defaults to -0.7,-0.4,-0.1,0.1,0.4,0.7).
        #[arg(long, num_args = 1, value_delimiter = ',', allow_hyphen_values = true)]
        alphas: Option<Vec<f64>>,
        /// Points per beta grid.
        #[arg(long, default_value_t = 200)]
        points: usize,
        /// Distance kept from the degenerate edges of the beta grid.
        #[arg(long, default_value_t = 1e-6)]
        margin: f64,
        /// Output directory.
        #[arg(long, default_value = "sweep_out")]
        out: PathBuf,
    },
    /// Run the lemma verification grids; exit 1 on any violation.
    Verify {
        /// Grid resolution along the u / lambda axis.
        #[arg(long, default_value_t = 200)]
        grid: usize,
        /// Extra seeded random-pair bracketing check (0 = off).
        #[arg(long, default_value_t = 0)]
        bracket: usize,
        /// Flip the outcome of one lemma (harness testing only).
        #[arg(long, hide = true)]
        inject_fault: Option<usize>,
    },
    /// Pin a golden record: oracle estimate vs exact capacity.
    Pin {
        #[arg(allow_negative_numbers = true)]
        alpha: f64,
        #[arg(allow_negative_numbers = true)]
        beta: f64,
        /// Leja sequence length (>= 100).
        n: usize,
        /// Also write the record to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = RunConfig {
        tolerance: cli.tolerance,
        seed: cli.seed,
        threads: cli.threads,
    };
    if let Err(message) = config.validate() {
        eprintln!("error: {message}");
        return ExitCode::from(2);
    }
    if let Some(threads) = config.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
        {
            eprintln!("error: cannot configure thread pool: {e}");
            return ExitCode::from(2);
        }
    }

    match cli.command {
        Command::Cap {
            alpha,
            beta,
            format,
        } => match cap_record(alpha, beta, &config) {
            Ok(record) => {
                match format {
                    Format::Csv => {
                        println!("{}", CapRecord::CSV_HEADER);
                        println!("{}", record.csv_row());
                    }
                    Format::Json => {
                        println!(
                            "{}",
                            serde_json::to_string_pretty(&record)
                                .expect("record serializes")
                        );
                    }
                }
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        },
        Command::Sweep {
            alphas,
            points,
            margin,
            out,
        } => {
            let mut spec = SweepSpec::default();
            if let Some(alphas) = alphas {
                spec.alphas = alphas;
            }
            spec.beta_count = points;
            spec.margin = margin;
            match run_sweep(&spec, &out, &config) {
                Ok(paths) => {
                    for path in paths {
                        println!("wrote {}", path.display());
                    }
                    println!("wrote {}", out.join("plot.py").display());
                    ExitCode::SUCCESS
                }
                Err(message) => {
                    eprintln!("error: {message}");
                    ExitCode::from(2)
                }
            }
        }
        Command::Verify {
            grid,
            bracket,
            inject_fault,
        } => {
            let outcome = run_verify(grid, bracket, &config, inject_fault);
            for line in &outcome.lines {
                let status = if line.pass { "PASS" } else { "FAIL" };
                println!("{status} {}: {}", line.name, line.detail);
            }
            if outcome.all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Command::Pin {
            alpha,
            beta,
            n,
            out,
        } => match pin_record(alpha, beta, n, &config) {
            Ok(record) => {
                let json =
                    serde_json::to_string_pretty(&record).expect("record serializes");
                println!("{json}");
                if let Some(path) = out {
                    if let Err(e) = capax_cli::write_atomic(&path, &(json + "\n")) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return ExitCode::from(2);
                    }
                }
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        },
    }
}
