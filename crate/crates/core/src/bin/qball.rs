use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use qball::verify::{parse_tolerance, run_suite, Suite, SuiteConfig};

/// Run a verification suite and print its JSON report.
#[derive(Parser, Debug)]
#[command(name = "qball", version)]
struct Args {
    /// Suite name, or `all`.
    suite: String,
    #[arg(long, default_value_t = 2)]
    n: usize,
    #[arg(long, default_value_t = 0.5)]
    q: f64,
    /// Truncation level N.
    #[arg(long, default_value_t = 6)]
    trunc: usize,
    #[arg(long, default_value_t = 2)]
    degree: usize,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    #[arg(long, default_value_t = 20)]
    samples: usize,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Tolerance override, `key=value`; repeatable.
    #[arg(long = "tol", value_parser = parse_tolerance)]
    tol: Vec<(String, f64)>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    if let Some(threads) = std::env::var("QBALL_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        rayon::ThreadPoolBuilder::new().num_threads(threads.max(1)).build_global().ok();
    }
    let suites = if args.suite == "all" {
        Vec::new()
    } else {
        match args.suite.split(',').map(str::parse::<Suite>).collect::<Result<Vec<_>, _>>() {
            Ok(s) => s,
            Err(e) => {
                eprintln!("qball: {e}");
                return ExitCode::from(2);
            }
        }
    };
    let cfg = SuiteConfig {
        n: args.n,
        q: args.q,
        trunc: args.trunc,
        degree: args.degree,
        seed: args.seed,
        samples: args.samples,
        tolerances: args.tol.into_iter().collect(),
        suites,
        out: args.out,
    };
    match run_suite(&cfg) {
        Ok(report) => {
            println!("{}", report.to_json());
            if report.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("qball: {e}");
            ExitCode::from(2)
        }
    }
}
