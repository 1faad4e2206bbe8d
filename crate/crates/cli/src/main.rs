use std::path::PathBuf;
use std::process::ExitCode;

use charp_cli::{run, CliError, Options, ProblemFile};
use clap::Parser;

/// Exact p-curvature, spectral-cover and Cartier-transform computations over finite fields.
#[derive(Parser, Debug)]
#[command(name = "charp", version)]
struct Args {
    /// Problem file (JSON); reads stdin when omitted.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Seed for randomized modes, overriding the problem file.
    #[arg(long)]
    seed: Option<u64>,
    /// Degree bound for lifts, horizontal sections and intertwiners.
    #[arg(long)]
    degree_bound: Option<u32>,
    /// Worker threads for sweeps.
    #[arg(long)]
    jobs: Option<usize>,
    /// Compact single-line JSON instead of pretty-printed output.
    #[arg(long)]
    json: bool,
}

fn read_input(path: &Option<PathBuf>) -> Result<String, CliError> {
    match path {
        Some(p) => std::fs::read_to_string(p).map_err(|e| CliError::Input(format!("{}: {e}", p.display()))),
        None => std::io::read_to_string(std::io::stdin()).map_err(|e| CliError::Input(format!("stdin: {e}"))),
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    let opts = Options { seed: args.seed, degree_bound: args.degree_bound, jobs: args.jobs };
    let outcome = read_input(&args.input).and_then(|text| ProblemFile::parse(&text)).and_then(|pf| run(&pf, &opts));
    match outcome {
        Ok(out) => {
            let text = if args.json { serde_json::to_string(&out.report) } else { serde_json::to_string_pretty(&out.report) };
            println!("{}", text.expect("reports are plain JSON values"));
            if out.verified {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
        Err(e) => {
            eprintln!("charp: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
