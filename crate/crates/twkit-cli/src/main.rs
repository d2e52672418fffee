use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use twkit_cli::report::{Outcome, RunReport};
use twkit_cli::{bench, check, decompose, exact, load_graph, load_td, parse_mode, CliError, KChoice};

/// Tree decompositions of bounded width.
///
/// Exit codes: 0 success, 1 treewidth exceeds k, 2 invalid input,
/// 3 internal invariant failure.
#[derive(Parser)]
#[command(name = "twkit", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct RunArgs {
    /// Width parameter; required unless --search is given.
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, default_value = "five", value_parser = ["rs4", "three", "five"])]
    mode: String,
    /// Nesting depth of the partial recursion in mode five.
    #[arg(long, default_value_t = 2)]
    alpha: usize,
    /// Search for the smallest accepted k instead of using --k.
    #[arg(long)]
    search: bool,
}

impl RunArgs {
    fn k_choice(&self) -> Result<KChoice, CliError> {
        match (self.search, self.k) {
            (true, _) => Ok(KChoice::Search),
            (false, Some(k)) => Ok(KChoice::Fixed(k)),
            (false, None) => Err(CliError::Input("either --k or --search is required".into())),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Write a decomposition of the graph in .td format to stdout.
    Decompose {
        #[command(flatten)]
        run: RunArgs,
        /// Accepted for symmetry with bench; the algorithms are deterministic.
        #[arg(long)]
        seed: Option<u64>,
        input: PathBuf,
    },
    /// Check a .td file against a .gr file and print its width.
    Validate { graph: PathBuf, decomposition: PathBuf },
    /// Print the exact treewidth of a small graph.
    Exact { input: PathBuf },
    /// Run a decomposition and print its report.
    Stats {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long)]
        json: bool,
        input: PathBuf,
    },
    /// Run every .gr fixture in a directory (generated if absent) and print a table.
    Bench {
        #[arg(long)]
        suite: PathBuf,
        #[command(flatten)]
        run: RunArgs,
        /// Seed for generating fixtures.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Decompose { run, seed: _, input } => {
            let g = load_graph(&input)?;
            let mode = parse_mode(&run.mode, run.alpha)?;
            let (text, report) = decompose(&g, run.k_choice()?, mode)?;
            if report.outcome == Outcome::TwExceeds {
                return Err(CliError::TwExceeds(report.k));
            }
            std::io::stdout().write_all(text.as_bytes()).map_err(|e| CliError::Input(e.to_string()))?;
        }
        Command::Validate { graph, decomposition } => {
            let g = load_graph(&graph)?;
            let td = load_td(&decomposition)?;
            println!("valid, width {}", check(&g, &td)?);
        }
        Command::Exact { input } => println!("{}", exact(&load_graph(&input)?)?),
        Command::Stats { run, json, input } => {
            let g = load_graph(&input)?;
            let mode = parse_mode(&run.mode, run.alpha)?;
            let (_, mut report) = decompose(&g, run.k_choice()?, mode)?;
            report.input = input.display().to_string();
            if json {
                println!("{}", serde_json::to_string_pretty(&report).expect("report serialises"));
            } else {
                println!("{}\n{}", RunReport::table_header(), report.table_row());
            }
            if report.outcome == Outcome::TwExceeds {
                return Err(CliError::TwExceeds(report.k));
            }
        }
        Command::Bench { suite, run, seed, json } => {
            let mode = parse_mode(&run.mode, run.alpha)?;
            let k = if run.k.is_none() { KChoice::Search } else { run.k_choice()? };
            let reports = bench(&suite, seed, k, mode)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&reports).expect("report serialises"));
            } else {
                println!("{}", RunReport::table_header());
                for r in &reports {
                    println!("{}", r.table_row());
                }
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter("TWKIT_LOG")).init();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("twkit: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
