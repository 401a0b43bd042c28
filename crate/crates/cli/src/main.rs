use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use kdom_core::approx::{bounded_degree_approx, k_domset_approx, EpsilonSource};
use kdom_core::decomposition::{low_boundary_partition, parse_fraction, verify_partition, Fraction};
use kdom_core::domset::domset_with;
use kdom_core::experiments::{run_experiments, ExperimentConfig};
use kdom_core::generators::{generate, Family, GeneratorSpec};
use kdom_core::local::Schedule;
use kdom_core::oracle;
use kdom_core::{read_graph, Graph, Result};

#[derive(Parser)]
#[command(name = "kdom", version, about = "Distance-k domination on K_{2,t}-minor-free graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph from a seeded family.
    Gen {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the constant-round heuristic on the LOCAL simulator.
    Domset {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        k: usize,
        /// Include every vertex's choice and ball size.
        #[arg(long)]
        trace: bool,
        #[arg(long)]
        parallel: bool,
    },
    /// Partition a graph into blocks with a small boundary.
    Decompose {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_parser = fraction)]
        epsilon: Fraction,
    },
    /// Run the clustered (1 + alpha) pipeline.
    Approx(ApproxArgs),
    /// Exact engines.
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Run an experiment sweep from a JSON config.
    Run {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Also write the full audit as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Args)]
struct ApproxArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    t: usize,
    #[arg(long, value_parser = fraction, conflicts_with = "epsilon", required_unless_present = "epsilon")]
    alpha: Option<Fraction>,
    #[arg(long, value_parser = fraction)]
    epsilon: Option<Fraction>,
    #[arg(long, value_enum, default_value_t = VariantArg::Clustered)]
    variant: VariantArg,
    /// Ratio bound `γ_1 ≤ C γ_k` for the bounded-degree variant.
    #[arg(long = "C", visible_alias = "c", value_parser = fraction, required_if_eq("variant", "bounded-degree"))]
    c: Option<Fraction>,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Clustered,
    BoundedDegree,
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Exact minimum distance-k dominating set.
    Gamma {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = oracle::DEFAULT_COVER_BUDGET)]
        budget: u64,
    },
    /// Exhaustive K_{2,t}-minor test.
    Minor {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        t: usize,
        #[arg(long, default_value_t = oracle::DEFAULT_MINOR_BUDGET)]
        budget: u64,
    },
}

fn fraction(s: &str) -> std::result::Result<Fraction, String> {
    parse_fraction(s).map_err(|e| e.to_string())
}

fn print_json(value: &impl Serialize) -> Result<()> {
    let mut out = std::io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

fn load(path: &Path) -> Result<Graph> {
    read_graph(path)
}

/// Runs a command; `Ok(false)` means it finished but a check failed.
fn execute(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Gen { family, n, seed, out } => {
            let g = generate(&GeneratorSpec::new(family, n, seed))?;
            match out {
                Some(path) => kdom_core::write_graph(&g, path)?,
                None => println!("{}", g.to_json()),
            }
            Ok(true)
        }
        Command::Domset {
            graph,
            k,
            trace,
            parallel,
        } => {
            let g = load(&graph)?;
            let schedule = if parallel {
                Schedule::Parallel
            } else {
                Schedule::Sequential
            };
            let run = domset_with(&g, k, schedule)?;
            let valid = oracle::is_distance_k_dominating(&g, &run.dominators, k)?;
            if trace {
                print_json(&json!({ "run": run, "valid": valid }))?;
            } else {
                print_json(&json!({
                    "k": k,
                    "size": run.size(),
                    "dominators": run.dominators,
                    "rounds": run.rounds,
                    "messages": run.messages,
                    "valid": valid,
                }))?;
            }
            Ok(valid)
        }
        Command::Decompose { graph, epsilon } => {
            let g = load(&graph)?;
            let partition = low_boundary_partition(&g, epsilon)?;
            let report = verify_partition(&g, &partition, epsilon);
            print_json(&json!({ "partition": partition, "report": report }))?;
            Ok(report.passes())
        }
        Command::Approx(args) => {
            let g = load(&args.graph)?;
            let source = match (args.alpha, args.epsilon) {
                (_, Some(eps)) => EpsilonSource::Direct(eps),
                (Some(alpha), None) => EpsilonSource::Alpha { alpha },
                (None, None) => unreachable!("clap requires one of them"),
            };
            let run = match args.variant {
                VariantArg::Clustered => k_domset_approx(&g, args.k, args.t, source)?,
                VariantArg::BoundedDegree => {
                    let c = args.c.expect("clap requires --C with this variant");
                    bounded_degree_approx(&g, args.k, args.t, c, source)?
                }
            };
            print_json(&run)?;
            Ok(run.audit.q_is_dominating && run.audit.transfer_violations.is_empty())
        }
        Command::Oracle(OracleCommand::Gamma { graph, k, budget }) => {
            let g = load(&graph)?;
            print_json(&oracle::gamma_k_exact_with_budget(&g, k, budget)?)?;
            Ok(true)
        }
        Command::Oracle(OracleCommand::Minor { graph, t, budget }) => {
            let g = load(&graph)?;
            let found = oracle::has_k2t_minor_with_budget(&g, t, budget)?;
            print_json(&json!({ "t": t, "has_minor": found }))?;
            Ok(true)
        }
        Command::Run { config, out, json } => {
            let cfg = ExperimentConfig::from_path(&config)?;
            let report = run_experiments(&cfg)?;
            report.write_csv(std::fs::File::create(&out)?)?;
            if let Some(path) = json {
                std::fs::write(path, report.to_json()? + "\n")?;
            }
            print_json(&report.summary)?;
            for failure in report.failures() {
                eprintln!("FAIL {failure}");
            }
            Ok(report.passed())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
