mod commands;
mod output;

use std::io;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use commands::{Bound, Outcome, Status};
use output::{render, Format};
use pebblekit::parse::graph_spec;
use pebblekit::search::DEFAULT_CAP;
use pebblekit::{Engine, Error, ScanOptions, SolverOptions, Strategy};

const EXIT_VIOLATED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_CAP: u8 = 3;

/// Exact graph pebbling numbers, path-power formulas and conjecture scans.
///
/// Graphs: pathpower:n=5,k=2  path:n=4  cycle:n=5  complete:n=4
/// tree:1-2,2-3,2-4  edges:4:1-2,2-3,3-4,4-1  file:<edge-list path>.
/// Configurations: dense 0,1,1,2 or sparse v4:2,v2:1 (1-indexed).
#[derive(Parser, Debug)]
#[command(name = "pebblekit", version, verbatim_doc_comment)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    format: Format,
    /// Worker threads for oracle scans; results do not depend on it.
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Limit on solvability queries (down-set search) or enumerated configurations (size scan).
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    cap: u128,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum StrategyArg {
    DownSet,
    SizeScan,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum EngineArg {
    Firing,
    Moves,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Closed form p_t(n, k) for powers of paths; ranges give a table.
    Formula {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u64,
        #[arg(long, default_value_t = 1)]
        t: u64,
        #[arg(long)]
        n_max: Option<u64>,
        #[arg(long)]
        k_max: Option<u64>,
        #[arg(long)]
        t_max: Option<u64>,
    },
    /// Exact pebbling number: pi(G, D) with --target, pi_t(G, v) with --vertex, else pi_t(G).
    Pi {
        #[arg(long)]
        graph: String,
        #[arg(long, conflicts_with_all = ["vertex", "t"])]
        target: Option<String>,
        #[arg(long)]
        vertex: Option<String>,
        #[arg(long, default_value_t = 1)]
        t: u16,
        #[arg(long, value_enum, default_value_t = StrategyArg::DownSet)]
        strategy: StrategyArg,
    },
    /// Decide whether a configuration covers a target distribution.
    Solve {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        config: String,
        #[arg(long)]
        target: String,
        #[arg(long, value_enum, default_value_t = EngineArg::Firing)]
        engine: EngineArg,
        /// Disable the potential and weight bounds.
        #[arg(long)]
        no_prune: bool,
        /// Only search move sequences of at most this length.
        #[arg(long)]
        max_moves: Option<u64>,
    },
    /// Fewest moves placing one pebble on a vertex.
    MinMoves {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        config: String,
        #[arg(long)]
        target: String,
    },
    /// The W and L lower-bound configurations for target v1 of P_n^(k).
    Witness {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        t: u64,
    },
    /// Tree formula from maximum path partitions, optionally checked against the exact search.
    TreePi {
        #[arg(long)]
        graph: String,
        #[arg(long, default_value_t = 1)]
        t: u64,
        #[arg(long)]
        root: Option<String>,
        #[arg(long)]
        verify: bool,
    },
    /// Pebbling exponent of the path P_n.
    Exponent {
        #[arg(long)]
        n: u64,
    },
    /// Exponent rows with the M(n), m(n), kappa and delta audit.
    ExponentTable {
        #[arg(long, default_value_t = 9)]
        n_min: u64,
        #[arg(long, default_value_t = 4096)]
        n_max: u64,
    },
    /// Chordality, elimination order, simplicial vertices; with --config/--target
    /// also semi-greedy solvability and simplicialization.
    Chordal {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        config: Option<String>,
        #[arg(long)]
        target: Option<String>,
        #[arg(long, default_value_t = 1)]
        t: u16,
    },
    /// Search for an induced pyramid.
    Pyramid {
        #[arg(long)]
        graph: String,
    },
    /// Target-conjecture scan over every distribution of size t.
    Conjecture {
        #[arg(long, required_unless_present = "random")]
        graph: Option<String>,
        #[arg(long, default_value_t = 2)]
        t: u16,
        #[arg(long, value_enum, default_value_t = Bound::Strong)]
        bound: Bound,
        /// Scan this many random connected graphs instead of --graph.
        #[arg(long, conflicts_with = "graph", requires_all = ["vertices", "seed"])]
        random: Option<usize>,
        #[arg(long)]
        vertices: Option<usize>,
        #[arg(long, default_value_t = 0.5)]
        edge_prob: f64,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Whether some maximum-size unsolvable configuration has potential |D| - 1.
    Dsmall {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        target: String,
    },
    /// Whether some maximum-size unsolvable configuration is stacked (needs full support).
    Stacking {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        target: String,
    },
    /// Least size forcing a solution within the move budget (default 2^diam - 1).
    Cheap {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        target: String,
        #[arg(long)]
        budget: Option<u64>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Formula { .. } => "formula",
            Command::Pi { .. } => "pi",
            Command::Solve { .. } => "solve",
            Command::MinMoves { .. } => "min-moves",
            Command::Witness { .. } => "witness",
            Command::TreePi { .. } => "tree-pi",
            Command::Exponent { .. } => "exponent",
            Command::ExponentTable { .. } => "exponent-table",
            Command::Chordal { .. } => "chordal",
            Command::Pyramid { .. } => "pyramid",
            Command::Conjecture { .. } => "conjecture",
            Command::Dsmall { .. } => "dsmall",
            Command::Stacking { .. } => "stacking",
            Command::Cheap { .. } => "cheap",
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    let opts = ScanOptions { cap: cli.cap, ..ScanOptions::default() };
    match &cli.command {
        Command::Formula { n, k, t, n_max, k_max, t_max } => commands::formula(*n, *k, *t, *n_max, *k_max, *t_max),
        Command::Pi { graph, target, vertex, t, strategy } => {
            let strategy = match strategy {
                StrategyArg::DownSet => Strategy::DownSet,
                StrategyArg::SizeScan => Strategy::SizeScan,
            };
            let opts = ScanOptions { strategy, ..opts };
            commands::pi(graph, target.as_deref(), *t, vertex.as_deref(), &opts)
        }
        Command::Solve { graph, config, target, engine, no_prune, max_moves } => {
            let base = if *no_prune { SolverOptions::unpruned() } else { SolverOptions::default() };
            let engine = match engine {
                EngineArg::Firing => Engine::Firing,
                EngineArg::Moves => Engine::Moves,
            };
            commands::solve(graph, config, target, SolverOptions { engine, max_moves: *max_moves, ..base })
        }
        Command::MinMoves { graph, config, target } => commands::min_moves(graph, config, target),
        Command::Witness { n, k, t } => commands::witness(*n, *k, *t),
        Command::TreePi { graph, t, root, verify } => commands::tree_pi_cmd(graph, *t, root.as_deref(), *verify, &opts),
        Command::Exponent { n } => commands::exponent(*n),
        Command::ExponentTable { n_min, n_max } => commands::exponent_table_cmd(*n_min, *n_max),
        Command::Chordal { graph, config, target, t } => {
            commands::chordal(graph, config.as_deref(), target.as_deref(), *t)
        }
        Command::Pyramid { graph } => commands::pyramid(graph),
        Command::Conjecture { graph, t, bound, random, vertices, edge_prob, seed } => {
            let graphs = match (graph, random, vertices, seed) {
                (Some(spec), None, _, _) => vec![graph_spec(spec)?],
                (None, Some(count), Some(n), Some(seed)) => commands::random_graphs(*count, *n, *edge_prob, *seed)?,
                _ => {
                    return Err(Error::InvalidParameter("give --graph, or --random with --vertices and --seed".into()))
                }
            };
            commands::conjecture(&graphs, *t, *bound, &opts)
        }
        Command::Dsmall { graph, target } => commands::dsmall(graph, target, &opts),
        Command::Stacking { graph, target } => commands::stacking(graph, target, &opts),
        Command::Cheap { graph, target, budget } => commands::cheap(graph, target, *budget, &opts),
    }
}

fn status_code(status: Status) -> u8 {
    match status {
        Status::Ok => 0,
        Status::Violated => EXIT_VIOLATED,
        Status::CapExceeded => EXIT_CAP,
    }
}

fn error_code(e: &Error) -> u8 {
    match e {
        Error::CapExceeded { .. } | Error::StateLimit(_) => EXIT_CAP,
        _ => EXIT_USAGE,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(workers) = cli.workers {
        if workers == 0 {
            eprintln!("error: --workers must be at least 1");
            return ExitCode::from(EXIT_USAGE);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(workers).build_global() {
            eprintln!("error: cannot start {workers} workers: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    }
    match run(&cli) {
        Ok((report, status)) => {
            if let Err(e) = render(cli.command.name(), &report, cli.format, &mut io::stdout().lock()) {
                if e.kind() != io::ErrorKind::BrokenPipe {
                    eprintln!("error: {e}");
                    return ExitCode::FAILURE;
                }
            }
            if status == Status::CapExceeded {
                eprintln!("note: some instances exceeded --cap {} and were skipped", cli.cap);
            }
            ExitCode::from(status_code(status))
        }
        Err(e) => {
            eprintln!("error: {e}");
            if error_code(&e) == EXIT_CAP {
                eprintln!("hint: raise --cap (currently {}) or shrink the instance", cli.cap);
            }
            ExitCode::from(error_code(&e))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_contract() {
        assert_eq!(status_code(Status::Ok), 0);
        assert_eq!(status_code(Status::Violated), 1);
        assert_eq!(status_code(Status::CapExceeded), 3);
        assert_eq!(error_code(&Error::CapExceeded { needed: 2, cap: 1 }), 3);
        assert_eq!(error_code(&Error::Parse("x".into())), 2);
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
