mod input;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use gent_core::coloring::{
    chromatic_entropy_lower_bound, chromatic_number, clique_entropy, grundy_number,
    independence_bound, max_chi_h, min_entropy_coloring,
};
use gent_core::config::{DEFAULT_BUDGET, DEFAULT_TOL, SYMMETRY_TOL};
use gent_core::corner::{entropy_am, entropy_fw, max_entropy_distribution};
use gent_core::counting::{bregman_bound, count_perfect_matchings, shearer_check, PointSet3D};
use gent_core::fractional::{fractional_chromatic_number, fractional_edge_chromatic};
use gent_core::graph::{bipartition, to_dimacs};
use gent_core::symmetry::{
    check_bipartite_symmetric, check_line_graph_symmetric, check_perfect_symmetric, is_perfect,
    numeric_symmetry_check,
};
use gent_core::verify::{run_suite, Suite, VerifyOptions};
use gent_core::{Caps, Error, SolverConfig};

use input::{load_distribution, GraphArgs};
use output::{Format, Output};

/// Exit status for invalid input.
const EXIT_INPUT: u8 = 1;
/// Exit status when a solver ran out of budget or failed its certificate.
const EXIT_SOLVER: u8 = 2;
/// Exit status when a verification check failed.
const EXIT_VERIFY: u8 = 3;

#[derive(Parser)]
#[command(name = "gent", version, about = "Graph entropy, colorings and symmetry of graphs")]
struct Cli {
    #[command(flatten)]
    run: RunArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct RunArgs {
    /// Target accuracy in bits.
    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// Iteration budget of the iterative solvers.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: usize,
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Add wall-clock time to the output (makes it nondeterministic).
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EntropyMethod {
    Fw,
    Am,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SymmetryCriterion {
    /// Pick the structural test that applies, else the numeric one.
    Auto,
    Bipartite,
    Perfect,
    Line,
    Numeric,
}

#[derive(Subcommand)]
enum Command {
    /// Graph entropy H_k(G,P).
    Entropy {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, default_value = "uniform")]
        dist: String,
        #[arg(long, value_enum, default_value_t = EntropyMethod::Fw)]
        method: EntropyMethod,
    },
    /// Minimum entropy coloring, χ_H and the entropy bounds around it.
    ChromaticEntropy {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, default_value = "uniform")]
        dist: String,
    },
    /// Chromatic number, Grundy number and max_P χ_H.
    Coloring {
        #[command(flatten)]
        graph: GraphArgs,
    },
    /// Fractional chromatic number as an exact rational.
    Fractional {
        #[command(flatten)]
        graph: GraphArgs,
    },
    /// Fractional edge-chromatic number as an exact rational.
    FractionalEdge {
        #[command(flatten)]
        graph: GraphArgs,
    },
    /// The distribution maximizing graph entropy.
    MaxEntropy {
        #[command(flatten)]
        graph: GraphArgs,
    },
    /// Whether the uniform distribution maximizes graph entropy.
    ///
    /// With --line-of the k-graph criterion is applied to the given graph
    /// and the verdict concerns its line graph.
    Symmetry {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, value_enum, default_value_t = SymmetryCriterion::Auto)]
        criterion: SymmetryCriterion,
    },
    /// Print a graph as DIMACS (text format) or JSON.
    Generate {
        #[command(flatten)]
        graph: GraphArgs,
    },
    /// Counting bounds: projections of point sets and perfect matchings.
    Counting {
        #[command(subcommand)]
        what: CountingCommand,
    },
    /// Run the acceptance checks.
    Verify {
        /// paper, properties or all.
        #[arg(long, default_value = "all")]
        suite: String,
        /// Check only this many graphs in the splitting criterion.
        #[arg(long)]
        sample: Option<usize>,
    },
}

#[derive(Subcommand)]
enum CountingCommand {
    /// Projection inequality for a file of `x y z` lines.
    Shearer { points: PathBuf },
    /// Number of perfect matchings of a balanced bipartite graph.
    Matchings {
        #[command(flatten)]
        graph: GraphArgs,
    },
    /// Brégman's bound on perfect matchings.
    Bregman {
        #[command(flatten)]
        graph: GraphArgs,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            return ExitCode::from(EXIT_INPUT);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::NonConvergence { .. } | Error::CertificateMismatch { .. } => EXIT_SOLVER,
                _ => EXIT_INPUT,
            })
        }
    }
}

fn solver_config(run: &RunArgs) -> Result<SolverConfig, Error> {
    let cfg = SolverConfig {
        tol: run.tol,
        budget: run.budget,
        caps: Caps::from_env()?,
    };
    if !(cfg.tol > 0.0 && cfg.tol.is_finite()) {
        return Err(Error::InvalidParameter(format!("--tol must be > 0, got {}", cfg.tol)));
    }
    if cfg.budget == 0 {
        return Err(Error::InvalidParameter("--budget must be >= 1".into()));
    }
    Ok(cfg)
}

fn run(cli: Cli) -> Result<u8, Error> {
    let cfg = solver_config(&cli.run)?;
    let out = Output::new(cli.run.format, cli.run.timing);
    let start = Instant::now();
    match cli.command {
        Command::Entropy {
            graph,
            dist,
            method,
        } => {
            let loaded = graph.load()?;
            let p = load_distribution(&dist, loaded.graph.n())?;
            let g = &loaded.graph;
            let mut code = 0;
            let mut run_one = |m: EntropyMethod| -> Result<Value, Error> {
                let r = match m {
                    EntropyMethod::Fw => entropy_fw(g, &p, &cfg).map(|r| json!(r)),
                    _ => entropy_am(g, &p, &cfg).map(|r| json!(r)),
                };
                match r {
                    Ok(mut v) => {
                        v["converged"] = json!(true);
                        Ok(v)
                    }
                    Err(Error::NonConvergence { best, .. }) => {
                        eprintln!("warning: iteration budget exhausted");
                        code = EXIT_SOLVER;
                        let mut v = json!(*best);
                        v["converged"] = json!(false);
                        Ok(v)
                    }
                    Err(e) => Err(e),
                }
            };
            let result = match method {
                EntropyMethod::Both => {
                    let fw = run_one(EntropyMethod::Fw)?;
                    let am = run_one(EntropyMethod::Am)?;
                    let diff = (fw["value_bits"].as_f64().unwrap_or(f64::NAN)
                        - am["value_bits"].as_f64().unwrap_or(f64::NAN))
                    .abs();
                    json!({"fw": fw, "am": am, "difference_bits": diff})
                }
                m => run_one(m)?,
            };
            out.emit("entropy", Some(&loaded), result, start);
            Ok(code)
        }
        Command::ChromaticEntropy { graph, dist } => {
            let loaded = graph.load()?;
            let g = &loaded.graph;
            let p = load_distribution(&dist, g.n())?;
            let m = min_entropy_coloring(g, &p, &cfg.caps)?;
            let hk = entropy_fw(g, &p, &cfg)?.result.value;
            let result = json!({
                "coloring": m,
                "bounds": {
                    "independence_bits": independence_bound(g, &p)?,
                    "graph_entropy_bits": hk,
                    "log_chromatic_bits": (chromatic_number(g, &cfg.caps)?.chi as f64).log2(),
                    "clique_entropy_bits": clique_entropy(g, &p, &cfg)?,
                },
            });
            out.emit("chromatic-entropy", Some(&loaded), result, start);
            Ok(0)
        }
        Command::Coloring { graph } => {
            let loaded = graph.load()?;
            let g = &loaded.graph;
            let result = json!({
                "chromatic": chromatic_number(g, &cfg.caps)?,
                "grundy": grundy_number(g, &cfg.caps)?,
                "max_chi_h": max_chi_h(g, &cfg.caps)?,
                "uniform_lower_bound_bits": chromatic_entropy_lower_bound(g)?,
            });
            out.emit("coloring", Some(&loaded), result, start);
            Ok(0)
        }
        Command::Fractional { graph } => {
            let loaded = graph.load()?;
            let r = fractional_chromatic_number(&loaded.graph, &cfg.caps)?;
            out.emit("fractional", Some(&loaded), json!(r), start);
            Ok(0)
        }
        Command::FractionalEdge { graph } => {
            let loaded = graph.load()?;
            let r = fractional_edge_chromatic(&loaded.graph, &cfg.caps)?;
            out.emit("fractional-edge", Some(&loaded), json!(r), start);
            Ok(0)
        }
        Command::MaxEntropy { graph } => {
            let loaded = graph.load()?;
            let r = max_entropy_distribution(&loaded.graph, &cfg)?;
            out.emit("max-entropy", Some(&loaded), json!(r), start);
            Ok(0)
        }
        Command::Symmetry { graph, criterion } => {
            let line_of = graph.line_graph;
            let loaded = graph.load_base()?;
            let g = &loaded.graph;
            let criterion = match (criterion, line_of) {
                (SymmetryCriterion::Auto, true) => SymmetryCriterion::Line,
                (SymmetryCriterion::Auto, false) => {
                    let no_isolated = (0..g.n()).all(|v| g.degree(v) > 0);
                    if g.n() <= 64 && no_isolated && bipartition(g).is_some() {
                        SymmetryCriterion::Bipartite
                    } else if matches!(is_perfect(g, &cfg.caps), Ok(true)) {
                        SymmetryCriterion::Perfect
                    } else {
                        SymmetryCriterion::Numeric
                    }
                }
                (c, _) => c,
            };
            let verdict = match criterion {
                SymmetryCriterion::Bipartite => check_bipartite_symmetric(g, &cfg)?,
                SymmetryCriterion::Perfect => check_perfect_symmetric(g, &cfg)?,
                SymmetryCriterion::Line => check_line_graph_symmetric(g, &cfg)?,
                _ => numeric_symmetry_check(g, SYMMETRY_TOL, &cfg)?,
            };
            out.emit("symmetry", Some(&loaded), json!(verdict), start);
            Ok(0)
        }
        Command::Generate { graph } => {
            let loaded = graph.load()?;
            match cli.run.format {
                Format::Text => print!("{}", to_dimacs(&loaded.graph)),
                Format::Json => {
                    let edges: Vec<_> = loaded.graph.edges().collect();
                    out.emit("generate", Some(&loaded), json!({"edges": edges}), start);
                }
            }
            Ok(0)
        }
        Command::Counting { what } => match what {
            CountingCommand::Shearer { points } => {
                let text = input::read(&points.display().to_string())?;
                let pts: PointSet3D = text.parse()?;
                out.emit("counting-shearer", None, json!(shearer_check(&pts)), start);
                Ok(0)
            }
            CountingCommand::Matchings { graph } => {
                let loaded = graph.load()?;
                let count = count_perfect_matchings(&loaded.graph, &cfg.caps)?;
                out.emit("counting-matchings", Some(&loaded), json!({"count": count}), start);
                Ok(0)
            }
            CountingCommand::Bregman { graph } => {
                let loaded = graph.load()?;
                let r = bregman_bound(&loaded.graph, &cfg.caps)?;
                out.emit("counting-bregman", Some(&loaded), json!(r), start);
                Ok(0)
            }
        },
        Command::Verify { suite, sample } => {
            let suite: Suite = suite.parse()?;
            let opts = VerifyOptions {
                seed: cli.run.seed,
                sample,
                cfg,
            };
            let checks = run_suite(suite, &opts);
            let failed = checks.iter().filter(|c| !c.passed).count();
            out.emit_checks(&checks, start);
            Ok(if failed == 0 { 0 } else { EXIT_VERIFY })
        }
    }
}
