//! `gred` — graph reductions over GF(2) from the command line.
//!
//! Every subcommand reads the text formats of the library (graph files,
//! strategy files, poset files, legal strings), writes data to stdout and
//! diagnostics to stderr, and exits nonzero on any error. Outputs are
//! deterministic, including the seeded census.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};

use gred::graph::{Graph, VertexSet};
use gred::parallel::{parallel_complexity, parallel_complexity_census_with, EdgeDistribution};
use gred::pivot::{pivot_graph, retrograph, reverse_reductions};
use gred::poset::{graph_from_pivotal_poset, parse_poset_file, reducibility_poset};
use gred::reduction::{applicable_rules, apply_strategy, is_reducible, reduce, strategy_for, Strategy};

#[derive(Parser)]
#[command(name = "gred", version, about = "Graph reductions, pivots, and posets over GF(2)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Reduce a graph by a vertex set and print the result.
    Reduce {
        graph: PathBuf,
        /// Comma-separated vertex labels, no spaces; empty for the empty set.
        #[arg(long, default_value = "")]
        vertices: String,
    },
    /// Report whether a vertex set is reducible and at which nullity.
    Check {
        graph: PathBuf,
        #[arg(long, default_value = "")]
        vertices: String,
    },
    /// List the applicable combinatorial rules.
    Rules { graph: PathBuf },
    /// Print a strategy removing the given vertex set.
    Strategy {
        graph: PathBuf,
        #[arg(long, default_value = "")]
        vertices: String,
    },
    /// Apply a strategy file to a graph.
    Apply { graph: PathBuf, strategy: PathBuf },
    /// Print the reducibility poset, optionally restricted to one level.
    Poset {
        graph: PathBuf,
        #[arg(long)]
        level: Option<usize>,
    },
    /// Reconstruct a graph from its pivotal poset (the level-0 lines).
    FromPoset {
        /// Comma-separated ground-set labels.
        labels: String,
        poset: PathBuf,
    },
    /// Pivot a graph by a vertex set.
    Pivot {
        graph: PathBuf,
        #[arg(long, default_value = "")]
        set: String,
    },
    /// Print the retrograph (pivot by the whole vertex set).
    Retrograph { graph: PathBuf },
    /// All graphs that reduce onto the input when the added vertices are
    /// removed.
    Reverse {
        graph: PathBuf,
        /// Comma-separated new vertex labels.
        #[arg(long, default_value = "")]
        add: String,
    },
    /// Exact parallel complexity of a graph.
    Parallel { graph: PathBuf },
    /// Parallel-complexity distribution over seeded random graphs.
    ParallelCensus {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        sample: usize,
        #[arg(long)]
        seed: u64,
        /// `uniform` or `bernoulli:<p>`.
        #[arg(long, default_value = "uniform")]
        distribution: String,
    },
    /// Build the graph of a legal string (one line of signed tokens).
    FromString { file: PathBuf },
    /// DOT rendering of a graph.
    Dot { graph: PathBuf },
}

fn load_graph(path: &Path) -> Result<Graph> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    text.parse::<Graph>().map_err(|e| anyhow!("{}: {e}", path.display()))
}

fn parse_labels(list: &str) -> Vec<String> {
    if list.is_empty() {
        Vec::new()
    } else {
        list.split(',').map(str::to_string).collect()
    }
}

fn parse_vertex_set(list: &str) -> VertexSet {
    parse_labels(list).into_iter().collect()
}

fn parse_distribution(choice: &str) -> Result<EdgeDistribution> {
    if choice == "uniform" {
        return Ok(EdgeDistribution::Uniform);
    }
    if let Some(p) = choice.strip_prefix("bernoulli:") {
        let p: f64 = p.parse().context("bad edge probability")?;
        if !(0.0..=1.0).contains(&p) {
            bail!("edge probability {p} is outside [0, 1]");
        }
        return Ok(EdgeDistribution::Bernoulli(p));
    }
    bail!("unknown distribution `{choice}`: expected `uniform` or `bernoulli:<p>`")
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Reduce { graph, vertices } => {
            let g = load_graph(&graph)?;
            let reduced = reduce(&g, &parse_vertex_set(&vertices))?;
            print!("{reduced}");
        }
        Command::Check { graph, vertices } => {
            let g = load_graph(&graph)?;
            let w = parse_vertex_set(&vertices);
            if is_reducible(&g, &w)? {
                println!("reducible nullity={}", g.nullity_of(&w)?);
            } else {
                match reduce(&g, &w) {
                    Err(gred::Error::NotReducible { witness }) => {
                        println!("not-reducible witness={witness}")
                    }
                    other => bail!("expected a non-reducibility witness, got {other:?}"),
                }
            }
        }
        Command::Rules { graph } => {
            let g = load_graph(&graph)?;
            for rule in applicable_rules(&g) {
                println!("{rule}");
            }
        }
        Command::Strategy { graph, vertices } => {
            let g = load_graph(&graph)?;
            let s = strategy_for(&g, &parse_vertex_set(&vertices))?;
            print!("{s}");
        }
        Command::Apply { graph, strategy } => {
            let g = load_graph(&graph)?;
            let text = fs::read_to_string(&strategy)
                .with_context(|| format!("cannot read {}", strategy.display()))?;
            let s: Strategy = text.parse().map_err(|e| anyhow!("{}: {e}", strategy.display()))?;
            let result = apply_strategy(&g, &s)?;
            print!("{result}");
        }
        Command::Poset { graph, level } => {
            let g = load_graph(&graph)?;
            let poset = reducibility_poset(&g)?;
            for (member, l) in poset.members() {
                if level.is_none_or(|want| want == l) {
                    let labels: Vec<&str> = member.iter().map(String::as_str).collect();
                    println!("level {l}: {{{}}}", labels.join(","));
                }
            }
        }
        Command::FromPoset { labels, poset } => {
            let text = fs::read_to_string(&poset)
                .with_context(|| format!("cannot read {}", poset.display()))?;
            let entries = parse_poset_file(&text).map_err(|e| anyhow!("{}: {e}", poset.display()))?;
            let r0: BTreeSet<VertexSet> = entries
                .into_iter()
                .filter(|(_, level)| *level == 0)
                .map(|(member, _)| member)
                .collect();
            let ground = parse_labels(&labels);
            match graph_from_pivotal_poset(&ground, &r0)? {
                Some(g) => print!("{g}"),
                None => bail!("the poset is not realizable over the given labels"),
            }
        }
        Command::Pivot { graph, set } => {
            let g = load_graph(&graph)?;
            let w = parse_vertex_set(&set);
            match pivot_graph(&g, &w)? {
                Some(p) => print!("{p}"),
                None => {
                    let labels: Vec<&str> = w.iter().map(String::as_str).collect();
                    bail!(
                        "{{{}}} is not pivotal: its principal submatrix is singular",
                        labels.join(",")
                    );
                }
            }
        }
        Command::Retrograph { graph } => {
            let g = load_graph(&graph)?;
            print!("{}", retrograph(&g)?);
        }
        Command::Reverse { graph, add } => {
            let g = load_graph(&graph)?;
            let extensions = reverse_reductions(&g, &parse_labels(&add))?;
            let mut first = true;
            for ext in extensions {
                if !first {
                    println!();
                }
                print!("{ext}");
                first = false;
            }
        }
        Command::Parallel { graph } => {
            let g = load_graph(&graph)?;
            println!("pc={}", parallel_complexity(&g)?);
        }
        Command::ParallelCensus { n, sample, seed, distribution } => {
            let dist = parse_distribution(&distribution)?;
            let report = parallel_complexity_census_with(n, sample, seed, dist)?;
            print!("{report}");
        }
        Command::FromString { file } => {
            let text = fs::read_to_string(&file).with_context(|| format!("cannot read {}", file.display()))?;
            let g = Graph::from_legal_string(&text).map_err(|e| anyhow!("{}: {e}", file.display()))?;
            print!("{g}");
        }
        Command::Dot { graph } => {
            let g = load_graph(&graph)?;
            print!("{}", g.to_dot());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("gred: {e:#}");
            ExitCode::FAILURE
        }
    }
}
