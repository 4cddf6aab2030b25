use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use turan_core::bounds::{bounds_report, report_csv};
use turan_core::constructions::{
    design_shadow_construction, fores_construction, steiner_triple_system, validate_design,
};
use turan_core::embed::{count_copies, is_free};
use turan_core::search::{
    self, verify_fores_structure, BoundKind, Engine, SearchOptions, SearchProblem,
};
use turan_core::{blowup, make_pattern, suspend, Hypergraph, Result};

const PATTERN_HELP: &str = "\
Pattern specs:
  K<k>        complete graph on k vertices
  K<s>,<t>    complete bipartite graph
  C<l>        cycle on l >= 3 vertices
  P<k>        path on k vertices, so P3 is the path v1 v2 v3 with 2 edges
  M<t>        matching with t edges
  H(<t>)      two copies of K<t>,<t> and a triangle, 4t+3 vertices
  Q(<t>)      four independent t-sets and a triangle, 4t+3 vertices
  A+B         disjoint union
  S<r>(A)     r-uniform suspension of the graph A
  (A)         grouping
  @<file>     hypergraph read from a JSON file

Hypergraph files hold {\"n\":<int>,\"r\":<int>,\"edges\":[[v,...],...]}; use - for stdin.";

#[derive(Parser)]
#[command(name = "turan", version, about = "Suspension hypergraphs and small Turán numbers", after_help = PATTERN_HELP)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a hypergraph and print it as JSON
    #[command(subcommand)]
    Construct(Construct),
    /// Decide a property of a hypergraph
    #[command(subcommand)]
    Check(Check),
    /// Count substructures
    #[command(subcommand)]
    Count(Count),
    /// Exact Turán numbers by exhaustive search
    #[command(subcommand)]
    Search(Search),
    /// Closed-form bounds against constructions and searched values
    #[command(subcommand)]
    Bounds(Bounds),
    /// Link-graph classification of the vertices of a 3-graph
    #[command(subcommand)]
    Classify(Classify),
}

#[derive(Args)]
struct Output {
    /// Write the JSON here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Construct {
    /// Steiner triple system of order m (m = 1 or 3 mod 6, m >= 7)
    Sts {
        #[arg(long)]
        m: usize,
        #[command(flatten)]
        output: Output,
    },
    /// S3(P3+K2)-free 3-graph on n >= 9 vertices
    Fores {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        output: Output,
    },
    /// r-uniform suspension of a graph
    #[command(after_help = PATTERN_HELP)]
    Suspend {
        #[arg(long)]
        r: usize,
        /// Graph pattern spec
        #[arg(long)]
        graph: String,
        #[command(flatten)]
        output: Output,
    },
    /// Blowup with the given class sizes
    Blowup {
        #[arg(long = "in")]
        input: String,
        /// Comma-separated class sizes, one per vertex
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        sizes: Vec<i64>,
        #[command(flatten)]
        output: Output,
    },
    /// All r-subsets of the blocks of a design
    Shadow {
        #[arg(long = "in")]
        input: String,
        #[arg(long)]
        r: usize,
        #[command(flatten)]
        output: Output,
    },
    /// The hypergraph described by a pattern spec
    #[command(after_help = PATTERN_HELP)]
    Pattern {
        #[arg(long)]
        spec: String,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Subcommand)]
enum Check {
    /// Whether the host contains no copy of the pattern
    #[command(after_help = PATTERN_HELP)]
    Free {
        #[arg(long, default_value = "-")]
        host: String,
        #[arg(long)]
        pattern: String,
    },
    /// Whether every k-set lies in exactly lambda edges
    Design {
        #[arg(long = "in", default_value = "-")]
        input: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        lambda: usize,
    },
}

#[derive(Subcommand)]
enum Count {
    /// Number of (not necessarily induced) copies of the pattern
    #[command(after_help = PATTERN_HELP)]
    Copies {
        #[arg(long, default_value = "-")]
        host: String,
        #[arg(long)]
        pattern: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum EngineArg {
    Oracle,
    Bnb,
}

#[derive(Clone, Copy, ValueEnum)]
enum BoundArg {
    Remaining,
    Compatible,
}

#[derive(Subcommand)]
enum Search {
    /// Maximum edge count of an r-graph on n vertices avoiding every pattern
    #[command(after_help = PATTERN_HELP)]
    Extremal {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        /// Forbidden pattern spec; repeat for a family
        #[arg(long, required = true)]
        forbid: Vec<String>,
        #[arg(long, value_enum, default_value = "bnb")]
        engine: EngineArg,
        /// Write an extremal hypergraph here as JSON
        #[arg(long)]
        witness: Option<PathBuf>,
        /// Worker threads for branch and bound
        #[arg(long, default_value_t = 1)]
        workers: usize,
        /// Pruning bound for branch and bound
        #[arg(long, value_enum, default_value = "remaining")]
        bound: BoundArg,
        /// Give up after this many search nodes
        #[arg(long)]
        node_limit: Option<u64>,
        /// Ignore the instance-size guard of branch and bound
        #[arg(long)]
        force: bool,
    },
}

#[derive(Subcommand)]
enum Bounds {
    /// One CSV row per n in from..=to
    #[command(after_help = PATTERN_HELP)]
    Report {
        #[arg(long)]
        family: String,
        #[arg(long)]
        from: usize,
        #[arg(long)]
        to: usize,
        /// Fill the exact and simpli columns by search where feasible
        #[arg(long)]
        search: bool,
    },
}

#[derive(Subcommand)]
enum Classify {
    /// Per-vertex link class, the M/S1/S2 partition and the structure claims
    Links {
        #[arg(long = "in", default_value = "-")]
        input: String,
    },
}

fn read_host(path: &str) -> Result<Hypergraph> {
    if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Hypergraph::from_json(&s)
    } else {
        Hypergraph::from_json(&fs::read_to_string(path)?)
    }
}

fn emit(h: &Hypergraph, output: &Output) -> Result<String> {
    let json = h.to_json() + "\n";
    match &output.out {
        Some(path) => {
            fs::write(path, json)?;
            Ok(String::new())
        }
        None => Ok(json),
    }
}

fn fmt_set(vs: &[usize]) -> String {
    let items: Vec<String> = vs.iter().map(|v| v.to_string()).collect();
    format!("{{{}}}", items.join(","))
}

fn classify(h: &Hypergraph) -> Result<String> {
    let rep = verify_fores_structure(h, false)?;
    let p = &rep.partition;
    let mut out = String::from("vertex\tclass\n");
    for (v, c) in p.classes.iter().enumerate() {
        out += &format!("{v}\t{c}\n");
    }
    out += &format!(
        "M\t{}\nS1\t{}\nS2\t{}\n",
        fmt_set(&p.m),
        fmt_set(&p.s1),
        fmt_set(&p.s2)
    );
    for c in &rep.claims {
        let verdict = if c.passed { "pass" } else { "fail" };
        match &c.violation {
            Some(v) => out += &format!("{verdict}\t{}\t{v}\n", c.claim),
            None => out += &format!("{verdict}\t{}\n", c.claim),
        }
    }
    Ok(out)
}

fn run(cli: Cli) -> Result<String> {
    match cli.command {
        Command::Construct(c) => match c {
            Construct::Sts { m, output } => emit(&steiner_triple_system(m)?, &output),
            Construct::Fores { n, output } => emit(&fores_construction(n)?, &output),
            Construct::Suspend { r, graph, output } => {
                emit(&suspend(&make_pattern(&graph)?, r)?, &output)
            }
            Construct::Blowup {
                input,
                sizes,
                output,
            } => emit(&blowup(&read_host(&input)?, &sizes)?, &output),
            Construct::Shadow { input, r, output } => emit(
                &design_shadow_construction(&read_host(&input)?, r)?,
                &output,
            ),
            Construct::Pattern { spec, output } => emit(&make_pattern(&spec)?, &output),
        },
        Command::Check(c) => match c {
            Check::Free { host, pattern } => {
                let pattern = make_pattern(&pattern)?;
                Ok(format!("{}\n", is_free(&read_host(&host)?, &pattern)?))
            }
            Check::Design { input, k, lambda } => Ok(format!(
                "{}\n",
                validate_design(&read_host(&input)?, k, lambda)?
            )),
        },
        Command::Count(Count::Copies { host, pattern }) => {
            let pattern = make_pattern(&pattern)?;
            Ok(format!("{}\n", count_copies(&read_host(&host)?, &pattern)?))
        }
        Command::Search(Search::Extremal {
            n,
            r,
            forbid,
            engine,
            witness,
            workers,
            bound,
            node_limit,
            force,
        }) => {
            let forbidden = forbid
                .iter()
                .map(|s| make_pattern(s))
                .collect::<Result<Vec<_>>>()?;
            let engine = match engine {
                EngineArg::Oracle => Engine::Oracle,
                EngineArg::Bnb => Engine::BranchAndBound,
            };
            let problem = SearchProblem::new(n, r, forbidden, engine)?;
            let opts = SearchOptions {
                workers: workers.max(1),
                bound: match bound {
                    BoundArg::Remaining => BoundKind::Remaining,
                    BoundArg::Compatible => BoundKind::Compatible,
                },
                node_limit,
                force,
            };
            let res = search::solve_with(&problem, &opts)?;
            if let Some(path) = witness {
                fs::write(path, res.witness.to_json() + "\n")?;
            }
            Ok(format!("{}\n", res.value))
        }
        Command::Bounds(Bounds::Report {
            family,
            from,
            to,
            search,
        }) => Ok(report_csv(&bounds_report(&family, from, to, search)?)),
        Command::Classify(Classify::Links { input }) => classify(&read_host(&input)?),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            let mut stdout = io::stdout().lock();
            if stdout
                .write_all(out.as_bytes())
                .and_then(|()| stdout.flush())
                .is_err()
            {
                return ExitCode::FAILURE;
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
