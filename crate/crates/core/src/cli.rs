//! Command-line front end. Exit codes: 0 yes, 1 certified no, 2 error.

use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::bench::{run_bench, BenchRow, Suite};
use crate::decompose::{decompose_ksw, verify_decomposition_report, Decomposition};
use crate::error::{Error, Result};
use crate::graph::{
    gen_counterexample_disconnected, gen_counterexample_glued_trees, gen_counterexample_ring,
    parse_edgelist, parse_graph6, write_edgelist, write_graph6, Graph,
};
use crate::params::SparsityParams;
use crate::partition::{partition_sparse_with, PartitionResult, UnionOptions};
use crate::rational::{format_rational, parse_rational, Rational};
use crate::sparsity;

pub const THREADS_ENV: &str = "SPARSITY_FORGE_THREADS";

pub const EXIT_YES: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "sparsity-forge", version, about = "Exact graph sparsity checks, partitions and forest decompositions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Graph6,
    Edgelist,
}

#[derive(Debug, Args)]
pub struct Input {
    /// Input file; stdin when absent or `-`.
    pub input: Option<PathBuf>,
    /// graph6 input holds one graph per line.
    #[arg(long, value_enum, default_value = "graph6")]
    pub format: Format,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide (a, b)-sparsity and print the certificate.
    Check {
        #[command(flatten)]
        input: Input,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    /// Split the edges into an (a1, b1)-sparse and an (a2, b2)-sparse part.
    Partition {
        #[command(flatten)]
        input: Input,
        #[arg(long, allow_hyphen_values = true)]
        a1: i64,
        #[arg(long, allow_hyphen_values = true)]
        b1: i64,
        #[arg(long, allow_hyphen_values = true)]
        a2: i64,
        #[arg(long, allow_hyphen_values = true)]
        b2: i64,
        /// Shrink deficiency certificates.
        #[arg(long)]
        minimize: bool,
    },
    /// Split an (m, 0)-sparse graph into a forest and an (m, 1-2m)-sparse graph.
    Decompose {
        #[command(flatten)]
        input: Input,
        #[arg(long, allow_hyphen_values = true)]
        m: String,
        /// Re-check the result independently; exit nonzero on mismatch.
        #[arg(long)]
        verify: bool,
        /// Include case parameters and stage timings.
        #[arg(long)]
        trace: bool,
    },
    /// Print a member of one of the counterexample families.
    Gen {
        #[command(subcommand)]
        family: Family,
        #[arg(long, value_enum, default_value = "graph6", global = true)]
        format: Format,
    },
    /// Re-check a decomposition produced by `decompose`.
    Verify {
        #[command(flatten)]
        input: Input,
        /// JSON file holding the decomposition.
        #[arg(long)]
        decomposition: PathBuf,
    },
    /// Time a pipeline stage on seeded random (m, 0)-sparse graphs.
    Bench {
        /// decompose, partition or check.
        suite: String,
        #[arg(long, value_delimiter = ',', default_value = "100,200,500")]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value = "5/2")]
        m: String,
        /// One JSON object per size instead of a table.
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum Family {
    /// t disjoint copies of the 2(a1+a2)-regular circulant on n vertices.
    Disconnected {
        #[arg(long)]
        a1: usize,
        #[arg(long)]
        a2: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: usize,
    },
    /// Two copies of a union of 2a spanning paths, glued at a vertex.
    GluedTrees {
        #[arg(long)]
        a: usize,
    },
    /// t copies of K_{2a+2} minus an edge, joined in a ring.
    Ring {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        t: usize,
    },
}

/// JSON body printed for a decomposition.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DecompositionOutput {
    #[serde(flatten)]
    pub decomposition: Decomposition,
    pub verified: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<Value>,
}

/// One processed input: exit code plus the JSON printed on stdout.
struct Outcome {
    code: i32,
    body: Value,
}

impl Outcome {
    fn error(err: &Error) -> Self {
        Outcome {
            code: EXIT_ERROR,
            body: json!({ "error": err.to_string() }),
        }
    }
}

fn read_input(input: &Input) -> Result<String> {
    let mut text = String::new();
    match &input.input {
        Some(path) if path.as_os_str() != "-" => {
            text = std::fs::read_to_string(path)
                .map_err(|e| Error::Domain(format!("cannot read {}: {e}", path.display())))?;
        }
        _ => {
            std::io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| Error::Domain(format!("cannot read stdin: {e}")))?;
        }
    }
    Ok(text)
}

/// Splits the input into graph records: one per nonempty line for graph6,
/// the whole text for edge lists.
fn records(text: &str, format: Format) -> Vec<Result<Graph>> {
    match format {
        Format::Edgelist => vec![parse_edgelist(text)],
        Format::Graph6 => text
            .lines()
            .filter(|line| !line.trim().is_empty())
            .map(parse_graph6)
            .collect(),
    }
}

fn for_each_graph(input: &Input, task: impl Fn(&Graph) -> Outcome + Sync) -> Result<Vec<Outcome>> {
    let text = read_input(input)?;
    let graphs = records(&text, input.format);
    if graphs.is_empty() {
        return Err(Error::Domain("no graph in input".into()));
    }
    Ok(graphs
        .into_par_iter()
        .map(|g| match g {
            Ok(g) => task(&g),
            Err(e) => Outcome::error(&e),
        })
        .collect())
}

fn check(g: &Graph, params: SparsityParams) -> Outcome {
    match sparsity::is_sparse(g, params) {
        Ok(cert) => Outcome {
            code: if cert.is_sparse() { EXIT_YES } else { EXIT_NO },
            body: serde_json::to_value(&cert).expect("certificate serializes"),
        },
        Err(e) => Outcome::error(&e),
    }
}

fn partition(g: &Graph, a1: i64, b1: i64, a2: i64, b2: i64, minimize: bool) -> Outcome {
    let options = UnionOptions {
        minimize,
        ..UnionOptions::default()
    };
    match partition_sparse_with(g, a1, b1, a2, b2, options) {
        Ok(result) => Outcome {
            code: match result {
                PartitionResult::Success { .. } => EXIT_YES,
                PartitionResult::Deficiency { .. } => EXIT_NO,
            },
            body: serde_json::to_value(&result).expect("partition serializes"),
        },
        Err(Error::NotSparse(cert)) => Outcome {
            code: EXIT_NO,
            body: serde_json::to_value(&*cert).expect("certificate serializes"),
        },
        Err(e) => Outcome::error(&e),
    }
}

fn decompose(g: &Graph, m: Rational, verify: bool, trace: bool) -> Outcome {
    match decompose_ksw(g, m) {
        Ok(d) => {
            let verified = !verify || verify_decomposition_report(g, &d).valid;
            let trace = trace.then(|| serde_json::to_value(&d.trace).expect("trace serializes"));
            let out = DecompositionOutput {
                decomposition: d,
                verified,
                trace,
            };
            Outcome {
                code: if verified { EXIT_YES } else { EXIT_NO },
                body: serde_json::to_value(&out).expect("decomposition serializes"),
            }
        }
        Err(Error::NotSparse(cert)) => Outcome {
            code: EXIT_NO,
            body: serde_json::to_value(&*cert).expect("certificate serializes"),
        },
        Err(e) => Outcome::error(&e),
    }
}

fn verify(g: &Graph, path: &PathBuf) -> Outcome {
    let parsed = std::fs::read_to_string(path)
        .map_err(|e| Error::Domain(format!("cannot read {}: {e}", path.display())))
        .and_then(|text| {
            serde_json::from_str::<Decomposition>(&text)
                .map_err(|e| Error::Domain(format!("bad decomposition JSON: {e}")))
        });
    match parsed {
        Ok(d) => {
            let report = verify_decomposition_report(g, &d);
            Outcome {
                code: if report.valid { EXIT_YES } else { EXIT_NO },
                body: serde_json::to_value(&report).expect("report serializes"),
            }
        }
        Err(e) => Outcome::error(&e),
    }
}

fn generate(family: &Family) -> Result<Graph> {
    match *family {
        Family::Disconnected { a1, a2, n, t } => gen_counterexample_disconnected(a1, a2, n, t),
        Family::GluedTrees { a } => gen_counterexample_glued_trees(a),
        Family::Ring { a, t } => gen_counterexample_ring(a, t),
    }
}

fn bench_table(rows: &[BenchRow]) -> String {
    let mut out = format!(
        "{:<10} {:>6} {:>7} {:>6} {:<16} {:>10} {:>40} {:>10}\n",
        "suite", "n", "edges", "m", "instance", "generate", "stages", "total"
    );
    for row in rows {
        let stages: Vec<String> = row
            .stages
            .iter()
            .map(|(name, secs)| format!("{name}={secs:.3}"))
            .collect();
        out.push_str(&format!(
            "{:<10} {:>6} {:>7} {:>6} {:<16} {:>10.3} {:>40} {:>10.3}\n",
            row.suite,
            row.n,
            row.edges,
            format_rational(&row.m),
            &row.instance_hash[..16],
            row.generate_seconds,
            stages.join(" "),
            row.total_seconds
        ));
    }
    out
}

fn configure_threads() {
    if let Some(threads) = std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&t| t > 0)
    {
        // A second initialisation in the same process is harmless.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }
}

fn emit(outcomes: Vec<Outcome>, out: &mut impl Write, err: &mut impl Write) -> i32 {
    let mut code = EXIT_YES;
    for outcome in outcomes {
        if let Some(message) = outcome.body.get("error").and_then(Value::as_str) {
            let _ = writeln!(err, "error: {message}");
        }
        let _ = writeln!(out, "{}", outcome.body);
        code = code.max(outcome.code);
    }
    code
}

/// Runs the CLI with the given arguments (including the program name) and
/// returns the exit code.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_YES };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    configure_threads();
    match execute(&cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_ERROR
        }
    }
}

fn execute(command: &Command, out: &mut impl Write, err: &mut impl Write) -> Result<i32> {
    match command {
        Command::Check { input, a, b } => {
            let params = SparsityParams::new(parse_rational(a)?, parse_rational(b)?)?;
            params.ensure_regular()?;
            Ok(emit(for_each_graph(input, |g| check(g, params))?, out, err))
        }
        Command::Partition {
            input,
            a1,
            b1,
            a2,
            b2,
            minimize,
        } => {
            let host = Graph::empty(0);
            crate::matroid::make_oracle(&host, *a1, *b1)?;
            crate::matroid::make_oracle(&host, *a2, *b2)?;
            let task = |g: &Graph| partition(g, *a1, *b1, *a2, *b2, *minimize);
            Ok(emit(for_each_graph(input, task)?, out, err))
        }
        Command::Decompose {
            input,
            m,
            verify,
            trace,
        } => {
            let m = parse_rational(m)?;
            crate::decompose::case_label(m)?;
            let task = |g: &Graph| decompose(g, m, *verify, *trace);
            Ok(emit(for_each_graph(input, task)?, out, err))
        }
        Command::Gen { family, format } => {
            let g = generate(family)?;
            match format {
                Format::Graph6 => writeln!(out, "{}", write_graph6(&g)?),
                Format::Edgelist => write!(out, "{}", write_edgelist(&g)),
            }
            .map_err(|e| Error::Domain(format!("write failed: {e}")))?;
            Ok(EXIT_YES)
        }
        Command::Verify {
            input,
            decomposition,
        } => Ok(emit(
            for_each_graph(input, |g| verify(g, decomposition))?,
            out,
            err,
        )),
        Command::Bench {
            suite,
            sizes,
            seed,
            m,
            json,
        } => {
            let suite: Suite = suite.parse()?;
            let m = parse_rational(m)?;
            let rows = sizes
                .iter()
                .map(|&n| run_bench(suite, n, m, *seed))
                .collect::<Result<Vec<_>>>()?;
            let text = if *json {
                rows.iter()
                    .map(|r| serde_json::to_string(r).expect("bench row serializes") + "\n")
                    .collect()
            } else {
                bench_table(&rows)
            };
            write!(out, "{text}").map_err(|e| Error::Domain(format!("write failed: {e}")))?;
            Ok(EXIT_YES)
        }
    }
}
