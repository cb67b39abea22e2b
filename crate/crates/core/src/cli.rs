//! The `chipfire` command line.
//!
//! Every command reads a graph (and usually a divisor) from JSON files and
//! prints one JSON document. Exit status is 0 on success, 1 when the library
//! rejects the input (with an error object on stderr) and 2 for usage
//! problems.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::dhar::dhar_decomposition;
use crate::divisor::{canonical_divisor, fire_set, residual, Divisor, RDivisor};
use crate::error::Error;
use crate::graph::{Graph, VertexSet};
use crate::json::*;
use crate::potential::{construct_witness_e, default_bound, q_function, EReducedCheck};
use crate::reduction::{make_v_reduced_from, v_reduced, FindEffective};
use crate::uniform::{
    has_uniform_guarantee, is_semistable, is_uniform, near_uniform_representative, quasi_uniform_construction,
    specialness,
};

#[derive(Debug, Parser)]
#[command(name = "chipfire", version, about = "Exact chip-firing and divisor computations on vertex-weighted multigraphs")]
struct Cli {
    /// Indent the JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GraphArg {
    /// Graph JSON file.
    #[arg(long, value_name = "PATH")]
    graph: PathBuf,
}

#[derive(Debug, Args)]
struct DivisorArgs {
    #[command(flatten)]
    graph: GraphArg,
    /// Divisor JSON file.
    #[arg(long, value_name = "PATH")]
    divisor: PathBuf,
}

#[derive(Debug, Args)]
struct SetArgs {
    #[command(flatten)]
    input: DivisorArgs,
    /// Comma-separated vertex ids.
    #[arg(long, value_name = "IDS")]
    set: String,
}

#[derive(Debug, Args)]
struct TraceArgs {
    #[command(flatten)]
    input: DivisorArgs,
    /// Include every Dhar firing in the output.
    #[arg(long)]
    trace: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a graph and report its size and genus.
    Validate(GraphArg),
    /// Print the canonical divisor.
    Canonical(GraphArg),
    /// Print k - d.
    Residual(DivisorArgs),
    /// Fire a set of vertices once.
    Fire(SetArgs),
    /// Dhar decomposition with respect to a vertex set.
    Dhar(SetArgs),
    /// Reduced representative at a vertex (--vertex) or with respect to a set (--set).
    Reduce {
        #[command(flatten)]
        input: DivisorArgs,
        #[arg(long, value_name = "ID", conflicts_with = "set", required_unless_present = "set")]
        vertex: Option<String>,
        #[arg(long, value_name = "IDS")]
        set: Option<String>,
    },
    /// Decide whether the class is effective, with a certificate.
    Effective(TraceArgs),
    /// q_E(D) for the divisor D and the target E.
    Qfun {
        #[command(flatten)]
        input: DivisorArgs,
        /// Rational divisor E.
        #[arg(long, value_name = "PATH")]
        target: PathBuf,
    },
    /// The rational divisor E supported on the set with q_E(d) zero on it.
    WitnessE(SetArgs),
    /// Bounded check that d minimises the q_E mass in its class.
    Ereduced {
        #[command(flatten)]
        input: DivisorArgs,
        #[arg(long, value_name = "PATH")]
        target: PathBuf,
        /// Defaults to the support of the target.
        #[arg(long, value_name = "IDS")]
        set: Option<String>,
        /// Largest script value tried; defaults to |V| * (1 + max |d_v|).
        #[arg(long)]
        bound: Option<u64>,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        jobs: u64,
    },
    /// Uniformity of the divisor and the relevant graph conditions.
    Uniform(DivisorArgs),
    /// Whether the class and its residual class are both effective.
    Special(TraceArgs),
    /// Quasi-uniform representative of a special class.
    QuasiUniform(DivisorArgs),
}

/// Failures split by exit status.
enum Failure {
    Domain(Error),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

fn read_json(path: &Path) -> Outcome<Value> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Domain(Error::Parse(format!("{}: {e}", path.display()))))
}

fn load_graph(arg: &GraphArg) -> Outcome<Graph> {
    let text = std::fs::read_to_string(&arg.graph)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", arg.graph.display())))?;
    Ok(Graph::from_json(&text)?)
}

fn load(args: &DivisorArgs) -> Outcome<(Graph, Divisor)> {
    let g = load_graph(&args.graph)?;
    let d = divisor_from_json(&g, &read_json(&args.divisor)?)?;
    Ok((g, d))
}

fn parse_set(g: &Graph, ids: &str) -> Outcome<VertexSet> {
    let parts = ids.split(',').map(str::trim).filter(|s| !s.is_empty());
    Ok(g.vertex_set(parts)?)
}

fn load_target(g: &Graph, path: &Path) -> Outcome<RDivisor> {
    Ok(rdivisor_from_json(g, &read_json(path)?)?)
}

fn execute(command: &Command) -> Outcome<Value> {
    Ok(match command {
        Command::Validate(arg) => {
            let g = load_graph(arg)?;
            json!({
                "valid": true,
                "vertices": g.num_vertices(),
                "edges": g.num_edges(),
                "genus": g.genus(),
            })
        }
        Command::Canonical(arg) => {
            let g = load_graph(arg)?;
            divisor_to_json(&g, &canonical_divisor(&g))
        }
        Command::Residual(args) => {
            let (g, d) = load(args)?;
            divisor_to_json(&g, &residual(&g, &d))
        }
        Command::Fire(args) => {
            let (g, d) = load(&args.input)?;
            let set = parse_set(&g, &args.set)?;
            divisor_to_json(&g, &fire_set(&g, &d, &set)?)
        }
        Command::Dhar(args) => {
            let (g, d) = load(&args.input)?;
            let set = parse_set(&g, &args.set)?;
            dhar_to_json(&g, &dhar_decomposition(&g, &d, &set)?)
        }
        Command::Reduce { input, vertex, set } => {
            let (g, d) = load(input)?;
            let (reduced, script) = match (vertex, set) {
                (Some(v), _) => v_reduced(&g, &d, g.index_of(v)?)?,
                (None, Some(ids)) => make_v_reduced_from(&g, &d, &parse_set(&g, ids)?)?,
                (None, None) => return Err(Failure::Usage("one of --vertex or --set is required".into())),
            };
            json!({ "divisor": divisor_to_json(&g, &reduced), "script": script_to_json(&g, &script) })
        }
        Command::Effective(args) => {
            let (g, d) = load(&args.input)?;
            certificate_to_json(&g, &FindEffective::new().run(&g, &d), args.trace)
        }
        Command::Qfun { input, target } => {
            let g = load_graph(&input.graph)?;
            let d = rdivisor_from_json(&g, &read_json(&input.divisor)?)?;
            let e = load_target(&g, target)?;
            qresult_to_json(&g, &q_function(&g, &e, &d)?)
        }
        Command::WitnessE(args) => {
            let (g, d) = load(&args.input)?;
            let set = parse_set(&g, &args.set)?;
            rdivisor_to_json(&g, &construct_witness_e(&g, &d, &set)?)
        }
        Command::Ereduced { input, target, set, bound, jobs } => {
            let (g, d) = load(input)?;
            let e = load_target(&g, target)?;
            let set = match set {
                Some(ids) => parse_set(&g, ids)?,
                None => e.support(),
            };
            let bound = bound.unwrap_or_else(|| default_bound(&g, &d));
            let check = EReducedCheck::new(bound).jobs(*jobs as usize);
            let improvement = check.find_improvement(&g, &e, &d, &set)?;
            json!({
                "e_reduced": improvement.is_none(),
                "bound": bound,
                "set": set_to_json(&g, &set),
                "improvement": improvement.map_or(Value::Null, |imp| improvement_to_json(&g, &imp)),
            })
        }
        Command::Uniform(args) => {
            let (g, d) = load(args)?;
            json!({
                "uniform": is_uniform(&g, &d),
                "semistable": is_semistable(&g),
                "uniform_guarantee": has_uniform_guarantee(&g),
            })
        }
        Command::Special(args) => {
            let (g, d) = load(&args.input)?;
            specialness_to_json(&g, &specialness(&g, &d), args.trace)
        }
        Command::QuasiUniform(args) => {
            let (g, d) = load(args)?;
            let run = quasi_uniform_construction(&g, &d)?;
            let near = near_uniform_representative(&g, &d)?;
            json!({
                "representative": divisor_to_json(&g, &run.representative),
                "script": script_to_json(&g, &run.script),
                "firings": run.trace.len(),
                "near_uniform": divisor_to_json(&g, &near),
            })
        }
    })
}

fn render(value: &Value, pretty: bool) -> String {
    let text = if pretty { serde_json::to_string_pretty(value) } else { serde_json::to_string(value) };
    text.expect("JSON values always serialise")
}

/// Run the command line with explicit arguments and streams, returning the
/// exit status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { write!(stdout, "{text}") } else { write!(stderr, "{text}") };
            return code;
        }
    };
    match execute(&cli.command) {
        Ok(value) => {
            let _ = writeln!(stdout, "{}", render(&value, cli.pretty));
            0
        }
        Err(Failure::Domain(e)) => {
            let body = json!({ "error": e.kind(), "message": e.to_string() });
            let _ = writeln!(stderr, "{}", render(&body, cli.pretty));
            1
        }
        Err(Failure::Usage(msg)) => {
            let body = json!({ "error": "Usage", "message": msg });
            let _ = writeln!(stderr, "{}", render(&body, cli.pretty));
            2
        }
    }
}
