//! Command-line front end.
//!
//! Exit codes: 0 success, 1 malformed input, 2 unsupported or violated
//! precondition, 3 internal invariant failure.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::error::{Error, ErrorClass, Result};
use crate::insertion::insert;
use crate::inverse::inverse_insert;
use crate::lr::{
    count_chains, default_ambient, lr_via_insertion, sweep_with, verify_triple, SweepCase,
    SweepConfig,
};
use crate::perm::{partition_of_shuffle, shuffle_from_partition, Partition, Permutation};
use crate::rcgraph::{Graph, Place};
use crate::schubert::{enumerate_rcgraphs, lr_oracle, schubert_polynomial, schur_polynomial};
use crate::tableau::{format_word, TranspositionTableau};

/// Environment variable overriding the default ambient staircase size.
pub const AMBIENT_ENV: &str = "RC_AMBIENT_N";

#[derive(Parser, Debug)]
#[command(name = "rc-insertion", version, about = "Insertion on rc-graphs and generalized Littlewood-Richardson coefficients")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Permutation and partition utilities.
    #[command(subcommand)]
    Perm(PermCommand),
    /// Queries on a single graph.
    #[command(subcommand)]
    Rc(RcCommand),
    /// Schubert and Schur polynomials.
    #[command(subcommand)]
    Schubert(SchubertCommand),
    /// Insert Y into R.
    Insert(InsertArgs),
    /// Recover (R, Y) from (U, T).
    Inverse(InverseArgs),
    /// Coefficients c^u_{w, v(λ, r)}.
    Lr(LrArgs),
    /// Cross-check every coefficient of a family of triples.
    Verify(VerifyArgs),
    /// Draw a graph as an ASCII grid.
    Render(RenderArgs),
}

#[derive(Subcommand, Debug)]
enum PermCommand {
    /// Number of inversions.
    Length {
        #[arg(long, value_parser = parse_perm)]
        w: Permutation,
    },
    /// The product u v, where (u v)(i) = u(v(i)).
    Multiply {
        #[arg(long, value_parser = parse_perm)]
        u: Permutation,
        #[arg(long, value_parser = parse_perm)]
        v: Permutation,
    },
    /// Whether w t_cd covers w in the Bruhat order.
    Covering {
        #[arg(long, value_parser = parse_perm)]
        w: Permutation,
        #[arg(long)]
        c: usize,
        #[arg(long)]
        d: usize,
    },
    /// The r-shuffle of a partition.
    Shuffle {
        #[arg(long, value_parser = parse_partition, allow_hyphen_values = true)]
        lambda: Partition,
        #[arg(long)]
        r: usize,
    },
    /// The partition of an r-shuffle.
    Partition {
        #[arg(long, value_parser = parse_perm)]
        v: Permutation,
        #[arg(long)]
        r: usize,
    },
    /// Whether w has no descent after r.
    SemiShuffle {
        #[arg(long, value_parser = parse_perm)]
        w: Permutation,
        #[arg(long)]
        r: usize,
    },
    /// Lehmer code.
    Code {
        #[arg(long, value_parser = parse_perm)]
        w: Permutation,
    },
    /// (p, q) of a hook, or null.
    Hook {
        #[arg(long, value_parser = parse_partition, allow_hyphen_values = true)]
        lambda: Partition,
    },
}

#[derive(Subcommand, Debug)]
enum RcCommand {
    /// Permutation of the graph and whether it is reduced.
    Permutation(GraphArg),
    /// Letters of the graph in reading order.
    Word {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Strands meeting at a place, as (west, south).
    Strands {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long, value_parser = parse_place)]
        place: Place,
    },
    /// Rows where strands a and b cross.
    BoxPlus {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
    },
    /// Crossings per row.
    Exponent(GraphArg),
    /// Add a crossing, keeping the graph reduced.
    Add {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long, value_parser = parse_place)]
        place: Place,
    },
    /// Remove the crossing of strands c and d.
    Remove {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        c: usize,
        #[arg(long)]
        d: usize,
    },
    /// All rc-graphs of w, one JSON object per line.
    Enumerate {
        #[arg(long, value_parser = parse_perm)]
        w: Permutation,
        #[arg(long)]
        n: Option<usize>,
    },
}

#[derive(Args, Debug)]
struct GraphArg {
    /// Graph JSON file, `-` for standard input.
    #[arg(long)]
    graph: PathBuf,
}

#[derive(Subcommand, Debug)]
enum SchubertCommand {
    /// The Schubert polynomial of w.
    Poly {
        #[arg(long, value_parser = parse_perm)]
        w: Permutation,
        #[arg(long)]
        n: Option<usize>,
        /// Print as text instead of JSON.
        #[arg(long)]
        text: bool,
    },
    /// The product of two Schubert polynomials in the Schubert basis.
    Product {
        #[arg(long, value_parser = parse_perm)]
        w: Permutation,
        #[arg(long, value_parser = parse_perm)]
        v: Permutation,
    },
    /// The Schur polynomial in r variables.
    Schur {
        #[arg(long, value_parser = parse_partition, allow_hyphen_values = true)]
        lambda: Partition,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        text: bool,
    },
}

#[derive(Args, Debug)]
struct InsertArgs {
    /// Graph JSON of R.
    #[arg(long = "R")]
    r_graph: PathBuf,
    /// Graph JSON of Y, an rc-graph of an r-shuffle.
    #[arg(long = "Y")]
    y_graph: PathBuf,
    #[arg(long)]
    r: usize,
    /// Emit every step as a JSON line before the result.
    #[arg(long)]
    trace: bool,
    /// Draw the graph after every step.
    #[arg(long)]
    render: bool,
}

#[derive(Args, Debug)]
struct InverseArgs {
    /// Graph JSON of U.
    #[arg(long = "U")]
    u_graph: PathBuf,
    /// Tableau JSON of T.
    #[arg(long = "T")]
    tableau: PathBuf,
    #[arg(long, value_parser = parse_perm)]
    w: Permutation,
    #[arg(long)]
    r: usize,
    #[arg(long)]
    trace: bool,
    /// Explain how the output pair relates to the input.
    #[arg(long)]
    strict_paper: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Chains,
    Insertion,
    Oracle,
    All,
}

#[derive(Args, Debug)]
struct LrArgs {
    #[arg(long, value_parser = parse_perm)]
    w: Permutation,
    #[arg(long, value_parser = parse_partition, allow_hyphen_values = true)]
    lambda: Partition,
    #[arg(long)]
    r: usize,
    #[arg(long, value_enum, default_value_t = Method::All)]
    method: Method,
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum CaseArg {
    Semi,
    Hook,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long = "case", value_enum)]
    case: CaseArg,
    #[arg(long, default_value_t = 4)]
    max_perm_size: usize,
    #[arg(long, default_value_t = 4)]
    max_boxes: usize,
    #[arg(long, default_value_t = 3)]
    max_r: usize,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Also print every report as a JSON line.
    #[arg(long)]
    reports: bool,
}

#[derive(Args, Debug)]
struct RenderArgs {
    #[command(flatten)]
    graph: GraphArg,
    /// Staircase size; defaults to the smallest that holds the crossings.
    #[arg(long)]
    n: Option<usize>,
}

fn parse_list(s: &str) -> std::result::Result<Vec<usize>, String> {
    let s = s.trim();
    if s.is_empty() || s == "-" {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|x| x.trim().parse::<usize>().map_err(|e| format!("`{x}`: {e}")))
        .collect()
}

fn parse_perm(s: &str) -> std::result::Result<Permutation, String> {
    Permutation::new(parse_list(s)?).map_err(|e| e.to_string())
}

fn parse_partition(s: &str) -> std::result::Result<Partition, String> {
    Partition::new(parse_list(s)?).map_err(|e| e.to_string())
}

fn parse_place(s: &str) -> std::result::Result<Place, String> {
    match parse_list(s)?[..] {
        [row, col] if row > 0 && col > 0 => Ok(Place::new(row, col)),
        _ => Err(format!("`{s}` is not a place `row,col`")),
    }
}

/// Exit code of an error class.
pub fn exit_code(class: ErrorClass) -> i32 {
    match class {
        ErrorClass::Input => 1,
        ErrorClass::Precondition => 2,
        ErrorClass::Internal => 3,
    }
}

/// Runs the command line `args` (program name first) and returns the exit
/// code. Results go to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(e.class())
        }
    }
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Error::Malformed(format!("standard input: {e}")))?;
        s
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| Error::Malformed(format!("{}: {e}", path.display())))?
    };
    serde_json::from_str(&text).map_err(|e| Error::Malformed(format!("{}: {e}", path.display())))
}

fn io(e: std::io::Error) -> Error {
    Error::invariant(format!("cannot write output: {e}"))
}

fn emit<T: Serialize + ?Sized>(out: &mut dyn Write, value: &T) -> Result<()> {
    let line = serde_json::to_string(value).map_err(|e| Error::invariant(e.to_string()))?;
    writeln!(out, "{line}").map_err(io)
}

fn ambient(default: usize) -> Result<usize> {
    match std::env::var(AMBIENT_ENV) {
        Ok(s) => s
            .trim()
            .parse::<usize>()
            .map_err(|e| Error::Malformed(format!("{AMBIENT_ENV}=`{s}`: {e}"))),
        Err(_) => Ok(default),
    }
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    match command {
        Command::Perm(c) => perm(c, out),
        Command::Rc(c) => rc(c, out),
        Command::Schubert(c) => schubert(c, out),
        Command::Insert(a) => run_insert(a, out),
        Command::Inverse(a) => run_inverse(a, out, err),
        Command::Lr(a) => run_lr(a, out),
        Command::Verify(a) => run_verify(a, out),
        Command::Render(a) => {
            let graph: Graph = read_json(&a.graph.graph)?;
            let text = match a.n {
                Some(n) => graph.render_with_size(n),
                None => graph.render(),
            };
            out.write_all(text.as_bytes()).map_err(io)
        }
    }
}

fn perm(c: PermCommand, out: &mut dyn Write) -> Result<()> {
    let value = match c {
        PermCommand::Length { w } => json!(w.length()),
        PermCommand::Multiply { u, v } => json!(&u * &v),
        PermCommand::Covering { w, c, d } => {
            if c == 0 || c >= d {
                return Err(Error::Malformed(format!("need 0 < c < d, got c = {c}, d = {d}")));
            }
            json!(w.is_covering(c, d))
        }
        PermCommand::Shuffle { lambda, r } => json!(shuffle_from_partition(&lambda, r)?),
        PermCommand::Partition { v, r } => json!(partition_of_shuffle(&v, r)?),
        PermCommand::SemiShuffle { w, r } => json!(w.is_semi_shuffle(r)),
        PermCommand::Code { w } => json!(w.code()),
        PermCommand::Hook { lambda } => json!(lambda.hook_shape()),
    };
    emit(out, &value)
}

fn rc(c: RcCommand, out: &mut dyn Write) -> Result<()> {
    match c {
        RcCommand::Permutation(g) => {
            let graph: Graph = read_json(&g.graph)?;
            emit(out, &json!({"permutation": graph.permutation(), "reduced": graph.is_rcgraph()}))
        }
        RcCommand::Word { graph, n } => {
            let graph: Graph = read_json(&graph.graph)?;
            let n = n.unwrap_or(graph.max_diagonal().max(1));
            emit(out, &graph.word(n)?)
        }
        RcCommand::Strands { graph, place } => {
            let graph: Graph = read_json(&graph.graph)?;
            emit(out, &graph.strands_at(place))
        }
        RcCommand::BoxPlus { graph, a, b } => {
            let graph: Graph = read_json(&graph.graph)?;
            emit(out, &graph.box_plus(a, b))
        }
        RcCommand::Exponent(g) => {
            let graph: Graph = read_json(&g.graph)?;
            emit(out, &graph.exponent())
        }
        RcCommand::Add { graph, place } => {
            let graph: Graph = read_json(&graph.graph)?;
            emit(out, &graph.add_crossing(place)?)
        }
        RcCommand::Remove { graph, c, d } => {
            let graph: Graph = read_json(&graph.graph)?;
            let (graph, place) = graph.remove_crossing_of(c, d)?;
            emit(out, &json!({"graph": graph, "place": place}))
        }
        RcCommand::Enumerate { w, n } => {
            let n = match n {
                Some(n) => n,
                None => ambient(w.support().max(1))?,
            };
            for graph in enumerate_rcgraphs(&w, n)? {
                emit(out, &graph)?;
            }
            Ok(())
        }
    }
}

fn schubert(c: SchubertCommand, out: &mut dyn Write) -> Result<()> {
    match c {
        SchubertCommand::Poly { w, n, text } => {
            let n = match n {
                Some(n) => n,
                None => ambient(w.support().max(1))?,
            };
            let p = schubert_polynomial(&w, n)?;
            if text {
                writeln!(out, "{p}").map_err(io)
            } else {
                emit(out, &p)
            }
        }
        SchubertCommand::Product { w, v } => emit(out, &lr_oracle(&w, &v)?),
        SchubertCommand::Schur { lambda, r, text } => {
            if lambda.len() > r {
                return Err(Error::TooManyParts { parts: lambda.len(), r });
            }
            let p = schur_polynomial(&lambda, r);
            if text {
                writeln!(out, "{p}").map_err(io)
            } else {
                emit(out, &p)
            }
        }
    }
}

fn run_insert(a: InsertArgs, out: &mut dyn Write) -> Result<()> {
    let graph: Graph = read_json(&a.r_graph)?;
    let y: Graph = read_json(&a.y_graph)?;
    let result = insert(&graph, &y, a.r)?;
    if a.trace || a.render {
        for step in &result.trace.steps {
            if a.trace {
                emit(out, step)?;
            }
            if a.render {
                writeln!(out, "{step}").map_err(io)?;
                out.write_all(step.graph.render().as_bytes()).map_err(io)?;
            }
        }
    }
    emit(
        out,
        &json!({
            "U": result.graph,
            "T": result.tableau,
            "word": format_word(&result.tableau.word()),
        }),
    )
}

const STRICT_PAPER_NOTE: &str = "note: the output (R, Y) is the pair with U = R <- Y and T = T(R, Y); \
the inverse statement written \"U = R <- T, T = T(Y, R)\" is read this way, and round trips confirm it";

fn run_inverse(a: InverseArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    if a.strict_paper {
        writeln!(err, "{STRICT_PAPER_NOTE}").map_err(io)?;
    }
    let u: Graph = read_json(&a.u_graph)?;
    let t: TranspositionTableau = read_json(&a.tableau)?;
    let result = inverse_insert(&u, &t, &a.w, a.r)?;
    if a.trace {
        for step in &result.trace.steps {
            emit(out, step)?;
        }
    }
    emit(out, &json!({"R": result.graph, "Y": result.y, "word": result.word}))
}

fn coefficient_rows(counts: impl IntoIterator<Item = (Permutation, u64)>, method: &str) -> Vec<Value> {
    counts
        .into_iter()
        .filter(|(_, c)| *c > 0)
        .map(|(u, c)| {
            let mut methods = Map::new();
            methods.insert(method.into(), json!(c));
            json!({"u": u, "c": c, "methods": methods})
        })
        .collect()
}

fn run_lr(a: LrArgs, out: &mut dyn Write) -> Result<()> {
    let n = match a.n {
        Some(n) => n,
        None => ambient(default_ambient(&a.w, &a.lambda, a.r))?,
    };
    let coefficients: Vec<Value> = match a.method {
        Method::Chains => coefficient_rows(count_chains(&a.w, &a.lambda, a.r)?, "chains"),
        Method::Insertion => {
            coefficient_rows(lr_via_insertion(&a.w, &a.lambda, a.r, n)?.coefficients, "insertion")
        }
        Method::Oracle => {
            let v = shuffle_from_partition(&a.lambda, a.r)?;
            let expansion = lr_oracle(&a.w, &v)?;
            coefficient_rows(expansion.iter().map(|(u, c)| (u.clone(), c as u64)), "oracle")
        }
        Method::All => verify_triple(&a.w, &a.lambda, a.r, n)?
            .coefficients
            .into_iter()
            .map(|c| serde_json::to_value(c).expect("plain data"))
            .collect(),
    };
    emit(
        out,
        &json!({"w": a.w, "lambda": a.lambda, "r": a.r, "n": n, "coefficients": coefficients}),
    )
}

fn run_verify(a: VerifyArgs, out: &mut dyn Write) -> Result<()> {
    let case = match a.case {
        CaseArg::Semi => SweepCase::Semi,
        CaseArg::Hook => SweepCase::Hook,
    };
    let config = SweepConfig {
        case,
        max_perm_size: a.max_perm_size,
        max_boxes: a.max_boxes,
        max_r: a.max_r,
        jobs: a.jobs,
    };
    let mut written = Ok(());
    let summary = sweep_with(&config, |report| {
        if a.reports && written.is_ok() {
            written = emit(out, report);
        }
    })?;
    written?;
    emit(out, &json!({"case": case, "summary": summary}))
}
