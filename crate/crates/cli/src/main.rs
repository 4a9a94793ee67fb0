use std::collections::BTreeMap;
use std::io::Read as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use exact3::enumerate::{Budget, Emit};
use exact3::io::{self, Format};
use exact3::ops::VertexGluingSpec;
use exact3::*;
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "exact3", version, about = "Synthesis and enumeration of exactly 3-edge-connected graphs")]
struct Cli {
    /// Print one JSON object instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that every pair of vertices has exactly k edge-disjoint paths.
    Verify {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 3)]
        k: u32,
    },
    /// Print a synthesis script that rebuilds the graph.
    Decompose {
        #[command(flatten)]
        input: Input,
    },
    /// Run a synthesis script and print the graph it builds.
    Replay {
        /// Script file, or - for stdin.
        script: PathBuf,
        #[command(flatten)]
        output: Output,
        /// Also print the planar embedding maintained during the replay.
        #[arg(long)]
        embedding: bool,
    },
    /// List exactly 3-edge-connected graphs up to a vertex bound.
    Enumerate(EnumerateArgs),
    /// Apply one cycle expansion.
    Expand {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        vertex: u32,
        /// Cycle length d'.
        #[arg(long)]
        size: usize,
        /// Neighbours of the vertex in cycle order, comma separated.
        #[arg(long, value_delimiter = ',')]
        assignment: Vec<u32>,
        #[command(flatten)]
        output: Output,
    },
    /// Glue two graphs at a vertex, join them through a vertex pair, or add a k-bridge.
    Glue {
        first: PathBuf,
        /// Second graph; not used by `--mode bridge`.
        second: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = GlueMode::Block)]
        mode: GlueMode,
        #[arg(long)]
        u1: u32,
        #[arg(long)]
        u2: Option<u32>,
        /// Dart pairs `a:b` for vertex gluing; sorted pairing by default.
        #[arg(long, value_delimiter = ',')]
        pairing: Vec<String>,
        #[arg(long, default_value_t = 3)]
        k: u32,
        #[arg(long, value_enum, default_value_t = InputFormat::Auto)]
        format: InputFormat,
        #[command(flatten)]
        output: Output,
    },
    /// Convert a graph between formats.
    Export {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Args)]
struct Input {
    /// Graph file, or - for stdin.
    path: PathBuf,
    #[arg(long, value_enum, default_value_t = InputFormat::Auto)]
    format: InputFormat,
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value_t = OutputFormat::Edgelist)]
    to: OutputFormat,
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long = "max-n")]
    max_n: usize,
    #[arg(long)]
    simple: bool,
    #[arg(long)]
    biconnected: bool,
    #[arg(long)]
    minimum: bool,
    #[arg(long)]
    planar: bool,
    /// Expand only graphs that can still reach a minimum graph by degree count.
    #[arg(long, requires = "minimum")]
    prune_minimum: bool,
    /// Print only the per-order summary, on stdout.
    #[arg(long)]
    count_only: bool,
    /// Worker threads; 1 runs sequentially, 0 uses every core.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    /// Give up once this many biconnected classes have been generated.
    #[arg(long)]
    max_classes: Option<usize>,
    /// Give up after this many seconds.
    #[arg(long)]
    time_limit: Option<f64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum InputFormat {
    Auto,
    Edgelist,
    Graph6,
}

impl From<InputFormat> for Format {
    fn from(f: InputFormat) -> Self {
        match f {
            InputFormat::Auto => Format::Auto,
            InputFormat::Edgelist => Format::EdgeList,
            InputFormat::Graph6 => Format::Graph6,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Edgelist,
    Graph6,
    Dot,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GlueMode {
    Block,
    Vertex,
    Bridge,
}

/// What a subcommand produced: text for the terminal, a JSON payload and the exit status.
struct Report {
    text: String,
    stderr: String,
    result: Value,
    code: u8,
}

impl Report {
    fn ok(text: String, result: Value) -> Self {
        Report {
            text,
            stderr: String::new(),
            result,
            code: 0,
        }
    }
}

#[derive(Serialize)]
struct ErrorBody {
    kind: &'static str,
    message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    line: Option<usize>,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. } | Error::Format(_) | Error::Argument(_) => 2,
        Error::Budget { .. } => 3,
        _ => 1,
    }
}

fn error_body(e: &Error) -> ErrorBody {
    let kind = match e {
        Error::Argument(_) => "argument",
        Error::Domain(_) => "domain",
        Error::Disconnected(..) => "disconnected",
        Error::NotExact { .. } => "not_exact",
        Error::Parse { .. } => "parse",
        Error::Format(_) => "format",
        Error::Budget { .. } => "budget",
        Error::Invariant(_) => "invariant",
    };
    let line = match e {
        Error::Parse { line, .. } => Some(*line),
        _ => None,
    };
    ErrorBody {
        kind,
        message: e.to_string(),
        line,
    }
}

fn read_text(path: &Path) -> Result<String> {
    let mut s = String::new();
    let res = if path == Path::new("-") {
        std::io::stdin().read_to_string(&mut s).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| s = t)
    };
    res.map_err(|e| Error::Parse {
        line: 0,
        message: format!("cannot read {}: {e}", path.display()),
    })?;
    Ok(s)
}

fn read_graph(path: &Path, format: InputFormat) -> Result<Multigraph> {
    io::parse_graph(&read_text(path)?, format.into())
}

fn render(g: &Multigraph, to: OutputFormat) -> Result<String> {
    Ok(match to {
        OutputFormat::Edgelist => io::write_edge_list(g),
        OutputFormat::Graph6 => io::write_graph6(g)? + "\n",
        OutputFormat::Dot => io::write_dot(g),
    })
}

fn graph_json(g: &Multigraph) -> Value {
    let pos: BTreeMap<Vertex, usize> = g.vertices().enumerate().map(|(i, v)| (v, i)).collect();
    let edges: Vec<[u32; 3]> = g
        .edges()
        .map(|(u, v, r)| [pos[&u] as u32, pos[&v] as u32, r])
        .collect();
    json!({
        "order": g.order(),
        "size": g.size(),
        "edges": edges,
        "code": canonical_code(g).to_hex(),
    })
}

fn verify(input: &Input, k: u32) -> Result<Report> {
    let g = read_graph(&input.path, input.format)?;
    let report = match is_exactly_k(&g, k) {
        Ok(r) => r,
        Err(Error::Disconnected(u, v)) => {
            let result = json!({"k": k, "exact": false, "witness": {"u": u.0, "v": v.0, "lambda": 0}});
            return Ok(Report {
                text: format!("NOT EXACT k={k}: lambda({u}, {v}) = 0\n"),
                stderr: String::new(),
                result,
                code: 1,
            });
        }
        Err(e) => return Err(e),
    };
    let witness = report.witness.map(|w| json!({"u": w.u.0, "v": w.v.0, "lambda": w.lambda}));
    let result = json!({"k": k, "exact": report.exact, "witness": witness});
    if report.exact {
        Ok(Report::ok(format!("EXACT k={k}\n"), result))
    } else {
        let w = report.witness.expect("a failed check names a pair");
        Ok(Report {
            text: format!("NOT EXACT k={k}: lambda({}, {}) = {}\n", w.u, w.v, w.lambda),
            stderr: String::new(),
            result,
            code: 1,
        })
    }
}

fn decompose_cmd(input: &Input) -> Result<Report> {
    let g = read_graph(&input.path, input.format)?;
    let script = decompose(&g)?;
    let text = script.to_string();
    let result = json!({
        "script": text,
        "dumbbells": script.dumbbell_count(),
        "glues": script.glue_count(),
        "expansions": script.expansion_count(),
    });
    Ok(Report::ok(text, result))
}

fn replay_cmd(path: &Path, output: &Output, embedding: bool) -> Result<Report> {
    let script = SynthesisScript::parse(&read_text(path)?)?;
    let (g, rot) = if embedding {
        let (g, r) = planar::planar_synthesize(&script)?;
        (g, Some(r))
    } else {
        (replay(&script)?, None)
    };
    let mut text = render(&g, output.to)?;
    let mut result = graph_json(&g);
    if let Some(r) = rot {
        text.push_str("# embedding\n");
        text.push_str(&r.to_string());
        result["embedding"] = Value::String(r.to_string());
    }
    Ok(Report::ok(text, result))
}

fn enumerate_cmd(args: &EnumerateArgs, as_json: bool) -> Result<Report> {
    let mut q = EnumerationQuery::new(args.max_n);
    q.require_simple = args.simple;
    q.require_biconnected = args.biconnected;
    q.require_minimum = args.minimum;
    q.require_planar = args.planar;
    q.prune_minimum = args.prune_minimum;
    q.emit = if args.count_only { Emit::CountOnly } else { Emit::Stream };
    q.exec = Exec::from_jobs(args.jobs);
    if let Some(t) = args.time_limit {
        if !(t.is_finite() && t >= 0.0) {
            return Err(Error::Argument("time limit must be a non-negative number of seconds".into()));
        }
    }
    q.budget = Budget {
        max_classes: args.max_classes,
        time_limit: args.time_limit.map(Duration::from_secs_f64),
    };
    let summary = |counts: &BTreeMap<usize, usize>| -> String {
        counts.iter().map(|(k, c)| format!("{k}\t{c}\n")).collect()
    };
    let outcome = par::with_jobs(args.jobs, || enumerate(&q));
    match outcome {
        Ok(r) => {
            let mut stream = String::new();
            let mut graphs = Vec::new();
            for g in &r.graphs {
                let m = g.code.to_multigraph();
                let line = io::inline_edge_list(&m);
                stream.push_str(&format!("{}\t{}\t{line}\n", g.order, g.code.to_hex()));
                if as_json {
                    graphs.push(json!({"order": g.order, "code": g.code.to_hex(), "edges": line}));
                }
            }
            let result = json!({"complete": true, "counts": r.counts_by_order, "graphs": graphs});
            if args.count_only {
                Ok(Report::ok(summary(&r.counts_by_order), result))
            } else {
                Ok(Report {
                    text: stream,
                    stderr: summary(&r.counts_by_order),
                    result,
                    code: 0,
                })
            }
        }
        Err(Error::Budget { completed }) => {
            let result = json!({"complete": false, "counts": completed, "graphs": []});
            let s = summary(&completed);
            let (text, stderr) = if args.count_only {
                (s, "resource budget exceeded\n".to_string())
            } else {
                (String::new(), s + "resource budget exceeded\n")
            };
            Ok(Report {
                text,
                stderr,
                result,
                code: 3,
            })
        }
        Err(e) => Err(e),
    }
}

fn expand_cmd(input: &Input, vertex: u32, size: usize, assignment: &[u32], output: &Output) -> Result<Report> {
    let g = read_graph(&input.path, input.format)?;
    let spec = CycleExpansionSpec::new(Vertex(vertex), size, assignment.iter().map(|&v| Vertex(v)).collect());
    let h = cycle_expand(&g, &spec)?.compacted();
    Ok(Report::ok(render(&h, output.to)?, graph_json(&h)))
}

fn parse_pairing(items: &[String]) -> Result<Vec<(Vertex, Vertex)>> {
    items
        .iter()
        .map(|s| {
            let (a, b) = s
                .split_once(':')
                .ok_or_else(|| Error::Argument(format!("pairing entry {s:?} is not a:b")))?;
            let num = |t: &str| {
                t.trim()
                    .parse::<u32>()
                    .map(Vertex)
                    .map_err(|_| Error::Argument(format!("pairing entry {s:?} is not a:b")))
            };
            Ok((num(a)?, num(b)?))
        })
        .collect()
}

#[allow(clippy::too_many_arguments)]
fn glue_cmd(
    first: &Path,
    second: Option<&Path>,
    mode: GlueMode,
    u1: u32,
    u2: Option<u32>,
    pairing: &[String],
    k: u32,
    format: InputFormat,
    output: &Output,
) -> Result<Report> {
    let g1 = read_graph(first, format)?;
    let u1 = Vertex(u1);
    let h = if mode == GlueMode::Bridge {
        k_bridge_add(&g1, u1, k)?
    } else {
        let second = second.ok_or_else(|| Error::Argument("a second graph is required".into()))?;
        let g2 = read_graph(second, format)?;
        let u2 = Vertex(u2.ok_or_else(|| Error::Argument("--u2 is required".into()))?);
        match mode {
            GlueMode::Block => block_glue(&g1, u1, &g2, u2)?,
            _ => {
                let spec = if pairing.is_empty() {
                    VertexGluingSpec::sorted(&g1, u1, &g2, u2)
                } else {
                    VertexGluingSpec {
                        u1,
                        u2,
                        pairing: parse_pairing(pairing)?,
                    }
                };
                vertex_glue(&g1, &g2, &spec)?
            }
        }
    }
    .compacted();
    let mut result = graph_json(&h);
    let exact = h.order() >= 2 && is_exactly_k(&h, k).is_ok_and(|r| r.exact);
    result["exact"] = Value::Bool(exact);
    Ok(Report::ok(render(&h, output.to)?, result))
}

fn export_cmd(input: &Input, output: &Output) -> Result<Report> {
    let g = read_graph(&input.path, input.format)?;
    Ok(Report::ok(render(&g, output.to)?, graph_json(&g)))
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Verify { .. } => "verify",
        Command::Decompose { .. } => "decompose",
        Command::Replay { .. } => "replay",
        Command::Enumerate(_) => "enumerate",
        Command::Expand { .. } => "expand",
        Command::Glue { .. } => "glue",
        Command::Export { .. } => "export",
    }
}

fn run(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::Verify { input, k } => verify(input, *k),
        Command::Decompose { input } => decompose_cmd(input),
        Command::Replay {
            script,
            output,
            embedding,
        } => replay_cmd(script, output, *embedding),
        Command::Enumerate(args) => enumerate_cmd(args, cli.json),
        Command::Expand {
            input,
            vertex,
            size,
            assignment,
            output,
        } => expand_cmd(input, *vertex, *size, assignment, output),
        Command::Glue {
            first,
            second,
            mode,
            u1,
            u2,
            pairing,
            k,
            format,
            output,
        } => glue_cmd(first, second.as_deref(), *mode, *u1, *u2, pairing, *k, *format, output),
        Command::Export { input, output } => export_cmd(input, output),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = command_name(&cli.command);
    let (code, body) = match run(&cli) {
        Ok(r) => {
            if cli.json {
                let body = json!({
                    "command": name,
                    "exit_code": r.code,
                    "ok": r.code == 0,
                    "result": r.result,
                    "error": Value::Null,
                });
                (r.code, body.to_string() + "\n")
            } else {
                eprint!("{}", r.stderr);
                (r.code, r.text)
            }
        }
        Err(e) => {
            let code = exit_code(&e);
            if cli.json {
                let body = json!({
                    "command": name,
                    "exit_code": code,
                    "ok": false,
                    "result": Value::Null,
                    "error": error_body(&e),
                });
                (code, body.to_string() + "\n")
            } else {
                eprintln!("error: {e}");
                (code, String::new())
            }
        }
    };
    print!("{body}");
    ExitCode::from(code)
}
