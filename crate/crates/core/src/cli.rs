//! Command-line front end: JSON in, JSON (or plain table) out, with
//! deterministic ordering. Exit codes: 0 success, 1 domain error (structured
//! JSON object on stderr), 2 malformed input.

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::degeneration::{normalize_chain, Family};
use crate::error::CoreError;
use crate::graph::{universal_deformation_presentation, SpinType, StableGraph};
use crate::json::{element_to_json, IsomJson, SpinMapJson, SpinTypeJson};
use crate::local::{epq_isomorphic, local_aut_group, LocalAutKind};

#[derive(Debug, Parser)]
#[command(
    name = "spin",
    version,
    about = "Exact computation with limit spin structures on stable curves",
    long_about = "Inputs are JSON, passed inline or as a file path.\n\
        Graph: {\"r\": 2, \"vertices\": [{\"id\": 0, \"genus\": 1}], \"edges\": [{\"id\": 0, \"v\": [0,0]}]}\n\
        Spin type: {\"nonfree\": [{\"edge\": 0, \"u\": 1}], \"degrees\": {\"0\": 0}}\n\
        Family: {\"r\": 2, \"graph\": ..., \"nodes\": [{\"edge\": 0, \"order\": 1, \"residue\": 1}]}\n\
        Ring: {\"field\": \"Q\" | {\"Fp\": p}, \"vars\": [\"t\"], \"ideal\": [[4]]}\n\
        Elements: expression strings or {\"exponents\": \"coefficient\"} maps."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a stable graph: connectivity, stability, genus, divisibility.
    Validate {
        /// Graph JSON (inline or file path).
        #[arg(long)]
        graph: String,
    },
    /// List all spin types on a graph.
    Enumerate {
        #[arg(long)]
        graph: String,
    },
    /// Count the spin structures carried by each type.
    Count {
        #[arg(long)]
        graph: String,
        /// Spin type JSON; all types when omitted.
        #[arg(long = "type")]
        spin_type: Option<String>,
    },
    /// Automorphism group orders r^#components.
    Aut {
        #[arg(long)]
        graph: String,
        #[arg(long = "type")]
        spin_type: Option<String>,
    },
    /// Universal deformation ring presentation.
    Deform {
        #[arg(long)]
        graph: String,
        #[arg(long = "type")]
        spin_type: Option<String>,
    },
    /// Normalize an exceptional chain: coefficients, kink, degrees.
    Chain {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        residue: u32,
    },
    /// Limit spin type of a degenerating family.
    Limit {
        /// Family JSON (inline or file path).
        #[arg(long)]
        family: String,
    },
    /// Local model computations at a single node.
    Local {
        #[command(subcommand)]
        command: LocalCommand,
    },
}

#[derive(Debug, Subcommand)]
pub enum LocalCommand {
    /// Classify a candidate spin map: relations, twist, cokernel, sigma.
    Classify {
        /// Spin map bundle JSON: ring, p, q, r, components.
        #[arg(long)]
        input: String,
    },
    /// Decide whether two local modules E(p,q) are isomorphic.
    Isom {
        /// Bundle JSON: ring, first {p,q}, second {p,q}.
        #[arg(long)]
        input: String,
    },
}

/// A failed command: exit code plus the structured object for stderr.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub payload: Value,
}

impl CliError {
    fn malformed(msg: impl Into<String>) -> Self {
        CliError {
            code: 2,
            payload: json!({"error": {"kind": "malformed-input", "message": msg.into()}}),
        }
    }

    fn domain(err: CoreError) -> Self {
        let dbg = format!("{:?}", err);
        let kind: String = dbg
            .chars()
            .take_while(|c| c.is_ascii_alphanumeric())
            .collect();
        CliError {
            code: 1,
            payload: json!({"error": {"kind": kind, "message": err.to_string()}}),
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        CliError::domain(e)
    }
}

/// Resolve an argument that is either inline JSON or a file path.
fn load(src: &str) -> Result<String, CliError> {
    let t = src.trim_start();
    if t.starts_with('{') || t.starts_with('[') {
        return Ok(src.to_string());
    }
    std::fs::read_to_string(src)
        .map_err(|e| CliError::malformed(format!("cannot read {:?}: {}", src, e)))
}

fn parse_json<T: serde::de::DeserializeOwned>(src: &str) -> Result<T, CliError> {
    let text = load(src)?;
    serde_json::from_str(&text).map_err(|e| CliError::malformed(e.to_string()))
}

fn type_value(_g: &StableGraph, t: &SpinType) -> Value {
    // BTreeMap iteration order keeps the key order deterministic
    serde_json::to_value(SpinTypeJson::from_type(t)).expect("serializable")
}

/// Run one request and produce the serialized result for stdout.
pub fn dispatch(cmd: &Command) -> Result<Value, CliError> {
    match cmd {
        Command::Validate { graph } => {
            let g: StableGraph = parse_json(graph)?;
            let report = g.validate();
            if !report.valid {
                return Err(CliError {
                    code: 1,
                    payload: json!({"error": {
                        "kind": "InvalidGraph",
                        "message": report.diagnostics.join("; "),
                        "diagnostics": report.diagnostics,
                    }}),
                });
            }
            Ok(serde_json::to_value(report).expect("serializable"))
        }
        Command::Enumerate { graph } => {
            let g: StableGraph = parse_json(graph)?;
            let types = g.enumerate_spin_types()?;
            Ok(Value::Array(
                types.iter().map(|t| type_value(&g, t)).collect(),
            ))
        }
        Command::Count { graph, spin_type } => {
            let g: StableGraph = parse_json(graph)?;
            with_types(&g, spin_type, |g, t| {
                Ok(json!({"type": type_value(g, t), "count": g.count_roots(t)}))
            })
        }
        Command::Aut { graph, spin_type } => {
            let g: StableGraph = parse_json(graph)?;
            with_types(&g, spin_type, |g, t| {
                Ok(json!({"type": type_value(g, t), "aut_order": g.aut_order(t)}))
            })
        }
        Command::Deform { graph, spin_type } => {
            let g: StableGraph = parse_json(graph)?;
            with_types(&g, spin_type, |g, t| {
                let p = universal_deformation_presentation(g, t)?;
                Ok(json!({
                    "type": type_value(g, t),
                    "presentation": serde_json::to_value(&p).expect("serializable"),
                }))
            })
        }
        Command::Chain { r, n, residue } => {
            let sol = normalize_chain(*residue, *n, *r)?;
            Ok(serde_json::to_value(sol).expect("serializable"))
        }
        Command::Limit { family } => {
            let f: Family = parse_json(family)?;
            let t = crate::degeneration::limit_spin_type(&f)?;
            Ok(type_value(&f.graph, &t))
        }
        Command::Local { command } => match command {
            LocalCommand::Classify { input } => {
                let bundle: SpinMapJson = parse_json(input)?;
                let b = bundle.to_spin_map()?;
                let (ok, failing) = b.check_relations();
                if !ok {
                    return Ok(json!({
                        "relations_ok": false,
                        "failing_indices": failing,
                    }));
                }
                let (len, good) = b.cokernel_length()?;
                let report = b.extract_sigma()?;
                let aut = local_aut_group(&b).ok().map(|a| {
                    json!({
                        "kind": match a.kind {
                            LocalAutKind::Diagonal => "diagonal",
                            LocalAutKind::Product => "product",
                        },
                        "abstract_order": a.abstract_order,
                        "realized_roots": a.realized_roots,
                        "realized_order": a.realized_order,
                    })
                });
                Ok(json!({
                    "relations_ok": true,
                    "twist": [report.u, report.v],
                    "cokernel_length": len,
                    "good_cokernel": good,
                    "class": report.class.to_string(),
                    "w": serde_json::to_value(element_to_json(&report.w)).expect("serializable"),
                    "sigmas": report
                        .sigmas
                        .iter()
                        .map(|s| serde_json::to_value(element_to_json(s)).expect("serializable"))
                        .collect::<Vec<_>>(),
                    "aut": aut,
                }))
            }
            LocalCommand::Isom { input } => {
                let bundle: IsomJson = parse_json(input)?;
                let (first, second) = bundle.to_modules()?;
                let mu = epq_isomorphic(&first, &second)?;
                Ok(json!({
                    "isomorphic": mu.is_some(),
                    "mu": mu
                        .map(|m| serde_json::to_value(element_to_json(&m)).expect("serializable")),
                }))
            }
        },
    }
}

/// Apply `f` to one named type, or map it over the full enumeration.
fn with_types(
    g: &StableGraph,
    spin_type: &Option<String>,
    f: impl Fn(&StableGraph, &SpinType) -> Result<Value, CliError>,
) -> Result<Value, CliError> {
    match spin_type {
        Some(src) => {
            let tj: SpinTypeJson = parse_json(src)?;
            let t = tj.to_type(g)?;
            f(g, &t)
        }
        None => {
            let types = g.enumerate_spin_types()?;
            Ok(Value::Array(
                types
                    .iter()
                    .map(|t| f(g, t))
                    .collect::<Result<Vec<_>, _>>()?,
            ))
        }
    }
}

/// Render a JSON value as an indented plain-text table.
pub fn render_table(v: &Value) -> String {
    let mut out = String::new();
    fn go(v: &Value, indent: usize, out: &mut String) {
        let pad = "  ".repeat(indent);
        match v {
            Value::Object(map) => {
                for (k, v) in map {
                    match v {
                        Value::Object(_) | Value::Array(_) => {
                            out.push_str(&format!("{}{}:\n", pad, k));
                            go(v, indent + 1, out);
                        }
                        _ => out.push_str(&format!("{}{}: {}\n", pad, k, scalar(v))),
                    }
                }
            }
            Value::Array(items) => {
                for (i, item) in items.iter().enumerate() {
                    match item {
                        Value::Object(_) | Value::Array(_) => {
                            out.push_str(&format!("{}[{}]\n", pad, i));
                            go(item, indent + 1, out);
                        }
                        _ => out.push_str(&format!("{}- {}\n", pad, scalar(item))),
                    }
                }
            }
            _ => out.push_str(&format!("{}{}\n", pad, scalar(v))),
        }
    }
    fn scalar(v: &Value) -> String {
        match v {
            Value::String(s) => s.clone(),
            other => other.to_string(),
        }
    }
    go(v, 0, &mut out);
    out
}

/// Execute a parsed invocation: print the result or the error object and
/// return the process exit code.
pub fn run(cli: &Cli) -> i32 {
    match dispatch(&cli.command) {
        Ok(value) => {
            match cli.format {
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&value).expect("serializable")
                ),
                Format::Table => print!("{}", render_table(&value)),
            }
            0
        }
        Err(e) => {
            eprintln!(
                "{}",
                serde_json::to_string_pretty(&e.payload).expect("serializable")
            );
            e.code
        }
    }
}
