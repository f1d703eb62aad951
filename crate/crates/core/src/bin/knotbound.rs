use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use knotbound::delta::{parse_delta, delta_tree, verify_delta_tree};
use knotbound::diagram::{parse_pd, Diagram};
use knotbound::error::{Error, Result};
use knotbound::homfly::{summarize, HomflyEngine, DEFAULT_CROSSING_CAP};
use knotbound::ineq::{
    check_conjectures, deduce_exact, independence_check, propagate_with, BoundState, EdgeId, PropagateOptions,
    RelationGraph,
};
use knotbound::ingest::{bounds_to_csv, ingest, Dataset};
use knotbound::skein::{certify_td_with, TdSearch, DEFAULT_SEARCH_CAP};

/// Skein resolving trees, delta-crossing diagrams and bound propagation
/// over knot invariant inequalities.
#[derive(Parser, Debug)]
#[command(name = "knotbound", version)]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse a PD code and print its normalized form.
    Parse(DiagramArgs),
    /// HOMFLYPT, Jones and Alexander polynomials and the derived spans.
    Poly {
        #[command(flatten)]
        input: DiagramArgs,
        /// Quantity to print.
        #[arg(long, value_enum, default_value_t = What::All)]
        what: What,
        /// Refuse diagrams with more crossings than this.
        #[arg(long, default_value_t = DEFAULT_CROSSING_CAP)]
        cap: usize,
    },
    /// Certified interval for the skein tree depth.
    TdSearch {
        #[command(flatten)]
        input: DiagramArgs,
        /// Refuse diagrams with more crossings than this.
        #[arg(long, default_value_t = DEFAULT_SEARCH_CAP)]
        cap: usize,
        /// Also print the witness tree.
        #[arg(long)]
        tree: bool,
    },
    /// Build and check the resolving tree of a delta diagram.
    DeltaTree {
        /// Delta diagram text, e.g. "DU(1,2,3,1,2,3)".
        #[arg(long, conflicts_with = "file", required_unless_present = "file")]
        delta: Option<String>,
        /// Read the delta diagram from a file.
        #[arg(long)]
        file: Option<PathBuf>,
        /// Also print the tree.
        #[arg(long)]
        tree: bool,
    },
    /// Propagate bounds over the theorem edges.
    Propagate {
        #[command(flatten)]
        bounds: BoundsArgs,
        /// Print only newly exact values.
        #[arg(long)]
        deduce: bool,
        /// Write the propagated bounds as CSV to this file.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Propagate and list the values that became exact.
    Deduce {
        #[command(flatten)]
        bounds: BoundsArgs,
    },
    /// Check whether an edge follows from the other theorem edges.
    CheckEdgeIndependence {
        /// Edge id, e.g. 43.
        #[arg(long)]
        edge: String,
        /// Relations file (defaults to the bundled one).
        #[arg(long)]
        relations: Option<PathBuf>,
    },
    /// Compare both sides of each conjectural edge on the data.
    CheckConjectures {
        #[command(flatten)]
        bounds: BoundsArgs,
    },
}

#[derive(clap::Args, Debug)]
struct DiagramArgs {
    /// PD code, e.g. "X(1,5,2,4) X(3,1,4,6) X(5,3,6,2)"; "U<k>" adds circles.
    #[arg(long, conflicts_with = "file", required_unless_present = "file")]
    pd: Option<String>,
    /// Read the PD code from a file.
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(clap::Args, Debug)]
struct BoundsArgs {
    /// Relations file (defaults to the bundled one).
    #[arg(long)]
    relations: Option<PathBuf>,
    /// Bounds CSV: knot,invariant,lo,hi[,source].
    #[arg(long)]
    bounds: PathBuf,
    /// Add the axiom that the signature is even.
    #[arg(long)]
    sigma_even: bool,
    /// Drop the nonnegativity axioms.
    #[arg(long)]
    allow_negative: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum What {
    All,
    Homfly,
    Jones,
    Alexander,
    #[value(name = "degPz")]
    DegPz,
    #[value(name = "spPv")]
    SpPv,
    #[value(name = "spVt")]
    SpVt,
    #[value(name = "spDeltat")]
    SpDeltat,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn text_arg(inline: &Option<String>, file: &Option<PathBuf>) -> Result<String> {
    match (inline, file) {
        (Some(t), _) => Ok(t.clone()),
        (None, Some(p)) => read(p),
        (None, None) => Err(Error::Io("no input given".into())),
    }
}

fn load_graph(path: &Option<PathBuf>) -> Result<RelationGraph> {
    match path {
        Some(p) => RelationGraph::parse(&read(p)?),
        None => Ok(RelationGraph::builtin()),
    }
}

fn load_bounds(args: &BoundsArgs) -> Result<(RelationGraph, Dataset, BoundState)> {
    let g = load_graph(&args.relations)?;
    let data = ingest(&g, read(&args.bounds)?.as_bytes())?;
    let opts = PropagateOptions {
        nonnegative: !args.allow_negative,
        sigma_even: args.sigma_even,
        ..PropagateOptions::default()
    };
    let out = propagate_with(&g, &data.bounds, &opts)?;
    Ok((g, data, out))
}

fn show<T: ToString>(v: Option<T>) -> String {
    v.map_or("undefined".to_string(), |v| v.to_string())
}

fn run(cli: &Cli) -> Result<String> {
    let json = cli.json;
    let out = match &cli.command {
        Command::Parse(input) => {
            let d: Diagram = parse_pd(&text_arg(&input.pd, &input.file)?)?;
            if json {
                json!({
                    "pd": d.to_string(),
                    "crossings": d.crossing_count(),
                    "components": d.component_count(),
                    "writhe": d.writhe(),
                    "key": d.canonical_key(),
                })
                .to_string()
            } else {
                format!(
                    "pd={d}\ncrossings={}\ncomponents={}\nwrithe={}",
                    d.crossing_count(),
                    d.component_count(),
                    d.writhe()
                )
            }
        }
        Command::Poly { input, what, cap } => {
            let d = parse_pd(&text_arg(&input.pd, &input.file)?)?;
            let s = summarize(&HomflyEngine::new(*cap), &d)?;
            let value = match what {
                What::All => None,
                What::Homfly => Some(s.homfly.clone()),
                What::Jones => Some(s.jones.clone()),
                What::Alexander => Some(s.alexander.clone()),
                What::DegPz => Some(s.deg_p_z.to_string()),
                What::SpPv => Some(s.sp_p_v.to_string()),
                What::SpVt => Some(show(s.sp_v_t)),
                What::SpDeltat => Some(show(s.sp_delta_t)),
            };
            match (value, json) {
                (Some(v), false) => v,
                (Some(v), true) => json!({ "value": v }).to_string(),
                (None, true) => serde_json::to_string(&s).expect("serializable"),
                (None, false) => format!(
                    "homfly={}\njones={}\nalexander={}\ndegPz={}\nspPv={}\nspVt={}\nspDeltat={}",
                    s.homfly,
                    s.jones,
                    s.alexander,
                    s.deg_p_z,
                    s.sp_p_v,
                    show(s.sp_v_t),
                    show(s.sp_delta_t)
                ),
            }
        }
        Command::TdSearch { input, cap, tree } => {
            let d = parse_pd(&text_arg(&input.pd, &input.file)?)?;
            let mut search = TdSearch::new(*cap);
            let (iv, witness) = certify_td_with(&HomflyEngine::default(), &mut search, &d)?;
            if json {
                let mut v = json!({ "lo": iv.lo, "hi": iv.hi, "exact": iv.exact() });
                if *tree {
                    v["tree"] = serde_json::to_value(witness.report()).expect("serializable");
                }
                v.to_string()
            } else {
                let mut s = match iv.exact() {
                    Some(v) => v.to_string(),
                    None => format!("[{}, {}]", iv.lo, iv.hi),
                };
                if *tree {
                    s.push('\n');
                    s.push_str(witness.to_text().trim_end());
                }
                s
            }
        }
        Command::DeltaTree { delta, file, tree } => {
            let dd = parse_delta(&text_arg(delta, file)?)?;
            let report = verify_delta_tree(&dd);
            let witness = if *tree { delta_tree(&dd).ok() } else { None };
            if json {
                let mut v = serde_json::to_value(&report).expect("serializable");
                if let Some(t) = &witness {
                    v["tree"] = serde_json::to_value(t.report()).expect("serializable");
                }
                v.to_string()
            } else {
                let mut s = report.to_text();
                if let Some(t) = witness {
                    s.push('\n');
                    s.push_str(t.to_text().trim_end());
                }
                if !report.pass {
                    return Err(Error::Construction(s));
                }
                s
            }
        }
        Command::Propagate { bounds, deduce, output } => {
            let (_, data, out) = load_bounds(bounds)?;
            if let Some(path) = output {
                let ds = Dataset {
                    bounds: out.clone(),
                    ..Dataset::default()
                };
                fs::write(path, bounds_to_csv(&ds))?;
            }
            if *deduce {
                deductions(&data.bounds, &out, json)
            } else if json {
                serde_json::to_string(&out).expect("serializable")
            } else {
                out.to_table().trim_end().to_string()
            }
        }
        Command::Deduce { bounds } => {
            let (_, data, out) = load_bounds(bounds)?;
            deductions(&data.bounds, &out, json)
        }
        Command::CheckEdgeIndependence { edge, relations } => {
            let g = load_graph(relations)?;
            let id: EdgeId = edge.parse().map_err(|_| Error::UnknownEdge(edge.clone()))?;
            let independent = independence_check(&g, &id)?;
            if json {
                json!({ "edge": id, "independent": independent }).to_string()
            } else {
                format!(
                    "edge {id}: {}",
                    if independent { "independent" } else { "follows from other edges" }
                )
            }
        }
        Command::CheckConjectures { bounds } => {
            let (g, _, out) = load_bounds(bounds)?;
            let report = check_conjectures(&g, &out);
            if json {
                serde_json::to_string(&report).expect("serializable")
            } else {
                report.to_text().trim_end().to_string()
            }
        }
    };
    Ok(out)
}

fn deductions(before: &BoundState, after: &BoundState, json: bool) -> String {
    let found = deduce_exact(before, after);
    if json {
        serde_json::to_string(&found).expect("serializable")
    } else {
        found
            .iter()
            .map(|d| format!("{} {}={}", d.knot, d.invariant, d.value))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if !out.is_empty() {
                // a closed pipe (e.g. `| head`) is not an error worth reporting
                let _ = writeln!(std::io::stdout(), "{out}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
