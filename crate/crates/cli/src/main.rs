mod svg;

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use boxkit::{
    approx_boxicity, brute_force_boxicity, build_gn, build_k2n, gn_box_representation, gn_labeling,
    kernelize_with, recognize_interval, solve_fpt, stab_analysis, BoxError, BoxRepresentation,
    Graph, Labeling, PathDecomposition, Verification, VertexId,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

#[derive(Parser, Debug)]
#[command(
    name = "boxkit",
    version,
    about = "Compute, approximate and verify boxicity"
)]
struct Cli {
    /// Print machine-readable JSON on stdout.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for the search routines (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GraphArg {
    /// Edge-list file.
    #[arg(long)]
    graph: PathBuf,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact boxicity by exhaustive search (at most 16 vertices).
    Exact {
        #[command(flatten)]
        graph: GraphArg,
        /// Give up above this dimension; answers "no" when box > dmax.
        #[arg(long)]
        dmax: Option<usize>,
        /// Write the representation JSON here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Interval graph test; prints a model when there is one.
    Recognize {
        #[command(flatten)]
        graph: GraphArg,
    },
    /// Twin removal and cluster trimming.
    Kernelize {
        #[command(flatten)]
        graph: GraphArg,
        /// Replace the proven class bound; the result is then unsound.
        #[arg(long)]
        threshold_override: Option<usize>,
        /// Write the kernel edge list here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide box(G) <= d through the kernel.
    FptSolve {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        d: usize,
    },
    /// Additive-one approximation from a path decomposition.
    PwApprox {
        #[command(flatten)]
        graph: GraphArg,
        /// Path decomposition: one bag per line.
        #[arg(long)]
        pd: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit a gadget graph with its labeling and representation.
    Gadget {
        #[arg(value_enum)]
        kind: GadgetKind,
        /// Chain length for gn, part size for k2n.
        #[arg(long, default_value_t = 1)]
        n: usize,
        /// Directory for graph.el, labeling.txt and rep.json.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a representation against a graph.
    Verify {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        rep: PathBuf,
    },
    /// Draw a 2-dimensional representation as SVG.
    RenderSvg {
        #[arg(long)]
        rep: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Largest number of boxes sharing a coordinate in one dimension.
    Stab {
        #[arg(long)]
        rep: PathBuf,
        /// Vertex subset, comma or space separated (default: all).
        #[arg(long)]
        vertices: Option<String>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum GadgetKind {
    Block,
    Gn,
    K2n,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {message}")]
    Input { path: PathBuf, message: String },
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Io { .. } => 74,
            CliError::Usage(_) => 64,
            CliError::Input { .. } | CliError::Failed(_) => 2,
        }
    }
}

fn failed(e: impl std::fmt::Display) -> CliError {
    CliError::Failed(e.to_string())
}

/// What a command produced: a yes/no verdict plus its two renderings.
struct Report {
    yes: bool,
    json: Value,
    text: String,
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

fn write(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

fn load_graph(path: &Path) -> Result<Graph, CliError> {
    Graph::from_edge_list(&read(path)?).map_err(|e| CliError::Input {
        path: path.to_owned(),
        message: e.to_string(),
    })
}

fn load_pd(path: &Path) -> Result<PathDecomposition, CliError> {
    PathDecomposition::from_text(&read(path)?).map_err(|e| CliError::Input {
        path: path.to_owned(),
        message: e.to_string(),
    })
}

fn load_rep(path: &Path) -> Result<BoxRepresentation, CliError> {
    serde_json::from_str(&read(path)?).map_err(|e| CliError::Input {
        path: path.to_owned(),
        message: e.to_string(),
    })
}

fn rep_json(rep: &BoxRepresentation) -> String {
    serde_json::to_string_pretty(rep).expect("representations serialize")
}

/// One line per vertex: `v: [l1, r1] x [l2, r2] ...`.
fn rep_text(rep: &BoxRepresentation) -> String {
    let mut out = format!("d={}\n", rep.dimension());
    for (v, b) in rep.iter() {
        let sides: Vec<String> = b
            .iter()
            .map(|iv| format!("[{}, {}]", iv.left, iv.right))
            .collect();
        let _ = writeln!(out, "{v}: {}", sides.join(" x "));
    }
    out
}

fn labeling_text(lab: &Labeling) -> String {
    let mut out = String::new();
    for (v, p) in lab.iter() {
        let _ = writeln!(out, "{v} {p}");
    }
    out
}

fn parse_vertex_list(text: &str) -> Result<BTreeSet<VertexId>, CliError> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse()
                .map_err(|_| CliError::Usage(format!("invalid vertex id {t:?}")))
        })
        .collect()
}

fn exact(graph: &Path, dmax: Option<usize>, out: Option<&Path>) -> Result<Report, CliError> {
    let g = load_graph(graph)?;
    let bound = dmax.unwrap_or(g.vertex_count().max(1));
    match brute_force_boxicity(&g, bound).map_err(failed)? {
        Some((d, rep)) => {
            if let Some(p) = out {
                write(p, &rep_json(&rep))?;
            }
            Ok(Report {
                yes: true,
                json: json!({ "boxicity": d, "representation": rep }),
                text: rep_text(&rep),
            })
        }
        None => Ok(Report {
            yes: false,
            json: json!({ "boxicity": null, "dmax": bound }),
            text: format!("box > {bound}\n"),
        }),
    }
}

fn recognize(graph: &Path) -> Result<Report, CliError> {
    let g = load_graph(graph)?;
    Ok(match recognize_interval(&g) {
        Some(m) => Report {
            yes: true,
            text: format!(
                "interval\n{}\n",
                serde_json::to_string(&m).expect("models serialize")
            ),
            json: json!({ "interval": true, "model": m }),
        },
        None => Report {
            yes: false,
            json: json!({ "interval": false, "model": null }),
            text: "not interval\n".into(),
        },
    })
}

fn kernelize(
    graph: &Path,
    threshold: Option<usize>,
    out: Option<&Path>,
) -> Result<Report, CliError> {
    let g = load_graph(graph)?;
    if let Some(t) = threshold {
        eprintln!(
            "warning: UNSOUND: class bound overridden with {t}; the kernel may change the boxicity"
        );
    }
    let (kernel, report) = kernelize_with(&g, threshold).map_err(failed)?;
    if let Some(p) = out {
        write(p, &kernel.to_edge_list())?;
    }
    let deleted: usize = report.classes.iter().map(|c| c.deleted).sum();
    let text = format!(
        "kernel: {} vertices, {} edges (input {} vertices)\ndeletion set: {:?}\nclasses: {}, clusters deleted: {deleted}\nsound: {}\n",
        kernel.vertex_count(),
        kernel.edge_count(),
        g.vertex_count(),
        report.x,
        report.classes.len(),
        report.sound
    );
    let mut json = serde_json::to_value(&report).expect("reports serialize");
    json["kernel"] = Value::String(kernel.to_edge_list());
    Ok(Report {
        yes: true,
        json,
        text,
    })
}

fn fpt_solve(graph: &Path, d: usize) -> Result<Report, CliError> {
    let g = load_graph(graph)?;
    let yes = solve_fpt(&g, d).map_err(failed)?;
    Ok(Report {
        yes,
        json: json!({ "d": d, "answer": yes }),
        text: format!("box {} {d}\n", if yes { "<=" } else { ">" }),
    })
}

fn pw_approx(graph: &Path, pd: &Path, out: Option<&Path>) -> Result<Report, CliError> {
    let g = load_graph(graph)?;
    let pd = load_pd(pd)?;
    let approx = approx_boxicity(&g, &pd).map_err(failed)?;
    if let Some(p) = out {
        write(p, &rep_json(&approx.rep))?;
    }
    let tuples: Vec<String> = approx
        .report
        .attempts
        .iter()
        .map(|a| {
            format!(
                "  d={} feasible={} layer tuples {:?}",
                a.d, a.feasible, a.layer_tuples
            )
        })
        .collect();
    let text = format!(
        "approximation d={} (boxicity is {} or {}), pd width {}, {} ms\n{}\n{}",
        approx.d,
        approx.d,
        approx.d + 1,
        approx.report.width,
        approx.report.wall_ms,
        tuples.join("\n"),
        rep_text(&approx.rep)
    );
    Ok(Report {
        yes: true,
        json: json!({ "report": approx.report, "representation": approx.rep }),
        text,
    })
}

fn gadget(kind: GadgetKind, n: usize, out: Option<&Path>) -> Result<Report, CliError> {
    let (graph, lab, rep) = match kind {
        GadgetKind::Block | GadgetKind::Gn => {
            let n = if matches!(kind, GadgetKind::Block) {
                1
            } else {
                n
            };
            let g = build_gn(n).map_err(failed)?;
            (
                g.graph,
                gn_labeling(n).map_err(failed)?,
                gn_box_representation(n).map_err(failed)?,
            )
        }
        GadgetKind::K2n => {
            let (g, models) = build_k2n(n).map_err(failed)?;
            let lab = Labeling::from_order(&g.vertices().collect::<Vec<_>>()).map_err(failed)?;
            let rep = BoxRepresentation::from_models(&models).map_err(failed)?;
            (g, lab, rep)
        }
    };
    let bandwidth = graph.bandwidth_of_labeling(&lab).map_err(failed)?;
    if let Some(dir) = out {
        fs::create_dir_all(dir).map_err(|source| CliError::Io {
            path: dir.to_owned(),
            source,
        })?;
        write(&dir.join("graph.el"), &graph.to_edge_list())?;
        write(&dir.join("labeling.txt"), &labeling_text(&lab))?;
        write(&dir.join("rep.json"), &rep_json(&rep))?;
    }
    let text = format!(
        "{} vertices, {} edges, labeling bandwidth {bandwidth}, representation dimension {}\n",
        graph.vertex_count(),
        graph.edge_count(),
        rep.dimension()
    );
    Ok(Report {
        yes: true,
        json: json!({
            "graph": graph.to_edge_list(),
            "labeling": lab.iter().map(|(v, p)| (v.to_string(), Value::from(p))).collect::<serde_json::Map<_, _>>(),
            "bandwidth": bandwidth,
            "representation": rep,
        }),
        text,
    })
}

fn verify(graph: &Path, rep: &Path) -> Result<Report, CliError> {
    let g = load_graph(graph)?;
    let r = load_rep(rep)?;
    let verdict = match r.verify(&g) {
        Ok(v) => v,
        Err(e @ (BoxError::ExtraVertex(_) | BoxError::MissingVertex(_))) => {
            return Ok(Report {
                yes: false,
                json: json!({ "valid": false, "witness": { "kind": "vertex-set", "message": e.to_string() } }),
                text: format!("invalid: {e}\n"),
            })
        }
        Err(e) => {
            return Err(CliError::Input {
                path: rep.to_owned(),
                message: e.to_string(),
            })
        }
    };
    Ok(match verdict {
        Verification::Valid => Report {
            yes: true,
            json: json!({ "valid": true }),
            text: "valid\n".into(),
        },
        Verification::MissingAdjacency { u, v, dimension } => Report {
            yes: false,
            json: json!({ "valid": false, "witness": { "u": u, "v": v, "kind": "missing", "dimension": dimension } }),
            text: format!(
                "invalid: edge {u}-{v} but the boxes are disjoint in dimension {dimension}\n"
            ),
        },
        Verification::SpuriousAdjacency { u, v } => Report {
            yes: false,
            json: json!({ "valid": false, "witness": { "u": u, "v": v, "kind": "spurious" } }),
            text: format!("invalid: {u} and {v} are not adjacent but their boxes intersect\n"),
        },
    })
}

fn render_svg(rep: &Path, out: Option<&Path>) -> Result<Report, CliError> {
    let r = load_rep(rep)?;
    if r.dimension() != 2 {
        return Err(CliError::Input {
            path: rep.to_owned(),
            message: format!(
                "render-svg needs a 2-dimensional representation, got d = {}",
                r.dimension()
            ),
        });
    }
    let svg = svg::render(&r);
    match out {
        Some(p) => {
            write(p, &svg)?;
            Ok(Report {
                yes: true,
                json: json!({ "written": p.display().to_string(), "boxes": r.len() }),
                text: format!("wrote {} boxes to {}\n", r.len(), p.display()),
            })
        }
        None => Ok(Report {
            yes: true,
            json: json!({ "svg": svg }),
            text: svg,
        }),
    }
}

fn stab(rep: &Path, vertices: Option<&str>) -> Result<Report, CliError> {
    let r = load_rep(rep)?;
    let set = match vertices {
        Some(t) => parse_vertex_list(t)?,
        None => r.vertices().collect(),
    };
    let s = stab_analysis(&r, &set).map_err(failed)?;
    Ok(Report {
        yes: true,
        json: serde_json::to_value(s).expect("stab serializes"),
        text: format!(
            "dimension {} point {}: {} boxes\n",
            s.dimension, s.point, s.count
        ),
    })
}

fn dispatch(command: &Command) -> Result<Report, CliError> {
    match command {
        Command::Exact { graph, dmax, out } => exact(&graph.graph, *dmax, out.as_deref()),
        Command::Recognize { graph } => recognize(&graph.graph),
        Command::Kernelize {
            graph,
            threshold_override,
            out,
        } => kernelize(&graph.graph, *threshold_override, out.as_deref()),
        Command::FptSolve { graph, d } => fpt_solve(&graph.graph, *d),
        Command::PwApprox { graph, pd, out } => pw_approx(&graph.graph, pd, out.as_deref()),
        Command::Gadget { kind, n, out } => gadget(*kind, *n, out.as_deref()),
        Command::Verify { graph, rep } => verify(&graph.graph, rep),
        Command::RenderSvg { rep, out } => render_svg(rep, out.as_deref()),
        Command::Stab { rep, vertices } => stab(rep, vertices.as_deref()),
    }
}

fn run(cli: Cli) -> Result<Report, CliError> {
    if let Some(t) = cli.threads {
        if t == 0 {
            return Err(CliError::Usage("--threads must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(failed)?;
    }
    dispatch(&cli.command)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 64 } else { 0 });
        }
    };
    let as_json = cli.json;
    match run(cli) {
        Ok(report) => {
            if as_json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&report.json).expect("values serialize")
                );
            } else {
                print!("{}", report.text);
            }
            ExitCode::from(if report.yes { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
