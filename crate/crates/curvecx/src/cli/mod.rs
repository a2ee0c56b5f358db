//! The `curvecx` command line.
//!
//! Subcommands mirror the library layers: `surface-info` for closed forms,
//! `tri` for triangulations and flip graphs, `curves` for normal
//! coordinates, `complex` for snapshots of the complex of curves, and
//! `audit` for the named check suites. Primary output is JSON on stdout
//! (also written to `--out` when given); enumerations can be exported as
//! CSV by pointing `--out` at a `.csv` path. Exit codes: 0 when all checks
//! pass, 1 when a check fails, 2 on usage errors.

mod audit;

pub use audit::{run_suite, SuiteOptions, SUITE_NAMES};

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::json;
use thiserror::Error;

use crate::complex::{
    find_simple_pair_witness, good_triangles, is_chain, ComplexError, ComplexSnapshot,
};
use crate::curves::{
    classify, cut_along, disjoint, enumerate_vertices, transport_flip,
    CurveClass, CurveError, CurveKind, NormalCoords,
};
use crate::report::AuditReport;
use crate::surface::{SurfaceError, SurfaceSig};
use crate::triangulation::{
    flip_bfs, flip_path, replay_flip_path, RawTriangulation, TriError, Triangulation,
};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("io error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("bad json in {path}: {source}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Tri(#[from] TriError),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

#[derive(Parser, Debug)]
#[command(name = "curvecx", version, about = "curves on punctured surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Closed-form invariants of a surface signature
    SurfaceInfo {
        /// Surface shorthand like N3,1 or S0,4
        #[arg(long)]
        surface: SurfaceSig,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Ideal triangulations: build, validate, flip, search
    Tri {
        #[command(subcommand)]
        cmd: TriCmd,
    },
    /// Normal-coordinate curves
    Curves {
        #[command(subcommand)]
        cmd: CurvesCmd,
    },
    /// Snapshots of the complex of curves
    Complex {
        #[command(subcommand)]
        cmd: ComplexCmd,
    },
    /// Named audit suites
    Audit {
        /// One of: small-surfaces, dims, eq1, duallink, pentagon, flips, transport
        #[arg(long)]
        suite: String,
        #[arg(long)]
        surface: Option<SurfaceSig>,
        /// Weight bound for enumerations
        #[arg(long)]
        bound: Option<u32>,
        /// Largest bound the pentagon suite may escalate to
        #[arg(long, default_value_t = 5)]
        bound_cap: u32,
        #[arg(long, default_value_t = 100)]
        walks: u32,
        #[arg(long, default_value_t = 8)]
        len: u32,
        #[arg(long, default_value_t = 1000)]
        samples: u32,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long)]
        max_depth: Option<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum TriCmd {
    /// Reference triangulation of a surface
    Build {
        #[arg(long)]
        surface: SurfaceSig,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Derived invariants of a triangulation file
    Validate {
        #[arg(long)]
        tri: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Flip one edge
    Flip {
        #[arg(long)]
        tri: PathBuf,
        #[arg(long)]
        edge: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Flip classes within a radius
    Bfs {
        #[arg(long)]
        surface: Option<SurfaceSig>,
        #[arg(long)]
        tri: Option<PathBuf>,
        #[arg(long, default_value_t = 2)]
        radius: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Flip sequence between two triangulations (or back from a seeded walk)
    Path {
        #[arg(long)]
        from: Option<PathBuf>,
        #[arg(long)]
        to: Option<PathBuf>,
        /// Demo mode: scramble the reference of this surface instead
        #[arg(long)]
        surface: Option<SurfaceSig>,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 6)]
        len: u32,
        #[arg(long, default_value_t = 8)]
        max_depth: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct TriSource {
    /// Triangulation file; defaults to the reference of --surface
    #[arg(long)]
    tri: Option<PathBuf>,
    #[arg(long)]
    surface: Option<SurfaceSig>,
}

impl TriSource {
    fn load(&self) -> Result<Triangulation, CliError> {
        match (&self.tri, self.surface) {
            (Some(path), _) => load_triangulation(path),
            (None, Some(sig)) => Ok(Triangulation::reference(sig)?),
            (None, None) => Err(CliError::Usage("need --tri FILE or --surface SIG".into())),
        }
    }
}

#[derive(Subcommand, Debug)]
enum CurvesCmd {
    /// All curve classes within a weight bound
    Enumerate {
        #[command(flatten)]
        tri: TriSource,
        #[arg(long)]
        bound: u32,
        /// JSON by default; a .csv path exports columns vector, kind, k, pieces
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Triviality verdict and topological type of one curve
    Classify {
        #[command(flatten)]
        tri: TriSource,
        #[arg(long)]
        curve: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Disjointness of two curve classes
    Disjoint {
        #[command(flatten)]
        tri: TriSource,
        #[arg(long)]
        curve: PathBuf,
        #[arg(long)]
        curve2: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Pieces of the surface cut along a curve
    Cut {
        #[command(flatten)]
        tri: TriSource,
        #[arg(long)]
        curve: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Carry a curve across a flip
    Transport {
        #[command(flatten)]
        tri: TriSource,
        #[arg(long)]
        curve: PathBuf,
        #[arg(long)]
        edge: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum ComplexCmd {
    /// Build a snapshot and write it out
    Build {
        #[arg(long)]
        surface: SurfaceSig,
        #[arg(long)]
        bound: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Maximal cliques with dimension and pants-relation audits
    Cliques {
        #[arg(long)]
        surface: SurfaceSig,
        #[arg(long)]
        bound: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Link and dual link of a vertex
    Duallink {
        #[arg(long)]
        surface: SurfaceSig,
        #[arg(long)]
        bound: u32,
        #[arg(long)]
        vertex: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Pentagon predicate on five vertex ids
    Pentagon {
        #[arg(long)]
        surface: SurfaceSig,
        #[arg(long)]
        bound: u32,
        /// Five comma-separated vertex ids
        #[arg(long, value_delimiter = ',')]
        ids: Vec<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search for a simple-pair witness
    SimplePair {
        #[arg(long)]
        surface: SurfaceSig,
        #[arg(long)]
        bound: u32,
        #[arg(long)]
        alpha: usize,
        #[arg(long)]
        beta: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Chain predicate on a list of edges of the reference triangulation
    Chain {
        #[arg(long)]
        surface: SurfaceSig,
        /// Comma-separated edge indices
        #[arg(long, value_delimiter = ',')]
        edges: Vec<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Triangles bounding embedded discs through three distinct punctures
    GoodTriangles {
        #[command(flatten)]
        tri: TriSource,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn read_to_string(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })
}

fn load_triangulation(path: &Path) -> Result<Triangulation, CliError> {
    let text = read_to_string(path)?;
    let raw: RawTriangulation = serde_json::from_str(&text)
        .map_err(|source| CliError::Json { path: path.into(), source })?;
    Ok(Triangulation::from_raw(&raw)?)
}

fn load_curve(path: &Path, tri: &Triangulation) -> Result<Vec<u32>, CliError> {
    let text = read_to_string(path)?;
    let coords: NormalCoords = serde_json::from_str(&text)
        .map_err(|source| CliError::Json { path: path.into(), source })?;
    if !coords.matches(tri) {
        return Err(CliError::Usage(format!(
            "curve file {} does not match the triangulation (id {})",
            path.display(),
            tri.id()
        )));
    }
    Ok(coords.weights)
}

fn write_output(value: &serde_json::Value, out: Option<&Path>) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).expect("serializable");
    println!("{text}");
    if let Some(path) = out {
        std::fs::write(path, format!("{text}\n"))
            .map_err(|source| CliError::Io { path: path.into(), source })?;
    }
    Ok(())
}

fn classes_to_csv(classes: &[CurveClass]) -> String {
    let mut wtr = csv::Writer::from_writer(Vec::new());
    wtr.write_record(["vector", "kind", "k", "pieces"]).expect("csv");
    for class in classes {
        let vector = class.weights.iter().map(|w| w.to_string()).collect::<Vec<_>>().join(" ");
        let k = class.k_separating.map(|k| k.to_string()).unwrap_or_default();
        let pieces = match &class.kind {
            CurveKind::Separating { pieces } => pieces
                .iter()
                .map(|p| {
                    format!(
                        "{} g{} p{:?} b{}",
                        if p.orientable { "or" } else { "non" },
                        p.genus,
                        p.punctures,
                        p.boundary_count
                    )
                })
                .collect::<Vec<_>>()
                .join(" | "),
            _ => String::new(),
        };
        wtr.write_record([vector, class.kind.label().to_string(), k, pieces]).expect("csv");
    }
    String::from_utf8(wtr.into_inner().expect("csv")).expect("utf8")
}

/// Parses and runs one invocation; returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    init_thread_pool();
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(err) => {
            // clap uses exit code 2 for usage errors and 0 for --help/--version
            let code = if err.use_stderr() { 2 } else { 0 };
            let _ = err.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            2
        }
        Err(err) => {
            eprintln!("error: {err}");
            2
        }
    }
}

fn init_thread_pool() {
    if let Ok(value) = std::env::var("CURVECX_THREADS") {
        if let Ok(threads) = value.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(threads.max(1)).build_global();
        }
    }
}

fn dispatch(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::SurfaceInfo { surface, out } => surface_info(surface, out.as_deref()),
        Command::Tri { cmd } => tri_cmd(cmd),
        Command::Curves { cmd } => curves_cmd(cmd),
        Command::Complex { cmd } => complex_cmd(cmd),
        Command::Audit {
            suite,
            surface,
            bound,
            bound_cap,
            walks,
            len,
            samples,
            seed,
            max_depth,
            out,
        } => {
            let opts =
                SuiteOptions { surface, bound, bound_cap, walks, len, samples, seed, max_depth };
            let report = run_suite(&suite, &opts)?;
            emit_report(&report, out.as_deref())
        }
    }
}

fn emit_report(report: &AuditReport, out: Option<&Path>) -> Result<i32, CliError> {
    let value = serde_json::to_value(report).expect("serializable");
    write_output(&value, out)?;
    Ok(if report.all_passed() { 0 } else { 1 })
}

fn surface_info(sig: SurfaceSig, out: Option<&Path>) -> Result<i32, CliError> {
    let range = match sig.maximal_simplex_range() {
        Ok(r) => json!({"lo": r.lo, "hi": r.hi, "extrapolated": r.extrapolated}),
        Err(e) => json!({"error": e.to_string()}),
    };
    let pants = match sig.pants_count() {
        Ok(k) => json!(k),
        Err(e) => json!({"error": e.to_string()}),
    };
    let counts = match sig.ideal_triangulation_counts() {
        Ok((t, e)) => json!({"triangles": t, "edges": e}),
        Err(e) => json!({"error": e.to_string()}),
    };
    let value = json!({
        "surface": sig,
        "shorthand": sig.to_string(),
        "euler_char": sig.euler_char(),
        "complex_dimension": sig.complex_dimension(),
        "maximal_simplex_range": range,
        "pants_count": pants,
        "small_complex": sig.small_complex_table(),
        "ideal_triangulation_counts": counts,
    });
    write_output(&value, out)?;
    Ok(0)
}

fn tri_cmd(cmd: TriCmd) -> Result<i32, CliError> {
    match cmd {
        TriCmd::Build { surface, out } => {
            let tri = Triangulation::reference(surface)?;
            let value = json!({
                "surface": surface.to_string(),
                "id": tri.id(),
                "triangulation": tri.to_raw(),
                "report": tri.report(),
            });
            write_output(&value, out.as_deref())?;
            Ok(0)
        }
        TriCmd::Validate { tri, out } => {
            let value = match load_triangulation(&tri) {
                Ok(t) => json!({"valid": true, "id": t.id(), "report": t.report()}),
                Err(CliError::Tri(TriError::Invalid(violations))) => {
                    let value = json!({"valid": false, "violations": violations});
                    write_output(&value, out.as_deref())?;
                    return Ok(1);
                }
                Err(other) => return Err(other),
            };
            write_output(&value, out.as_deref())?;
            Ok(0)
        }
        TriCmd::Flip { tri, edge, out } => {
            let t = load_triangulation(&tri)?;
            let flip = t.flip(edge)?;
            let value = json!({
                "flipped_edge": edge,
                "new_edge": flip.new_edge,
                "quad": flip.quad,
                "triangulation": flip.tri.to_raw(),
                "id": flip.tri.id(),
            });
            write_output(&value, out.as_deref())?;
            Ok(0)
        }
        TriCmd::Bfs { surface, tri, radius, out } => {
            let t = TriSource { tri, surface }.load()?;
            let graph = flip_bfs(&t, radius)?;
            let value = json!({
                "radius": radius,
                "nodes": graph.nodes.iter().map(|n| json!({
                    "form": n.form.to_hex(),
                    "distance": n.distance,
                })).collect::<Vec<_>>(),
                "edges": graph.edges,
                "node_count": graph.nodes.len(),
                "edge_count": graph.edges.len(),
            });
            write_output(&value, out.as_deref())?;
            Ok(0)
        }
        TriCmd::Path { from, to, surface, seed, len, max_depth, out } => {
            let (t1, t2, mode) = match (&from, &to, surface) {
                (Some(f), Some(t), _) => {
                    (load_triangulation(f)?, load_triangulation(t)?, json!("files"))
                }
                (None, None, Some(sig)) => {
                    use rand::prelude::*;
                    let start = Triangulation::reference(sig)?;
                    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
                    let mut cur = start.clone();
                    for _ in 0..len {
                        let flippable: Vec<usize> =
                            (0..cur.edge_count()).filter(|&e| !cur.is_self_folded(e)).collect();
                        let e = *flippable.choose(&mut rng).expect("flippable");
                        cur = cur.flip(e)?.tri;
                    }
                    (start, cur, json!({"scramble": {"seed": seed, "len": len}}))
                }
                _ => {
                    return Err(CliError::Usage(
                        "need --from and --to files, or --surface for a seeded demo".into(),
                    ))
                }
            };
            let path = flip_path(&t1, &t2, max_depth)?;
            let found = path.is_some();
            let replay_ok = match &path {
                Some(p) => replay_flip_path(&t1, p)?.canonical_form()? == t2.canonical_form()?,
                None => false,
            };
            let value = json!({
                "mode": mode,
                "max_depth": max_depth,
                "found": found,
                "path": path,
                "replay_reaches_target": replay_ok,
            });
            write_output(&value, out.as_deref())?;
            Ok(0)
        }
    }
}

fn curves_cmd(cmd: CurvesCmd) -> Result<i32, CliError> {
    match cmd {
        CurvesCmd::Enumerate { tri, bound, out } => {
            let t = tri.load()?;
            let classes = enumerate_vertices(&t, bound)?;
            let value = json!({
                "triangulation": t.id(),
                "bound": bound,
                "count": classes.len(),
                "classes": classes,
            });
            if let Some(path) = &out {
                if path.extension().is_some_and(|e| e == "csv") {
                    let csv_text = classes_to_csv(&classes);
                    std::fs::write(path, csv_text)
                        .map_err(|source| CliError::Io { path: path.into(), source })?;
                    println!("{}", serde_json::to_string_pretty(&value).expect("serializable"));
                    return Ok(0);
                }
            }
            write_output(&value, out.as_deref())?;
            Ok(0)
        }
        CurvesCmd::Classify { tri, curve, out } => {
            let t = tri.load()?;
            let w = load_curve(&curve, &t)?;
            let got = classify(&t, &w)?;
            write_output(&serde_json::to_value(&got).expect("serializable"), out.as_deref())?;
            Ok(0)
        }
        CurvesCmd::Disjoint { tri, curve, curve2, out } => {
            let t = tri.load()?;
            let w1 = load_curve(&curve, &t)?;
            let w2 = load_curve(&curve2, &t)?;
            let d = disjoint(&t, &w1, &w2)?;
            write_output(&json!({"disjoint": d}), out.as_deref())?;
            Ok(0)
        }
        CurvesCmd::Cut { tri, curve, out } => {
            let t = tri.load()?;
            let w = load_curve(&curve, &t)?;
            let cut = cut_along(&t, &w)?;
            let value = json!({
                "new_boundaries": cut.new_boundaries,
                "pieces": cut.pieces,
            });
            write_output(&value, out.as_deref())?;
            Ok(0)
        }
        CurvesCmd::Transport { tri, curve, edge, out } => {
            let t = tri.load()?;
            let w = load_curve(&curve, &t)?;
            let carried = transport_flip(&t, &w, edge)?;
            let value = json!({
                "edge": edge,
                "new_edge": carried.flip.new_edge,
                "weights": carried.weights,
                "triangulation": carried.flip.tri.to_raw(),
                "id": carried.flip.tri.id(),
            });
            write_output(&value, out.as_deref())?;
            Ok(0)
        }
    }
}

fn complex_cmd(cmd: ComplexCmd) -> Result<i32, CliError> {
    match cmd {
        ComplexCmd::Build { surface, bound, out } => {
            let snap = ComplexSnapshot::build(surface, bound)?;
            let value = serde_json::to_value(snap.to_file()).expect("serializable");
            write_output(&value, out.as_deref())?;
            Ok(0)
        }
        ComplexCmd::Cliques { surface, bound, out } => {
            let snap = ComplexSnapshot::build(surface, bound)?;
            let audits = snap.maximal_simplices();
            let value = json!({
                "surface": surface.to_string(),
                "bound": bound,
                "vertex_count": snap.len(),
                "cliques": audits,
            });
            write_output(&value, out.as_deref())?;
            Ok(0)
        }
        ComplexCmd::Duallink { surface, bound, vertex, out } => {
            let snap = ComplexSnapshot::build(surface, bound)?;
            let dual = snap.dual_link(vertex)?;
            write_output(&serde_json::to_value(&dual).expect("serializable"), out.as_deref())?;
            Ok(0)
        }
        ComplexCmd::Pentagon { surface, bound, ids, out } => {
            let snap = ComplexSnapshot::build(surface, bound)?;
            if ids.len() != 5 {
                return Err(CliError::Usage("--ids needs exactly five vertex ids".into()));
            }
            let tuple = [ids[0], ids[1], ids[2], ids[3], ids[4]];
            let got = snap.is_pentagon(tuple)?;
            write_output(&json!({"ids": ids, "pentagon": got}), out.as_deref())?;
            Ok(0)
        }
        ComplexCmd::SimplePair { surface, bound, alpha, beta, out } => {
            let snap = ComplexSnapshot::build(surface, bound)?;
            let witness = find_simple_pair_witness(&snap, alpha, beta)?;
            let value = json!({
                "alpha": alpha,
                "beta": beta,
                "bound": bound,
                "found": witness.is_some(),
                "witness": witness,
                "note": "a missing witness at a finite bound is not a refutation",
            });
            write_output(&value, out.as_deref())?;
            Ok(0)
        }
        ComplexCmd::Chain { surface, edges, out } => {
            let tri = Triangulation::reference(surface)?;
            let got = is_chain(&tri, &edges);
            write_output(&json!({"edges": edges, "chain": got}), out.as_deref())?;
            Ok(0)
        }
        ComplexCmd::GoodTriangles { tri, out } => {
            let t = tri.load()?;
            let good = good_triangles(&t);
            write_output(&json!({"good_triangles": good}), out.as_deref())?;
            Ok(0)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite_is_usage_error() {
        let opts = SuiteOptions {
            surface: None,
            bound: None,
            bound_cap: 5,
            walks: 1,
            len: 1,
            samples: 1,
            seed: 0,
            max_depth: None,
        };
        assert!(matches!(run_suite("nope", &opts), Err(CliError::Usage(_))));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run(["curvecx", "surface-info", "--surface", "N3,1"]), 0);
        assert_eq!(run(["curvecx", "surface-info", "--surface", "bogus"]), 2);
        assert_eq!(run(["curvecx", "no-such-command"]), 2);
    }
}
