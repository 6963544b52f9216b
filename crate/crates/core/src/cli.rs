//! Command-line front end. Every command builds a report value first and then
//! renders it as a text table or as one JSON object.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::barrier::{find_violation, Context};
use crate::citations::Citation;
use crate::enumerator::{
    classify_tetrahedral, decision_tree, enumerate_areflection_models, enumerate_shapes, exclude_quadrilateral_type,
    Candidate, EnumError, ModelFamily,
};
use crate::geomvol::{realizability, volume, CoxeterTetrahedron};
use crate::homology::{h1, relation_matrix, InvariantFactors};
use crate::orb2d::{euclidean_turnovers, TwoOrbifold};
use crate::siggraph::{
    check_spherical_links, cusp_cross_section, dump, from_tetra, load, symmetries, CellRef, LabeledGraph,
    TetraPattern, VertexKind,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CONSTRAINT: i32 = 3;

/// Published volume of the figure-eight knot complement.
const FIGURE_EIGHT_VOLUME: f64 = 2.029_883_212_8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Triple([u32; 3]);

impl FromStr for Triple {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(format!("expected three comma-separated integers, got {s:?}"));
        }
        let mut out = [0; 3];
        for (o, p) in out.iter_mut().zip(parts) {
            *o = p.parse().map_err(|_| format!("not an integer: {p:?}"))?;
            if *o < 2 {
                return Err(format!("orders and labels must be at least 2, got {o}"));
            }
        }
        Ok(Triple(out))
    }
}

#[derive(Debug, Parser)]
#[command(name = "orbcheck", version, about = "Checks one-cusped reflection orbifolds and rigid-cusped quotients")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the Euclidean turnovers.
    Turnovers,
    /// Classify tetrahedral labelings with a given cusp.
    Classify {
        #[arg(long)]
        cusp: Triple,
        #[arg(long, default_value_t = 12)]
        bound: u32,
    },
    /// First homology of one tetrahedral labeling.
    H1 {
        #[arg(long)]
        cusp: Triple,
        #[arg(long)]
        interior: Triple,
    },
    /// Disk graphs allowed for small reflection orbifolds.
    Shapes {
        #[arg(long, value_parser = clap::value_parser!(u8).range(3..=4))]
        boundary: u8,
        #[arg(long, default_value_t = 8)]
        max_interior: usize,
    },
    /// Reflection-compatible model families.
    Models {
        #[arg(long, default_value_t = 12)]
        n_max: u32,
        #[arg(long, default_value_t = 8)]
        max_interior: usize,
    },
    /// Realizability and volume of one tetrahedral labeling.
    Volume {
        #[arg(long)]
        cusp: Triple,
        #[arg(long)]
        interior: Triple,
        /// Tolerance for calling the covering-degree ratio an integer.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Certificate excluding the quadrilateral type.
    QuadExclusion,
    /// Apply the verdict rules to a set of facts.
    Decide {
        #[arg(long, value_delimiter = ',', required = true)]
        facts: Vec<String>,
    },
    /// Read and write the graph text format.
    Graph {
        #[command(subcommand)]
        action: GraphAction,
    },
}

#[derive(Debug, Subcommand)]
enum GraphAction {
    /// Print a graph file in normalized text form.
    Dump { file: PathBuf },
    /// Validate a graph file and report its invariants.
    Load { file: PathBuf },
}

/// A failure with its exit code.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn constraint(message: impl ToString) -> Self {
        Failure {
            code: EXIT_CONSTRAINT,
            message: message.to_string(),
        }
    }

    fn usage(message: impl ToString) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.to_string(),
        }
    }
}

impl From<EnumError> for Failure {
    fn from(e: EnumError) -> Self {
        match e {
            EnumError::UnknownFact(_) => Failure::usage(e),
            _ => Failure::constraint(e),
        }
    }
}

struct Report {
    command: &'static str,
    inputs: Value,
    results: Vec<Value>,
    text: String,
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

/// Runs with explicit output streams; returns the exit code.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    EXIT_USAGE
                }
            };
        }
    };
    let pool = match thread_pool() {
        Ok(p) => p,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            return f.code;
        }
    };
    match pool.install(|| execute(&cli.command)) {
        Ok(report) => {
            let rendered = match cli.format {
                Format::Text => report.text,
                Format::Json => {
                    let v = json!({
                        "command": report.command,
                        "inputs": report.inputs,
                        "results": report.results,
                        "version": env!("CARGO_PKG_VERSION"),
                    });
                    serde_json::to_string_pretty(&v).expect("json values serialize") + "\n"
                }
            };
            match out.write_all(rendered.as_bytes()) {
                Ok(()) => EXIT_OK,
                Err(e) => {
                    let _ = writeln!(err, "error: {e}");
                    EXIT_CONSTRAINT
                }
            }
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn thread_pool() -> Result<rayon::ThreadPool, Failure> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var("ORBCHECK_THREADS") {
        let n: usize = v
            .trim()
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| Failure::usage(format!("ORBCHECK_THREADS must be a positive integer, got {v:?}")))?;
        b = b.num_threads(n);
    }
    b.build().map_err(Failure::constraint)
}

fn execute(cmd: &Command) -> Result<Report, Failure> {
    match cmd {
        Command::Turnovers => Ok(turnovers()),
        Command::Classify { cusp, bound } => classify(*cusp, *bound),
        Command::H1 { cusp, interior } => homology(*cusp, *interior),
        Command::Shapes { boundary, max_interior } => shapes(*boundary as usize, *max_interior),
        Command::Models { n_max, max_interior } => models(*n_max, *max_interior),
        Command::Volume { cusp, interior, tol } => volume_report(*cusp, *interior, *tol),
        Command::QuadExclusion => Ok(quad()),
        Command::Decide { facts } => decide(facts),
        Command::Graph { action } => graph(action),
    }
}

fn h1_string(h: &InvariantFactors) -> String {
    let mut parts: Vec<String> = h.torsion.iter().map(|t| format!("Z/{t}")).collect();
    match h.free_rank {
        0 => {}
        1 => parts.push("Z".into()),
        r => parts.push(format!("Z^{r}")),
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

fn h1_json(h: &InvariantFactors) -> Value {
    json!({ "torsion": h.torsion, "free_rank": h.free_rank, "text": h1_string(h) })
}

fn chain(cs: &[Citation]) -> Vec<&'static str> {
    cs.iter().map(|c| c.text()).collect()
}

fn pattern(cusp: Triple, interior: Triple) -> Result<TetraPattern, Failure> {
    TetraPattern::new(cusp.0, interior.0).map_err(Failure::constraint)
}

fn turnover(t: Triple) -> TwoOrbifold {
    TwoOrbifold::sphere(&t.0).expect("orders checked")
}

fn turnovers() -> Report {
    let ts = euclidean_turnovers();
    let mut text = String::new();
    for t in &ts {
        let c = t.cone_points();
        writeln!(text, "({},{},{})", c[0], c[1], c[2]).unwrap();
    }
    Report {
        command: "turnovers",
        inputs: json!({}),
        results: ts
            .iter()
            .map(|t| json!({ "turnover": t.to_string(), "orders": t.cone_points() }))
            .collect(),
        text,
    }
}

fn invariants_json(c: &Candidate) -> Value {
    let inv = &c.invariants;
    json!({
        "cusp": inv.cusp.to_string(),
        "links": inv.links.iter().map(|l| l.to_string()).collect::<Vec<_>>(),
        "h1": h1_json(&inv.h1),
        "symmetry_count": inv.symmetry_count,
        "reflection_count": inv.reflection_count,
        "rotation_count": inv.rotation_count,
        "peripherally_generated": inv.peripherally_generated,
    })
}

fn candidate_json(c: &Candidate) -> Value {
    json!({
        "pattern": c.pattern.map(|p| p.to_string()),
        "incidence": c.pattern.map(|p| p.incidence_description()),
        "interior_labels": c.pattern.map(|p| p.interior_labels()),
        "verdict": c.verdict.to_string(),
        "citations": chain(&c.citations()),
        "invariants": invariants_json(c),
        "flags": c.flags.iter().map(|f| format!("{f:?}")).collect::<Vec<_>>(),
        "quotient": c.quotient.as_ref().map(|q| json!({
            "pattern": q.pattern.map(|p| p.to_string()),
            "cusp": q.cusp.to_string(),
            "verdict": q.verdict.map(|v| v.to_string()),
            "graph": dump(&q.graph),
        })),
        "graph": dump(&c.graph),
    })
}

fn classify(cusp: Triple, bound: u32) -> Result<Report, Failure> {
    let cands = classify_tetrahedral(&turnover(cusp), bound)?;
    let mut text = format!("{:<18} {:<28} {:<16} {:<5} {}\n", "pattern", "verdict", "H1", "syms", "note");
    for c in &cands {
        let p = c.pattern.expect("tetrahedral");
        let mut note = p.incidence_description();
        if let Some(q) = &c.quotient {
            let qp = q.pattern.map(|p| p.to_string()).unwrap_or_else(|| "?".into());
            let qv = q.verdict.map(|v| v.to_string()).unwrap_or_else(|| "-".into());
            write!(note, "; quotient {qp} cusp {} verdict {qv}", q.cusp).unwrap();
        }
        for f in &c.flags {
            write!(note, "; {f:?}").unwrap();
        }
        writeln!(
            text,
            "{:<18} {:<28} {:<16} {:<5} {}",
            p.to_string(),
            c.verdict.to_string(),
            h1_string(&c.invariants.h1),
            c.invariants.symmetry_count,
            note
        )
        .unwrap();
    }
    Ok(Report {
        command: "classify",
        inputs: json!({ "cusp": cusp.0, "bound": bound }),
        results: cands.iter().map(candidate_json).collect(),
        text,
    })
}

fn homology(cusp: Triple, interior: Triple) -> Result<Report, Failure> {
    let p = pattern(cusp, interior)?;
    let g = from_tetra(&p);
    let h = h1(&g);
    let m = relation_matrix(&g).to_i64_rows().expect("small entries");
    Ok(Report {
        command: "h1",
        inputs: json!({ "cusp": cusp.0, "interior": interior.0 }),
        results: vec![json!({
            "pattern": p.to_string(),
            "invariant_factors": h.torsion,
            "free_rank": h.free_rank,
            "h1": h1_string(&h),
            "relation_matrix": m,
        })],
        text: format!("{p}\ninvariant factors {:?}\nH1 = {}\n", h.torsion, h1_string(&h)),
    })
}

fn graph_summary(g: &LabeledGraph) -> Value {
    json!({
        "vertices": g.vertex_count(),
        "edges": g.edge_count(),
        "interior_vertices": g.vertices().iter().filter(|v| v.kind == VertexKind::Interior).count(),
        "boundary_vertices": g.peripheral_ends().len(),
        "graph": dump(g),
    })
}

fn shapes(boundary: usize, max_interior: usize) -> Result<Report, Failure> {
    let s = enumerate_shapes(boundary, max_interior)?;
    let mut text = format!("{} shape(s) with {boundary} boundary vertices, at most {max_interior} interior\n", s.len());
    for (i, g) in s.iter().enumerate() {
        writeln!(text, "# shape {i}").unwrap();
        text.push_str(&dump(g));
    }
    Ok(Report {
        command: "shapes",
        inputs: json!({ "boundary": boundary, "max_interior": max_interior }),
        results: s.iter().map(graph_summary).collect(),
        text,
    })
}

fn family_json(f: &ModelFamily) -> Value {
    let ids: Vec<u32> = f.parameter_edges.iter().map(|&e| f.shape.edges()[e].id).collect();
    json!({
        "name": f.name.as_str(),
        "cusps": f.cusps.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "parameter_edges": ids,
        "admissible_n": f.admissible_n,
        "unbounded_above": f.unbounded_above,
        "citations": chain(&[Citation::AreflectionModels]),
        "shape": dump(&f.shape),
        "members": f.members.iter().map(|c| json!({
            "verdict": c.verdict.to_string(),
            "labels": c.graph.edges().iter().map(|e| e.label).collect::<Vec<_>>(),
            "invariants": invariants_json(c),
            "graph": dump(&c.graph),
        })).collect::<Vec<_>>(),
    })
}

fn range_string(ns: &[u32], unbounded: bool) -> String {
    match (ns.first(), ns.last()) {
        (Some(a), Some(b)) if unbounded => format!("{a}..{b} (unbounded above)"),
        (Some(a), Some(b)) if ns.len() as u32 == b - a + 1 => format!("{a}..{b}"),
        (Some(_), Some(_)) => format!("{ns:?}"),
        _ => "-".into(),
    }
}

fn models(n_max: u32, max_interior: usize) -> Result<Report, Failure> {
    let fams = enumerate_areflection_models(n_max, max_interior)?;
    let mut text = format!("{:<12} {:<22} {:<8} {}\n", "family", "cusps", "members", "n");
    for f in &fams {
        let cusps: Vec<String> = f.cusps.iter().map(|c| c.to_string()).collect();
        writeln!(
            text,
            "{:<12} {:<22} {:<8} {}",
            f.name.as_str(),
            cusps.join(" "),
            f.members.len(),
            range_string(&f.admissible_n, f.unbounded_above)
        )
        .unwrap();
    }
    Ok(Report {
        command: "models",
        inputs: json!({ "n_max": n_max, "max_interior": max_interior }),
        results: fams.iter().map(family_json).collect(),
        text,
    })
}

fn volume_report(cusp: Triple, interior: Triple, tol: f64) -> Result<Report, Failure> {
    let p = pattern(cusp, interior)?;
    let t = CoxeterTetrahedron::from_pattern(&p);
    let r = realizability(&t);
    let v = volume(&t).map_err(Failure::constraint)?;
    let ratio = FIGURE_EIGHT_VOLUME / (2.0 * v);
    let degree = ratio.round();
    let integral = (ratio - degree).abs() < tol;
    let gram = t.gram();
    let rows: Vec<Vec<f64>> = (0..4).map(|i| (0..4).map(|j| gram[(i, j)]).collect()).collect();
    let text = format!(
        "{p}\nclass {:?}, ideal vertices {:?}, signature {:?}\nvolume {v:.12}\ndouble cover {:.12}\nfigure-eight ratio {ratio:.9} (nearest integer {degree}, {} within {tol:e})\n",
        r.class,
        r.ideal_vertices,
        r.signature,
        2.0 * v,
        if integral { "integral" } else { "not integral" },
    );
    Ok(Report {
        command: "volume",
        inputs: json!({ "cusp": cusp.0, "interior": interior.0, "tol": tol }),
        results: vec![json!({
            "pattern": p.to_string(),
            "labels": t.labels(),
            "gram": rows,
            "class": format!("{:?}", r.class),
            "ideal_vertices": r.ideal_vertices,
            "signature": [r.signature.0, r.signature.1, r.signature.2],
            "exact_signature": r.exact_signature,
            "volume": v,
            "double_cover_volume": 2.0 * v,
            "figure_eight_ratio": ratio,
            "degree": degree as u64,
            "degree_is_integral": integral,
        })],
        text,
    })
}

fn cell_string(g: &LabeledGraph, c: &CellRef) -> String {
    match c {
        CellRef::Edge(id) => {
            let e = &g.edges()[g.edge_index(*id).expect("witness edge")];
            let vid = |v: usize| g.vertices()[v].id;
            format!("e{id}(v{}-v{}, label {})", vid(e.ends[0]), vid(e.ends[1]), e.label)
        }
        other => format!("{other:?}"),
    }
}

fn quad() -> Report {
    let c = exclude_quadrilateral_type();
    let g = &c.pattern;
    let mut text = format!("pattern cusp {}\n", c.cusp);
    for (i, s) in c.steps.iter().enumerate() {
        let w: Vec<String> = s.witness.iter().map(|x| cell_string(g, x)).collect();
        writeln!(text, "{}. {} [{}]\n   witness {}", i + 1, s.rule, s.citation, w.join(", ")).unwrap();
    }
    writeln!(text, "verified {}", c.verify()).unwrap();
    let steps: Vec<Value> = c
        .steps
        .iter()
        .map(|s| {
            json!({
                "rule": s.rule,
                "citation": s.citation.text(),
                "witness": s.witness.iter().map(|x| cell_string(g, x)).collect::<Vec<_>>(),
            })
        })
        .collect();
    Report {
        command: "quad-exclusion",
        inputs: json!({}),
        results: vec![json!({
            "cusp": c.cusp.to_string(),
            "verdict": "ExcludedQuadType",
            "steps": steps,
            "verified": c.verify(),
            "graph": dump(g),
        })],
        text,
    }
}

fn decide(facts: &[String]) -> Result<Report, Failure> {
    let facts: Vec<&str> = facts.iter().map(|s| s.trim()).filter(|s| !s.is_empty()).collect();
    let d = decision_tree(&facts)?;
    let mut text = format!("{}\n", d.verdict);
    for c in &d.chain {
        writeln!(text, "  <- {c}").unwrap();
    }
    Ok(Report {
        command: "decide",
        inputs: json!({ "facts": facts }),
        results: vec![json!({ "verdict": d.verdict, "chain": chain(&d.chain) })],
        text,
    })
}

fn read_graph(file: &PathBuf) -> Result<LabeledGraph, Failure> {
    let text = std::fs::read_to_string(file).map_err(|e| Failure::constraint(format!("{}: {e}", file.display())))?;
    load(&text).map_err(|e| Failure::constraint(format!("{}: {e}", file.display())))
}

/// Barrier verdict in the context implied by the puncture marks. Graphs the
/// case rules were not written for are reported as such, not judged.
fn barrier_status(g: &LabeledGraph) -> String {
    let embedded = (0..g.vertex_count()).all(|v| g.rotation(v).is_some());
    let context = match g.puncture_marks().len() {
        0 if (3..=4).contains(&g.peripheral_ends().len()) => Some(Context::Generic),
        1 => Some(Context::TwoConeCase),
        2 => Some(Context::TripodCase),
        _ => None,
    };
    match context.filter(|_| embedded) {
        None => "out of calibrated scope".into(),
        Some(c) => match find_violation(g, c) {
            Ok(None) => format!("{c:?}: no violation"),
            Ok(Some(v)) => format!("{c:?}: {:?} at cycle {}", v.case_tag, v.first),
            Err(e) => format!("{c:?}: {e}"),
        },
    }
}

fn graph(action: &GraphAction) -> Result<Report, Failure> {
    match action {
        GraphAction::Dump { file } => {
            let g = read_graph(file)?;
            let text = dump(&g);
            Ok(Report {
                command: "graph dump",
                inputs: json!({ "file": file.display().to_string() }),
                results: vec![json!({ "graph": text })],
                text,
            })
        }
        GraphAction::Load { file } => {
            let g = read_graph(file)?;
            let cusp = cusp_cross_section(&g).ok().map(|c| c.to_string());
            let h = h1(&g);
            let spherical = check_spherical_links(&g);
            let syms = symmetries(&g).len();
            let mut summary = graph_summary(&g);
            let obj = summary.as_object_mut().expect("object");
            obj.insert("cusp".into(), json!(cusp));
            obj.insert("spherical_links".into(), json!(spherical));
            obj.insert("h1".into(), h1_json(&h));
            obj.insert("symmetry_count".into(), json!(syms));
            let barrier = barrier_status(&g);
            obj.insert("barrier".into(), json!(barrier));
            let text = format!(
                "{} vertices, {} edges\ncusp {}\nspherical links {spherical}\nH1 = {}\nsymmetries {syms}\nbarrier {barrier}\n",
                g.vertex_count(),
                g.edge_count(),
                cusp.as_deref().unwrap_or("-"),
                h1_string(&h),
            );
            Ok(Report {
                command: "graph load",
                inputs: json!({ "file": file.display().to_string() }),
                results: vec![summary],
                text,
            })
        }
    }
}
