//! Command-line surface: parse/emit BDG files, classification, grounds,
//! decomposition, composition, generation, the lemma suite, the
//! engine/oracle diff, and DOT export.
//!
//! Exit codes: 0 ok, 1 property failure or runtime error, 2 usage or
//! parse error. Identical inputs and seeds yield identical output
//! bytes.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use radial::bdg;
use radial::classify::{class_report, vertex_class, StrictClass, TrailClass, VertexClass};
use radial::ditrail::{find_ditrail, reach_profile};
use radial::dot;
use radial::enumerate::{random_graph, tiny_family};
use radial::error::{Error, Result};
use radial::graph::{BidirectedGraph, GluingSpec, RootedGraph, Sign};
use radial::grounds::{ground, GroundKind};
use radial::lemmas::{run_all, run_check, Bounds};
use radial::oracle::oracle_reach_profile;
use radial::transform::{
    compose, decompose_full, decompose_with, generate, ComposeJob, ComposeKind,
    EdgeRec, GenClass, NodeDetail, TreeNode,
};

#[derive(Parser)]
#[command(name = "radial", version, about = "Bidirected-graph toolkit for radials and semiradials")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a rooted bidirected graph and each of its vertices.
    Classify {
        /// BDG input file.
        file: PathBuf,
        /// Orientation sign (+ or -); overrides the file's `sign` line.
        #[arg(long, allow_hyphen_values = true)]
        sign: Option<String>,
        /// Root vertex; overrides the file's `root` line.
        #[arg(long)]
        root: Option<String>,
    },
    /// Compute the maximum ground of a kind, with its shells.
    Ground {
        file: PathBuf,
        /// absolute | linear | strong | almost-strong | extended
        #[arg(long)]
        kind: String,
        #[arg(long, allow_hyphen_values = true)]
        sign: Option<String>,
        #[arg(long)]
        root: Option<String>,
    },
    /// Decompose a radial or semiradial: one step with --kind, else the
    /// full tree down to principal-class leaves.
    Decompose {
        file: PathBuf,
        /// Run a single step with this ground kind instead of the full
        /// tree.
        #[arg(long)]
        kind: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        sign: Option<String>,
        #[arg(long)]
        root: Option<String>,
    },
    /// Build a gluing composition from a JSON job file.
    Compose {
        /// JSON job: {"kind", "parts": [BDG paths], "spec", "extra_edges"}.
        /// Part paths are resolved relative to the job file.
        job: PathBuf,
    },
    /// Generate a seeded member of a graph class, as BDG text.
    Generate {
        /// Target class, e.g. strong-radial or sharp-semiradial.
        #[arg(long)]
        class: String,
        #[arg(long)]
        vertices: usize,
        #[arg(long, env = "RADIAL_SEED", default_value_t = 0)]
        seed: u64,
    },
    /// Run one lemma check by id, or `suite` for all of them.
    Verify {
        /// A check id (e.g. L-nobypass) or `suite`.
        target: String,
        /// Random instances per check, on top of the exhaustive family.
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, env = "RADIAL_SEED", default_value_t = 0)]
        seed: u64,
    },
    /// Differential test: the trail engine against the brute-force
    /// oracle, exhaustively small plus seeded random graphs.
    OracleDiff {
        #[arg(long, default_value_t = 3)]
        max_vertices: usize,
        #[arg(long, default_value_t = 3)]
        max_edges: usize,
        /// Additional random graphs (≤ 6 vertices, ≤ 8 edges).
        #[arg(long, default_value_t = 500)]
        trials: usize,
        #[arg(long, env = "RADIAL_SEED", default_value_t = 0)]
        seed: u64,
    },
    /// Render a BDG file as Graphviz DOT.
    ExportDot {
        file: PathBuf,
        #[arg(long)]
        root: Option<String>,
    },
}

#[derive(Serialize)]
struct InputDigest {
    path: String,
    sha256: String,
}

/// The envelope every command's JSON output uses.
#[derive(Serialize)]
struct CommandReport<T: Serialize> {
    command: String,
    inputs: Vec<InputDigest>,
    status: &'static str,
    result: T,
}

fn digest(path: &Path, bytes: &[u8]) -> InputDigest {
    let mut h = Sha256::new();
    h.update(bytes);
    InputDigest {
        path: path.display().to_string(),
        sha256: format!("{:x}", h.finalize()),
    }
}

fn read_input(path: &Path, inputs: &mut Vec<InputDigest>) -> Result<String> {
    let bytes = std::fs::read(path)
        .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
    inputs.push(digest(path, &bytes));
    String::from_utf8(bytes)
        .map_err(|_| Error::Input(format!("{} is not UTF-8", path.display())))
}

fn parse_sign_flag(s: &str) -> Result<Sign> {
    let mut chars = s.chars();
    match (chars.next().and_then(Sign::from_char), chars.next()) {
        (Some(sign), None) => Ok(sign),
        _ => Err(Error::Input(format!("expected + or -, got {s}"))),
    }
}

/// Loads a BDG file and resolves the root/sign flags against its
/// annotations (flags win).
fn load_rooted(
    path: &Path,
    root: Option<&str>,
    sign: Option<&str>,
    inputs: &mut Vec<InputDigest>,
) -> Result<RootedGraph> {
    let text = read_input(path, inputs)?;
    let file = bdg::parse(&text)?;
    let root = match (root, &file.root) {
        (Some(r), _) => r.to_string(),
        (None, Some(r)) => r.clone(),
        (None, None) => {
            return Err(Error::Input(format!(
                "{} has no root line and --root was not given",
                path.display()
            )))
        }
    };
    let sign = match (sign, file.sign) {
        (Some(s), _) => parse_sign_flag(s)?,
        (None, Some(s)) => s,
        (None, None) => {
            return Err(Error::Input(format!(
                "{} has no sign line and --sign was not given",
                path.display()
            )))
        }
    };
    RootedGraph::new(file.graph, &root, sign)
}

fn parse_kind(s: &str) -> Result<GroundKind> {
    GroundKind::ALL
        .into_iter()
        .find(|k| k.name() == s)
        .ok_or_else(|| {
            Error::Input(format!(
                "unknown ground kind {s}; expected one of: {}",
                GroundKind::ALL.map(|k| k.name()).join(", ")
            ))
        })
}

// --- classify -------------------------------------------------------------

#[derive(Serialize)]
struct VertexRow {
    name: String,
    class: VertexClass,
}

#[derive(Serialize)]
struct WitnessRow {
    vertex: String,
    first: Sign,
    last: Sign,
    /// Alternating vertex/edge-id token line.
    ditrail: String,
}

#[derive(Serialize)]
struct ClassifyResult {
    root: String,
    sign: Sign,
    classes: radial::classify::GraphClassReport,
    vertices: Vec<VertexRow>,
    witnesses: Vec<WitnessRow>,
}

fn classify_result(rg: &RootedGraph) -> Result<ClassifyResult> {
    let g = &rg.graph;
    let p = reach_profile(g, rg.root)?;
    let classes = class_report(rg)?;
    let mut vertices = Vec::new();
    let mut witnesses = Vec::new();
    let none = BTreeSet::new();
    for (v, name) in g.vertex_names().iter().enumerate() {
        vertices.push(VertexRow {
            name: name.clone(),
            class: vertex_class(&p, rg.orientation, v),
        });
        for a in Sign::BOTH {
            for b in Sign::BOTH {
                if !p.reach(a, b).contains(&v) {
                    continue;
                }
                let w = find_ditrail(g, v, rg.root, a, b, &none)?
                    .ok_or_else(|| Error::Input("reach set without witness".into()))?;
                witnesses.push(WitnessRow {
                    vertex: name.clone(),
                    first: a,
                    last: b,
                    ditrail: w.tokens(g),
                });
            }
        }
    }
    Ok(ClassifyResult {
        root: rg.root_name().to_string(),
        sign: rg.orientation,
        classes,
        vertices,
        witnesses,
    })
}

fn trail_text(c: TrailClass) -> String {
    match c {
        TrailClass::Absolute => "absolute".into(),
        TrailClass::Linear(s) => format!("linear({s})"),
        TrailClass::Neither => "neither".into(),
    }
}

fn strict_text(c: StrictClass) -> String {
    match c {
        StrictClass::Strong(s) => format!("strong({s})"),
        StrictClass::Sublinear(s) => format!("sublinear({s})"),
        StrictClass::Neither => "neither".into(),
    }
}

fn classify_text(r: &ClassifyResult) -> String {
    let c = &r.classes;
    let mut out = format!("root: {}  sign: {}\n", r.root, r.sign);
    for (label, v) in [
        ("radial", c.is_radial),
        ("semiradial", c.is_semiradial),
        ("absolute-semiradial", c.is_absolute_semiradial),
        ("strong-radial", c.is_strong_radial),
        ("almost-strong-radial", c.is_almost_strong_radial),
        ("linear-semiradial", c.is_linear_semiradial),
        ("sublinear-radial", c.is_sublinear_radial),
        ("sharp", c.is_sharp),
        ("round", c.is_round),
        ("triplex", c.is_triplex),
    ] {
        out.push_str(&format!("{label}: {v}\n"));
    }
    let rk = match c.root_kind {
        radial::classify::RootKind::Strong => "strong",
        radial::classify::RootKind::Sublinear => "sublinear",
        radial::classify::RootKind::NotRadial => "not-radial",
    };
    out.push_str(&format!("root-kind: {rk}\n"));
    for v in &r.vertices {
        out.push_str(&format!(
            "vertex {}: {}, {}\n",
            v.name,
            trail_text(v.class.trail),
            strict_text(v.class.strict)
        ));
    }
    for w in &r.witnesses {
        out.push_str(&format!(
            "witness {} ({},{}): {}\n",
            w.vertex, w.first, w.last, w.ditrail
        ));
    }
    out
}

// --- ground ---------------------------------------------------------------

#[derive(Serialize)]
struct GroundResult {
    kind: GroundKind,
    bdg: String,
    shell1: Vec<String>,
    shell2: Vec<String>,
}

fn ground_result(rg: &RootedGraph, kind: GroundKind) -> Result<GroundResult> {
    let gr = ground(rg, kind)?;
    Ok(GroundResult {
        kind,
        bdg: bdg::emit(&gr.subgraph, Some(rg.root_name()), Some(rg.orientation)),
        shell1: gr.shell1.iter().cloned().collect(),
        shell2: gr.shell2.iter().cloned().collect(),
    })
}

fn ground_text(r: &GroundResult) -> String {
    let mut out = r.bdg.clone();
    if !r.shell1.is_empty() {
        out.push_str(&format!("shell1 {}\n", r.shell1.join(" ")));
    }
    if !r.shell2.is_empty() {
        out.push_str(&format!("shell2 {}\n", r.shell2.join(" ")));
    }
    out
}

// --- decompose ------------------------------------------------------------

#[derive(Serialize)]
struct StepResult {
    kind: GroundKind,
    root: String,
    sign: Sign,
    ground: String,
    quotient: String,
    attachment: GluingSpec,
    removed_edges: Vec<EdgeRec>,
    shell1: Vec<String>,
    shell2: Vec<String>,
}

fn step_result(rg: &RootedGraph, kind: GroundKind) -> Result<StepResult> {
    let d = decompose_with(rg, kind)?;
    Ok(StepResult {
        kind,
        root: d.input_root.clone(),
        sign: d.orientation,
        ground: bdg::emit(&d.ground.subgraph, Some(&d.input_root), Some(d.orientation)),
        quotient: bdg::emit(
            &d.quotient.graph,
            Some(d.quotient.root_name()),
            Some(d.orientation),
        ),
        attachment: d.attachment.clone(),
        removed_edges: d.removed_edges.clone(),
        shell1: d.ground.shell1.iter().cloned().collect(),
        shell2: d.ground.shell2.iter().cloned().collect(),
    })
}

fn step_text(s: &StepResult) -> String {
    let mut out = format!("step: {} ground at {} (sign {})\n", s.kind.name(), s.root, s.sign);
    out.push_str("--- ground ---\n");
    out.push_str(&s.ground);
    out.push_str("--- quotient ---\n");
    out.push_str(&s.quotient);
    if !s.attachment.targets.is_empty() {
        out.push_str("--- attachment ---\n");
        for (id, (target, _)) in &s.attachment.targets {
            out.push_str(&format!("{id} -> {target}\n"));
        }
    }
    if !s.removed_edges.is_empty() {
        out.push_str("--- removed edges ---\n");
        for e in &s.removed_edges {
            out.push_str(&format!("{} {} {} {} {}\n", e.id, e.u, e.su, e.v, e.sv));
        }
    }
    out
}

#[derive(Serialize)]
struct TreeResult {
    label: String,
    bdg: String,
    children: Vec<TreeResult>,
}

fn tree_result(node: &TreeNode) -> TreeResult {
    let children = match &node.detail {
        NodeDetail::Leaf => Vec::new(),
        NodeDetail::Step { ground, quotient, .. } => {
            vec![tree_result(ground), tree_result(quotient)]
        }
        NodeDetail::Triplex { parts, .. } => parts.iter().map(tree_result).collect(),
    };
    TreeResult {
        label: node.label.clone(),
        bdg: bdg::emit(
            &node.graph.graph,
            Some(node.graph.root_name()),
            Some(node.graph.orientation),
        ),
        children,
    }
}

fn tree_text(t: &TreeResult, depth: usize, out: &mut String) {
    let g = bdg::parse(&t.bdg).expect("own emit parses");
    out.push_str(&format!(
        "{}{} ({} vertices, {} edges)\n",
        "  ".repeat(depth),
        t.label,
        g.graph.vertex_count(),
        g.graph.edge_count()
    ));
    for c in &t.children {
        tree_text(c, depth + 1, out);
    }
}

// --- compose --------------------------------------------------------------

#[derive(Deserialize)]
struct JobFile {
    kind: String,
    parts: Vec<String>,
    #[serde(default)]
    spec: GluingSpec,
    #[serde(default)]
    extra_edges: Vec<EdgeRec>,
}

#[derive(Serialize)]
struct ComposeResult {
    kind: ComposeKind,
    bdg: String,
    classes: radial::classify::GraphClassReport,
}

fn compose_result(job_path: &Path, inputs: &mut Vec<InputDigest>) -> Result<ComposeResult> {
    let text = read_input(job_path, inputs)?;
    let job: JobFile =
        serde_json::from_str(&text).map_err(|e| Error::Input(format!("bad job file: {e}")))?;
    let kind = ComposeKind::from_name(&job.kind)
        .ok_or_else(|| Error::Input(format!("unknown compose kind {}", job.kind)))?;
    let base = job_path.parent().unwrap_or(Path::new("."));
    let mut parts = Vec::new();
    for rel in &job.parts {
        parts.push(load_rooted(&base.join(rel), None, None, inputs)?);
    }
    let composed = compose(
        &ComposeJob {
            kind,
            parts,
            spec: job.spec,
            extra_edges: job.extra_edges,
        },
        false,
    )?;
    Ok(ComposeResult {
        kind,
        bdg: bdg::emit(
            &composed.graph,
            Some(composed.root_name()),
            Some(composed.orientation),
        ),
        classes: class_report(&composed)?,
    })
}

// --- generate -------------------------------------------------------------

#[derive(Serialize)]
struct GenerateResult {
    class: GenClass,
    seed: u64,
    bdg: String,
    classes: radial::classify::GraphClassReport,
}

fn generate_result(class: &str, vertices: usize, seed: u64) -> Result<GenerateResult> {
    let class = GenClass::from_name(class)
        .ok_or_else(|| Error::Input(format!("unknown class {class}")))?;
    let rg = generate(class, vertices, seed)?;
    let classes = class_report(&rg)?;
    if !class.holds(&classes) {
        return Err(Error::ClassMismatch {
            expected: class.name().into(),
            found: "a graph outside the class (generator self-check)".into(),
        });
    }
    Ok(GenerateResult {
        class,
        seed,
        bdg: bdg::emit(&rg.graph, Some(rg.root_name()), Some(rg.orientation)),
        classes,
    })
}

// --- verify ---------------------------------------------------------------

fn check_line(c: &radial::lemmas::CheckReport) -> String {
    format!(
        "{:24} instances {:5}  satisfied {:5}  skipped {:5}  failures {}  rate {:.2}\n",
        c.id, c.instances, c.satisfied, c.skipped, c.failures, c.hypothesis_rate
    )
}

// --- oracle-diff ----------------------------------------------------------

#[derive(Serialize)]
struct OracleDiffResult {
    exhaustive_checked: usize,
    random_checked: usize,
    skipped: usize,
    mismatches: usize,
    first_mismatch: Option<String>,
}

fn oracle_diff(max_v: usize, max_e: usize, trials: usize, seed: u64) -> Result<OracleDiffResult> {
    const ORACLE_EDGE_GUARD: usize = 12;
    let mut res = OracleDiffResult {
        exhaustive_checked: 0,
        random_checked: 0,
        skipped: 0,
        mismatches: 0,
        first_mismatch: None,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let check = |g: &BidirectedGraph, exhaustive: bool, res: &mut OracleDiffResult| {
        if g.edge_count() > ORACLE_EDGE_GUARD {
            res.skipped += 1;
            return Ok::<(), Error>(());
        }
        let r = g.vertex("r").expect("family roots at r");
        let engine = reach_profile(g, r)?;
        let oracle = oracle_reach_profile(g, r, ORACLE_EDGE_GUARD)?;
        if exhaustive {
            res.exhaustive_checked += 1;
        } else {
            res.random_checked += 1;
        }
        if engine != oracle {
            res.mismatches += 1;
            if res.first_mismatch.is_none() {
                res.first_mismatch = Some(bdg::emit(g, Some("r"), None));
            }
        }
        Ok(())
    };
    for g in tiny_family(max_v, max_e) {
        check(&g, true, &mut res)?;
    }
    for _ in 0..trials {
        let g = random_graph(&mut rng, 6, 8);
        check(&g, false, &mut res)?;
    }
    Ok(res)
}

// --- driver ---------------------------------------------------------------

fn emit_report<T: Serialize>(
    format: Format,
    inputs: Vec<InputDigest>,
    status: &'static str,
    result: &T,
    text: String,
) -> Result<()> {
    match format {
        Format::Json => {
            let rep = CommandReport {
                command: std::env::args().skip(1).collect::<Vec<_>>().join(" "),
                inputs,
                status,
                result,
            };
            let body = serde_json::to_string_pretty(&rep)
                .map_err(|e| Error::Input(format!("serialization failed: {e}")))?;
            println!("{body}");
        }
        Format::Text => print!("{text}"),
    }
    Ok(())
}

/// Returns the process exit code (0 ok, 1 property failure).
fn run(cli: Cli) -> Result<u8> {
    let mut inputs = Vec::new();
    match &cli.command {
        Command::Classify { file, sign, root } => {
            let rg = load_rooted(file, root.as_deref(), sign.as_deref(), &mut inputs)?;
            let r = classify_result(&rg)?;
            let text = classify_text(&r);
            emit_report(cli.format, inputs, "ok", &r, text)?;
            Ok(0)
        }
        Command::Ground { file, kind, sign, root } => {
            let rg = load_rooted(file, root.as_deref(), sign.as_deref(), &mut inputs)?;
            let r = ground_result(&rg, parse_kind(kind)?)?;
            let text = ground_text(&r);
            emit_report(cli.format, inputs, "ok", &r, text)?;
            Ok(0)
        }
        Command::Decompose { file, kind, sign, root } => {
            let rg = load_rooted(file, root.as_deref(), sign.as_deref(), &mut inputs)?;
            match kind {
                Some(k) => {
                    let r = step_result(&rg, parse_kind(k)?)?;
                    let text = step_text(&r);
                    emit_report(cli.format, inputs, "ok", &r, text)?;
                }
                None => {
                    let tree = decompose_full(&rg)?;
                    let r = tree_result(&tree.root);
                    let mut text = String::new();
                    tree_text(&r, 0, &mut text);
                    emit_report(cli.format, inputs, "ok", &r, text)?;
                }
            }
            Ok(0)
        }
        Command::Compose { job } => {
            let r = compose_result(job, &mut inputs)?;
            let text = r.bdg.clone();
            emit_report(cli.format, inputs, "ok", &r, text)?;
            Ok(0)
        }
        Command::Generate { class, vertices, seed } => {
            let r = generate_result(class, *vertices, *seed)?;
            let text = r.bdg.clone();
            emit_report(cli.format, inputs, "ok", &r, text)?;
            Ok(0)
        }
        Command::Verify { target, trials, seed } => {
            let bounds = Bounds {
                random_instances: *trials,
                ..Bounds::default()
            };
            if target == "suite" {
                let rep = run_all(&bounds, *seed)?;
                let mut text = String::new();
                for c in &rep.checks {
                    text.push_str(&check_line(c));
                }
                text.push_str(&format!("failed checks: {}\n", rep.failed_checks));
                let failed = rep.failed_checks > 0;
                emit_report(
                    cli.format,
                    inputs,
                    if failed { "failure" } else { "ok" },
                    &rep,
                    text,
                )?;
                Ok(if failed { 1 } else { 0 })
            } else {
                let rep = run_check(target, &bounds, *seed)?;
                let mut text = check_line(&rep);
                if let Some(cx) = &rep.counterexample {
                    text.push_str(&format!("counterexample: {}\n{}", cx.detail, cx.graph));
                }
                let failed = rep.failures > 0;
                emit_report(
                    cli.format,
                    inputs,
                    if failed { "failure" } else { "ok" },
                    &rep,
                    text,
                )?;
                Ok(if failed { 1 } else { 0 })
            }
        }
        Command::OracleDiff { max_vertices, max_edges, trials, seed } => {
            let r = oracle_diff(*max_vertices, *max_edges, *trials, *seed)?;
            let mut text = format!(
                "exhaustive: {}  random: {}  skipped: {}  mismatches: {}\n",
                r.exhaustive_checked, r.random_checked, r.skipped, r.mismatches
            );
            if let Some(m) = &r.first_mismatch {
                text.push_str("first mismatch:\n");
                text.push_str(m);
            }
            let failed = r.mismatches > 0;
            emit_report(
                cli.format,
                inputs,
                if failed { "failure" } else { "ok" },
                &r,
                text,
            )?;
            Ok(if failed { 1 } else { 0 })
        }
        Command::ExportDot { file, root } => {
            let text = read_input(file, &mut inputs)?;
            let parsed = bdg::parse(&text)?;
            let root = root.clone().or(parsed.root);
            let d = dot::export(&parsed.graph, root.as_deref());
            #[derive(Serialize)]
            struct DotResult {
                dot: String,
            }
            emit_report(cli.format, inputs, "ok", &DotResult { dot: d.clone() }, d)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e @ (Error::Parse { .. } | Error::Input(_))) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
