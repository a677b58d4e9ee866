//! Command-line surface. [`run`] does the work and returns a
//! [`CommandOutcome`]; the binary only prints it and exits.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path as FsPath, PathBuf};

use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::closure::{n2_closure, n2_eligible_set, n_closure, ChoiceStrategy, ClosureTrace};
use crate::edgelist;
use crate::eligibility::{classify_all, classify_vertex, local_completion, EligibilityReport};
use crate::error::Error;
use crate::graph::{Cycle, Edge, Graph, Path, VertexId, VertexSet};
use crate::oracle::{
    circumference, find_divergent_closures, find_nk_counterexample, random_connected_graph, Budget,
    SearchConfig, EXHAUSTIVE_MAX_N,
};
use crate::paths::classify_path;
use crate::reconstruct::{pull_back_cycle, pull_back_cycle_traced, TraceRecord};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CommandOutcome {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CommandOutcome {
    fn ok(stdout: String) -> Self {
        CommandOutcome {
            exit_code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(exit_code: i32, message: impl Into<String>) -> Self {
        let mut stderr = message.into();
        if !stderr.ends_with('\n') {
            stderr.push('\n');
        }
        CommandOutcome {
            exit_code,
            stdout: String::new(),
            stderr,
        }
    }

    fn usage(message: impl Into<String>) -> Self {
        Self::fail(EXIT_USAGE, message)
    }
}

impl From<Error> for CommandOutcome {
    fn from(e: Error) -> Self {
        let code = if e.is_resource() {
            EXIT_RESOURCE
        } else {
            EXIT_DOMAIN
        };
        CommandOutcome::fail(code, format!("error: {e}"))
    }
}

type CmdResult = std::result::Result<CommandOutcome, CommandOutcome>;

#[derive(Debug, Parser)]
#[command(
    name = "n2closure",
    version,
    about = "N2-closure of graphs and cycle pull-back"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Report twin classes and eligibility of vertices.
    Classify(ClassifyArgs),
    /// Classify a path against vertex sets X and Y.
    ClassifyPath(ClassifyPathArgs),
    /// Compute the N2-closure (or the N-closure baseline).
    Close(CloseArgs),
    /// Turn a cycle of the local completion G_x into a cycle of G.
    Pullback(PullbackArgs),
    /// Check circumference preservation on random graphs.
    Verify(VerifyArgs),
    /// Search small graphs for an Nk counterexample or divergent closures.
    Search(SearchArgs),
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    pub input: PathBuf,
    #[arg(long, conflicts_with = "all")]
    pub vertex: Option<String>,
    /// All vertices (the default).
    #[arg(long)]
    pub all: bool,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct ClassifyPathArgs {
    pub input: PathBuf,
    /// Comma-separated labels along the path.
    #[arg(long)]
    pub path: String,
    /// Comma-separated labels of X (may be empty).
    #[arg(long, default_value = "")]
    pub x: String,
    /// Comma-separated labels of Y.
    #[arg(long)]
    pub y: String,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct CloseArgs {
    pub input: PathBuf,
    /// min-id, max-class, n-first or random:<seed>.
    #[arg(long, default_value = "min-id")]
    pub strategy: ChoiceStrategy,
    /// Run the N-closure (N-eligible vertices only) instead.
    #[arg(long, conflicts_with = "strategy")]
    pub baseline_n: bool,
    /// Write the closure trace as JSON.
    #[arg(long)]
    pub trace: Option<PathBuf>,
    /// Write the final graph as DOT.
    #[arg(long)]
    pub dot: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PullbackArgs {
    pub input: PathBuf,
    #[arg(long)]
    pub vertex: String,
    /// Comma-separated labels of a cycle of G_x.
    #[arg(long)]
    pub cycle: String,
    /// Emit the iteration log as JSON lines, to PATH or (without a value) to stdout.
    #[arg(long, num_args = 0..=1, default_missing_value = "-")]
    pub trace: Option<String>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Also check this graph before the random ones.
    pub input: Option<PathBuf>,
    #[arg(long, default_value_t = 100)]
    pub samples: u64,
    #[arg(long, default_value_t = 10)]
    pub max_n: usize,
    /// Required whenever random graphs are drawn.
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("mode").required(true).args(["nk", "divergent"])))]
pub struct SearchArgs {
    #[arg(long)]
    pub nk: Option<usize>,
    #[arg(long)]
    pub divergent: bool,
    #[arg(long)]
    pub max_n: Option<usize>,
    /// Random graphs sampled per vertex count above the exhaustive range.
    #[arg(long, default_value_t = 100_000)]
    pub budget: u64,
    /// Required when the search goes past the exhaustive range.
    #[arg(long)]
    pub seed: Option<u64>,
}

pub fn run(cli: Cli) -> CommandOutcome {
    let r = match cli.command {
        Command::Classify(a) => cmd_classify(&a),
        Command::ClassifyPath(a) => cmd_classify_path(&a),
        Command::Close(a) => cmd_close(&a),
        Command::Pullback(a) => cmd_pullback(&a),
        Command::Verify(a) => cmd_verify(&a),
        Command::Search(a) => cmd_search(&a),
    };
    r.unwrap_or_else(|e| e)
}

fn read_graph(path: &FsPath) -> std::result::Result<(Graph, String), CommandOutcome> {
    let text = fs::read_to_string(path).map_err(|e| {
        CommandOutcome::fail(EXIT_DOMAIN, format!("error: {}: {e}", path.display()))
    })?;
    let g = edgelist::parse(&text).map_err(|e| {
        CommandOutcome::fail(EXIT_DOMAIN, format!("error: {}: {e}", path.display()))
    })?;
    Ok((g, text))
}

fn write_file(path: &FsPath, contents: &str) -> std::result::Result<(), CommandOutcome> {
    fs::write(path, contents)
        .map_err(|e| CommandOutcome::fail(EXIT_DOMAIN, format!("error: {}: {e}", path.display())))
}

fn split_labels(s: &str) -> Vec<&str> {
    s.split(',')
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .collect()
}

fn lookup(g: &Graph, labels: &[&str]) -> std::result::Result<Vec<VertexId>, Error> {
    labels.iter().map(|l| g.vertex(l)).collect()
}

fn label_list(g: &Graph, vs: impl IntoIterator<Item = VertexId>) -> Value {
    Value::from(
        vs.into_iter()
            .map(|v| g.label(v).to_owned())
            .collect::<Vec<_>>(),
    )
}

fn edge_list(g: &Graph, es: impl IntoIterator<Item = Edge>) -> Value {
    Value::from(
        es.into_iter()
            .map(|(a, b)| json!([g.label(a), g.label(b)]))
            .collect::<Vec<_>>(),
    )
}

fn report_json(g: &Graph, r: &EligibilityReport) -> Value {
    json!({
        "vertex": g.label(r.vertex),
        "simplicial": r.simplicial,
        "class": label_list(g, r.class_bar_x.iter()),
        "class_neighborhood": label_list(g, r.neighborhood_of_class.iter()),
        "sigma": r.sigma_of_neighborhood,
        "chi2": r.chi2,
        "n_eligible": r.n_eligible,
        "n2_eligible": r.n2_eligible,
    })
}

fn braces(g: &Graph, s: &VertexSet) -> String {
    format!(
        "{{{}}}",
        s.iter().map(|v| g.label(v)).collect::<Vec<_>>().join(",")
    )
}

fn report_table(g: &Graph, reports: &[EligibilityReport]) -> String {
    let header = [
        "vertex",
        "simplicial",
        "class",
        "N(class)",
        "sigma",
        "chi2",
        "N",
        "N2",
    ];
    let yes = |b: bool| if b { "yes" } else { "no" }.to_owned();
    let rows: Vec<[String; 8]> = reports
        .iter()
        .map(|r| {
            [
                g.label(r.vertex).to_owned(),
                yes(r.simplicial),
                braces(g, &r.class_bar_x),
                braces(g, &r.neighborhood_of_class),
                r.sigma_of_neighborhood.to_string(),
                r.chi2.to_string(),
                yes(r.n_eligible),
                yes(r.n2_eligible),
            ]
        })
        .collect();
    let mut widths = header.map(str::len);
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let mut line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c:<w$}"))
            .collect();
        out.push_str(padded.join("  ").trim_end());
        out.push('\n');
    };
    line(header.to_vec());
    for row in &rows {
        line(row.iter().map(String::as_str).collect());
    }
    out
}

pub fn cmd_classify(a: &ClassifyArgs) -> CmdResult {
    let (g, _) = read_graph(&a.input)?;
    let reports = match &a.vertex {
        Some(label) => vec![classify_vertex(&g, g.vertex(label)?)?],
        None => classify_all(&g),
    };
    let out = if a.json {
        let v = match (&a.vertex, reports.as_slice()) {
            (Some(_), [r]) => report_json(&g, r),
            _ => Value::from(
                reports
                    .iter()
                    .map(|r| report_json(&g, r))
                    .collect::<Vec<_>>(),
            ),
        };
        format!("{v}\n")
    } else {
        report_table(&g, &reports)
    };
    Ok(CommandOutcome::ok(out))
}

pub fn cmd_classify_path(a: &ClassifyPathArgs) -> CmdResult {
    let (g, _) = read_graph(&a.input)?;
    let p = Path::new(&g, lookup(&g, &split_labels(&a.path))?)?;
    let xs: VertexSet = lookup(&g, &split_labels(&a.x))?.into_iter().collect();
    let ys: VertexSet = lookup(&g, &split_labels(&a.y))?.into_iter().collect();
    let c = classify_path(&g, &p, &xs, &ys)?;
    let witness = c.witness.map(|w| format!("{w:?}"));
    let out = if a.json {
        format!(
            "{}\n",
            json!({ "rung": c.rung.as_str(), "witness": witness })
        )
    } else {
        match witness {
            Some(w) => format!("{} ({w})\n", c.rung),
            None => format!("{}\n", c.rung),
        }
    };
    Ok(CommandOutcome::ok(out))
}

/// JSON form of a closure trace; the schema is documented in the README.
pub fn closure_trace_json(t: &ClosureTrace, strategy: &str) -> Value {
    let g = &t.initial;
    let steps: Vec<Value> = t
        .steps
        .iter()
        .map(|s| {
            json!({
                "chosen_label": g.label(s.chosen),
                "eligible_before": label_list(g, s.eligible_set_before.iter()),
                "added_edges": edge_list(g, s.added.iter().copied()),
                "n_eligible": s.n_eligible,
            })
        })
        .collect();
    json!({
        "strategy": strategy,
        "initial_edges": edge_list(g, g.edges()),
        "steps": steps,
        "final_edges": edge_list(g, t.final_graph.edges()),
    })
}

fn dot_id(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// DOT rendering of `t.final_graph`: added edges dashed, simplicial
/// vertices with a double border.
pub fn closure_dot(t: &ClosureTrace) -> String {
    let g = &t.final_graph;
    let added = t.added_edges();
    let mut out = String::from("graph closure {\n");
    for v in g.vertices() {
        let extra = if g.is_simplicial(v).unwrap_or(false) {
            " [peripheries=2]"
        } else {
            ""
        };
        let _ = writeln!(out, "  {}{extra};", dot_id(g.label(v)));
    }
    for e in g.edges() {
        let style = if added.contains(&e) {
            " [style=dashed]"
        } else {
            ""
        };
        let _ = writeln!(
            out,
            "  {} -- {}{style};",
            dot_id(g.label(e.0)),
            dot_id(g.label(e.1))
        );
    }
    out.push_str("}\n");
    out
}

pub fn cmd_close(a: &CloseArgs) -> CmdResult {
    let (g, _) = read_graph(&a.input)?;
    let (trace, name) = if a.baseline_n {
        (n_closure(&g)?, "n-closure".to_owned())
    } else {
        (n2_closure(&g, a.strategy)?, a.strategy.to_string())
    };
    if let Some(p) = &a.trace {
        write_file(p, &format!("{}\n", closure_trace_json(&trace, &name)))?;
    }
    if let Some(p) = &a.dot {
        write_file(p, &closure_dot(&trace))?;
    }
    Ok(CommandOutcome::ok(format!(
        "final edges: {}\nsteps: {}\n",
        trace.final_graph.edge_count(),
        trace.steps.len()
    )))
}

pub fn trace_record_json(g: &Graph, r: &TraceRecord) -> Value {
    json!({
        "chosen_edge": [g.label(r.chosen_edge.0), g.label(r.chosen_edge.1)],
        "rung": r.rung.map(|r| r.as_str()),
        "resolver": r.resolver.as_str(),
        "outcome": r.outcome.as_str(),
        "cycle": label_list(g, r.cycle.vertices().iter().copied()),
    })
}

fn cycle_labels(g: &Graph, c: &Cycle) -> String {
    c.vertices()
        .iter()
        .map(|&v| g.label(v))
        .collect::<Vec<_>>()
        .join(",")
}

pub fn cmd_pullback(a: &PullbackArgs) -> CmdResult {
    let (g, _) = read_graph(&a.input)?;
    let x = g.vertex(&a.vertex)?;
    let vs = lookup(&g, &split_labels(&a.cycle))?;
    if !classify_vertex(&g, x)?.n2_eligible {
        return Err(Error::Precondition(format!("`{}` is not N2-eligible", a.vertex)).into());
    }
    let gx = local_completion(&g, x)?.graph_x;
    let cycle = Cycle::new(&gx, vs).map_err(|e| match e {
        Error::InvalidCycle(m) => Error::InvalidCycle(format!("{m} in G_x")),
        other => other,
    })?;
    let (c, records) = pull_back_cycle_traced(&g, x, &cycle)?;
    let mut out = String::new();
    match a.trace.as_deref() {
        None => {}
        Some("-") => {
            for r in &records {
                let _ = writeln!(out, "{}", trace_record_json(&g, r));
            }
        }
        Some(path) => {
            let lines: String = records
                .iter()
                .map(|r| format!("{}\n", trace_record_json(&g, r)))
                .collect();
            write_file(FsPath::new(path), &lines)?;
        }
    }
    let _ = writeln!(out, "{}", cycle_labels(&g, &c));
    Ok(CommandOutcome::ok(out))
}

const VERIFY_PS: [f64; 3] = [0.25, 0.4, 0.6];

/// Draws the `i`-th verification graph: `n` uniform in `[min(4, max_n), max_n]`,
/// `p` from [`VERIFY_PS`], redrawn until connected.
fn verify_instance(seed: u64, i: u64, max_n: usize) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(i);
    let n = rng.gen_range(max_n.min(4)..=max_n);
    let p = VERIFY_PS[rng.gen_range(0..VERIFY_PS.len())];
    loop {
        if let Some(g) = random_connected_graph(n, p, rng.gen()) {
            return g;
        }
    }
}

/// Checks completion and closure against the oracle on one graph.
/// `Ok(Some(msg))` describes a violated property.
pub fn check_preservation(g: &Graph, seed: u64) -> crate::Result<Option<String>> {
    let budget = Budget::default();
    let base = circumference(g, budget)?;
    for x in n2_eligible_set(g).iter() {
        let gx = local_completion(g, x)?.graph_x;
        let ox = circumference(&gx, budget)?;
        if ox.circumference != base.circumference {
            return Ok(Some(format!(
                "completion at `{}` changes circumference {} -> {}",
                g.label(x),
                base.circumference,
                ox.circumference
            )));
        }
        if let Some(w) = &ox.witness {
            let back = match pull_back_cycle(g, x, w) {
                Ok(c) => c,
                Err(e) => return Ok(Some(format!("pull-back at `{}` failed: {e}", g.label(x)))),
            };
            if back.vertex_set() != w.vertex_set() || !back.is_valid_in(g) {
                return Ok(Some(format!(
                    "pull-back at `{}` lost the vertex set",
                    g.label(x)
                )));
            }
        }
    }
    for s in ChoiceStrategy::all(seed) {
        let t = n2_closure(g, s)?;
        if !n2_eligible_set(&t.final_graph).is_empty() {
            return Ok(Some(format!(
                "closure under {s} left an N2-eligible vertex"
            )));
        }
        let of = circumference(&t.final_graph, budget)?;
        if of.circumference != base.circumference || of.hamiltonian != base.hamiltonian {
            return Ok(Some(format!(
                "closure under {s} changes circumference {} -> {}",
                base.circumference, of.circumference
            )));
        }
    }
    Ok(None)
}

pub fn cmd_verify(a: &VerifyArgs) -> CmdResult {
    let guard = Budget::default().max_n;
    if a.max_n > guard {
        return Err(CommandOutcome::fail(
            EXIT_RESOURCE,
            format!(
                "error: --max-n {} exceeds the oracle limit of {guard} vertices",
                a.max_n
            ),
        ));
    }
    if a.max_n < 3 {
        return Err(CommandOutcome::usage("error: --max-n must be at least 3"));
    }
    let mut instances = Vec::new();
    if let Some(p) = &a.input {
        instances.push(read_graph(p)?.0);
    }
    let seed = match (a.seed, a.samples) {
        (Some(s), _) => s,
        (None, 0) => 0,
        (None, _) => {
            return Err(CommandOutcome::usage(
                "error: --seed is required when --samples > 0",
            ))
        }
    };
    instances.extend((0..a.samples).map(|i| verify_instance(seed, i, a.max_n)));
    if let Some(g) = instances.iter().find(|g| !g.is_connected()) {
        return Err(g.require_connected().unwrap_err().into());
    }

    let results: Vec<crate::Result<Option<String>>> = instances
        .par_iter()
        .map(|g| check_preservation(g, seed))
        .collect();
    let total = instances.len();
    let mut passed = 0;
    let mut first_failure = None;
    for (g, r) in instances.iter().zip(results) {
        match r? {
            None => passed += 1,
            Some(msg) => {
                first_failure.get_or_insert((g, msg));
            }
        }
    }
    let mut out = format!("{passed}/{total} passed\n");
    match first_failure {
        None => Ok(CommandOutcome::ok(out)),
        Some((g, msg)) => {
            let _ = writeln!(out, "# first failure: {msg}");
            out.push_str(&edgelist::write(g));
            Err(CommandOutcome {
                exit_code: EXIT_DOMAIN,
                stdout: out,
                stderr: String::new(),
            })
        }
    }
}

pub fn cmd_search(a: &SearchArgs) -> CmdResult {
    if let Some(k) = a.nk {
        if k < 3 {
            return Err(CommandOutcome::usage(format!(
                "error: --nk {k}: completion at an N2-eligible vertex never changes the circumference; use k >= 3"
            )));
        }
    }
    let default_n = if a.divergent { 9 } else { 8 };
    let n_max = a.max_n.unwrap_or(default_n);
    let seed = match a.seed {
        Some(s) => s,
        None if n_max <= EXHAUSTIVE_MAX_N => 0,
        None => {
            return Err(CommandOutcome::usage(format!(
                "error: --seed is required when --max-n exceeds {EXHAUSTIVE_MAX_N}"
            )))
        }
    };
    let cfg = SearchConfig {
        samples: a.budget,
        seed,
    };
    let none = || CommandOutcome::ok("none found within budget\n".to_owned());
    if let Some(k) = a.nk {
        let Some(w) = find_nk_counterexample(k, n_max, cfg)? else {
            return Ok(none());
        };
        let mut out = format!(
            "# N{k}-eligible, not N2-eligible; circumference {} -> {} after completion\n",
            w.circumference_before, w.circumference_after
        );
        out.push_str(&edgelist::write_witness(&w.graph, w.vertex));
        return Ok(CommandOutcome::ok(out));
    }
    let Some(w) = find_divergent_closures(n_max, cfg)? else {
        return Ok(none());
    };
    let g = &w.graph;
    let fa: std::collections::BTreeSet<Edge> = w.first_final.edges().collect();
    let fb: std::collections::BTreeSet<Edge> = w.second_final.edges().collect();
    let fmt_edges = |es: Vec<&Edge>| {
        es.iter()
            .map(|e| format!("{}-{}", g.label(e.0), g.label(e.1)))
            .collect::<Vec<_>>()
            .join(" ")
    };
    let mut out = format!("# closures under {} and {} differ\n", w.first, w.second);
    let _ = writeln!(
        out,
        "# only under {}: {}",
        w.first,
        fmt_edges(fa.difference(&fb).collect())
    );
    let _ = writeln!(
        out,
        "# only under {}: {}",
        w.second,
        fmt_edges(fb.difference(&fa).collect())
    );
    out.push_str(&edgelist::write(g));
    Ok(CommandOutcome::ok(out))
}
