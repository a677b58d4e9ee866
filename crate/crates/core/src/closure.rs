//! N2-closure: repeated local completion at a chosen N2-eligible vertex
//! until none is left, plus the N-closure baseline.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::eligibility::{classify_all, local_completion, EligibilityReport};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, VertexId, VertexSet};

/// Choice function applied to the current set of eligible vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChoiceStrategy {
    MinId,
    /// Largest twin class, ties by smallest id.
    MaxClass,
    /// N-eligible vertices first (smallest id), then the rest (smallest id).
    NFirst,
    /// Uniform pick driven by `ChaCha8(seed)` on stream `step`.
    SeededRandom(u64),
}

impl ChoiceStrategy {
    /// The deterministic strategies plus one seeded random strategy.
    pub fn all(seed: u64) -> [ChoiceStrategy; 4] {
        [
            ChoiceStrategy::MinId,
            ChoiceStrategy::MaxClass,
            ChoiceStrategy::NFirst,
            ChoiceStrategy::SeededRandom(seed),
        ]
    }

    /// `eligible` is the sorted list of reports of N2-eligible vertices.
    fn choose(&self, eligible: &[&EligibilityReport], step: usize) -> VertexId {
        debug_assert!(!eligible.is_empty());
        match *self {
            ChoiceStrategy::MinId => eligible[0].vertex,
            ChoiceStrategy::MaxClass => {
                // max_by_key keeps the last maximum; iterate in reverse so ties go to the smallest id.
                eligible
                    .iter()
                    .rev()
                    .max_by_key(|r| r.class_bar_x.len())
                    .unwrap()
                    .vertex
            }
            ChoiceStrategy::NFirst => {
                eligible
                    .iter()
                    .find(|r| r.n_eligible)
                    .unwrap_or(&eligible[0])
                    .vertex
            }
            ChoiceStrategy::SeededRandom(seed) => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(step as u64);
                eligible[rng.gen_range(0..eligible.len())].vertex
            }
        }
    }
}

impl fmt::Display for ChoiceStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChoiceStrategy::MinId => f.write_str("min-id"),
            ChoiceStrategy::MaxClass => f.write_str("max-class"),
            ChoiceStrategy::NFirst => f.write_str("n-first"),
            ChoiceStrategy::SeededRandom(s) => write!(f, "random:{s}"),
        }
    }
}

impl FromStr for ChoiceStrategy {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "min-id" => Ok(ChoiceStrategy::MinId),
            "max-class" => Ok(ChoiceStrategy::MaxClass),
            "n-first" => Ok(ChoiceStrategy::NFirst),
            _ => match s.strip_prefix("random:") {
                Some(seed) => seed
                    .parse()
                    .map(ChoiceStrategy::SeededRandom)
                    .map_err(|e| format!("bad seed `{seed}`: {e}")),
                None => Err(format!(
                    "unknown strategy `{s}` (expected min-id, max-class, n-first or random:<seed>)"
                )),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompletionStep {
    pub chosen: VertexId,
    pub eligible_set_before: VertexSet,
    pub added: Vec<Edge>,
    /// Whether the chosen vertex was N-eligible, not just N2-eligible.
    pub n_eligible: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureTrace {
    pub initial: Graph,
    pub steps: Vec<CompletionStep>,
    pub final_graph: Graph,
}

impl ClosureTrace {
    /// Edges of the final graph that the closure added.
    pub fn added_edges(&self) -> BTreeSet<Edge> {
        self.steps
            .iter()
            .flat_map(|s| s.added.iter().copied())
            .collect()
    }

    /// Every intermediate graph, starting with `initial` and ending with `final_graph`.
    pub fn graphs(&self) -> Result<Vec<Graph>> {
        let mut out = vec![self.initial.clone()];
        for s in &self.steps {
            let next = out.last().unwrap().with_added_edges(&s.added)?;
            out.push(next);
        }
        Ok(out)
    }
}

pub fn n2_eligible_set(g: &Graph) -> VertexSet {
    classify_all(g)
        .into_iter()
        .filter(|r| r.n2_eligible)
        .map(|r| r.vertex)
        .collect()
}

pub fn n_eligible_set(g: &Graph) -> VertexSet {
    classify_all(g)
        .into_iter()
        .filter(|r| r.n_eligible)
        .map(|r| r.vertex)
        .collect()
}

/// Closes `g` under local completion at vertices selected by `eligible`,
/// choosing among them with `pick`. Eligibility is recomputed after every step.
fn run_closure<F, P>(g: &Graph, eligible: F, mut pick: P) -> Result<ClosureTrace>
where
    F: Fn(&EligibilityReport) -> bool,
    P: FnMut(&[&EligibilityReport], usize) -> VertexId,
{
    g.require_connected()?;
    let mut cur = g.clone();
    let mut steps = Vec::new();
    loop {
        let reports = classify_all(&cur);
        let cands: Vec<&EligibilityReport> = reports.iter().filter(|r| eligible(r)).collect();
        if cands.is_empty() {
            break;
        }
        if steps.len() > g.n() {
            return Err(Error::Invariant(
                "closure exceeded n completion steps".into(),
            ));
        }
        let chosen = pick(&cands, steps.len());
        let report = &reports[chosen.index()];
        let completion = local_completion(&cur, chosen)?;
        // Eligible vertices are non-simplicial, so something is always added.
        if completion.added_edges.is_empty() {
            return Err(Error::Invariant(
                "eligible vertex with nothing to complete".into(),
            ));
        }
        steps.push(CompletionStep {
            chosen,
            eligible_set_before: cands.iter().map(|r| r.vertex).collect(),
            added: completion.added_edges,
            n_eligible: report.n_eligible,
        });
        cur = completion.graph_x;
    }
    Ok(ClosureTrace {
        initial: g.clone(),
        steps,
        final_graph: cur,
    })
}

pub fn n2_closure(g: &Graph, strategy: ChoiceStrategy) -> Result<ClosureTrace> {
    run_closure(g, |r| r.n2_eligible, |c, step| strategy.choose(c, step))
}

/// N-closure baseline: completes N-eligible vertices (smallest id first)
/// until none remain.
pub fn n_closure(g: &Graph) -> Result<ClosureTrace> {
    run_closure(g, |r| r.n_eligible, |c, _| c[0].vertex)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureComparison {
    pub equal: bool,
    pub only_in_first: BTreeSet<Edge>,
    pub only_in_second: BTreeSet<Edge>,
}

pub fn compare_closures(
    g: &Graph,
    s1: ChoiceStrategy,
    s2: ChoiceStrategy,
) -> Result<ClosureComparison> {
    let a: BTreeSet<Edge> = n2_closure(g, s1)?.final_graph.edges().collect();
    let b: BTreeSet<Edge> = n2_closure(g, s2)?.final_graph.edges().collect();
    let only_in_first: BTreeSet<Edge> = a.difference(&b).copied().collect();
    let only_in_second: BTreeSet<Edge> = b.difference(&a).copied().collect();
    Ok(ClosureComparison {
        equal: only_in_first.is_empty() && only_in_second.is_empty(),
        only_in_first,
        only_in_second,
    })
}
