//! Neighbourhood-equivalence eligibility and local completion.
//!
//! For a vertex `x` with twin class `x̄` (vertices sharing its closed
//! neighbourhood) and class neighbourhood `N(x̄)`, the weight `chi_k(x)`
//! counts the edges inside `N(x̄)` up to `k`. The vertex is Nk-eligible
//! when it is non-simplicial and `|x̄| + chi_k(x) >= |N(x̄)|`; N-eligibility
//! is the `k = 0` case and N2-eligibility is `k = 2`.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, VertexId, VertexSet};

/// Per-vertex eligibility record.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EligibilityReport {
    pub vertex: VertexId,
    pub simplicial: bool,
    pub class_bar_x: VertexSet,
    pub neighborhood_of_class: VertexSet,
    pub sigma_of_neighborhood: usize,
    pub chi2: usize,
    pub n_eligible: bool,
    pub n2_eligible: bool,
}

impl EligibilityReport {
    fn build(
        g: &Graph,
        x: VertexId,
        class_bar_x: VertexSet,
        neighborhood_of_class: VertexSet,
    ) -> EligibilityReport {
        let simplicial = g.is_clique_unchecked(g.neighbors(x));
        let sigma_of_neighborhood = g.sigma_unchecked(&neighborhood_of_class);
        let chi2 = sigma_of_neighborhood.min(2);
        let (c, nb) = (class_bar_x.len(), neighborhood_of_class.len());
        EligibilityReport {
            vertex: x,
            simplicial,
            n_eligible: !simplicial && c >= nb,
            n2_eligible: !simplicial && c + chi2 >= nb,
            class_bar_x,
            neighborhood_of_class,
            sigma_of_neighborhood,
            chi2,
        }
    }

    /// Nk-eligibility read off this report; `k = 0` gives N-eligibility.
    pub fn nk_eligible(&self, k: usize) -> bool {
        !self.simplicial
            && self.class_bar_x.len() + self.sigma_of_neighborhood.min(k)
                >= self.neighborhood_of_class.len()
    }
}

/// `min(σ(N(x̄)), k)`.
pub fn chi_k(g: &Graph, x: VertexId, k: usize) -> Result<usize> {
    g.check(x)?;
    if k == 0 {
        return Err(Error::Precondition("chi_k needs k >= 1".into()));
    }
    let class = g.equivalence_class_unchecked(x);
    let nb = g.open_neighborhood_of_set(&class)?;
    Ok(g.sigma_unchecked(&nb).min(k))
}

pub fn classify_vertex(g: &Graph, x: VertexId) -> Result<EligibilityReport> {
    g.check(x)?;
    let class = g.equivalence_class_unchecked(x);
    let nb = g.open_neighborhood_of_set(&class)?;
    Ok(EligibilityReport::build(g, x, class, nb))
}

/// Nk-eligibility for any `k >= 1`.
pub fn is_nk_eligible(g: &Graph, x: VertexId, k: usize) -> Result<bool> {
    let chi = chi_k(g, x, k)?;
    let r = classify_vertex(g, x)?;
    Ok(!r.simplicial && r.class_bar_x.len() + chi >= r.neighborhood_of_class.len())
}

/// Reports for every vertex. Twin classes are computed once per distinct
/// closed neighbourhood.
pub fn classify_all(g: &Graph) -> Vec<EligibilityReport> {
    let mut by_nbhd: HashMap<VertexSet, (VertexSet, VertexSet)> = HashMap::new();
    let mut reports = Vec::with_capacity(g.n());
    for x in g.vertices() {
        let nx = g.closed_neighborhood_unchecked(x);
        let (class, nb) = by_nbhd
            .entry(nx)
            .or_insert_with(|| {
                let class = g.equivalence_class_unchecked(x);
                let nb = g.open_neighborhood_of_set(&class).expect("ids in range");
                (class, nb)
            })
            .clone();
        reports.push(EligibilityReport::build(g, x, class, nb));
    }
    reports
}

/// `G_x` together with the added edge set `B_x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompletionResult {
    pub graph_x: Graph,
    pub added_edges: Vec<Edge>,
}

/// Adds every missing edge inside `N[x]`, which is the same set as the
/// missing edges inside `N(x̄)`.
pub fn local_completion(g: &Graph, x: VertexId) -> Result<CompletionResult> {
    g.check(x)?;
    let nx = g.closed_neighborhood_unchecked(x);
    let added_edges = g.missing_edges_within(&nx);
    debug_assert_eq!(added_edges, {
        let class = g.equivalence_class_unchecked(x);
        let nb = g.open_neighborhood_of_set(&class).unwrap();
        g.missing_edges_within(&nb)
    });
    let graph_x = g.with_added_edges(&added_edges)?;
    Ok(CompletionResult {
        graph_x,
        added_edges,
    })
}
