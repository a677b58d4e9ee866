//! Exact ground truth for small graphs, seeded instance generators, and
//! the exhaustive searches for the two boundary phenomena of the closure:
//! Nk-completions (k >= 3) that grow the circumference, and graphs whose
//! N2-closure depends on the choice strategy.
//!
//! Graph generation uses `ChaCha8Rng::seed_from_u64(seed)`; each pair
//! `(i, j)` with `i < j`, in lexicographic order, becomes an edge when the
//! next `f64` draw is below `p`. This is reproducible across platforms.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::closure::{n2_closure, ChoiceStrategy};
use crate::eligibility::{classify_vertex, is_nk_eligible, local_completion};
use crate::error::{Error, Result};
use crate::graph::{Cycle, Graph, Path, VertexId, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    /// Length of a longest cycle, 0 when the graph is acyclic.
    pub circumference: usize,
    pub witness: Option<Cycle>,
    pub hamiltonian: bool,
}

/// Limits for [`circumference`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Maximum number of DFS nodes expanded.
    pub node_limit: u64,
    /// Largest accepted vertex count; at most 64.
    pub max_n: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            node_limit: 200_000_000,
            max_n: 16,
        }
    }
}

pub const HAMILTONIAN_DP_MAX_N: usize = 20;

fn adjacency_masks(g: &Graph) -> Vec<u64> {
    g.vertices()
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, w| m | 1 << w.index()))
        .collect()
}

struct LongestCycle<'a> {
    adj: &'a [u64],
    order: Vec<Vec<usize>>,
    nodes: u64,
    limit: u64,
    path: Vec<usize>,
    best: Vec<usize>,
}

impl LongestCycle<'_> {
    /// Vertices of `allowed` reachable from `v` through `allowed`.
    fn reach(&self, v: usize, allowed: u64) -> u64 {
        let mut seen = 0u64;
        let mut frontier = self.adj[v] & allowed;
        while frontier != 0 {
            seen |= frontier;
            let mut next = 0u64;
            let mut f = frontier;
            while f != 0 {
                let u = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= self.adj[u];
            }
            frontier = next & allowed & !seen;
        }
        seen
    }

    fn dfs(&mut self, v: usize, start: usize, free: u64) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.limit {
            return Err(Error::Resource(format!(
                "longest-cycle search exceeded {} nodes",
                self.limit
            )));
        }
        let len = self.path.len();
        if len >= 3 && self.adj[v] >> start & 1 == 1 && len > self.best.len() {
            self.best = self.path.clone();
        }
        let reach = self.reach(v, free);
        if len + reach.count_ones() as usize <= self.best.len() {
            return Ok(());
        }
        for i in 0..self.order[v].len() {
            let w = self.order[v][i];
            if reach >> w & 1 == 0 {
                continue;
            }
            self.path.push(w);
            self.dfs(w, start, free & !(1 << w))?;
            self.path.pop();
        }
        Ok(())
    }
}

/// Exact circumference by depth-first search over simple paths. Each cycle
/// is searched from its smallest vertex, and a branch is cut when the path
/// plus every vertex still reachable cannot beat the best cycle so far.
pub fn circumference(g: &Graph, budget: Budget) -> Result<OracleResult> {
    let n = g.n();
    if n > budget.max_n.min(64) {
        return Err(Error::Resource(format!(
            "circumference oracle accepts at most {} vertices, got {n}",
            budget.max_n.min(64)
        )));
    }
    let adj = adjacency_masks(g);
    let order = (0..n)
        .map(|v| {
            let mut ws: Vec<usize> = g.neighbors(VertexId(v)).iter().map(|w| w.index()).collect();
            ws.sort_by_key(|&w| (g.degree(VertexId(w)), w));
            ws
        })
        .collect();
    let mut search = LongestCycle {
        adj: &adj,
        order,
        nodes: 0,
        limit: budget.node_limit,
        path: Vec::with_capacity(n),
        best: Vec::new(),
    };
    for s in 0..n {
        if n - s <= search.best.len() {
            break;
        }
        let above: u64 = if s + 1 >= 64 { 0 } else { !0u64 << (s + 1) };
        let free = above & if n == 64 { !0 } else { (1u64 << n) - 1 };
        search.path.clear();
        search.path.push(s);
        search.dfs(s, s, free)?;
    }
    let best = search.best;
    let circumference = best.len();
    let witness =
        (circumference >= 3).then(|| Cycle::from_trusted(best.into_iter().map(VertexId).collect()));
    Ok(OracleResult {
        circumference,
        witness,
        hamiltonian: n >= 3 && circumference == n,
    })
}

/// Hamilton cycle by dynamic programming over (visited set, endpoint)
/// states, anchored at vertex 0.
pub fn hamiltonian_cycle(g: &Graph) -> Result<Option<Cycle>> {
    let n = g.n();
    if n > HAMILTONIAN_DP_MAX_N {
        return Err(Error::Resource(format!(
            "Hamiltonian DP accepts at most {HAMILTONIAN_DP_MAX_N} vertices, got {n}"
        )));
    }
    if n < 3 {
        return Ok(None);
    }
    let adj: Vec<u32> = adjacency_masks(g).into_iter().map(|m| m as u32).collect();
    let full = (1u32 << n) - 1;
    // ends[mask]: endpoints of paths from 0 covering exactly `mask`.
    let mut ends = vec![0u32; 1 << n];
    ends[1] = 1;
    for mask in (1..=full).step_by(2) {
        let mut e = ends[mask as usize];
        while e != 0 {
            let v = e.trailing_zeros() as usize;
            e &= e - 1;
            let mut out = adj[v] & !mask;
            while out != 0 {
                let w = out.trailing_zeros();
                out &= out - 1;
                ends[(mask | 1 << w) as usize] |= 1 << w;
            }
        }
    }
    let closing = ends[full as usize] & adj[0] & !1;
    if closing == 0 {
        return Ok(None);
    }
    let mut cur = closing.trailing_zeros() as usize;
    let mut mask = full;
    let mut rev = vec![cur];
    while cur != 0 {
        let prev_mask = mask & !(1 << cur);
        let cands = ends[prev_mask as usize] & adj[cur];
        let prev = cands.trailing_zeros() as usize;
        rev.push(prev);
        mask = prev_mask;
        cur = prev;
    }
    rev.reverse();
    Ok(Some(Cycle::from_trusted(
        rev.into_iter().map(VertexId).collect(),
    )))
}

fn sample_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen::<f64>() < p {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(n, edges).expect("sampled pairs are distinct")
}

/// Erdős–Rényi `G(n, p)`; see the module docs for the generator contract.
pub fn random_graph(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_graph(&mut rng, n, p)
}

/// First connected sample among streams `0, 1, ...` of `ChaCha8(seed)`;
/// stream 0 reproduces [`random_graph`].
pub fn random_connected_graph(n: usize, p: f64, seed: u64) -> Option<Graph> {
    (0..10_000u64).find_map(|stream| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        let g = sample_graph(&mut rng, n, p);
        g.is_connected().then_some(g)
    })
}

/// A random path in a random graph with its vertices coloured into
/// `X`, `Y` and neither, endpoints forced into `Y`.
#[derive(Debug, Clone)]
pub struct PathTriple {
    pub graph: Graph,
    pub path: Path,
    pub xs: VertexSet,
    pub ys: VertexSet,
}

pub fn random_path_triple(rng: &mut ChaCha8Rng) -> PathTriple {
    loop {
        let n = rng.gen_range(2..=10);
        let p = rng.gen_range(0.3..0.9);
        let g = sample_graph(rng, n, p);
        let target = rng.gen_range(1..=n);
        let mut walk = vec![VertexId(rng.gen_range(0..n))];
        while walk.len() < target {
            let last = *walk.last().unwrap();
            let options: Vec<VertexId> = g
                .neighbors(last)
                .iter()
                .copied()
                .filter(|w| !walk.contains(w))
                .collect();
            if options.is_empty() {
                break;
            }
            walk.push(options[rng.gen_range(0..options.len())]);
        }
        let (mut xs, mut ys) = (Vec::new(), Vec::new());
        let last = walk.len() - 1;
        for (i, &v) in walk.iter().enumerate() {
            if i == 0 || i == last {
                ys.push(v);
                continue;
            }
            match rng.gen_range(0..3) {
                0 => xs.push(v),
                1 => ys.push(v),
                _ => {}
            }
        }
        if let Ok(path) = Path::new(&g, walk) {
            return PathTriple {
                graph: g,
                path,
                xs: xs.into_iter().collect(),
                ys: ys.into_iter().collect(),
            };
        }
    }
}

/// Exhaustive enumeration up to [`EXHAUSTIVE_MAX_N`] vertices, then
/// `samples` random graphs per larger size.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    pub samples: u64,
    pub seed: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            samples: 100_000,
            seed: 0,
        }
    }
}

pub const EXHAUSTIVE_MAX_N: usize = 7;
pub const SEARCH_MAX_N: usize = 9;

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect()
}

fn graph_from_mask(n: usize, pairs: &[(usize, usize)], mask: u64) -> Graph {
    let edges = pairs
        .iter()
        .enumerate()
        .filter(|(b, _)| mask >> b & 1 == 1)
        .map(|(_, &e)| e);
    Graph::from_edges(n, edges).expect("mask edges are distinct")
}

fn mask_connected(n: usize, adj: &[u64]) -> bool {
    let all = (1u64 << n) - 1;
    let mut seen = 1u64;
    let mut frontier = 1u64;
    while frontier != 0 {
        let mut next = 0;
        let mut f = frontier;
        while f != 0 {
            let u = f.trailing_zeros() as usize;
            f &= f - 1;
            next |= adj[u];
        }
        frontier = next & !seen;
        seen |= frontier;
    }
    seen == all
}

fn mask_adjacency(n: usize, pairs: &[(usize, usize)], mask: u64) -> Vec<u64> {
    let mut adj = vec![0u64; n];
    for (b, &(i, j)) in pairs.iter().enumerate() {
        if mask >> b & 1 == 1 {
            adj[i] |= 1 << j;
            adj[j] |= 1 << i;
        }
    }
    adj
}

/// Runs `check` over connected graphs of growing size: every graph for
/// `n <= EXHAUSTIVE_MAX_N`, then `cfg.samples` random graphs for each
/// larger `n`. Returns the first hit in that order.
fn scan<T, F>(n_max: usize, cfg: SearchConfig, check: F) -> Option<T>
where
    T: Send,
    F: Fn(&Graph) -> Option<T> + Sync,
{
    for n in 1..=n_max.min(EXHAUSTIVE_MAX_N) {
        let ps = pairs(n);
        let hit = (0..1u64 << ps.len())
            .into_par_iter()
            .find_map_first(|mask| {
                if !mask_connected(n, &mask_adjacency(n, &ps, mask)) {
                    return None;
                }
                check(&graph_from_mask(n, &ps, mask))
            });
        if hit.is_some() {
            return hit;
        }
    }
    for n in EXHAUSTIVE_MAX_N + 1..=n_max {
        let hit = (0..cfg.samples).into_par_iter().find_map_first(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ ((n as u64) << 48));
            rng.set_stream(i);
            let p = rng.gen_range(0.25..0.75);
            let g = sample_graph(&mut rng, n, p);
            if !g.is_connected() {
                return None;
            }
            check(&g)
        });
        if hit.is_some() {
            return hit;
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NkWitness {
    pub graph: Graph,
    pub vertex: VertexId,
    pub circumference_before: usize,
    pub circumference_after: usize,
}

/// Looks for a connected graph with a vertex that is Nk-eligible but not
/// N2-eligible and whose local completion has a longer longest cycle.
/// `Ok(None)` means nothing was found within the bounds.
pub fn find_nk_counterexample(
    k: usize,
    n_max: usize,
    cfg: SearchConfig,
) -> Result<Option<NkWitness>> {
    if k < 3 {
        return Err(Error::Precondition(format!(
            "k = {k}: completion at an N2-eligible vertex never changes the circumference"
        )));
    }
    if n_max > SEARCH_MAX_N {
        return Err(Error::Resource(format!(
            "counterexample search accepts n_max <= {SEARCH_MAX_N}, got {n_max}"
        )));
    }
    let found = scan(n_max, cfg, |g| nk_witness_in(g, k));
    Ok(found)
}

fn nk_witness_in(g: &Graph, k: usize) -> Option<NkWitness> {
    let mut before = None;
    for x in g.vertices() {
        let r = classify_vertex(g, x).ok()?;
        if r.n2_eligible || !r.nk_eligible(k) {
            continue;
        }
        let c0 = *before.get_or_insert_with(|| {
            circumference(g, Budget::default())
                .map(|o| o.circumference)
                .unwrap_or(usize::MAX)
        });
        let gx = local_completion(g, x).ok()?.graph_x;
        let c1 = circumference(&gx, Budget::default()).ok()?.circumference;
        if c0 != usize::MAX && c1 > c0 && is_nk_eligible(g, x, k).ok()? {
            return Some(NkWitness {
                graph: g.clone(),
                vertex: x,
                circumference_before: c0,
                circumference_after: c1,
            });
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivergenceWitness {
    pub graph: Graph,
    pub first: ChoiceStrategy,
    pub second: ChoiceStrategy,
    pub first_final: Graph,
    pub second_final: Graph,
}

/// Strategies compared by [`find_divergent_closures`].
pub fn divergence_strategies(seed: u64) -> Vec<ChoiceStrategy> {
    vec![
        ChoiceStrategy::MinId,
        ChoiceStrategy::MaxClass,
        ChoiceStrategy::NFirst,
        ChoiceStrategy::SeededRandom(seed),
        ChoiceStrategy::SeededRandom(seed.wrapping_add(1)),
    ]
}

/// Looks for a connected graph whose N2-closures under two strategies are
/// both N2-free yet have different edge sets.
pub fn find_divergent_closures(
    n_max: usize,
    cfg: SearchConfig,
) -> Result<Option<DivergenceWitness>> {
    if n_max > SEARCH_MAX_N {
        return Err(Error::Resource(format!(
            "divergence search accepts n_max <= {SEARCH_MAX_N}, got {n_max}"
        )));
    }
    let strategies = divergence_strategies(cfg.seed);
    Ok(scan(n_max, cfg, |g| divergence_in(g, &strategies)))
}

fn divergence_in(g: &Graph, strategies: &[ChoiceStrategy]) -> Option<DivergenceWitness> {
    let finals: Vec<Graph> = strategies
        .iter()
        .map(|&s| n2_closure(g, s).map(|t| t.final_graph))
        .collect::<Result<_>>()
        .ok()?;
    for i in 0..finals.len() {
        for j in i + 1..finals.len() {
            if finals[i] != finals[j]
                && crate::closure::n2_eligible_set(&finals[i]).is_empty()
                && crate::closure::n2_eligible_set(&finals[j]).is_empty()
            {
                return Some(DivergenceWitness {
                    graph: g.clone(),
                    first: strategies[i],
                    second: strategies[j],
                    first_final: finals[i].clone(),
                    second_final: finals[j].clone(),
                });
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    fn petersen() -> Graph {
        let mut e = Vec::new();
        for i in 0..5 {
            e.push((i, (i + 1) % 5));
            e.push((i, i + 5));
            e.push((5 + i, 5 + (i + 2) % 5));
        }
        Graph::from_edges(10, e).unwrap()
    }

    #[test]
    fn circumference_examples() {
        let r = circumference(&cycle_graph(5), Budget::default()).unwrap();
        assert_eq!(r.circumference, 5);
        assert!(r.hamiltonian);
        assert!(r.witness.unwrap().is_valid_in(&cycle_graph(5)));

        let r = circumference(&star(3), Budget::default()).unwrap();
        assert_eq!(
            (r.circumference, r.witness, r.hamiltonian),
            (0, None, false)
        );

        let g = petersen();
        let r = circumference(&g, Budget::default()).unwrap();
        assert_eq!(r.circumference, 9);
        assert!(!r.hamiltonian);
        let w = r.witness.unwrap();
        assert_eq!(w.len(), 9);
        assert!(w.is_valid_in(&g));
    }

    #[test]
    fn circumference_guards() {
        assert!(circumference(&path_graph(17), Budget::default())
            .unwrap_err()
            .is_resource());
        let tiny = Budget {
            node_limit: 10,
            max_n: 16,
        };
        assert!(circumference(&petersen(), tiny).unwrap_err().is_resource());
        let r = circumference(&Graph::complete(12), Budget::default()).unwrap();
        assert_eq!(r.circumference, 12);
    }

    #[test]
    fn hamiltonian_examples() {
        let k4 = Graph::complete(4);
        let c = hamiltonian_cycle(&k4).unwrap().unwrap();
        assert_eq!(c.len(), 4);
        assert!(c.is_valid_in(&k4));
        assert_eq!(hamiltonian_cycle(&star(3)).unwrap(), None);
        let g = w5();
        let c = hamiltonian_cycle(&g).unwrap().unwrap();
        assert!(c.is_valid_in(&g) && c.len() == 5);
        assert_eq!(hamiltonian_cycle(&petersen()).unwrap(), None);
        assert!(hamiltonian_cycle(&path_graph(21))
            .unwrap_err()
            .is_resource());
    }

    #[test]
    fn random_graph_extremes() {
        assert_eq!(random_graph(7, 0.0, 1).edge_count(), 0);
        assert_eq!(random_graph(7, 1.0, 1), Graph::complete(7));
        assert_eq!(random_graph(8, 0.4, 42), random_graph(8, 0.4, 42));
    }

    #[test]
    fn nk_search_guards() {
        assert!(matches!(
            find_nk_counterexample(2, 6, SearchConfig::default()),
            Err(Error::Precondition(_))
        ));
        assert_eq!(
            find_nk_counterexample(3, 4, SearchConfig::default()).unwrap(),
            None
        );
        assert!(find_nk_counterexample(3, 10, SearchConfig::default()).is_err());
    }

    #[test]
    fn complete_graphs_never_diverge() {
        let s = divergence_strategies(0);
        for n in 1..7 {
            assert!(divergence_in(&Graph::complete(n), &s).is_none());
        }
        assert!(divergence_in(&k4_minus_cd(), &s).is_none());
    }
}
