//! Immutable simple undirected graphs over dense vertex ids, plus the
//! vertex-set, path and cycle vocabulary the closure machinery is written in.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// Dense vertex index in `0..n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub usize);

impl VertexId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl From<usize> for VertexId {
    fn from(v: usize) -> Self {
        VertexId(v)
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Unordered vertex pair stored with the smaller id first.
pub type Edge = (VertexId, VertexId);

#[inline]
pub fn edge(a: VertexId, b: VertexId) -> Edge {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Sorted, duplicate-free set of vertex ids.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexSet(Vec<VertexId>);

impl VertexSet {
    pub fn new() -> Self {
        VertexSet(Vec::new())
    }

    /// Caller guarantees `members` is strictly increasing.
    pub(crate) fn from_sorted(members: Vec<VertexId>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        VertexSet(members)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = VertexId> + ExactSizeIterator + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[VertexId] {
        &self.0
    }

    pub fn first(&self) -> Option<VertexId> {
        self.0.first().copied()
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        self.iter().chain(other.iter()).collect()
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        VertexSet::from_sorted(self.iter().filter(|&v| other.contains(v)).collect())
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        VertexSet::from_sorted(self.iter().filter(|&v| !other.contains(v)).collect())
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| !other.contains(v))
    }
}

impl FromIterator<VertexId> for VertexSet {
    fn from_iter<I: IntoIterator<Item = VertexId>>(iter: I) -> Self {
        let mut members: Vec<VertexId> = iter.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        VertexSet(members)
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = VertexId;
    type IntoIter = std::iter::Copied<std::slice::Iter<'a, VertexId>>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter().copied()
    }
}

/// Simple undirected graph. Immutable once built; operations that change
/// the edge set return a new graph sharing the label table.
#[derive(Debug, Clone)]
pub struct Graph {
    adj: Vec<Vec<VertexId>>,
    labels: Vec<String>,
    index: HashMap<String, VertexId>,
    edge_count: usize,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.adj == other.adj && self.labels == other.labels
    }
}

impl Eq for Graph {}

impl Graph {
    /// Builds a graph on `n` vertices labelled `"0"`, `"1"`, ...
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let labels = (0..n).map(|i| i.to_string()).collect();
        Graph::with_labels(labels, edges)
    }

    /// Builds a graph with an explicit label table. Labels must be distinct.
    pub fn with_labels<I>(labels: Vec<String>, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let n = labels.len();
        let mut index = HashMap::with_capacity(n);
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), VertexId(i)).is_some() {
                return Err(Error::InvalidEdge(format!("duplicate vertex label `{l}`")));
            }
        }
        let mut adj = vec![Vec::new(); n];
        for (a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::VertexOutOfRange {
                    vertex: a.max(b),
                    n,
                });
            }
            if a == b {
                return Err(Error::InvalidEdge(format!("self-loop at `{}`", labels[a])));
            }
            adj[a].push(VertexId(b));
            adj[b].push(VertexId(a));
        }
        let mut edge_count = 0;
        for (v, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::InvalidEdge(format!(
                    "duplicate edge `{}`-`{}`",
                    labels[v], labels[w[0].0]
                )));
            }
            edge_count += list.len();
        }
        Ok(Graph {
            adj,
            labels,
            index,
            edge_count: edge_count / 2,
        })
    }

    /// Complete graph on `n` vertices.
    pub fn complete(n: usize) -> Graph {
        let edges = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)));
        Graph::from_edges(n, edges).expect("complete graph is simple")
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.n()).map(VertexId)
    }

    pub fn check(&self, v: VertexId) -> Result<()> {
        if v.0 < self.n() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v.0,
                n: self.n(),
            })
        }
    }

    fn check_set(&self, xs: &VertexSet) -> Result<()> {
        match xs.as_slice().last() {
            Some(&v) => self.check(v),
            None => Ok(()),
        }
    }

    pub fn label(&self, v: VertexId) -> &str {
        &self.labels[v.0]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vertex(&self, label: &str) -> Result<VertexId> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adj[v.0]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v.0].len()
    }

    #[inline]
    pub fn adjacent(&self, a: VertexId, b: VertexId) -> bool {
        self.adj[a.0].binary_search(&b).is_ok()
    }

    /// All edges `(u, v)` with `u < v`, in increasing lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, list)| {
            let u = VertexId(u);
            list.iter()
                .copied()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    /// New graph with the given extra edges; every pair must be a current non-edge.
    pub fn with_added_edges(&self, extra: &[Edge]) -> Result<Graph> {
        let mut adj = self.adj.clone();
        for &(a, b) in extra {
            self.check(a)?;
            self.check(b)?;
            if a == b || self.adjacent(a, b) {
                return Err(Error::InvalidEdge(format!(
                    "`{}`-`{}` is not a non-edge",
                    self.label(a),
                    self.label(b)
                )));
            }
            adj[a.0].push(b);
            adj[b.0].push(a);
        }
        let mut total = 0;
        for (v, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if list.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidEdge(format!(
                    "edge listed twice at `{}`",
                    self.labels[v]
                )));
            }
            total += list.len();
        }
        Ok(Graph {
            adj,
            labels: self.labels.clone(),
            index: self.index.clone(),
            edge_count: total / 2,
        })
    }

    /// Representatives (smallest id) of each connected component, in id order.
    pub fn component_representatives(&self) -> Vec<VertexId> {
        let mut seen = vec![false; self.n()];
        let mut reps = Vec::new();
        let mut stack = Vec::new();
        for s in 0..self.n() {
            if seen[s] {
                continue;
            }
            reps.push(VertexId(s));
            seen[s] = true;
            stack.push(VertexId(s));
            while let Some(u) = stack.pop() {
                for &w in self.neighbors(u) {
                    if !seen[w.0] {
                        seen[w.0] = true;
                        stack.push(w);
                    }
                }
            }
        }
        reps
    }

    pub fn is_connected(&self) -> bool {
        self.component_representatives().len() <= 1
    }

    /// Rejects disconnected graphs, naming one vertex from each of two components.
    pub fn require_connected(&self) -> Result<()> {
        let reps = self.component_representatives();
        if reps.len() > 1 {
            return Err(Error::Disconnected {
                first: self.label(reps[0]).to_string(),
                second: self.label(reps[1]).to_string(),
            });
        }
        Ok(())
    }

    pub fn closed_neighborhood(&self, x: VertexId) -> Result<VertexSet> {
        self.check(x)?;
        Ok(self.closed_neighborhood_unchecked(x))
    }

    pub(crate) fn closed_neighborhood_unchecked(&self, x: VertexId) -> VertexSet {
        let list = &self.adj[x.0];
        let split = list.partition_point(|&v| v < x);
        let mut members = Vec::with_capacity(list.len() + 1);
        members.extend_from_slice(&list[..split]);
        members.push(x);
        members.extend_from_slice(&list[split..]);
        VertexSet::from_sorted(members)
    }

    /// `N(X) = N[X] \ X`.
    pub fn open_neighborhood_of_set(&self, xs: &VertexSet) -> Result<VertexSet> {
        self.check_set(xs)?;
        Ok(xs
            .iter()
            .flat_map(|x| self.neighbors(x).iter().copied())
            .filter(|&v| !xs.contains(v))
            .collect())
    }

    /// Vertices whose closed neighbourhood equals that of `x`.
    pub fn equivalence_class(&self, x: VertexId) -> Result<VertexSet> {
        self.check(x)?;
        Ok(self.equivalence_class_unchecked(x))
    }

    pub(crate) fn equivalence_class_unchecked(&self, x: VertexId) -> VertexSet {
        // Any twin of x lies in N[x] and has the same degree.
        let deg = self.degree(x);
        let nx = self.closed_neighborhood_unchecked(x);
        let members = nx
            .iter()
            .filter(|&y| {
                y == x || (self.degree(y) == deg && self.closed_neighborhood_unchecked(y) == nx)
            })
            .collect();
        VertexSet::from_sorted(members)
    }

    pub fn is_clique(&self, xs: &VertexSet) -> Result<bool> {
        self.check_set(xs)?;
        Ok(self.is_clique_unchecked(xs.as_slice()))
    }

    pub(crate) fn is_clique_unchecked(&self, xs: &[VertexId]) -> bool {
        xs.iter()
            .enumerate()
            .all(|(i, &a)| xs[i + 1..].iter().all(|&b| self.adjacent(a, b)))
    }

    pub fn is_simplicial(&self, x: VertexId) -> Result<bool> {
        self.check(x)?;
        Ok(self.is_clique_unchecked(self.neighbors(x)))
    }

    /// Number of edges with both endpoints in `xs`.
    pub fn sigma(&self, xs: &VertexSet) -> Result<usize> {
        self.check_set(xs)?;
        Ok(self.sigma_unchecked(xs))
    }

    pub(crate) fn sigma_unchecked(&self, xs: &VertexSet) -> usize {
        xs.iter()
            .map(|u| {
                self.neighbors(u)
                    .iter()
                    .filter(|&&w| w > u && xs.contains(w))
                    .count()
            })
            .sum()
    }

    /// Non-edges `{y, z}` with both ends in `xs`, lexicographically ordered.
    pub(crate) fn missing_edges_within(&self, xs: &VertexSet) -> Vec<Edge> {
        let s = xs.as_slice();
        let mut out = Vec::new();
        for (i, &a) in s.iter().enumerate() {
            for &b in &s[i + 1..] {
                if !self.adjacent(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Formats a vertex sequence with labels, e.g. `a,b,c`.
    pub fn format_vertices(&self, vs: &[VertexId]) -> String {
        vs.iter()
            .map(|&v| self.label(v))
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// A walk without repeated vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path {
    vertices: Vec<VertexId>,
}

impl Path {
    pub fn new(g: &Graph, vertices: Vec<VertexId>) -> Result<Path> {
        if vertices.is_empty() {
            return Err(Error::InvalidPath("empty vertex sequence".into()));
        }
        check_sequence(g, &vertices).map_err(Error::InvalidPath)?;
        for w in vertices.windows(2) {
            if !g.adjacent(w[0], w[1]) {
                return Err(Error::InvalidPath(format!(
                    "`{}`-`{}` is not an edge",
                    g.label(w[0]),
                    g.label(w[1])
                )));
            }
        }
        Ok(Path { vertices })
    }

    /// Sequence known to be a valid path of some graph.
    pub(crate) fn from_trusted(vertices: Vec<VertexId>) -> Path {
        debug_assert!(!vertices.is_empty());
        Path { vertices }
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn start(&self) -> VertexId {
        self.vertices[0]
    }

    pub fn end(&self) -> VertexId {
        *self.vertices.last().unwrap()
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.vertices.iter().copied().collect()
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.vertices.windows(2).map(|w| edge(w[0], w[1]))
    }

    pub fn position(&self, v: VertexId) -> Option<usize> {
        self.vertices.iter().position(|&w| w == v)
    }

    /// Predecessor and successor of the vertex at position `i`, when defined.
    pub fn path_neighbors(&self, i: usize) -> impl Iterator<Item = VertexId> + '_ {
        let prev = i.checked_sub(1).map(|j| self.vertices[j]);
        let next = self.vertices.get(i + 1).copied();
        prev.into_iter().chain(next)
    }

    /// Number of consecutive pairs of the path with both ends in `ys`.
    pub fn sigma(&self, ys: &VertexSet) -> usize {
        self.vertices
            .windows(2)
            .filter(|w| ys.contains(w[0]) && ys.contains(w[1]))
            .count()
    }
}

/// Cycle stored without repeating its start vertex; the closing edge runs
/// from the last vertex back to the first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cycle {
    vertices: Vec<VertexId>,
}

impl Cycle {
    pub fn new(g: &Graph, vertices: Vec<VertexId>) -> Result<Cycle> {
        if vertices.len() < 3 {
            return Err(Error::InvalidCycle(format!(
                "a cycle needs at least 3 vertices, got {}",
                vertices.len()
            )));
        }
        check_sequence(g, &vertices).map_err(Error::InvalidCycle)?;
        let k = vertices.len();
        for i in 0..k {
            let (a, b) = (vertices[i], vertices[(i + 1) % k]);
            if !g.adjacent(a, b) {
                return Err(Error::InvalidCycle(format!(
                    "`{}`-`{}` is not an edge",
                    g.label(a),
                    g.label(b)
                )));
            }
        }
        Ok(Cycle { vertices })
    }

    pub fn from_labels(g: &Graph, labels: &[&str]) -> Result<Cycle> {
        let vs = labels
            .iter()
            .map(|l| g.vertex(l))
            .collect::<Result<Vec<_>>>()?;
        Cycle::new(g, vs)
    }

    pub(crate) fn from_trusted(vertices: Vec<VertexId>) -> Cycle {
        debug_assert!(vertices.len() >= 3);
        Cycle { vertices }
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    /// Number of vertices, which equals the number of edges.
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.vertices.iter().copied().collect()
    }

    /// Edges in traversal order, closing edge last.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        let k = self.vertices.len();
        (0..k).map(move |i| edge(self.vertices[i], self.vertices[(i + 1) % k]))
    }

    pub fn is_valid_in(&self, g: &Graph) -> bool {
        Cycle::new(g, self.vertices.clone()).is_ok()
    }

    /// Rotation starting at position `i`.
    pub fn rotated(&self, i: usize) -> Cycle {
        let mut vs = self.vertices.clone();
        let k = vs.len();
        vs.rotate_left(i % k);
        Cycle { vertices: vs }
    }

    pub fn reversed(&self) -> Cycle {
        let mut vs = self.vertices.clone();
        vs.reverse();
        Cycle { vertices: vs }
    }

    /// Rotation/reflection-independent form: starts at the smallest id and
    /// walks towards the smaller of its two cycle neighbours.
    pub fn canonical(&self) -> Cycle {
        let k = self.vertices.len();
        let (i, _) = self
            .vertices
            .iter()
            .enumerate()
            .min_by_key(|&(_, v)| *v)
            .unwrap();
        let r = self.rotated(i);
        if r.vertices[k - 1] < r.vertices[1] {
            r.reversed().rotated(k - 1)
        } else {
            r
        }
    }
}

fn check_sequence(g: &Graph, vs: &[VertexId]) -> std::result::Result<(), String> {
    let mut seen = vec![false; g.n()];
    for &v in vs {
        if v.0 >= g.n() {
            return Err(format!("vertex {} out of range", v.0));
        }
        if seen[v.0] {
            return Err(format!("vertex `{}` repeated", g.label(v)));
        }
        seen[v.0] = true;
    }
    Ok(())
}
