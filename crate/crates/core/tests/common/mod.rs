//! Brute-force reference implementations, written straight from the
//! definitions over an adjacency matrix and sharing no code with the crate.

#![allow(dead_code)]

use n2closure::{Graph, VertexId};

pub struct Matrix {
    pub n: usize,
    pub adj: Vec<Vec<bool>>,
}

impl Matrix {
    pub fn of(g: &Graph) -> Matrix {
        let n = g.n();
        let mut adj = vec![vec![false; n]; n];
        for (a, b) in g.edges() {
            adj[a.0][b.0] = true;
            adj[b.0][a.0] = true;
        }
        Matrix { n, adj }
    }

    pub fn closed(&self, x: usize) -> Vec<usize> {
        (0..self.n).filter(|&y| y == x || self.adj[x][y]).collect()
    }

    pub fn class(&self, x: usize) -> Vec<usize> {
        let nx = self.closed(x);
        (0..self.n).filter(|&y| self.closed(y) == nx).collect()
    }

    /// `N(x̄)`: vertices adjacent to the class but outside it.
    pub fn class_nbhd(&self, x: usize) -> Vec<usize> {
        let c = self.class(x);
        (0..self.n)
            .filter(|y| !c.contains(y) && c.iter().any(|&u| self.adj[u][*y]))
            .collect()
    }

    pub fn sigma(&self, s: &[usize]) -> usize {
        let mut k = 0;
        for (i, &a) in s.iter().enumerate() {
            for &b in &s[i + 1..] {
                if self.adj[a][b] {
                    k += 1;
                }
            }
        }
        k
    }

    pub fn is_clique(&self, s: &[usize]) -> bool {
        let k = s.len();
        self.sigma(s) == k * (k.saturating_sub(1)) / 2
    }

    pub fn simplicial(&self, x: usize) -> bool {
        self.is_clique(&self.closed(x))
    }

    pub fn nk_eligible(&self, x: usize, k: usize) -> bool {
        let nb = self.class_nbhd(x);
        let chi = self.sigma(&nb).min(k);
        !self.simplicial(x) && self.class(x).len() + chi >= nb.len()
    }

    pub fn n_eligible(&self, x: usize) -> bool {
        !self.simplicial(x) && self.class(x).len() >= self.class_nbhd(x).len()
    }

    /// Length of a longest cycle by trying every simple path; 0 if acyclic.
    pub fn circumference(&self) -> usize {
        let mut best = 0;
        let mut on = vec![false; self.n];
        for s in 0..self.n {
            on[s] = true;
            self.extend(s, s, 1, &mut on, &mut best);
            on[s] = false;
        }
        best
    }

    fn extend(&self, s: usize, cur: usize, len: usize, on: &mut [bool], best: &mut usize) {
        if len >= 3 && self.adj[cur][s] {
            *best = (*best).max(len);
        }
        for w in 0..self.n {
            // Only visit vertices larger than the start so every cycle is found from its minimum.
            if w > s && !on[w] && self.adj[cur][w] {
                on[w] = true;
                self.extend(s, w, len + 1, on, best);
                on[w] = false;
            }
        }
    }

    /// Every cycle listed once, starting at its smallest vertex with the
    /// second vertex smaller than the last.
    pub fn all_cycles(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut path = Vec::new();
        for s in 0..self.n {
            path.push(s);
            self.cycles_from(s, &mut path, &mut out);
            path.pop();
        }
        out
    }

    fn cycles_from(&self, s: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let cur = *path.last().unwrap();
        if path.len() >= 3 && self.adj[cur][s] && path[1] < cur {
            out.push(path.clone());
        }
        for w in s + 1..self.n {
            if self.adj[cur][w] && !path.contains(&w) {
                path.push(w);
                self.cycles_from(s, path, out);
                path.pop();
            }
        }
    }
}

pub fn ids(vs: &[usize]) -> Vec<VertexId> {
    vs.iter().map(|&v| VertexId(v)).collect()
}

pub fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
    Graph::from_edges(n, edges.iter().copied()).unwrap()
}

/// Every connected graph on `n` vertices, one per edge subset.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    (0..1u64 << pairs.len())
        .map(|mask| {
            let es = pairs
                .iter()
                .enumerate()
                .filter(|(b, _)| mask >> b & 1 == 1)
                .map(|(_, &e)| e);
            Graph::from_edges(n, es).unwrap()
        })
        .filter(|g| g.is_connected())
        .collect()
}
