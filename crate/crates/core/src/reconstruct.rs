//! Pulling cycles of a local completion `G_x` back into `G`.
//!
//! A cycle of `G_x` that uses an added edge `yz` is cut open at `yz`, which
//! leaves a path `P` from `y` to `z`. With `Y = V(P) ∩ N(x̄)` the path sits
//! somewhere on the pseudo/semi/alternating ladder with respect to
//! `(x̄, Y)`, and each rung has its own rewiring into a cycle on `V(P)` whose
//! new edges all belong to `G`. Repeating this removes the added edges one
//! at a time.
//!
//! Where the underlying argument relies on the cycle being longest, the
//! resolvers here instead return the longer cycle they can build, tagged
//! [`OutcomeKind::Extended`], and the driver keeps going from there.

use std::collections::HashSet;
use std::fmt;

use crate::eligibility::local_completion;
use crate::error::{Error, Result};
use crate::graph::{edge, Cycle, Edge, Graph, Path, VertexId, VertexSet};
use crate::paths::{classify_unchecked, Rung};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OutcomeKind {
    /// Same vertex set, strictly fewer added edges.
    Reduced,
    /// Strictly more vertices.
    Extended,
    /// No added edge left.
    Done,
}

impl OutcomeKind {
    pub fn as_str(self) -> &'static str {
        match self {
            OutcomeKind::Reduced => "REDUCED",
            OutcomeKind::Extended => "EXTENDED",
            OutcomeKind::Done => "DONE",
        }
    }
}

impl fmt::Display for OutcomeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PullBackOutcome {
    pub kind: OutcomeKind,
    pub cycle: Cycle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Resolver {
    /// A vertex of `x̄` missing from the cycle is inserted between `y` and `z`.
    ClassInsertion,
    ProperPseudo,
    ProperSemi,
    AlternatingSplice,
    AlternatingExtension,
}

impl Resolver {
    pub fn as_str(self) -> &'static str {
        match self {
            Resolver::ClassInsertion => "class_insertion",
            Resolver::ProperPseudo => "proper_pseudo",
            Resolver::ProperSemi => "proper_semi",
            Resolver::AlternatingSplice => "alternating_splice",
            Resolver::AlternatingExtension => "alternating_extension",
        }
    }
}

/// One iteration of [`pull_back_cycle_traced`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceRecord {
    pub chosen_edge: Edge,
    pub rung: Option<Rung>,
    pub resolver: Resolver,
    pub outcome: OutcomeKind,
    pub cycle: Cycle,
}

/// `G`, `x`, its class data in `G`, and `G_x`.
struct Completion<'g> {
    g: &'g Graph,
    class: VertexSet,
    nbhd: VertexSet,
    gx: Graph,
    chi2: usize,
    n2_eligible: bool,
}

impl<'g> Completion<'g> {
    fn new(g: &'g Graph, x: VertexId) -> Result<Self> {
        let report = crate::eligibility::classify_vertex(g, x)?;
        let gx = local_completion(g, x)?.graph_x;
        Ok(Completion {
            g,
            class: report.class_bar_x,
            nbhd: report.neighborhood_of_class,
            gx,
            chi2: report.chi2,
            n2_eligible: report.n2_eligible,
        })
    }

    fn require_n2(&self) -> Result<()> {
        if self.n2_eligible {
            Ok(())
        } else {
            Err(Error::Precondition("vertex is not N2-eligible".into()))
        }
    }

    fn in_bx(&self, (a, b): Edge) -> bool {
        !self.g.adjacent(a, b) && self.gx.adjacent(a, b)
    }

    fn bx_count(&self, c: &Cycle) -> usize {
        c.edges().filter(|&e| self.in_bx(e)).count()
    }

    fn path_in_gx(&self, vs: &[VertexId]) -> Result<Path> {
        Path::new(&self.gx, vs.to_vec())
    }

    /// `Y = V(P) ∩ N(x̄)`, after checking `x̄ ⊆ V(P)`.
    fn y_for(&self, p: &Path) -> Result<VertexSet> {
        let vp = p.vertex_set();
        if !self.class.is_subset(&vp) {
            return Err(Error::Precondition(
                "the equivalence class of x is not contained in the path".into(),
            ));
        }
        Ok(vp.intersection(&self.nbhd))
    }

    fn in_y_class(&self, ys: &VertexSet, (a, b): Edge) -> bool {
        (ys.contains(a) && self.class.contains(b)) || (ys.contains(b) && self.class.contains(a))
    }

    /// Builds the cycle and checks it against `G_x`, the expected vertex
    /// set, and the allowed edge pool.
    fn finish(
        &self,
        seq: Vec<VertexId>,
        expected: &VertexSet,
        allowed: impl Fn(Edge) -> bool,
        what: &str,
    ) -> Result<Cycle> {
        let c = Cycle::new(&self.gx, seq)
            .map_err(|e| Error::Invariant(format!("{what} produced a non-cycle: {e}")))?;
        if &c.vertex_set() != expected {
            return Err(Error::Invariant(format!("{what} changed the vertex set")));
        }
        if let Some((a, b)) = c.edges().find(|&e| !allowed(e)) {
            return Err(Error::Invariant(format!(
                "{what} used edge `{}`-`{}` outside the allowed pool",
                self.g.label(a),
                self.g.label(b)
            )));
        }
        Ok(c)
    }

    fn splice(&self, p: &Path, q: &Path) -> Result<Cycle> {
        let ys = self.y_for(p)?;
        if classify_unchecked(p, &self.class, &ys).rung != Rung::Alternating {
            return Err(Error::Precondition("P is not Y x̄-alternating".into()));
        }
        let (qs, qe) = (q.start(), q.end());
        if qs == qe || !ys.contains(qs) || !ys.contains(qe) {
            return Err(Error::Precondition(
                "Q needs distinct endpoints in Y".into(),
            ));
        }
        let vp = p.vertex_set();
        if q.vertices()[1..q.len() - 1].iter().any(|&v| vp.contains(v)) {
            return Err(Error::Precondition(
                "Q shares an inner vertex with P".into(),
            ));
        }
        let pv = p.vertices();
        // y_t sits at position 2t, x_t at 2t + 1.
        let (mut i, mut j) = (p.position(qs).unwrap() / 2, p.position(qe).unwrap() / 2);
        let mut inner: Vec<VertexId> = q.vertices()[1..q.len() - 1].to_vec();
        if i > j {
            std::mem::swap(&mut i, &mut j);
            inner.reverse();
        }
        let n = pv.len() / 2;
        let mut seq: Vec<VertexId> = pv[..=2 * i].to_vec();
        seq.extend(&inner);
        if j == n {
            seq.extend(pv[2 * i + 1..].iter().rev());
        } else {
            seq.extend(pv[2 * i + 1..=2 * j].iter().rev());
            seq.extend(pv[2 * j + 1..].iter().rev());
        }
        let p_edges: HashSet<Edge> = p.edges().collect();
        let q_edges: HashSet<Edge> = q.edges().collect();
        let expected = vp.union(&q.vertex_set());
        self.finish(
            seq,
            &expected,
            |e| p_edges.contains(&e) || q_edges.contains(&e) || self.in_y_class(&ys, e),
            "alternating splice",
        )
    }

    fn proper_pseudo(&self, p: &Path) -> Result<Cycle> {
        let ys = self.y_for(p)?;
        let rung = classify_unchecked(p, &self.class, &ys).rung;
        if rung != Rung::ProperPseudo {
            return Err(Error::Precondition(format!(
                "expected a proper pseudo-alternating path, found {rung}"
            )));
        }
        let pv = p.vertices();
        let i = pv
            .windows(2)
            .position(|w| self.class.contains(w[0]) && self.class.contains(w[1]))
            .ok_or_else(|| Error::Precondition("no consecutive pair of x̄ on P".into()))?;
        let mut seq = pv[..=i].to_vec();
        seq.extend(pv[i + 1..].iter().rev());
        self.finish_rewire(p, seq, "proper pseudo resolution")
    }

    fn finish_rewire(&self, p: &Path, seq: Vec<VertexId>, what: &str) -> Result<Cycle> {
        let p_edges: HashSet<Edge> = p.edges().collect();
        self.finish(
            seq,
            &p.vertex_set(),
            |e| p_edges.contains(&e) || self.g.adjacent(e.0, e.1),
            what,
        )
    }

    /// Smallest edge of `G` inside `ys` that is not on `p` and differs from `skip`.
    fn free_y_edge(&self, p: &Path, ys: &VertexSet, skip: Option<Edge>) -> Option<Edge> {
        let p_edges: HashSet<Edge> = p.edges().collect();
        ys.iter()
            .flat_map(|u| {
                self.g
                    .neighbors(u)
                    .iter()
                    .copied()
                    .filter(move |&v| v > u && ys.contains(v))
                    .map(move |v| (u, v))
            })
            .find(|e| !p_edges.contains(e) && Some(*e) != skip)
    }

    fn proper_semi(&self, p: &Path) -> Result<Cycle> {
        self.require_n2()?;
        let ys = self.y_for(p)?;
        let rung = classify_unchecked(p, &self.class, &ys).rung;
        if rung != Rung::ProperSemi {
            return Err(Error::Precondition(format!(
                "expected a proper semi-alternating path, found {rung}"
            )));
        }
        if self.class.len() + 2 != ys.len() {
            return Err(Error::Precondition(format!(
                "|x̄| = |Y| - 2 fails: |x̄| = {}, |Y| = {}",
                self.class.len(),
                ys.len()
            )));
        }
        if self.chi2 != 2 {
            return Err(Error::Precondition(format!(
                "chi2(x) = 2 fails: chi2 = {}",
                self.chi2
            )));
        }
        if ys != self.nbhd {
            return Err(Error::Precondition("Y = N(x̄) fails".into()));
        }

        let pv = p.vertices();
        let last = pv.len() - 1;
        let in_class = |v: VertexId| self.class.contains(v);
        // Positions of y_0 .. y_{n-1} along P.
        let ypos: Vec<usize> = (0..pv.len()).filter(|&t| ys.contains(pv[t])).collect();
        let n = ypos.len();
        let i = (0..n - 1)
            .find(|&t| !in_class(pv[ypos[t] + 1]))
            .ok_or_else(|| {
                Error::Invariant("proper semi path with every Y-successor in x̄".into())
            })?;
        let skip = edge(pv[ypos[i]], pv[ypos[i + 1]]);
        let (u, v) = self.free_y_edge(p, &ys, Some(skip)).ok_or_else(|| {
            Error::Invariant("no edge of E(Y) off P other than y_i y_(i+1)".into())
        })?;
        let (pu, pv_) = (p.position(u).unwrap(), p.position(v).unwrap());
        let (pk, pl) = (pu.min(pv_), pu.max(pv_));
        let k = ypos.iter().position(|&t| t == pk).unwrap();

        let pred_in_class = |pos: usize| pos > 0 && in_class(pv[pos - 1]);
        let succ_in_class = |pos: usize| pos < last && in_class(pv[pos + 1]);

        let mut seq: Vec<VertexId> = Vec::with_capacity(pv.len());
        if k == i {
            if !pred_in_class(pk) {
                if pk != 0 {
                    return Err(Error::Invariant(
                        "y_k^- outside x̄ with k past the start".into(),
                    ));
                }
                // y_1 y_l ->P y_n y_l^- <-P y_1
                seq.push(pv[0]);
                seq.extend(&pv[pl..]);
                seq.extend(pv[1..pl].iter().rev());
            } else {
                // y_1 y_l^- <-P y_k y_l ->P y_n y_k^- <-P y_1
                seq.push(pv[0]);
                seq.extend(pv[pk..pl].iter().rev());
                seq.extend(&pv[pl..]);
                seq.extend(pv[1..pk].iter().rev());
            }
        } else {
            if !succ_in_class(pk) {
                return Err(Error::Invariant("y_k^+ outside x̄ with k != i".into()));
            }
            if pred_in_class(pl) {
                // y_1 ->P y_k y_l ->P y_n y_k^+ ->P y_l^- y_1
                seq.extend(&pv[..=pk]);
                seq.extend(&pv[pl..]);
                seq.extend(&pv[pk + 1..pl]);
            } else if succ_in_class(pl) {
                // y_1 ->P y_k y_l <-P y_k^+ y_n <-P y_l^+ y_1
                seq.extend(&pv[..=pk]);
                seq.extend(pv[pk + 1..=pl].iter().rev());
                seq.extend(pv[pl + 1..].iter().rev());
            } else {
                if pl != last {
                    return Err(Error::Invariant(
                        "y_l has no x̄ neighbour on P but is not last".into(),
                    ));
                }
                // y_1 ->P y_k y_n <-P y_k^+ y_1
                seq.extend(&pv[..=pk]);
                seq.extend(pv[pk + 1..].iter().rev());
            }
        }
        self.finish_rewire(p, seq, "proper semi resolution")
    }

    fn alternating(&self, p: &Path, c: &Cycle) -> Result<(PullBackOutcome, Resolver)> {
        self.require_n2()?;
        let ys = self.y_for(p)?;
        let rung = classify_unchecked(p, &self.class, &ys).rung;
        if rung != Rung::Alternating {
            return Err(Error::Precondition(format!(
                "expected an alternating path, found {rung}"
            )));
        }
        if c.vertex_set() != p.vertex_set() {
            return Err(Error::Precondition("V(C) must equal V(P)".into()));
        }
        if let Some((u, v)) = self.free_y_edge(p, &ys, None) {
            let q = Path::from_trusted(vec![u, v]);
            let cycle = self.splice(p, &q)?;
            let kind = if self.bx_count(&cycle) == 0 {
                OutcomeKind::Done
            } else {
                OutcomeKind::Reduced
            };
            return Ok((PullBackOutcome { kind, cycle }, Resolver::AlternatingSplice));
        }
        // Only edges of E(N(x̄)) leaving V(P) remain: route through the
        // outside vertex they share.
        let vp = p.vertex_set();
        for w in self.nbhd.iter().filter(|&w| !vp.contains(w)) {
            let mut ends = self
                .g
                .neighbors(w)
                .iter()
                .copied()
                .filter(|&t| ys.contains(t));
            if let (Some(a), Some(b)) = (ends.next(), ends.next()) {
                let q = Path::from_trusted(vec![a, w, b]);
                let cycle = self.splice(p, &q)?;
                return Ok((
                    PullBackOutcome {
                        kind: OutcomeKind::Extended,
                        cycle,
                    },
                    Resolver::AlternatingExtension,
                ));
            }
        }
        Err(Error::Invariant(
            "alternating path admits neither an E(Y) edge nor an extension".into(),
        ))
    }
}

/// Joins an alternating path `p` and a path `q` between two of its `Y`
/// vertices into one cycle on `V(p) ∪ V(q)`. Both paths live in `G_x`.
pub fn splice_alternating(g: &Graph, x: VertexId, p: &Path, q: &Path) -> Result<Cycle> {
    let ctx = Completion::new(g, x)?;
    let p = ctx.path_in_gx(p.vertices())?;
    let q = ctx.path_in_gx(q.vertices())?;
    ctx.splice(&p, &q)
}

/// Closes a proper pseudo-alternating path `y … u v … z` (with `u, v ∈ x̄`
/// consecutive) into `y … u z … v y`.
pub fn resolve_proper_pseudo(g: &Graph, x: VertexId, p: &Path) -> Result<Cycle> {
    let ctx = Completion::new(g, x)?;
    let p = ctx.path_in_gx(p.vertices())?;
    ctx.proper_pseudo(&p)
}

/// Closes a proper semi-alternating path of `G_x` into a cycle on the same
/// vertices whose new edges all belong to `G`.
pub fn resolve_proper_semi(g: &Graph, x: VertexId, p: &Path) -> Result<Cycle> {
    let ctx = Completion::new(g, x)?;
    let p = ctx.path_in_gx(p.vertices())?;
    ctx.proper_semi(&p)
}

/// Resolves an alternating path `p` given a cycle `c` on the same vertices.
///
/// Returns a cycle on `V(p)` using only edges of `p` and of `G` (kind
/// `Done` or `Reduced`, according to whether added edges remain), or a
/// cycle of `G_x` on one more vertex (kind `Extended`), which can only
/// happen when `c` is not a longest cycle of `G_x` on its vertex set.
pub fn resolve_alternating(g: &Graph, x: VertexId, p: &Path, c: &Cycle) -> Result<PullBackOutcome> {
    let ctx = Completion::new(g, x)?;
    let p = ctx.path_in_gx(p.vertices())?;
    let c = Cycle::new(&ctx.gx, c.vertices().to_vec())?;
    ctx.alternating(&p, &c).map(|(o, _)| o)
}

/// Turns a cycle of `G_x` into a cycle of `G` with at least as many
/// vertices; a longest cycle of `G_x` comes back on exactly its vertex set.
pub fn pull_back_cycle(g: &Graph, x: VertexId, c: &Cycle) -> Result<Cycle> {
    pull_back_cycle_traced(g, x, c).map(|(c, _)| c)
}

pub fn pull_back_cycle_traced(
    g: &Graph,
    x: VertexId,
    c: &Cycle,
) -> Result<(Cycle, Vec<TraceRecord>)> {
    g.check(x)?;
    g.require_connected()?;
    let ctx = Completion::new(g, x)?;
    ctx.require_n2()?;
    let mut cur = Cycle::new(&ctx.gx, c.vertices().to_vec())?;
    let mut trace = Vec::new();
    let n = g.n();
    let max_iter = n + ctx.bx_count(&cur) + 1;

    for _ in 0..=max_iter {
        let mut on_cycle: Vec<Edge> = cur.edges().filter(|&e| ctx.in_bx(e)).collect();
        if on_cycle.is_empty() {
            if !cur.is_valid_in(g) {
                return Err(Error::Invariant(
                    "pulled-back cycle is not a cycle of G".into(),
                ));
            }
            return Ok((cur, trace));
        }
        on_cycle.sort_unstable();
        let (y, z) = on_cycle[0];
        let before = (n - cur.len(), on_cycle.len());

        let missing = ctx.class.difference(&cur.vertex_set());
        let (next, rung, resolver, kind) = if let Some(xm) = missing.first() {
            // y C z x' y is longer than C.
            let k = cur.len();
            let vs = cur.vertices();
            let at = (0..k)
                .find(|&i| edge(vs[i], vs[(i + 1) % k]) == (y, z))
                .expect("chosen edge lies on the cycle");
            let mut seq = vs.to_vec();
            seq.insert(at + 1, xm);
            let next = Cycle::new(&ctx.gx, seq)
                .map_err(|e| Error::Invariant(format!("class insertion failed: {e}")))?;
            (next, None, Resolver::ClassInsertion, OutcomeKind::Extended)
        } else {
            // Rotate so the cycle reads y … z with zy closing it.
            let vs = cur.vertices();
            let k = vs.len();
            let py = vs.iter().position(|&v| v == y).unwrap();
            let oriented = if vs[(py + 1) % k] == z {
                cur.reversed().rotated(k - 1 - py)
            } else {
                cur.rotated(py)
            };
            debug_assert_eq!(oriented.vertices()[0], y);
            debug_assert_eq!(*oriented.vertices().last().unwrap(), z);
            let p = Path::from_trusted(oriented.vertices().to_vec());
            let ys = p.vertex_set().intersection(&ctx.nbhd);
            let rung = classify_unchecked(&p, &ctx.class, &ys).rung;
            let (next, resolver, kind) = match rung {
                Rung::NotPseudo => {
                    return Err(Error::Invariant(
                        "cut-open cycle is not pseudo-alternating: P(x̄) ⊄ x̄ ∪ Y".into(),
                    ))
                }
                Rung::ProperPseudo => {
                    let c2 = ctx.proper_pseudo(&p)?;
                    (c2, Resolver::ProperPseudo, OutcomeKind::Reduced)
                }
                Rung::ProperSemi => {
                    let c2 = ctx.proper_semi(&p)?;
                    (c2, Resolver::ProperSemi, OutcomeKind::Reduced)
                }
                Rung::Alternating => {
                    let (o, r) = ctx.alternating(&p, &oriented)?;
                    (o.cycle, r, o.kind)
                }
            };
            (next, Some(rung), resolver, kind)
        };

        let remaining = ctx.bx_count(&next);
        let kind = match kind {
            OutcomeKind::Extended => OutcomeKind::Extended,
            _ if remaining == 0 => OutcomeKind::Done,
            _ => OutcomeKind::Reduced,
        };
        let after = (n - next.len(), remaining);
        if after >= before {
            return Err(Error::Invariant("pull-back step made no progress".into()));
        }
        trace.push(TraceRecord {
            chosen_edge: (y, z),
            rung,
            resolver,
            outcome: kind,
            cycle: next.clone(),
        });
        cur = next;
    }
    Err(Error::Invariant(
        "pull-back exceeded its iteration bound".into(),
    ))
}
