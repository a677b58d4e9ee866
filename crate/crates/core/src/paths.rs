//! Pseudo-, semi- and fully alternating paths.
//!
//! Given a path `P` and disjoint vertex sets `X`, `Y` inside `V(P)` with both
//! endpoints in `Y`:
//!
//! * pseudo-alternating: path-neighbours of `X` stay in `X ∪ Y`;
//! * semi-alternating: path-neighbours of `X` stay in `Y`;
//! * alternating: additionally path-neighbours of `Y` stay in `X`.
//!
//! The ladder is nested, so a classification reports the highest rung reached.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{Graph, Path, VertexId, VertexSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rung {
    NotPseudo,
    ProperPseudo,
    ProperSemi,
    Alternating,
}

impl Rung {
    pub fn is_pseudo(self) -> bool {
        self >= Rung::ProperPseudo
    }

    pub fn is_semi(self) -> bool {
        self >= Rung::ProperSemi
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Rung::NotPseudo => "NOT_PSEUDO",
            Rung::ProperPseudo => "PROPER_PSEUDO",
            Rung::ProperSemi => "PROPER_SEMI",
            Rung::Alternating => "ALTERNATING",
        }
    }
}

impl fmt::Display for Rung {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The first adjacency (in path order) that keeps the path off the next rung.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathWitness {
    EndpointOutsideY(VertexId),
    XNeighborOutside { x: VertexId, neighbor: VertexId },
    XContact { x: VertexId, neighbor: VertexId },
    YNeighborOutsideX { y: VertexId, neighbor: VertexId },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PathClassification {
    pub rung: Rung,
    pub witness: Option<PathWitness>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlternatingDecomposition {
    pub y_order: Vec<VertexId>,
    pub x_order: Vec<VertexId>,
}

impl AlternatingDecomposition {
    /// `y₀ x₀ y₁ … x_{n-1} y_n`.
    pub fn interleave(&self) -> Vec<VertexId> {
        let mut out = Vec::with_capacity(self.y_order.len() + self.x_order.len());
        for (i, &y) in self.y_order.iter().enumerate() {
            out.push(y);
            if let Some(&x) = self.x_order.get(i) {
                out.push(x);
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountingReport {
    pub semi: bool,
    /// `|X| < |Y| - σ_P(Y)`.
    pub bound1_holds: bool,
    /// Semi-alternating and some vertex of the path lies outside `X ∪ Y`.
    pub bound2_applicable: bool,
    /// `|X| < |Y| - 1`.
    pub bound2_holds: bool,
}

pub fn classify_path(
    g: &Graph,
    p: &Path,
    xs: &VertexSet,
    ys: &VertexSet,
) -> Result<PathClassification> {
    for w in p.vertices().windows(2) {
        g.check(w[0])?;
        g.check(w[1])?;
        if !g.adjacent(w[0], w[1]) {
            return Err(Error::InvalidPath(format!(
                "`{}`-`{}` is not an edge",
                g.label(w[0]),
                g.label(w[1])
            )));
        }
    }
    if !xs.is_disjoint(ys) {
        return Err(Error::Precondition("X and Y must be disjoint".into()));
    }
    let vp = p.vertex_set();
    if !xs.is_subset(&vp) || !ys.is_subset(&vp) {
        return Err(Error::Precondition("X and Y must lie on the path".into()));
    }
    Ok(classify_unchecked(p, xs, ys))
}

/// Classification without set-validity checks; callers guarantee `X`, `Y`
/// are disjoint subsets of `V(P)`.
pub(crate) fn classify_unchecked(p: &Path, xs: &VertexSet, ys: &VertexSet) -> PathClassification {
    let not_pseudo = |w| PathClassification {
        rung: Rung::NotPseudo,
        witness: Some(w),
    };
    for end in [p.start(), p.end()] {
        if !ys.contains(end) {
            return not_pseudo(PathWitness::EndpointOutsideY(end));
        }
    }
    let vs = p.vertices();
    let mut contact = None;
    for (i, &x) in vs.iter().enumerate() {
        if !xs.contains(x) {
            continue;
        }
        for nb in p.path_neighbors(i) {
            if xs.contains(nb) {
                contact.get_or_insert(PathWitness::XContact { x, neighbor: nb });
            } else if !ys.contains(nb) {
                return not_pseudo(PathWitness::XNeighborOutside { x, neighbor: nb });
            }
        }
    }
    if contact.is_some() {
        return PathClassification {
            rung: Rung::ProperPseudo,
            witness: contact,
        };
    }
    for (i, &y) in vs.iter().enumerate() {
        if !ys.contains(y) {
            continue;
        }
        if let Some(nb) = p.path_neighbors(i).find(|&nb| !xs.contains(nb)) {
            return PathClassification {
                rung: Rung::ProperSemi,
                witness: Some(PathWitness::YNeighborOutsideX { y, neighbor: nb }),
            };
        }
    }
    PathClassification {
        rung: Rung::Alternating,
        witness: None,
    }
}

pub fn alternating_decomposition(
    p: &Path,
    xs: &VertexSet,
    ys: &VertexSet,
) -> Result<AlternatingDecomposition> {
    let vp = p.vertex_set();
    if !xs.is_disjoint(ys) || !xs.is_subset(&vp) || !ys.is_subset(&vp) {
        return Err(Error::Precondition(
            "X and Y must be disjoint subsets of the path".into(),
        ));
    }
    if classify_unchecked(p, xs, ys).rung != Rung::Alternating {
        return Err(Error::Precondition("path is not YX-alternating".into()));
    }
    let vs = p.vertices();
    let y_order: Vec<_> = vs.iter().step_by(2).copied().collect();
    let x_order: Vec<_> = vs.iter().skip(1).step_by(2).copied().collect();
    debug_assert_eq!(x_order.len() + 1, y_order.len());
    Ok(AlternatingDecomposition { y_order, x_order })
}

/// Evaluates both counting bounds for semi-alternating paths. Never fails:
/// inputs that are not semi-alternating (including overlapping or
/// off-path sets) report `semi = false`.
pub fn check_counting_bounds(p: &Path, xs: &VertexSet, ys: &VertexSet) -> CountingReport {
    let vp = p.vertex_set();
    let valid = xs.is_disjoint(ys) && xs.is_subset(&vp) && ys.is_subset(&vp);
    let semi = valid && classify_unchecked(p, xs, ys).rung.is_semi();
    let x = xs.len() as i64;
    let y = ys.len() as i64;
    let outside = vp.iter().any(|v| !xs.contains(v) && !ys.contains(v));
    CountingReport {
        semi,
        bound1_holds: x < y - p.sigma(ys) as i64,
        bound2_applicable: semi && outside,
        bound2_holds: x < y - 1,
    }
}
