//! Hamiltonicity-preserving graph closure by local completion.
//!
//! Local completion at a vertex `x` turns the closed neighbourhood `N[x]`
//! into a clique. At N2-eligible vertices this never changes the length of
//! a longest cycle, and [`reconstruct::pull_back_cycle`] makes that concrete
//! by rewriting any cycle of the completed graph into a cycle of the
//! original one. Repeating the completion until no N2-eligible vertex is
//! left gives the N2-closure ([`closure::n2_closure`]), which is Hamiltonian
//! exactly when the input is.
//!
//! The [`oracle`] module provides exact longest-cycle and Hamilton-cycle
//! search for small graphs, used to check all of the above.

pub mod cli;
pub mod closure;
pub mod edgelist;
pub mod eligibility;
pub mod error;
pub mod graph;
pub mod oracle;
pub mod paths;
pub mod reconstruct;

pub use closure::{
    compare_closures, n2_closure, n2_eligible_set, n_closure, ChoiceStrategy, ClosureTrace,
    CompletionStep,
};
pub use eligibility::{
    chi_k, classify_vertex, local_completion, CompletionResult, EligibilityReport,
};
pub use error::{Error, Result};
pub use graph::{edge, Cycle, Edge, Graph, Path, VertexId, VertexSet};
pub use paths::{
    alternating_decomposition, check_counting_bounds, classify_path, PathClassification, Rung,
};
pub use reconstruct::{pull_back_cycle, OutcomeKind, PullBackOutcome};
