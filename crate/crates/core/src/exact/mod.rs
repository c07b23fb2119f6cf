//! Exact minimum label cuts and a flow-based upper bound.

mod bnb;
mod exhaustive;
mod mincut;

pub use bnb::{min_label_cut_bnb, min_label_cut_bnb_limited};
pub use exhaustive::{min_label_cut_exhaustive, min_label_cut_exhaustive_limited};
pub use mincut::label_cut_upper_bound_via_min_cut;

use serde::Serialize;

use crate::graph::LabelSubset;

/// Default guard for both exact solvers: subsets per enumeration level, or
/// search nodes for branch and bound.
pub const DEFAULT_EXACT_GUARD: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CutMethod {
    Exhaustive,
    BranchAndBound,
    MinCut,
}

impl std::fmt::Display for CutMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CutMethod::Exhaustive => "exhaustive",
            CutMethod::BranchAndBound => "bnb",
            CutMethod::MinCut => "min-cut",
        })
    }
}

/// A label cut together with how it was found. For the exact methods `size`
/// is the optimum and `witness` the lexicographically smallest optimal set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CutResult {
    pub size: usize,
    pub witness: LabelSubset,
    pub method: CutMethod,
    /// Subsets tested, search nodes, or augmenting paths, by method.
    pub nodes: u64,
}

/// Result of a capped exact search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum ExactOutcome {
    Optimal(CutResult),
    /// Every label set of size at most `cap` leaves s and t connected.
    AboveCap { cap: usize, nodes: u64 },
}

impl ExactOutcome {
    pub fn optimal(&self) -> Option<&CutResult> {
        match self {
            ExactOutcome::Optimal(r) => Some(r),
            ExactOutcome::AboveCap { .. } => None,
        }
    }
}
