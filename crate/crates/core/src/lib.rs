//! Workbench for the minimum label s-t cut problem.
//!
//! An [`Instance`] is a graph whose edges each carry one label. A set of
//! labels is a *label cut* when deleting every edge with one of those
//! labels disconnects the source from the sink. This crate builds the
//! shutter instances on which the natural path relaxations are far from the
//! integral optimum, solves those relaxations by cutting planes, computes
//! exact optima, and evaluates the probability and counting bounds behind
//! the gap argument.
//!
//! ```
//! use labelcut::{exact, generators, lp};
//!
//! let g = generators::make_path_instance(20).unwrap();
//! let opt = exact::min_label_cut_bnb(&g).unwrap();
//! let lp1 = lp::solve_relaxation(&g, lp::Relaxation::Lp1, lp::Lp2Oracle::Generic, &Default::default()).unwrap();
//! assert_eq!(opt.size, 1);
//! assert!((lp1.value - 0.05).abs() < 1e-9);
//! ```

pub mod analysis;
mod error;
pub mod exact;
pub mod format;
pub mod generators;
mod graph;
pub mod lp;

pub use error::{Error, Result};
pub use graph::{is_label_cut, path_labels, Edge, Instance, LabelId, LabelSubset, StPath, VertexId};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/instances.md")]
    mod instances {}
    #[doc = include_str!("../../../book/src/gadget.md")]
    mod gadget {}
    #[doc = include_str!("../../../book/src/relaxations.md")]
    mod relaxations {}
    #[doc = include_str!("../../../book/src/exact.md")]
    mod exact {}
    #[doc = include_str!("../../../book/src/bounds.md")]
    mod bounds {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
