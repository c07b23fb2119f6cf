use std::fmt::Write as _;

use serde::Serialize;

use super::separation::{
    separate_lp1, separate_lp2_gadget, separate_lp2_generic, PathConstraint, Relaxation,
    DEFAULT_NODE_LIMIT,
};
use super::simplex::{lp_solve_dense, Constraint};
use super::FractionalLabeling;
use crate::error::{Error, Result};
use crate::generators::PermutationTable;
use crate::graph::Instance;

/// Which separation routine answers for the distinct-label relaxation. The
/// edge-weighted relaxation always uses shortest paths.
#[derive(Debug, Clone, Copy)]
pub enum Lp2Oracle<'a> {
    Generic,
    Gadget(&'a PermutationTable),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CuttingPlaneOptions {
    /// A path is violated when its weight is below `1 - tol`.
    pub tol: f64,
    pub max_cuts: usize,
    /// Node guard for the generic distinct-label search, per call.
    pub node_limit: u64,
}

impl Default for CuttingPlaneOptions {
    fn default() -> Self {
        CuttingPlaneOptions {
            tol: 1e-7,
            max_cuts: 100_000,
            node_limit: DEFAULT_NODE_LIMIT,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RelaxationResult {
    pub variant: Relaxation,
    pub value: f64,
    pub labeling: FractionalLabeling,
    /// Every cut generated, in order.
    pub cuts: Vec<PathConstraint>,
    /// Indices into `cuts` of the constraints tight at the optimum.
    pub active: Vec<usize>,
    /// Separation rounds, including the final one that found nothing.
    pub iterations: usize,
}

/// Runs one separation round for `variant`.
pub fn separate(
    instance: &Instance,
    variant: Relaxation,
    oracle: Lp2Oracle<'_>,
    x: &FractionalLabeling,
    opts: &CuttingPlaneOptions,
) -> Result<Option<PathConstraint>> {
    match (variant, oracle) {
        (Relaxation::Lp1, _) => separate_lp1(instance, x, opts.tol),
        (Relaxation::Lp2, Lp2Oracle::Generic) => separate_lp2_generic(instance, x, opts.tol, opts.node_limit),
        (Relaxation::Lp2, Lp2Oracle::Gadget(table)) => separate_lp2_gadget(instance, table, x, opts.tol),
    }
}

/// Minimizes `sum_l x_l` over the path constraints of `variant`, generating
/// constraints lazily: solve the current restricted program, ask the oracle
/// for a violated path, add it, repeat until the oracle finds none.
pub fn solve_relaxation(
    instance: &Instance,
    variant: Relaxation,
    oracle: Lp2Oracle<'_>,
    opts: &CuttingPlaneOptions,
) -> Result<RelaxationResult> {
    let q = instance.label_count();
    let objective = vec![1.0; q];
    let mut cuts: Vec<PathConstraint> = Vec::new();
    let mut rows: Vec<Constraint> = Vec::new();
    let mut x = FractionalLabeling::zeros(q);
    let mut iterations = 0;
    loop {
        iterations += 1;
        let Some(cut) = separate(instance, variant, oracle, &x, opts)? else {
            break;
        };
        if cuts.iter().any(|c| c.coefficients == cut.coefficients) {
            return Err(Error::Resource {
                guard: "cut-stall",
                detail: format!(
                    "oracle returned an existing cut (weight {}) after {} cuts",
                    cut.weight,
                    cuts.len()
                ),
            });
        }
        if cuts.len() >= opts.max_cuts {
            return Err(Error::Resource {
                guard: "max-cuts",
                detail: format!("{} cuts without convergence", opts.max_cuts),
            });
        }
        rows.push(Constraint {
            coefficients: cut.dense(q),
            rhs: 1.0,
        });
        cuts.push(cut);
        let sol = lp_solve_dense(&objective, &rows)?;
        x = FractionalLabeling::new(sol.point)?;
    }
    let value = x.objective();
    let active = cuts
        .iter()
        .enumerate()
        .filter(|(_, c)| (c.lhs(x.as_slice()) - 1.0).abs() <= 1e-9)
        .map(|(i, _)| i)
        .collect();
    Ok(RelaxationResult {
        variant,
        value,
        labeling: x,
        cuts,
        active,
        iterations,
    })
}

/// Writes the objective and the generated cuts in CPLEX LP text form.
pub fn to_lp_format(q: usize, variant: Relaxation, cuts: &[PathConstraint]) -> String {
    let mut out = String::new();
    let name = match variant {
        Relaxation::Lp1 => "lp1",
        Relaxation::Lp2 => "lp2",
    };
    writeln!(out, "\\ labelcut {name} relaxation, {} generated cuts", cuts.len()).unwrap();
    writeln!(out, "Minimize").unwrap();
    let terms: Vec<String> = (0..q).map(|l| format!("x{l}")).collect();
    writeln!(out, " obj: {}", if q == 0 { "0".into() } else { terms.join(" + ") }).unwrap();
    writeln!(out, "Subject To").unwrap();
    for (i, cut) in cuts.iter().enumerate() {
        let lhs: Vec<String> = cut
            .coefficients
            .iter()
            .map(|&(l, c)| if c == 1 { format!("x{l}") } else { format!("{c} x{l}") })
            .collect();
        writeln!(out, " p{i}: {} >= 1", lhs.join(" + ")).unwrap();
    }
    writeln!(out, "Bounds").unwrap();
    for l in 0..q {
        writeln!(out, " x{l} >= 0").unwrap();
    }
    writeln!(out, "End").unwrap();
    out
}
