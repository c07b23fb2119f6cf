//! A small dense simplex for covering-type programs
//!
//! ```text
//! minimize    c . x
//! subject to  A x >= b,  x >= 0
//! ```
//!
//! The solver works on the dual `max b . y  s.t.  A^T y <= c, y >= 0`, which
//! has one row per variable and one column per constraint. Cutting-plane
//! loops add constraints, so this keeps the tableau as narrow as the label
//! set. When `c >= 0` the slack basis is feasible and phase one is skipped.
//! The primal optimum is read off the reduced costs of the dual slacks.
//! Pivoting uses Bland's rule throughout.

use crate::error::{Error, Result};

/// `coefficients . x >= rhs`
#[derive(Debug, Clone, PartialEq)]
pub struct Constraint {
    pub coefficients: Vec<f64>,
    pub rhs: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub value: f64,
    pub point: Vec<f64>,
    pub pivots: usize,
}

const PIVOT_EPS: f64 = 1e-11;
const COST_EPS: f64 = 1e-10;
const MAX_PIVOTS: usize = 1_000_000;

struct Tableau {
    rows: usize,
    cols: usize,
    // rows x (cols + 1); last column is the right-hand side
    a: Vec<f64>,
    // reduced costs, last entry is minus the objective value
    cost: Vec<f64>,
    basis: Vec<usize>,
    pivots: usize,
}

impl Tableau {
    fn at(&self, r: usize, c: usize) -> f64 {
        self.a[r * (self.cols + 1) + c]
    }

    fn rhs(&self, r: usize) -> f64 {
        self.at(r, self.cols)
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let w = self.cols + 1;
        let p = self.a[r * w + c];
        for x in &mut self.a[r * w..(r + 1) * w] {
            *x /= p;
        }
        let pivot_row: Vec<f64> = self.a[r * w..(r + 1) * w].to_vec();
        for i in 0..self.rows {
            if i == r {
                continue;
            }
            let f = self.a[i * w + c];
            if f != 0.0 {
                for (x, &y) in self.a[i * w..(i + 1) * w].iter_mut().zip(&pivot_row) {
                    *x -= f * y;
                }
                self.a[i * w + c] = 0.0;
            }
        }
        let f = self.cost[c];
        if f != 0.0 {
            for (x, &y) in self.cost.iter_mut().zip(&pivot_row) {
                *x -= f * y;
            }
            self.cost[c] = 0.0;
        }
        self.basis[r] = c;
        self.pivots += 1;
    }

    /// Sets reduced costs for the given column costs under the current basis.
    fn price(&mut self, costs: &[f64]) {
        self.cost = costs.to_vec();
        self.cost.push(0.0);
        for r in 0..self.rows {
            let cb = costs[self.basis[r]];
            if cb != 0.0 {
                for c in 0..=self.cols {
                    self.cost[c] -= cb * self.at(r, c);
                }
            }
        }
    }

    /// Minimizes with Bland's rule over columns where `allowed` is true.
    fn optimize(&mut self, allowed: &[bool]) -> Result<()> {
        loop {
            let Some(enter) = (0..self.cols).find(|&c| allowed[c] && self.cost[c] < -COST_EPS)
            else {
                return Ok(());
            };
            let mut leave: Option<(usize, f64)> = None;
            for r in 0..self.rows {
                let coef = self.at(r, enter);
                if coef <= PIVOT_EPS {
                    continue;
                }
                let ratio = self.rhs(r) / coef;
                leave = match leave {
                    None => Some((r, ratio)),
                    Some((br, bratio)) => {
                        let tie = (ratio - bratio).abs() <= 1e-12 * (1.0 + bratio.abs());
                        if ratio < bratio && !tie || tie && self.basis[r] < self.basis[br] {
                            Some((r, ratio))
                        } else {
                            Some((br, bratio))
                        }
                    }
                };
            }
            let Some((r, _)) = leave else {
                return Err(Error::Unbounded);
            };
            if self.pivots >= MAX_PIVOTS {
                return Err(Error::Resource {
                    guard: "simplex-pivots",
                    detail: format!("{MAX_PIVOTS} pivots without reaching optimality"),
                });
            }
            self.pivot(r, enter);
        }
    }
}

/// Solves `min c.x  s.t.  A x >= b, x >= 0`.
///
/// Fails with [`Error::Infeasible`] when no `x` satisfies the constraints and
/// [`Error::Unbounded`] when the objective has no lower bound.
pub fn lp_solve_dense(objective: &[f64], constraints: &[Constraint]) -> Result<LpSolution> {
    let n = objective.len();
    let m = constraints.len();
    if let Some(bad) = constraints.iter().find(|c| c.coefficients.len() != n) {
        return Err(Error::input(format!(
            "constraint has {} coefficients for {n} variables",
            bad.coefficients.len()
        )));
    }
    if objective.iter().chain(constraints.iter().flat_map(|c| &c.coefficients)).any(|x| !x.is_finite())
        || constraints.iter().any(|c| !c.rhs.is_finite())
    {
        return Err(Error::input("non-finite data in the linear program"));
    }

    // Dual rows j = 0..n:  sum_i A[i][j] y_i + s_j = c_j.
    // Columns: y_0..y_{m-1}, s_0..s_{n-1}, then artificials for rows with c_j < 0.
    let needs_art: Vec<usize> = (0..n).filter(|&j| objective[j] < 0.0).collect();
    let cols = m + n + needs_art.len();
    let w = cols + 1;
    let mut a = vec![0.0; n * w];
    let mut basis = vec![0; n];
    for j in 0..n {
        let sign = if objective[j] < 0.0 { -1.0 } else { 1.0 };
        for (i, con) in constraints.iter().enumerate() {
            a[j * w + i] = sign * con.coefficients[j];
        }
        a[j * w + m + j] = sign;
        a[j * w + cols] = sign * objective[j];
        basis[j] = m + j;
    }
    for (t, &j) in needs_art.iter().enumerate() {
        a[j * w + m + n + t] = 1.0;
        basis[j] = m + n + t;
    }
    let mut tab = Tableau {
        rows: n,
        cols,
        a,
        cost: Vec::new(),
        basis,
        pivots: 0,
    };

    let is_art = |c: usize| c >= m + n;
    if !needs_art.is_empty() {
        let phase1: Vec<f64> = (0..cols).map(|c| if is_art(c) { 1.0 } else { 0.0 }).collect();
        tab.price(&phase1);
        tab.optimize(&vec![true; cols])?;
        if -tab.cost[cols] > 1e-9 {
            // the dual is infeasible, so the primal is unbounded (or infeasible)
            return Err(Error::Unbounded);
        }
        // drive zero-level artificials out where possible
        for r in 0..n {
            if is_art(tab.basis[r]) {
                if let Some(c) = (0..m + n).find(|&c| tab.at(r, c).abs() > PIVOT_EPS) {
                    tab.pivot(r, c);
                }
            }
        }
    }

    // maximize b.y  ==  minimize -b.y
    let phase2: Vec<f64> = (0..cols).map(|c| if c < m { -constraints[c].rhs } else { 0.0 }).collect();
    tab.price(&phase2);
    let allowed: Vec<bool> = (0..cols).map(|c| !is_art(c)).collect();
    match tab.optimize(&allowed) {
        Err(Error::Unbounded) => return Err(Error::Infeasible),
        other => other?,
    }

    // x_j is the reduced cost of dual slack s_j.
    let point: Vec<f64> = (0..n).map(|j| tab.cost[m + j].max(0.0)).collect();
    let value = objective.iter().zip(&point).map(|(c, x)| c * x).sum();
    Ok(LpSolution {
        value,
        point,
        pivots: tab.pivots,
    })
}
