//! Separation oracles for the two path relaxations.
//!
//! Given a fractional labeling `x`, each oracle finds the s-t path of least
//! weight and reports it as a violated constraint when that weight is below
//! `1 - tol`. Ties between minimum paths are broken towards the
//! lexicographically smallest vertex sequence (the edge-weighted oracle
//! first prefers fewer edges, see [`min_weight_path_lp1`]).

use std::cmp::Ordering;
use std::collections::{BinaryHeap, VecDeque};

use serde::Serialize;

use super::FractionalLabeling;
use crate::error::{Error, Result};
use crate::generators::{shutter_pairs, GadgetLabel, GadgetLayout, PermutationTable};
use crate::graph::{Instance, LabelId, StPath};

/// Default node guard of the generic distinct-label search.
pub const DEFAULT_NODE_LIMIT: u64 = 10_000_000;

// Weights that agree to this relative precision count as ties.
const TIE_EPS: f64 = 1e-12;

/// Which relaxation a path constraint belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Relaxation {
    /// One coefficient per edge: `sum_{e in P} x_{l(e)} >= 1`.
    Lp1,
    /// One coefficient per distinct label: `sum_{l in L(P)} x_l >= 1`.
    Lp2,
}

/// A path constraint `sum coef_l x_l >= 1`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PathConstraint {
    pub path: StPath,
    /// `(label, coefficient)` sorted by label, coefficients positive.
    pub coefficients: Vec<(LabelId, u32)>,
    /// Left-hand side at the labeling that produced the cut.
    pub weight: f64,
}

impl PathConstraint {
    pub fn new(instance: &Instance, path: StPath, variant: Relaxation, x: &[f64]) -> Self {
        let mut counts = vec![0u32; instance.label_count()];
        for &ei in path.edges() {
            counts[instance.edges()[ei].label] += 1;
        }
        let coefficients: Vec<(LabelId, u32)> = counts
            .into_iter()
            .enumerate()
            .filter(|&(_, c)| c > 0)
            .map(|(l, c)| match variant {
                Relaxation::Lp1 => (l, c),
                Relaxation::Lp2 => (l, 1),
            })
            .collect();
        let weight = coefficients.iter().map(|&(l, c)| c as f64 * x[l]).sum();
        PathConstraint {
            path,
            coefficients,
            weight,
        }
    }

    pub fn dense(&self, q: usize) -> Vec<f64> {
        let mut row = vec![0.0; q];
        for &(l, c) in &self.coefficients {
            row[l] = c as f64;
        }
        row
    }

    pub fn lhs(&self, x: &[f64]) -> f64 {
        self.coefficients.iter().map(|&(l, c)| c as f64 * x[l]).sum()
    }
}

/// A minimum-weight path and its weight.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightedPath {
    pub path: StPath,
    pub weight: f64,
}

fn check_labeling(instance: &Instance, x: &FractionalLabeling) -> Result<()> {
    if x.len() != instance.label_count() {
        return Err(Error::input(format!(
            "labeling has {} entries for {} labels",
            x.len(),
            instance.label_count()
        )));
    }
    if x.as_slice().iter().any(|v| !(v.is_finite() && *v >= 0.0)) {
        return Err(Error::input("labeling entries must be finite and nonnegative"));
    }
    Ok(())
}

#[derive(Clone, Copy, PartialEq)]
struct Key {
    weight: f64,
    hops: usize,
    vertex: usize,
}

impl Eq for Key {}

impl Ord for Key {
    // min-heap order on (weight, hops, vertex)
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .weight
            .total_cmp(&self.weight)
            .then(other.hops.cmp(&self.hops))
            .then(other.vertex.cmp(&self.vertex))
    }
}

impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Shortest s-t path under edge weights `x_{l(e)}`.
///
/// Runs Dijkstra backwards from the sink keyed on `(weight, edge count)`,
/// then walks forward from the source taking the smallest-id neighbor that
/// stays on a tight edge. The result minimizes weight, then edge count, then
/// the vertex sequence lexicographically.
pub fn min_weight_path_lp1(instance: &Instance, x: &FractionalLabeling) -> Result<WeightedPath> {
    check_labeling(instance, x)?;
    let n = instance.vertex_count();
    let x = x.as_slice();
    let mut dist = vec![f64::INFINITY; n];
    let mut hops = vec![usize::MAX; n];
    let mut done = vec![false; n];
    let mut heap = BinaryHeap::new();
    let t = instance.sink();
    dist[t] = 0.0;
    hops[t] = 0;
    heap.push(Key {
        weight: 0.0,
        hops: 0,
        vertex: t,
    });
    while let Some(Key { weight, hops: h, vertex: v }) = heap.pop() {
        if done[v] {
            continue;
        }
        done[v] = true;
        for &(u, ei) in instance.in_neighbors(v) {
            let nw = weight + x[instance.edges()[ei].label];
            let nh = h + 1;
            if nw < dist[u] || nw == dist[u] && nh < hops[u] {
                dist[u] = nw;
                hops[u] = nh;
                heap.push(Key {
                    weight: nw,
                    hops: nh,
                    vertex: u,
                });
            }
        }
    }
    let s = instance.source();
    if !dist[s].is_finite() {
        return Err(Error::Disconnected);
    }
    let mut edges = Vec::with_capacity(hops[s]);
    let mut u = s;
    while u != t {
        let tol = TIE_EPS * (1.0 + dist[u]);
        let &(v, ei) = instance
            .neighbors(u)
            .iter()
            .find(|&&(v, ei)| {
                hops[v] != usize::MAX
                    && hops[v] + 1 == hops[u]
                    && (dist[v] + x[instance.edges()[ei].label] - dist[u]).abs() <= tol
            })
            .expect("a tight edge leaves every settled vertex");
        edges.push(ei);
        u = v;
    }
    let path = StPath::from_edges(instance, edges)?;
    Ok(WeightedPath {
        path,
        weight: dist[s],
    })
}

/// The most violated edge-weighted path constraint, if any.
pub fn separate_lp1(instance: &Instance, x: &FractionalLabeling, tol: f64) -> Result<Option<PathConstraint>> {
    let best = min_weight_path_lp1(instance, x)?;
    Ok((best.weight < 1.0 - tol)
        .then(|| PathConstraint::new(instance, best.path, Relaxation::Lp1, x.as_slice())))
}

struct DistinctSearch<'a> {
    instance: &'a Instance,
    x: &'a [f64],
    can_reach_sink: Vec<bool>,
    visited: Vec<bool>,
    paid: Vec<u32>,
    stack: Vec<usize>,
    best: Option<(f64, Vec<usize>)>,
    nodes: u64,
    node_limit: u64,
}

impl DistinctSearch<'_> {
    fn improves(&self, w: f64) -> bool {
        match &self.best {
            None => true,
            Some((b, _)) => w < b - TIE_EPS * (1.0 + b),
        }
    }

    fn visit(&mut self, u: usize, weight: f64) -> Result<()> {
        if u == self.instance.sink() {
            if self.improves(weight) {
                self.best = Some((weight, self.stack.clone()));
            }
            return Ok(());
        }
        for &(v, ei) in self.instance.neighbors(u) {
            if self.visited[v] || !self.can_reach_sink[v] {
                continue;
            }
            let label = self.instance.edges()[ei].label;
            let w = if self.paid[label] == 0 { weight + self.x[label] } else { weight };
            if !self.improves(w) {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.node_limit {
                return Err(Error::Resource {
                    guard: "lp2-search-nodes",
                    detail: format!("distinct-label path search passed {} nodes", self.node_limit),
                });
            }
            self.visited[v] = true;
            self.paid[label] += 1;
            self.stack.push(ei);
            self.visit(v, w)?;
            self.stack.pop();
            self.paid[label] -= 1;
            self.visited[v] = false;
            if matches!(self.best, Some((b, _)) if b == 0.0) {
                // nothing beats zero; the first zero path is lexicographically least
                return Ok(());
            }
        }
        Ok(())
    }
}

fn reaches_sink(instance: &Instance) -> Vec<bool> {
    let mut seen = vec![false; instance.vertex_count()];
    let mut queue = VecDeque::from([instance.sink()]);
    seen[instance.sink()] = true;
    while let Some(v) = queue.pop_front() {
        for &(u, _) in instance.in_neighbors(v) {
            if !seen[u] {
                seen[u] = true;
                queue.push_back(u);
            }
        }
    }
    seen
}

/// Minimum over simple s-t paths of `sum_{l in L(P)} x_l`, by depth-first
/// branch and bound. A partial path is dropped as soon as the labels it has
/// already paid for reach the incumbent. Exponential in the worst case;
/// `node_limit` bounds the number of path extensions tried.
pub fn min_weight_path_lp2_generic(
    instance: &Instance,
    x: &FractionalLabeling,
    node_limit: u64,
) -> Result<WeightedPath> {
    check_labeling(instance, x)?;
    let can_reach_sink = reaches_sink(instance);
    let s = instance.source();
    if !can_reach_sink[s] {
        return Err(Error::Disconnected);
    }
    let mut search = DistinctSearch {
        instance,
        x: x.as_slice(),
        can_reach_sink,
        visited: vec![false; instance.vertex_count()],
        paid: vec![0; instance.label_count()],
        stack: Vec::new(),
        best: None,
        nodes: 0,
        node_limit,
    };
    search.visited[s] = true;
    search.visit(s, 0.0)?;
    let (weight, edges) = search.best.expect("the sink is reachable");
    Ok(WeightedPath {
        path: StPath::from_edges(instance, edges)?,
        weight,
    })
}

/// The most violated distinct-label path constraint on any instance.
pub fn separate_lp2_generic(
    instance: &Instance,
    x: &FractionalLabeling,
    tol: f64,
    node_limit: u64,
) -> Result<Option<PathConstraint>> {
    let best = min_weight_path_lp2_generic(instance, x, node_limit)?;
    Ok((best.weight < 1.0 - tol)
        .then(|| PathConstraint::new(instance, best.path, Relaxation::Lp2, x.as_slice())))
}

/// Confirms that `instance` is the gap instance laid out by `table`.
pub fn check_gadget(instance: &Instance, table: &PermutationTable) -> Result<GadgetLayout> {
    let layout = GadgetLayout {
        k: table.k(),
        d: table.d(),
        h: table.h(),
    };
    if instance.vertex_count() != layout.vertex_count()
        || instance.edge_count() != layout.edge_count()
        || instance.label_count() != layout.k * layout.d
        || instance.source() != 0
        || instance.sink() != 1
    {
        return Err(Error::input("instance does not have the layout its gadget metadata describes"));
    }
    let d = layout.d;
    for (idx, (mu, nu)) in shutter_pairs(layout.k).into_iter().enumerate() {
        for i in 1..=layout.h {
            let sigma = table.get(mu, nu, i);
            let first = layout.chain_first_edge(idx, i);
            for j in 1..=d {
                let e = &instance.edges()[first + 4 * (j - 1)..first + 4 * j];
                let dv = layout.diamond(idx, i, j);
                let top = GadgetLabel::new(mu, j).id(d);
                let bottom = GadgetLabel::new(nu, sigma.apply(j)).id(d);
                let ok = (e[0].u, e[0].v, e[0].label) == (dv.left, dv.top, top)
                    && (e[1].u, e[1].v, e[1].label) == (dv.top, dv.right, top)
                    && (e[2].u, e[2].v, e[2].label) == (dv.left, dv.bottom, bottom)
                    && (e[3].u, e[3].v, e[3].label) == (dv.bottom, dv.right, bottom);
                if !ok {
                    return Err(Error::input(format!(
                        "diamond {j} of chain {i} in shutter ({mu},{nu}) disagrees with the metadata"
                    )));
                }
            }
        }
    }
    Ok(layout)
}

/// Minimum distinct-label path on a gap instance, in closed form.
///
/// Every path runs through one chain and crosses each diamond by its top or
/// its bottom. All labels along a chain are distinct, so the cheapest path
/// in chain `(mu, nu, i)` costs `sum_j min(x_(mu,j), x_(nu,sigma(j)))`.
pub fn min_weight_path_lp2_gadget(
    instance: &Instance,
    table: &PermutationTable,
    x: &FractionalLabeling,
) -> Result<WeightedPath> {
    check_labeling(instance, x)?;
    let layout = check_gadget(instance, table)?;
    let x = x.as_slice();
    let d = layout.d;
    let mut best: Option<(f64, usize, usize, usize, usize)> = None;
    for (idx, (mu, nu)) in shutter_pairs(layout.k).into_iter().enumerate() {
        for i in 1..=layout.h {
            let sigma = table.get(mu, nu, i);
            let w: f64 = (1..=d)
                .map(|j| x[GadgetLabel::new(mu, j).id(d)].min(x[GadgetLabel::new(nu, sigma.apply(j)).id(d)]))
                .sum();
            let better = match best {
                None => true,
                Some((b, ..)) => w < b - TIE_EPS * (1.0 + b),
            };
            if better {
                best = Some((w, idx, i, mu, nu));
            }
        }
    }
    let (weight, idx, i, mu, nu) = best.expect("a gap instance has at least one chain");
    let sigma = table.get(mu, nu, i);
    let first = layout.chain_first_edge(idx, i);
    let mut edges = Vec::with_capacity(2 * d);
    for j in 1..=d {
        let top = x[GadgetLabel::new(mu, j).id(d)];
        let bottom = x[GadgetLabel::new(nu, sigma.apply(j)).id(d)];
        let base = first + 4 * (j - 1);
        // the top middle vertex has the smaller id
        if top <= bottom {
            edges.extend([base, base + 1]);
        } else {
            edges.extend([base + 2, base + 3]);
        }
    }
    Ok(WeightedPath {
        path: StPath::from_edges(instance, edges)?,
        weight,
    })
}

/// The most violated distinct-label path constraint on a gap instance.
pub fn separate_lp2_gadget(
    instance: &Instance,
    table: &PermutationTable,
    x: &FractionalLabeling,
    tol: f64,
) -> Result<Option<PathConstraint>> {
    let best = min_weight_path_lp2_gadget(instance, table, x)?;
    Ok((best.weight < 1.0 - tol)
        .then(|| PathConstraint::new(instance, best.path, Relaxation::Lp2, x.as_slice())))
}
