//! Brute-force reference implementations used only by the integration tests.
//! Nothing here calls the search routines under test.

#![allow(dead_code)]

use labelcut::lp::{lp_solve_dense, Constraint};
use labelcut::{Instance, LabelSubset};

/// Adjacency as `(neighbor, label)` pairs, respecting direction.
fn adjacency(g: &Instance) -> Vec<Vec<(usize, usize)>> {
    let mut adj = vec![Vec::new(); g.vertex_count()];
    for e in g.edges() {
        adj[e.u].push((e.v, e.label));
        if !g.is_directed() {
            adj[e.v].push((e.u, e.label));
        }
    }
    adj
}

/// Depth-first reachability from s to t using edges whose label bit is not
/// set in `removed`.
pub fn separated(g: &Instance, removed: u64) -> bool {
    let adj = adjacency(g);
    let mut seen = vec![false; g.vertex_count()];
    let mut stack = vec![g.source()];
    seen[g.source()] = true;
    while let Some(u) = stack.pop() {
        if u == g.sink() {
            return false;
        }
        for &(v, l) in &adj[u] {
            if removed >> l & 1 == 0 && !seen[v] {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    true
}

/// Minimum label cut by scanning all `2^q` masks; returns the size and the
/// lexicographically smallest optimal set.
pub fn brute_force_opt(g: &Instance) -> (usize, LabelSubset) {
    let q = g.label_count();
    assert!(q <= 20, "brute force is for tiny label sets");
    let mut best: Option<(usize, Vec<usize>)> = None;
    for mask in 0u64..1 << q {
        if !separated(g, mask) {
            continue;
        }
        let set: Vec<usize> = (0..q).filter(|&l| mask >> l & 1 == 1).collect();
        let better = match &best {
            None => true,
            Some((size, s)) => set.len() < *size || set.len() == *size && set < *s,
        };
        if better {
            best = Some((set.len(), set));
        }
    }
    let (size, set) = best.expect("the full label set is a cut");
    (size, LabelSubset::new(set))
}

/// Every simple s-t path, as a list of edge indices.
pub fn all_simple_paths(g: &Instance) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); g.vertex_count()];
    for (i, e) in g.edges().iter().enumerate() {
        adj[e.u].push((e.v, i));
        if !g.is_directed() {
            adj[e.v].push((e.u, i));
        }
    }
    fn walk(
        u: usize,
        t: usize,
        adj: &[Vec<(usize, usize)>],
        on: &mut Vec<bool>,
        stack: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if u == t {
            out.push(stack.clone());
            return;
        }
        for &(v, i) in &adj[u] {
            if !on[v] {
                on[v] = true;
                stack.push(i);
                walk(v, t, adj, on, stack, out);
                stack.pop();
                on[v] = false;
            }
        }
    }
    let mut on = vec![false; g.vertex_count()];
    on[g.source()] = true;
    let mut out = Vec::new();
    walk(g.source(), g.sink(), &adj, &mut on, &mut Vec::new(), &mut out);
    out
}

/// Per-label coefficient vector of a path: edge counts, or 0/1 when
/// `distinct`.
pub fn path_row(g: &Instance, path: &[usize], distinct: bool) -> Vec<f64> {
    let mut row = vec![0.0; g.label_count()];
    for &i in path {
        let l = g.edges()[i].label;
        row[l] = if distinct { 1.0 } else { row[l] + 1.0 };
    }
    row
}

/// Minimum path weight under `x`, by enumeration.
pub fn min_path_weight(g: &Instance, x: &[f64], distinct: bool) -> f64 {
    all_simple_paths(g)
        .iter()
        .map(|p| path_row(g, p, distinct).iter().zip(x).map(|(a, b)| a * b).sum::<f64>())
        .fold(f64::INFINITY, f64::min)
}

/// Relaxation optimum with every simple path written out as a constraint.
pub fn full_lp_value(g: &Instance, distinct: bool) -> f64 {
    let mut rows: Vec<Vec<f64>> = all_simple_paths(g).iter().map(|p| path_row(g, p, distinct)).collect();
    rows.sort_by(|a, b| a.partial_cmp(b).unwrap());
    rows.dedup();
    let cons: Vec<Constraint> = rows
        .into_iter()
        .map(|coefficients| Constraint { coefficients, rhs: 1.0 })
        .collect();
    lp_solve_dense(&vec![1.0; g.label_count()], &cons).unwrap().value
}

/// All permutations of `0..d` in lexicographic order.
pub fn permutations(d: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                rec(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; d], &mut out);
    out
}
