//! Edge-labeled graphs with a distinguished source and sink.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type VertexId = usize;
pub type LabelId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
    pub label: LabelId,
}

impl Edge {
    pub fn new(u: VertexId, v: VertexId, label: LabelId) -> Self {
        Edge { u, v, label }
    }
}

/// A Min Label s-t Cut instance.
///
/// Undirected by default. When `directed` is set every edge is read as
/// `u -> v`. Labels in `0..label_count` that sit on no edge are allowed.
///
/// Instances are immutable once built; the adjacency lists are computed at
/// construction and sorted by neighbor id so every traversal is
/// deterministic.
#[derive(Debug, Clone)]
pub struct Instance {
    vertex_count: usize,
    edges: Vec<Edge>,
    source: VertexId,
    sink: VertexId,
    label_count: usize,
    directed: bool,
    // (neighbor, edge index), sorted by (neighbor, edge index)
    adjacency: Vec<Vec<(VertexId, usize)>>,
    reverse: Vec<Vec<(VertexId, usize)>>,
}

impl PartialEq for Instance {
    fn eq(&self, other: &Self) -> bool {
        self.vertex_count == other.vertex_count
            && self.edges == other.edges
            && self.source == other.source
            && self.sink == other.sink
            && self.label_count == other.label_count
            && self.directed == other.directed
    }
}

impl Eq for Instance {}

impl Instance {
    pub fn new(
        vertex_count: usize,
        edges: Vec<Edge>,
        source: VertexId,
        sink: VertexId,
        label_count: usize,
        directed: bool,
    ) -> Result<Self> {
        if label_count == 0 {
            return Err(Error::input("label count must be positive"));
        }
        if source >= vertex_count || sink >= vertex_count {
            return Err(Error::input(format!(
                "source {source} or sink {sink} out of range for {vertex_count} vertices"
            )));
        }
        if source == sink {
            return Err(Error::input("source and sink must differ"));
        }
        for (i, e) in edges.iter().enumerate() {
            if e.u >= vertex_count || e.v >= vertex_count {
                return Err(Error::input(format!(
                    "edge {i} ({}, {}) references a vertex >= {vertex_count}",
                    e.u, e.v
                )));
            }
            if e.label >= label_count {
                return Err(Error::input(format!(
                    "edge {i} carries label {} >= label count {label_count}",
                    e.label
                )));
            }
        }

        let mut adjacency = vec![Vec::new(); vertex_count];
        let mut reverse = vec![Vec::new(); vertex_count];
        for (i, e) in edges.iter().enumerate() {
            adjacency[e.u].push((e.v, i));
            reverse[e.v].push((e.u, i));
            if !directed {
                adjacency[e.v].push((e.u, i));
                reverse[e.u].push((e.v, i));
            }
        }
        for list in adjacency.iter_mut().chain(reverse.iter_mut()) {
            list.sort_unstable();
        }

        Ok(Instance {
            vertex_count,
            edges,
            source,
            sink,
            label_count,
            directed,
            adjacency,
            reverse,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn sink(&self) -> VertexId {
        self.sink
    }

    pub fn label_count(&self) -> usize {
        self.label_count
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    /// Outgoing `(neighbor, edge index)` pairs of `v`, sorted by neighbor.
    pub fn neighbors(&self, v: VertexId) -> &[(VertexId, usize)] {
        &self.adjacency[v]
    }

    /// Incoming `(neighbor, edge index)` pairs; identical to
    /// [`Instance::neighbors`] for undirected instances.
    pub fn in_neighbors(&self, v: VertexId) -> &[(VertexId, usize)] {
        &self.reverse[v]
    }

    /// Labels that sit on at least one edge, ascending.
    pub fn used_labels(&self) -> Vec<LabelId> {
        let set: BTreeSet<LabelId> = self.edges.iter().map(|e| e.label).collect();
        set.into_iter().collect()
    }

    /// Number of edges carrying each label.
    pub fn label_multiplicity(&self) -> Vec<usize> {
        let mut counts = vec![0; self.label_count];
        for e in &self.edges {
            counts[e.label] += 1;
        }
        counts
    }

    /// A label mask of length `label_count` with the members of `subset` set.
    pub fn label_mask(&self, subset: &LabelSubset) -> Result<Vec<bool>> {
        let mut mask = vec![false; self.label_count];
        for &l in subset.iter() {
            if l >= self.label_count {
                return Err(Error::input(format!(
                    "label {l} is not below the label count {}",
                    self.label_count
                )));
            }
            mask[l] = true;
        }
        Ok(mask)
    }

    /// Breadth-first search from the source that skips every edge whose
    /// label is masked out. Returns the edge indices of a fewest-hop s-t
    /// path, or `None` when the sink is unreachable.
    pub fn find_path_avoiding(&self, removed: &[bool]) -> Option<Vec<usize>> {
        let mut parent: Vec<Option<usize>> = vec![None; self.vertex_count];
        let mut seen = vec![false; self.vertex_count];
        let mut queue = VecDeque::new();
        seen[self.source] = true;
        queue.push_back(self.source);
        while let Some(u) = queue.pop_front() {
            if u == self.sink {
                break;
            }
            for &(w, ei) in &self.adjacency[u] {
                if seen[w] || removed[self.edges[ei].label] {
                    continue;
                }
                seen[w] = true;
                parent[w] = Some(ei);
                queue.push_back(w);
            }
        }
        if !seen[self.sink] {
            return None;
        }
        let mut path = Vec::new();
        let mut v = self.sink;
        while v != self.source {
            let ei = parent[v].expect("reached vertex has a parent edge");
            path.push(ei);
            let e = self.edges[ei];
            v = if e.v == v { e.u } else { e.v };
        }
        path.reverse();
        Some(path)
    }

    /// True when some s-t path survives removal of the masked labels.
    pub fn connected_avoiding(&self, removed: &[bool]) -> bool {
        self.find_path_avoiding(removed).is_some()
    }

    pub fn is_connected(&self) -> bool {
        self.connected_avoiding(&vec![false; self.label_count])
    }

    /// True when the graph has no parallel edges (undirected sense) and no
    /// self-loops.
    pub fn is_simple(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.edges.iter().all(|e| {
            let key = (e.u.min(e.v), e.u.max(e.v));
            e.u != e.v && seen.insert(key)
        })
    }
}

/// A set of labels, kept sorted and free of duplicates.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LabelSubset(Vec<LabelId>);

impl LabelSubset {
    pub fn new(labels: impl IntoIterator<Item = LabelId>) -> Self {
        let set: BTreeSet<LabelId> = labels.into_iter().collect();
        LabelSubset(set.into_iter().collect())
    }

    pub fn empty() -> Self {
        LabelSubset(Vec::new())
    }

    /// All labels `0..q`.
    pub fn full(q: usize) -> Self {
        LabelSubset((0..q).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, label: LabelId) -> bool {
        self.0.binary_search(&label).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = &LabelId> + '_ {
        self.0.iter()
    }

    pub fn as_slice(&self) -> &[LabelId] {
        &self.0
    }

    pub fn is_subset(&self, other: &LabelSubset) -> bool {
        self.0.iter().all(|&l| other.contains(l))
    }
}

impl FromIterator<LabelId> for LabelSubset {
    fn from_iter<I: IntoIterator<Item = LabelId>>(iter: I) -> Self {
        LabelSubset::new(iter)
    }
}

/// A simple s-t path, stored both as its vertex sequence and as the edge
/// indices joining consecutive vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct StPath {
    vertices: Vec<VertexId>,
    edges: Vec<usize>,
}

impl StPath {
    /// Builds a path from edge indices, checking that they chain from the
    /// source to the sink without repeating a vertex.
    pub fn from_edges(instance: &Instance, edges: Vec<usize>) -> Result<Self> {
        let mut vertices = vec![instance.source()];
        let mut seen = vec![false; instance.vertex_count()];
        seen[instance.source()] = true;
        for &ei in &edges {
            let e = instance
                .edges()
                .get(ei)
                .ok_or_else(|| Error::input(format!("edge index {ei} out of range")))?;
            let at = *vertices.last().unwrap();
            let next = if e.u == at {
                e.v
            } else if e.v == at && !instance.is_directed() {
                e.u
            } else {
                return Err(Error::input(format!(
                    "edge {ei} ({}, {}) does not leave vertex {at}",
                    e.u, e.v
                )));
            };
            if seen[next] {
                return Err(Error::input(format!("vertex {next} repeats on the path")));
            }
            seen[next] = true;
            vertices.push(next);
        }
        if *vertices.last().unwrap() != instance.sink() {
            return Err(Error::input("path does not end at the sink"));
        }
        Ok(StPath { vertices, edges })
    }

    /// Builds a path from its vertex sequence. Between two consecutive
    /// vertices the lowest-indexed joining edge is used.
    pub fn from_vertices(instance: &Instance, vertices: &[VertexId]) -> Result<Self> {
        if vertices.first() != Some(&instance.source()) {
            return Err(Error::input("path does not start at the source"));
        }
        let mut edges = Vec::with_capacity(vertices.len().saturating_sub(1));
        for pair in vertices.windows(2) {
            let (a, b) = (pair[0], pair[1]);
            if a >= instance.vertex_count() {
                return Err(Error::input(format!("vertex {a} out of range")));
            }
            let ei = instance
                .neighbors(a)
                .iter()
                .find(|&&(w, _)| w == b)
                .map(|&(_, ei)| ei)
                .ok_or_else(|| Error::input(format!("no edge from {a} to {b}")))?;
            edges.push(ei);
        }
        Self::from_edges(instance, edges)
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn edges(&self) -> &[usize] {
        &self.edges
    }
}

/// Whether removing every edge whose label is in `subset` disconnects the
/// source from the sink.
pub fn is_label_cut(instance: &Instance, subset: &LabelSubset) -> Result<bool> {
    let mask = instance.label_mask(subset)?;
    Ok(!instance.connected_avoiding(&mask))
}

/// The set of distinct labels on a path.
pub fn path_labels(instance: &Instance, path: &StPath) -> Result<LabelSubset> {
    // Re-validate: the path may have been built against another instance.
    let checked = StPath::from_edges(instance, path.edges.clone())?;
    Ok(checked
        .edges
        .iter()
        .map(|&ei| instance.edges()[ei].label)
        .collect())
}
