//! Chains, shutters, and the assembled gap instance.
//!
//! Vertex numbering is canonical: `s = 0`, `t = 1`, then shutters in
//! lexicographic `(mu, nu)` order, chains by index, and within a chain the
//! diamonds left to right. Each diamond contributes its top middle vertex,
//! its bottom middle vertex, and (except the last) the junction to its
//! right, in that order. So a chain occupies `3d - 1` consecutive ids.
//!
//! Edges follow the same order; a diamond emits
//! `(left, top)`, `(top, right)`, `(left, bottom)`, `(bottom, right)`,
//! always oriented from the source side.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::params::{GadgetParams, DEFAULT_EDGE_CAP};
use crate::error::{Error, Result};
use crate::graph::{Edge, Instance, LabelId, VertexId};

/// The label `(element, index)`, both one-based.
///
/// Encoded as the id `(element - 1) d + (index - 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GadgetLabel {
    pub element: usize,
    pub index: usize,
}

impl GadgetLabel {
    pub fn new(element: usize, index: usize) -> Self {
        GadgetLabel { element, index }
    }

    pub fn id(self, d: usize) -> LabelId {
        (self.element - 1) * d + (self.index - 1)
    }

    pub fn from_id(id: LabelId, d: usize) -> Self {
        GadgetLabel {
            element: id / d + 1,
            index: id % d + 1,
        }
    }
}

impl std::fmt::Display for GadgetLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.element, self.index)
    }
}

/// A permutation of `[d] = {1, ..., d}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    /// Takes the one-based images `sigma(1), ..., sigma(d)`.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let d = images.len();
        let mut seen = vec![false; d];
        for &x in &images {
            if x == 0 || x > d || seen[x - 1] {
                return Err(Error::input(format!("{images:?} is not a permutation of [{d}]")));
            }
            seen[x - 1] = true;
        }
        Ok(Permutation(images.into_iter().map(|x| x - 1).collect()))
    }

    pub fn identity(d: usize) -> Self {
        Permutation((0..d).collect())
    }

    /// Uniform draw by Fisher-Yates.
    pub fn random(d: usize, rng: &mut impl rand::Rng) -> Self {
        let mut v: Vec<usize> = (0..d).collect();
        v.shuffle(rng);
        Permutation(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `sigma(j)` for one-based `j`.
    pub fn apply(&self, j: usize) -> usize {
        self.0[j - 1] + 1
    }

    /// One-based images.
    pub fn images(&self) -> Vec<usize> {
        self.0.iter().map(|x| x + 1).collect()
    }
}

/// Pairs `(mu, nu)` with `1 <= mu < nu <= k` in lexicographic order.
pub fn shutter_pairs(k: usize) -> Vec<(usize, usize)> {
    (1..=k)
        .flat_map(|mu| (mu + 1..=k).map(move |nu| (mu, nu)))
        .collect()
}

/// The permutation drawn for every chain of every shutter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutationTable {
    k: usize,
    d: usize,
    h: usize,
    // shutter-major, then chain
    perms: Vec<Permutation>,
}

impl PermutationTable {
    /// Draws one permutation per chain. Chain number `c` (counting across
    /// shutters in layout order) reads from its own ChaCha stream `c` under
    /// the master seed, so chains are independent and the table does not
    /// depend on the order in which chains are drawn.
    pub fn draw(k: usize, d: usize, h: usize, seed: u64) -> Self {
        let chains = k * (k - 1) / 2 * h;
        let perms = (0..chains)
            .map(|c| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(c as u64);
                Permutation::random(d, &mut rng)
            })
            .collect();
        PermutationTable { k, d, h, perms }
    }

    pub fn identity(k: usize, d: usize, h: usize) -> Self {
        let chains = k * (k - 1) / 2 * h;
        PermutationTable {
            k,
            d,
            h,
            perms: vec![Permutation::identity(d); chains],
        }
    }

    /// Builds a table from permutations listed shutter-major.
    pub fn from_parts(k: usize, d: usize, h: usize, perms: Vec<Permutation>) -> Result<Self> {
        if k < 2 || d == 0 || h == 0 {
            return Err(Error::input("need k >= 2, d >= 1, h >= 1"));
        }
        if perms.len() != k * (k - 1) / 2 * h {
            return Err(Error::input(format!(
                "expected {} permutations, got {}",
                k * (k - 1) / 2 * h,
                perms.len()
            )));
        }
        if let Some(p) = perms.iter().find(|p| p.len() != d) {
            return Err(Error::input(format!("permutation of length {} but d = {d}", p.len())));
        }
        Ok(PermutationTable { k, d, h, perms })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn h(&self) -> usize {
        self.h
    }

    /// Index of shutter `(mu, nu)` in layout order.
    pub fn shutter_index(&self, mu: usize, nu: usize) -> usize {
        debug_assert!(1 <= mu && mu < nu && nu <= self.k);
        // shutters before element mu: sum_{x < mu} (k - x)
        (mu - 1) * self.k - (mu - 1) * mu / 2 + (nu - mu - 1)
    }

    /// `sigma^i_{mu nu}` for one-based chain index `i`.
    pub fn get(&self, mu: usize, nu: usize, i: usize) -> &Permutation {
        &self.perms[self.shutter_index(mu, nu) * self.h + (i - 1)]
    }

    /// The `h` permutations of shutter `(mu, nu)`.
    pub fn shutter(&self, mu: usize, nu: usize) -> &[Permutation] {
        let start = self.shutter_index(mu, nu) * self.h;
        &self.perms[start..start + self.h]
    }

    pub fn all(&self) -> &[Permutation] {
        &self.perms
    }
}

/// Where things live in the canonical numbering of a gap instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GadgetLayout {
    pub k: usize,
    pub d: usize,
    pub h: usize,
}

/// The vertices of one diamond.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DiamondVertices {
    pub left: VertexId,
    pub top: VertexId,
    pub bottom: VertexId,
    pub right: VertexId,
}

impl GadgetLayout {
    pub fn vertex_count(&self) -> usize {
        2 + self.k * (self.k - 1) / 2 * self.h * (3 * self.d - 1)
    }

    pub fn edge_count(&self) -> usize {
        4 * self.d * self.h * (self.k * (self.k - 1) / 2)
    }

    fn chain_base(&self, shutter: usize, chain: usize) -> VertexId {
        2 + (shutter * self.h + (chain - 1)) * (3 * self.d - 1)
    }

    /// Diamond `j` (one-based) of chain `chain` (one-based) of the shutter
    /// with layout index `shutter`.
    pub fn diamond(&self, shutter: usize, chain: usize, j: usize) -> DiamondVertices {
        let base = self.chain_base(shutter, chain) + 3 * (j - 1);
        DiamondVertices {
            left: if j == 1 { 0 } else { base - 1 },
            top: base,
            bottom: base + 1,
            right: if j == self.d { 1 } else { base + 2 },
        }
    }

    /// Index of the first of the `4d` edges of a chain.
    pub fn chain_first_edge(&self, shutter: usize, chain: usize) -> usize {
        (shutter * self.h + (chain - 1)) * 4 * self.d
    }
}

/// A two-terminal subgraph. Vertex 0 is the left endpoint, vertex 1 the
/// right endpoint, and interior vertices follow from 2 in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fragment {
    pub vertex_count: usize,
    pub edges: Vec<Edge>,
}

impl Fragment {
    /// Appends this fragment to an edge list, gluing its endpoints onto
    /// `left` and `right` and shifting interior vertices to start at
    /// `first_interior`.
    fn embed(&self, left: VertexId, right: VertexId, first_interior: VertexId, out: &mut Vec<Edge>) {
        let map = |v: VertexId| match v {
            0 => left,
            1 => right,
            x => first_interior + (x - 2),
        };
        out.extend(
            self.edges
                .iter()
                .map(|e| Edge::new(map(e.u), map(e.v), e.label)),
        );
    }

    pub fn labels(&self) -> Vec<LabelId> {
        let mut ls: Vec<LabelId> = self.edges.iter().map(|e| e.label).collect();
        ls.sort_unstable();
        ls.dedup();
        ls
    }
}

/// `d` diamonds in series. Diamond `j` carries `(mu, j)` on both top edges
/// and `(nu, sigma(j))` on both bottom edges.
pub fn make_chain(mu: usize, nu: usize, d: usize, sigma: &Permutation) -> Result<Fragment> {
    if mu == 0 || nu == 0 || mu == nu {
        return Err(Error::input(format!("chain elements must be distinct and one-based, got ({mu}, {nu})")));
    }
    if d == 0 || sigma.len() != d {
        return Err(Error::input(format!("need a permutation of [{d}], got length {}", sigma.len())));
    }
    let mut edges = Vec::with_capacity(4 * d);
    for j in 1..=d {
        let top = 2 + 3 * (j - 1);
        let bottom = top + 1;
        let left = if j == 1 { 0 } else { top - 1 };
        let right = if j == d { 1 } else { top + 2 };
        let top_label = GadgetLabel::new(mu, j).id(d);
        let bottom_label = GadgetLabel::new(nu, sigma.apply(j)).id(d);
        edges.push(Edge::new(left, top, top_label));
        edges.push(Edge::new(top, right, top_label));
        edges.push(Edge::new(left, bottom, bottom_label));
        edges.push(Edge::new(bottom, right, bottom_label));
    }
    Ok(Fragment {
        vertex_count: 3 * d + 1,
        edges,
    })
}

/// `h` chains on `(mu, nu)` sharing both endpoints.
pub fn make_shutter(
    mu: usize,
    nu: usize,
    d: usize,
    h: usize,
    permutations: &[Permutation],
) -> Result<Fragment> {
    if h == 0 || permutations.len() != h {
        return Err(Error::input(format!(
            "a shutter with h = {h} needs {h} permutations, got {}",
            permutations.len()
        )));
    }
    let interior = 3 * d - 1;
    let mut edges = Vec::with_capacity(4 * d * h);
    for (i, sigma) in permutations.iter().enumerate() {
        make_chain(mu, nu, d, sigma)?.embed(0, 1, 2 + i * interior, &mut edges);
    }
    Ok(Fragment {
        vertex_count: 2 + h * interior,
        edges,
    })
}

/// A generated gap instance together with everything needed to rebuild or
/// exploit it.
#[derive(Debug, Clone, PartialEq)]
pub struct GapInstance {
    pub instance: Instance,
    pub permutations: PermutationTable,
    pub params: GadgetParams,
}

impl GapInstance {
    pub fn layout(&self) -> GadgetLayout {
        GadgetLayout {
            k: self.params.k,
            d: self.params.d,
            h: self.params.h,
        }
    }
}

/// Assembles the gap instance from an explicit permutation table.
pub fn assemble(params: &GadgetParams, table: PermutationTable, directed: bool) -> Result<GapInstance> {
    params.validate()?;
    let (k, d, h) = (params.k, params.d, params.h);
    if (table.k(), table.d(), table.h()) != (k, d, h) {
        return Err(Error::input("permutation table does not match the parameters"));
    }
    let layout = GadgetLayout { k, d, h };
    let mut edges = Vec::with_capacity(layout.edge_count());
    for (idx, (mu, nu)) in shutter_pairs(k).into_iter().enumerate() {
        let shutter = make_shutter(mu, nu, d, h, table.shutter(mu, nu))?;
        shutter.embed(0, 1, 2 + idx * h * (3 * d - 1), &mut edges);
    }
    let instance = Instance::new(layout.vertex_count(), edges, 0, 1, k * d, directed)?;
    Ok(GapInstance {
        instance,
        permutations: table,
        params: *params,
    })
}

/// Builds the random gap instance for `params`, refusing when it would have
/// more than `edge_cap` edges.
pub fn make_gap_instance_capped(params: &GadgetParams, edge_cap: u128) -> Result<GapInstance> {
    params.validate()?;
    if params.predicted_edges() > edge_cap {
        return Err(Error::Resource {
            guard: "edge-cap",
            detail: format!(
                "instance would have {} edges, cap is {edge_cap}",
                params.predicted_edges()
            ),
        });
    }
    let table = PermutationTable::draw(params.k, params.d, params.h, params.seed);
    assemble(params, table, false)
}

/// [`make_gap_instance_capped`] with the default cap of 10^7 edges.
pub fn make_gap_instance(params: &GadgetParams) -> Result<GapInstance> {
    make_gap_instance_capped(params, DEFAULT_EDGE_CAP)
}

/// A single s-t path of `m` edges, all carrying label 0.
pub fn make_path_instance(m: usize) -> Result<Instance> {
    if m == 0 {
        return Err(Error::input("a path needs at least one edge"));
    }
    // s = 0, t = 1, interior vertices 2..=m in path order
    let order: Vec<VertexId> = std::iter::once(0).chain(2..=m).chain(std::iter::once(1)).collect();
    let edges = order.windows(2).map(|w| Edge::new(w[0], w[1], 0)).collect();
    Instance::new(m + 1, edges, 0, 1, 1, false)
}
