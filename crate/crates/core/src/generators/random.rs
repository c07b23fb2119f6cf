use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Edge, Instance};

/// A random simple graph on `n` vertices with `m` edges and labels drawn
/// uniformly from `0..q`; `s = 0`, `t = 1`.
pub fn make_random_instance(n: usize, m: usize, q: usize, directed: bool, seed: u64) -> Result<Instance> {
    if n < 2 || q == 0 {
        return Err(Error::input("need n >= 2 and q >= 1"));
    }
    let mut pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    if m > pairs.len() {
        return Err(Error::input(format!("{m} edges do not fit a simple graph on {n} vertices")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    pairs.shuffle(&mut rng);
    let edges = pairs
        .into_iter()
        .take(m)
        .map(|(u, v)| {
            let (u, v) = if directed && rng.gen_bool(0.5) { (v, u) } else { (u, v) };
            Edge::new(u, v, rng.gen_range(0..q))
        })
        .collect();
    Instance::new(n, edges, 0, 1, q, directed)
}
