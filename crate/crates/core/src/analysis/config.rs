use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::generators::GadgetLabel;
use crate::graph::LabelSubset;

/// How a label subset of a gap instance spreads over the elements.
///
/// For `L'` of size `c` over `k` elements: `J_mu` is the set of indices `j`
/// with `(mu, j)` in `L'`, the average is `a = c / k`, an element is light
/// when `|J_mu| <= 4a`, and the configuration `F` keeps the labels of light
/// elements only. The lightness test is done on integers (`k |J_mu| <= 4c`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Configuration {
    k: usize,
    d: usize,
    c: usize,
    index_sets: Vec<Vec<usize>>,
    light: Vec<usize>,
    config: LabelSubset,
}

impl Configuration {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// `|L'|`
    pub fn size(&self) -> usize {
        self.c
    }

    /// `a = c / k`, exact.
    pub fn average(&self) -> Ratio<u64> {
        Ratio::new(self.c as u64, self.k as u64)
    }

    pub fn average_f64(&self) -> f64 {
        self.c as f64 / self.k as f64
    }

    /// `J_mu` for one-based `mu`, ascending one-based indices.
    pub fn index_set(&self, mu: usize) -> &[usize] {
        &self.index_sets[mu - 1]
    }

    pub fn is_light(&self, mu: usize) -> bool {
        self.k * self.index_sets[mu - 1].len() <= 4 * self.c
    }

    /// The light elements, ascending.
    pub fn light_elements(&self) -> &[usize] {
        &self.light
    }

    /// Elements with at least one label in `L'`.
    pub fn support(&self) -> Vec<usize> {
        (1..=self.k)
            .filter(|&mu| !self.index_sets[mu - 1].is_empty())
            .collect()
    }

    /// Elements with at least one label in `F`; equals light ∩ support.
    pub fn config_support(&self) -> Vec<usize> {
        self.support()
            .into_iter()
            .filter(|&mu| self.is_light(mu))
            .collect()
    }

    /// The configuration `F`, as label ids.
    pub fn config(&self) -> &LabelSubset {
        &self.config
    }
}

/// Decomposes `subset` (label ids of a `k`-element, `d`-index gap instance).
pub fn config_of(subset: &LabelSubset, k: usize, d: usize) -> Result<Configuration> {
    if k == 0 || d == 0 {
        return Err(Error::input("k and d must be positive"));
    }
    let mut index_sets = vec![Vec::new(); k];
    for &id in subset.iter() {
        if id >= k * d {
            return Err(Error::input(format!("label id {id} does not decode for k = {k}, d = {d}")));
        }
        let lab = GadgetLabel::from_id(id, d);
        index_sets[lab.element - 1].push(lab.index);
    }
    let c = subset.len();
    let light: Vec<usize> = (1..=k)
        .filter(|&mu| k * index_sets[mu - 1].len() <= 4 * c)
        .collect();
    let config = subset
        .iter()
        .copied()
        .filter(|&id| {
            let mu = id / d + 1;
            k * index_sets[mu - 1].len() <= 4 * c
        })
        .collect();
    Ok(Configuration {
        k,
        d,
        c,
        index_sets,
        light,
        config,
    })
}
