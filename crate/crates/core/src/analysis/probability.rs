//! Separation probabilities of a single chain and of the light shutters.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};

/// Exact `C(n, r)` when it fits in 128 bits.
pub fn binomial_u128(n: u64, r: u64) -> Option<u128> {
    if r > n {
        return Some(0);
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        // acc * (n - i) / (i + 1) is an integer; divide out the gcd first so
        // the product overflows only when the result would.
        let num = (n - i) as u128;
        let den = (i + 1) as u128;
        let g = gcd(acc, den);
        let (acc_r, den_r) = (acc / g, den / g);
        acc = acc_r.checked_mul(num / den_r)?;
    }
    Some(acc)
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `ln C(n, r)` through log-gamma.
pub fn ln_binomial(n: f64, r: f64) -> f64 {
    ln_gamma(n + 1.0) - ln_gamma(r + 1.0) - ln_gamma(n - r + 1.0)
}

/// Probability that a uniformly random permutation of `[d]` maps some
/// element of a `size_mu`-set into a fixed `size_nu`-set, i.e. that one
/// chain is cut when its top and bottom elements have those many labels
/// removed:
///
/// `1 - C(d - size_nu, size_mu) / C(d, size_mu)`.
pub fn chain_sep_exact_prob(size_mu: u64, size_nu: u64, d: u64) -> Result<f64> {
    if size_mu > d || size_nu > d {
        return Err(Error::input(format!(
            "set sizes ({size_mu}, {size_nu}) exceed d = {d}"
        )));
    }
    if size_mu == 0 || size_nu == 0 {
        return Ok(0.0);
    }
    if size_mu + size_nu > d {
        return Ok(1.0);
    }
    if let (Some(num), Some(den)) = (
        binomial_u128(d - size_nu, size_mu),
        binomial_u128(d, size_mu),
    ) {
        return Ok((den - num) as f64 / den as f64);
    }
    // ln of C(d - nu, mu) / C(d, mu) = prod_{i < mu} (1 - nu / (d - i))
    let ln_keep = if size_mu <= 1_000_000 {
        (0..size_mu)
            .map(|i| (-(size_nu as f64) / (d - i) as f64).ln_1p())
            .sum::<f64>()
    } else {
        ln_binomial((d - size_nu) as f64, size_mu as f64) - ln_binomial(d as f64, size_mu as f64)
    };
    Ok(-ln_keep.exp_m1())
}

fn check_bound_domain(a: f64, d: f64) -> Result<()> {
    if !(a > 0.0 && a.is_finite()) {
        return Err(Error::domain(format!("a = {a} must be positive")));
    }
    if !(d > 8.0 * a) {
        return Err(Error::domain(format!("need d > 8a, got d = {d}, 8a = {}", 8.0 * a)));
    }
    Ok(())
}

/// `ln (1 - 8a/d)^(4a)`, kept accurate when `8a/d` is tiny.
fn ln_keep_bound(a: f64, d: f64) -> f64 {
    4.0 * a * (-8.0 * a / d).ln_1p()
}

/// `1 - (1 - 8a/d)^(4a)`, the closed-form ceiling on the chain separation
/// probability when both elements are light. Requires `d > 8a`.
pub fn chain_sep_prob_bound(a: f64, d: f64) -> Result<f64> {
    check_bound_domain(a, d)?;
    Ok(-ln_keep_bound(a, d).exp_m1())
}

/// `ln` of [`chain_sep_prob_bound`], computed without cancellation.
pub fn ln_chain_sep_prob_bound(a: f64, d: f64) -> Result<f64> {
    check_bound_domain(a, d)?;
    Ok((-ln_keep_bound(a, d).exp_m1()).ln())
}

/// Number of chains the bound multiplies over:
/// `h/2 * (3k/4) * (3k/4 - 1)`.
pub fn light_chain_exponent(h: f64, k: f64) -> f64 {
    0.5 * h * (0.75 * k) * (0.75 * k - 1.0)
}

/// `ln` of the bound on the probability that a configuration separates s
/// and t inside the light shutters:
/// `h/2 (3k/4)(3k/4 - 1) ln(1 - (1 - 8a/d)^(4a))`.
pub fn good_config_log_prob_bound(a: f64, d: f64, h: f64, k: f64) -> Result<f64> {
    if !(k >= 2.0) {
        return Err(Error::domain(format!("k = {k} must be at least 2")));
    }
    if !(h >= 1.0) {
        return Err(Error::domain(format!("h = {h} must be at least 1")));
    }
    Ok(light_chain_exponent(h, k) * ln_chain_sep_prob_bound(a, d)?)
}

/// An empirical frequency with its binomial standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub estimate: f64,
    pub std_err: f64,
    pub trials: u64,
    pub hits: u64,
}

impl McEstimate {
    pub fn from_counts(hits: u64, trials: u64) -> Self {
        let p = hits as f64 / trials as f64;
        McEstimate {
            estimate: p,
            std_err: (p * (1.0 - p) / trials as f64).sqrt(),
            trials,
            hits,
        }
    }

    /// `|estimate - exact| <= z * std_err`
    pub fn within(&self, exact: f64, z: f64) -> bool {
        (self.estimate - exact).abs() <= z * self.std_err
    }
}

const MC_CHUNK: u64 = 8192;

fn index_mask(set: &[usize], d: usize, what: &str) -> Result<Vec<bool>> {
    let mut mask = vec![false; d];
    for &j in set {
        if j == 0 || j > d {
            return Err(Error::input(format!("{what} index {j} is not in [1, {d}]")));
        }
        mask[j - 1] = true;
    }
    Ok(mask)
}

/// Estimates the chain separation probability by drawing `trials` uniform
/// permutations of `[d]` and counting those with `sigma(J_mu) ∩ J_nu ≠ ∅`.
///
/// Index sets are one-based. Trials are split into fixed chunks of 8192,
/// chunk `i` drawing from ChaCha stream `i` under `seed`, so the result is
/// independent of the thread count.
pub fn monte_carlo_chain_sep(
    j_mu: &[usize],
    j_nu: &[usize],
    d: usize,
    trials: u64,
    seed: u64,
) -> Result<McEstimate> {
    if trials == 0 {
        return Err(Error::input("at least one trial is needed"));
    }
    let mu_mask = index_mask(j_mu, d, "J_mu")?;
    let nu_mask = index_mask(j_nu, d, "J_nu")?;
    let sources: Vec<usize> = (0..d).filter(|&j| mu_mask[j]).collect();
    let chunks = trials.div_ceil(MC_CHUNK);
    let hits: u64 = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(chunk);
            let n = MC_CHUNK.min(trials - chunk * MC_CHUNK);
            let mut sigma: Vec<usize> = (0..d).collect();
            let mut hits = 0;
            for _ in 0..n {
                sigma.shuffle(&mut rng);
                if sources.iter().any(|&j| nu_mask[sigma[j]]) {
                    hits += 1;
                }
            }
            hits
        })
        .sum();
    Ok(McEstimate::from_counts(hits, trials))
}
