//! How many configurations a solution of size `c` can produce.

use std::collections::HashSet;

use super::config::config_of;
use super::probability::binomial_u128;
use crate::error::{Error, Result};
use crate::graph::LabelSubset;

/// Enumeration guard for [`enumerate_configurations_exact`].
pub const ENUMERATION_GUARD: u128 = 10_000_000;

/// `ln` of `(4a + 1)^k d^((4a + 1) k)`.
pub fn log_config_count_bound(k: f64, d: f64, a: f64) -> Result<f64> {
    if !(k >= 1.0 && d >= 1.0 && a >= 0.0) {
        return Err(Error::domain(format!("need k >= 1, d >= 1, a >= 0; got ({k}, {d}, {a})")));
    }
    Ok(k * (4.0 * a + 1.0).ln() + (4.0 * a + 1.0) * k * d.ln())
}

/// Visits every `c`-subset of `0..n` in lexicographic order.
fn for_each_combination(n: usize, c: usize, mut f: impl FnMut(&[usize])) {
    if c > n {
        return;
    }
    let mut idx: Vec<usize> = (0..c).collect();
    loop {
        f(&idx);
        // rightmost position that can still advance
        let Some(i) = (0..c).rev().find(|&i| idx[i] != i + n - c) else {
            return;
        };
        idx[i] += 1;
        for j in i + 1..c {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Counts the distinct configurations produced by all size-`c` subsets of
/// the `k d` labels.
pub fn enumerate_configurations_exact(k: usize, d: usize, c: usize) -> Result<u64> {
    if k == 0 || d == 0 {
        return Err(Error::input("k and d must be positive"));
    }
    let q = k * d;
    let subsets = binomial_u128(q as u64, c as u64).unwrap_or(u128::MAX);
    if subsets > ENUMERATION_GUARD {
        return Err(Error::Resource {
            guard: "subset-enumeration",
            detail: format!("C({q}, {c}) = {subsets} subsets exceeds {ENUMERATION_GUARD}"),
        });
    }
    let mut seen: HashSet<LabelSubset> = HashSet::new();
    let mut failure = None;
    for_each_combination(q, c, |idx| {
        if failure.is_some() {
            return;
        }
        match config_of(&LabelSubset::new(idx.iter().copied()), k, d) {
            Ok(cfg) => {
                seen.insert(cfg.config().clone());
            }
            Err(e) => failure = Some(e),
        }
    });
    match failure {
        Some(e) => Err(e),
        None => Ok(seen.len() as u64),
    }
}

/// The tail inequality `sum_{i=1..r} C(d, i) <= (r + 1)/2 * C(d, r + 1)`,
/// evaluated exactly. Needs `1 <= r < d <= 128`.
///
/// It holds whenever `d > 2r`. Below that it can fail (`d = 2, r = 1` is
/// the smallest case, and every `r >= d/2 + sqrt(d)` fails for `d <= 128`).
/// The configuration count only relies on it with `r = 4a` and `d > 8a`.
pub fn binomial_tail_holds(d: u64, r: u64) -> Result<bool> {
    if r == 0 || r >= d || d > 128 {
        return Err(Error::input(format!("need 1 <= r < d <= 128, got d = {d}, r = {r}")));
    }
    let sum: u128 = (1..=r).map(|i| binomial_u128(d, i).unwrap()).sum();
    let rhs = (r as u128 + 1) * binomial_u128(d, r + 1).unwrap();
    Ok(2 * sum <= rhs)
}
