//! The union bound `z` over all good configurations, in log space.

use serde::{Deserialize, Serialize};

use super::counting::log_config_count_bound;
use super::probability::good_config_log_prob_bound;
use crate::error::{Error, Result};
use crate::generators::AsymptoticSettings;

/// `ln z = ln[(4a+1)^k d^((4a+1)k)] + ln[bound on Pr(configuration is good)]`.
///
/// `z` itself overflows a double already at `k = 4`; only its logarithm is
/// ever formed.
pub fn eval_log_z(k: f64, d: f64, h: f64, a: f64) -> Result<f64> {
    let prob = good_config_log_prob_bound(a, d, h, k)?;
    Ok(log_config_count_bound(k, d, a)? + prob)
}

/// `ln z` at the parameters [`AsymptoticSettings`] assigns to `(epsilon, k)`.
pub fn log_z_at(epsilon: f64, k: f64) -> Result<f64> {
    let s = AsymptoticSettings::new(epsilon, k)?;
    eval_log_z(s.k, s.d, s.h, s.a())
}

/// `delta / (2 delta + beta + 2) > 1/3 - epsilon`.
pub fn check_exponent(delta: f64, beta: f64, epsilon: f64) -> Result<bool> {
    if !(epsilon > 0.0 && epsilon < 1.0 / 3.0) {
        return Err(Error::domain(format!("epsilon {epsilon} is not in (0, 1/3)")));
    }
    if !(delta > 0.0 && beta > 0.0) {
        return Err(Error::domain(format!("delta = {delta} and beta = {beta} must be positive")));
    }
    Ok(delta / (2.0 * delta + beta + 2.0) > 1.0 / 3.0 - epsilon)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZScan {
    pub epsilon: f64,
    /// `(k, ln z)` at every scanned point.
    pub samples: Vec<(f64, f64)>,
    /// First `k` with `ln z(k) < 0`, refined by bisection between the last
    /// non-negative and first negative scan points. Past `2^53` the
    /// resolution is the spacing of doubles rather than 1.
    pub crossover: Option<f64>,
}

/// Scans `k = k_start, k_start * growth, ...` up to `k_max` and reports
/// where `ln z` first turns negative.
pub fn scan_log_z(epsilon: f64, k_start: f64, growth: f64, k_max: f64) -> Result<ZScan> {
    if !(k_start >= 2.0 && growth > 1.0 && k_max >= k_start) {
        return Err(Error::input("need k_start >= 2, growth > 1, k_max >= k_start"));
    }
    let mut samples = Vec::new();
    let mut k = k_start.floor();
    let mut last_nonneg: Option<f64> = None;
    while k <= k_max {
        let v = match log_z_at(epsilon, k) {
            Ok(v) => v,
            Err(Error::Domain(_)) => break,
            Err(e) => return Err(e),
        };
        samples.push((k, v));
        if v < 0.0 {
            let crossover = match last_nonneg {
                Some(lo) => Some(bisect(epsilon, lo, k)?),
                None => Some(k),
            };
            return Ok(ZScan {
                epsilon,
                samples,
                crossover,
            });
        }
        last_nonneg = Some(k);
        let next = (k * growth).floor();
        k = if next > k { next } else { k + 1.0 };
    }
    Ok(ZScan {
        epsilon,
        samples,
        crossover: None,
    })
}

// Invariant: ln z(lo) >= 0 > ln z(hi), both integers.
fn bisect(epsilon: f64, mut lo: f64, mut hi: f64) -> Result<f64> {
    while hi - lo > 1.0 {
        let mid = (lo + (hi - lo) / 2.0).floor();
        if mid <= lo || mid >= hi {
            break;
        }
        if log_z_at(epsilon, mid)? < 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}
