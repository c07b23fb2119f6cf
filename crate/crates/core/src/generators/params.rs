use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default refusal threshold for [`GadgetParams::predicted_edges`].
pub const DEFAULT_EDGE_CAP: u128 = 10_000_000;

/// The exponents and real-valued sizes that make the probabilistic argument
/// go through for a given `epsilon`.
///
/// `delta` is pinned to its minimum `1 / (3 epsilon)` and
/// `beta = delta - 1 + epsilon / 2`. The sizes are kept as reals because
/// they outgrow every integer type long before the argument bites.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticSettings {
    pub epsilon: f64,
    pub delta: f64,
    pub beta: f64,
    pub k: f64,
    /// `ceil(32 k^(2 delta))`
    pub d: f64,
    /// `ceil(k^beta)`
    pub h: f64,
    /// `ceil(k^(1 + delta))`
    pub c: f64,
}

impl AsymptoticSettings {
    pub fn new(epsilon: f64, k: f64) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon < 1.0 / 3.0) {
            return Err(Error::input(format!("epsilon {epsilon} is not in (0, 1/3)")));
        }
        if !(k >= 1.0 && k.is_finite()) {
            return Err(Error::input(format!("k = {k} must be a finite value >= 1")));
        }
        let delta = 1.0 / (3.0 * epsilon);
        let beta = delta - 1.0 + epsilon / 2.0;
        let d = (32.0 * k.powf(2.0 * delta)).ceil();
        let h = k.powf(beta).ceil();
        let c = k.powf(1.0 + delta).ceil();
        if !(d.is_finite() && h.is_finite() && c.is_finite()) {
            return Err(Error::domain(format!(
                "sizes for epsilon = {epsilon}, k = {k} overflow double precision"
            )));
        }
        Ok(AsymptoticSettings {
            epsilon,
            delta,
            beta,
            k,
            d,
            h,
            c,
        })
    }

    /// Average labels per element, `c / k`.
    pub fn a(&self) -> f64 {
        self.c / self.k
    }

    /// `delta / (2 delta + beta + 2)`, the exponent of `n` in the lower
    /// bound on the optimum.
    pub fn exponent(&self) -> f64 {
        self.delta / (2.0 * self.delta + self.beta + 2.0)
    }
}

/// Parameters of the shutter construction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GadgetParams {
    /// Number of elements; labels are `(mu, j)` with `mu` in `1..=k`.
    pub k: usize,
    /// Diamonds per chain.
    pub d: usize,
    /// Chains per shutter.
    pub h: usize,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub asymptotic: Option<AsymptoticParams>,
}

/// The asymptotic fields carried by parameters built with [`derive_params`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticParams {
    pub epsilon: f64,
    pub delta: f64,
    pub beta: f64,
    /// Intended solution size `ceil(k^(1 + delta))`.
    pub c: u64,
}

impl GadgetParams {
    pub fn new(k: usize, d: usize, h: usize, seed: u64) -> Result<Self> {
        let p = GadgetParams {
            k,
            d,
            h,
            seed,
            asymptotic: None,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.k < 2 {
            return Err(Error::input(format!("k = {} but at least 2 elements are needed", self.k)));
        }
        if self.d == 0 || self.h == 0 {
            return Err(Error::input("d and h must be positive"));
        }
        Ok(())
    }

    /// `k (k - 1) / 2`
    pub fn shutter_count(&self) -> usize {
        self.k * (self.k - 1) / 2
    }

    pub fn label_count(&self) -> usize {
        self.k * self.d
    }

    /// `2 + C(k,2) h (3d - 1)`, computed without overflow.
    pub fn predicted_vertices(&self) -> u128 {
        2 + self.shutter_count() as u128 * self.h as u128 * (3 * self.d as u128 - 1)
    }

    /// `4 d h C(k,2)`, computed without overflow.
    pub fn predicted_edges(&self) -> u128 {
        4 * self.d as u128 * self.h as u128 * self.shutter_count() as u128
    }
}

fn to_size(x: f64, what: &str) -> Result<usize> {
    if x > (u32::MAX as f64) {
        return Err(Error::domain(format!("{what} = {x:e} does not fit a machine size")));
    }
    Ok(x as usize)
}

/// Parameters for `k` elements chosen so that the gap argument holds with
/// the given `epsilon`.
///
/// The returned seed is 0; set one with [`GadgetParams::with_seed`].
pub fn derive_params(epsilon: f64, k: usize) -> Result<GadgetParams> {
    let s = AsymptoticSettings::new(epsilon, k as f64)?;
    let params = GadgetParams {
        k,
        d: to_size(s.d, "d")?,
        h: to_size(s.h, "h")?,
        seed: 0,
        asymptotic: Some(AsymptoticParams {
            epsilon,
            delta: s.delta,
            beta: s.beta,
            c: s.c as u64,
        }),
    };
    params.validate()?;
    Ok(params)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn epsilon_tenth_at_k2() {
        let p = derive_params(0.1, 2).unwrap();
        let a = p.asymptotic.unwrap();
        assert!((a.delta - 10.0 / 3.0).abs() < 1e-12);
        assert!((a.beta - 2.383_333_333_333).abs() < 1e-9);
        assert_eq!(p.d, (32.0 * 2f64.powf(20.0 / 3.0)).ceil() as usize);
        assert_eq!(p.d, 3251);
        assert_eq!(p.h, (2f64.powf(a.beta)).ceil() as usize);
        let s = AsymptoticSettings::new(0.1, 2.0).unwrap();
        assert!((s.exponent() - 0.301_659_125).abs() < 1e-6);
    }

    #[test]
    fn beta_margin_is_half_epsilon() {
        for eps in [0.01, 0.05, 0.1, 0.2, 0.3, 0.33] {
            let s = AsymptoticSettings::new(eps, 3.0).unwrap();
            assert!((s.beta - (s.delta - 1.0) - eps / 2.0).abs() < 1e-12);
            assert!(s.exponent() > 1.0 / 3.0 - eps);
        }
    }

    #[test]
    fn rejects_bad_epsilon_and_k() {
        for eps in [0.0, -0.1, 1.0 / 3.0, 0.5, f64::NAN] {
            assert!(derive_params(eps, 4).is_err(), "{eps}");
        }
        assert!(derive_params(0.3, 1).is_err());
        assert!(GadgetParams::new(1, 2, 2, 0).is_err());
        assert!(GadgetParams::new(2, 0, 2, 0).is_err());
    }

    #[test]
    fn count_formulas() {
        let p = GadgetParams::new(4, 2, 2, 0).unwrap();
        assert_eq!(p.label_count(), 8);
        assert_eq!(p.predicted_edges(), 96);
        assert_eq!(p.predicted_vertices(), 2 + 6 * 2 * 5);
    }
}
