use serde::{Deserialize, Serialize};

use super::probability::McEstimate;

/// One analytic quantity, optionally paired with a Monte Carlo estimate.
/// Written one record per line as JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub quantity: String,
    /// Natural log of the analytic value.
    pub analytic_ln: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub empirical: Option<McEstimate>,
    pub pass: bool,
}

impl BoundReport {
    pub fn analytic(quantity: impl Into<String>, analytic_ln: f64, pass: bool) -> Self {
        BoundReport {
            quantity: quantity.into(),
            analytic_ln,
            empirical: None,
            pass: pass && analytic_ln.is_finite(),
        }
    }

    /// Compares an exact probability with its estimate at `z` standard errors.
    pub fn monte_carlo(quantity: impl Into<String>, exact: f64, est: McEstimate, z: f64) -> Self {
        BoundReport {
            quantity: quantity.into(),
            analytic_ln: exact.ln(),
            empirical: Some(est),
            pass: est.within(exact, z) && exact.ln().is_finite(),
        }
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}
