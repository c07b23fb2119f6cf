//! Numeric counterparts of the gap analysis: configurations, separation
//! probabilities and their bounds, configuration counts, and `z`.

mod config;
mod counting;
mod probability;
mod report;
mod z;

pub use config::{config_of, Configuration};
pub use counting::{
    binomial_tail_holds, enumerate_configurations_exact, log_config_count_bound,
    ENUMERATION_GUARD,
};
pub use probability::{
    binomial_u128, chain_sep_exact_prob, chain_sep_prob_bound, good_config_log_prob_bound,
    light_chain_exponent, ln_binomial, ln_chain_sep_prob_bound, monte_carlo_chain_sep,
    McEstimate,
};
pub use report::BoundReport;
pub use z::{check_exponent, eval_log_z, log_z_at, scan_log_z, ZScan};

