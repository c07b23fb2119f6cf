//! The numeric check suite behind `labelcut verify`.

use std::io::Write;

use clap::Args;
use labelcut::analysis::{
    binomial_tail_holds, chain_sep_exact_prob, chain_sep_prob_bound, check_exponent,
    enumerate_configurations_exact, eval_log_z, log_config_count_bound, monte_carlo_chain_sep,
    scan_log_z,
};
use labelcut::generators::{make_gap_instance, AsymptoticSettings, GadgetParams};
use labelcut::lp::{
    min_weight_path_lp2_gadget, min_weight_path_lp2_generic, FractionalLabeling, DEFAULT_NODE_LIMIT,
};
use serde::Serialize;

use crate::{CliError, CliResult};

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Trials per Monte Carlo estimate.
    #[arg(long, default_value_t = 100_000)]
    pub trials: u64,
    /// Repetitions per Monte Carlo triple.
    #[arg(long, default_value_t = 100)]
    pub reps: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Print one JSON record per check instead of text.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

fn check(name: &'static str, result: labelcut::Result<(bool, String)>) -> Check {
    match result {
        Ok((pass, detail)) => Check { name, pass, detail },
        Err(e) => Check {
            name,
            pass: false,
            detail: format!("error: {e}"),
        },
    }
}

/// Exact separation probability against `1 - (1 - 8a/d)^(4a)` for
/// `a in {1/2, 1, 2, 4}`, `ceil(16a) < d <= 64 ceil(a)` and all index set
/// sizes up to `4a`.
pub fn dominance_grid() -> labelcut::Result<(bool, String)> {
    let mut cases = 0u64;
    let mut worst: Option<(f64, f64, u64, u64, u64)> = None;
    for a in [0.5f64, 1.0, 2.0, 4.0] {
        let top = (4.0 * a).floor() as u64;
        for d in (16.0 * a).ceil() as u64 + 1..=64 * a.ceil() as u64 {
            let bound = chain_sep_prob_bound(a, d as f64)?;
            for x in 0..=top {
                for y in 0..=top {
                    let p = chain_sep_exact_prob(x, y, d)?;
                    cases += 1;
                    if p > bound && worst.is_none_or(|w| p - bound > w.0 - w.1) {
                        worst = Some((p, bound, x, y, d));
                    }
                }
            }
        }
    }
    Ok(match worst {
        None => (true, format!("{cases} cases, no exceedance")),
        Some((p, b, x, y, d)) => (false, format!("{cases} cases; exact {p} > bound {b} at |J_mu|={x}, |J_nu|={y}, d={d}")),
    })
}

/// Monte Carlo estimates within four standard errors of the exact value in
/// at least 99% of `reps` repetitions, for three fixed index-set pairs.
pub fn monte_carlo_consistency(trials: u64, reps: u64, seed: u64) -> labelcut::Result<(bool, String)> {
    let triples: [(&[usize], &[usize], usize); 3] = [(&[1], &[1], 2), (&[1, 2], &[1], 3), (&[1, 2, 3], &[1, 2], 8)];
    let mut pass = true;
    let mut parts = Vec::new();
    for (t, (j_mu, j_nu, d)) in triples.into_iter().enumerate() {
        let exact = chain_sep_exact_prob(j_mu.len() as u64, j_nu.len() as u64, d as u64)?;
        let mut inside = 0;
        for r in 0..reps {
            let s = seed.wrapping_mul(1_000_003).wrapping_add(t as u64 * 1_000_000 + r);
            if monte_carlo_chain_sep(j_mu, j_nu, d, trials, s)?.within(exact, 4.0) {
                inside += 1;
            }
        }
        pass &= inside as f64 >= 0.99 * reps as f64;
        parts.push(format!("({},{},{}): {inside}/{reps}", j_mu.len(), j_nu.len(), d));
    }
    Ok((pass, parts.join(", ")))
}

/// Distinct configurations of size-`c` sets never exceed the counting bound,
/// for `k <= 2`, `d <= 4`, `c <= 4`.
pub fn configuration_counts() -> labelcut::Result<(bool, String)> {
    let mut cases = 0;
    for k in 1..=2usize {
        for d in 1..=4usize {
            for c in 0..=4usize.min(k * d) {
                let count = enumerate_configurations_exact(k, d, c)?;
                let bound = log_config_count_bound(k as f64, d as f64, c as f64 / k as f64)?;
                cases += 1;
                if (count as f64).ln() > bound + 1e-12 {
                    return Ok((false, format!("k={k} d={d} c={c}: {count} > e^{bound}")));
                }
            }
        }
    }
    Ok((true, format!("{cases} triples")))
}

/// The binomial tail inequality on `d <= 64` wherever `d > 2r`.
pub fn binomial_tail() -> labelcut::Result<(bool, String)> {
    let mut cases = 0;
    for d in 2..=64u64 {
        for r in (1..d).filter(|&r| d > 2 * r) {
            cases += 1;
            if !binomial_tail_holds(d, r)? {
                return Ok((false, format!("fails at d={d}, r={r}")));
            }
        }
    }
    Ok((true, format!("{cases} pairs with d > 2r")))
}

/// `x = 1/d` everywhere is feasible for the distinct-label relaxation, with
/// objective `k`, under both oracles.
pub fn uniform_feasibility(seed: u64) -> labelcut::Result<(bool, String)> {
    let mut cases = 0;
    for (k, d, h) in [(2, 2, 1), (3, 2, 2), (4, 4, 2)] {
        for s in 0..3 {
            let gap = make_gap_instance(&GadgetParams::new(k, d, h, seed.wrapping_add(s))?)?;
            let x = FractionalLabeling::uniform(k * d, 1.0 / d as f64);
            let generic = min_weight_path_lp2_generic(&gap.instance, &x, DEFAULT_NODE_LIMIT)?.weight;
            let gadget = min_weight_path_lp2_gadget(&gap.instance, &gap.permutations, &x)?.weight;
            cases += 1;
            if generic < 1.0 - 1e-7 || gadget < 1.0 - 1e-7 || (x.objective() - k as f64).abs() > 1e-9 {
                return Ok((false, format!("k={k} d={d} h={h}: min path weights {generic}, {gadget}")));
            }
        }
    }
    Ok((true, format!("{cases} instances")))
}

/// `ln z` at the reference point, and a finite crossover at `epsilon = 0.32`.
pub fn z_scan() -> labelcut::Result<(bool, String)> {
    let v = eval_log_z(4.0, 128.0, 4.0, 2.0)?;
    let scan = scan_log_z(0.32, 2.0, 1.5, 1e40)?;
    let pass = (v - 178.41).abs() <= 0.01 && scan.crossover.is_some();
    let cross = scan.crossover.map_or("none".to_string(), |k| format!("{k:e}"));
    Ok((pass, format!("ln z(4,128,4,2) = {v:.4}; crossover at eps=0.32: k = {cross}")))
}

/// The exponent inequality for the settings derived at several epsilons.
pub fn exponent() -> labelcut::Result<(bool, String)> {
    let mut parts = Vec::new();
    let mut pass = true;
    for eps in [0.05, 0.1, 0.2, 0.3, 0.32] {
        let s = AsymptoticSettings::new(eps, 2.0)?;
        let ok = check_exponent(s.delta, s.beta, eps)?;
        pass &= ok;
        parts.push(format!("eps={eps}: {ok}"));
    }
    Ok((pass, parts.join(", ")))
}

pub fn run_all(args: &VerifyArgs) -> Vec<Check> {
    vec![
        check("sep-prob-dominance", dominance_grid()),
        check("monte-carlo", monte_carlo_consistency(args.trials, args.reps, args.seed)),
        check("config-count", configuration_counts()),
        check("binomial-tail", binomial_tail()),
        check("uniform-feasible", uniform_feasibility(args.seed)),
        check("log-z", z_scan()),
        check("exponent", exponent()),
    ]
}

pub(crate) fn run(args: VerifyArgs, out: &mut impl Write) -> CliResult<()> {
    let checks = run_all(&args);
    for c in &checks {
        if args.json {
            writeln!(out, "{}", serde_json::to_string(c).expect("check serializes"))?;
        } else {
            writeln!(out, "{} {} {}", if c.pass { "PASS" } else { "FAIL" }, c.name, c.detail)?;
        }
    }
    let failed = checks.iter().filter(|c| !c.pass).count();
    if failed > 0 {
        return Err(CliError::ChecksFailed(failed));
    }
    Ok(())
}
