//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails.

use std::process::Command;
use std::time::Instant;

use labelcut::analysis::{
    binomial_tail_holds, chain_sep_exact_prob, chain_sep_prob_bound, enumerate_configurations_exact,
    eval_log_z, log_config_count_bound, log_z_at, monte_carlo_chain_sep, scan_log_z,
};
use labelcut::exact::{min_label_cut_bnb, min_label_cut_exhaustive};
use labelcut::generators::{
    assemble, derive_params, make_gap_instance, make_path_instance, make_random_instance, GadgetParams,
    PermutationTable,
};
use labelcut::lp::{
    min_weight_path_lp2_gadget, min_weight_path_lp2_generic, separate_lp2_gadget, separate_lp2_generic,
    solve_relaxation, CuttingPlaneOptions, FractionalLabeling, Lp2Oracle, Relaxation, DEFAULT_NODE_LIMIT,
};
use labelcut::Instance;
use labelcut_cli::gap::{evaluate, GridPoint, SolveSettings};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lp_value(g: &Instance, variant: Relaxation, oracle: Lp2Oracle<'_>) -> Result<f64, String> {
    solve_relaxation(g, variant, oracle, &CuttingPlaneOptions::default())
        .map(|r| r.value)
        .map_err(|e| e.to_string())
}

fn path_family() -> Outcome {
    let start = Instant::now();
    let settings = SolveSettings {
        cap: 4,
        guard: 1_000_000,
        timings: false,
    };
    let mut parts = Vec::new();
    for m in [5usize, 20, 100] {
        let g = make_path_instance(m).map_err(|e| e.to_string())?;
        let opt = min_label_cut_bnb(&g).map_err(|e| e.to_string())?.size;
        let lp1 = lp_value(&g, Relaxation::Lp1, Lp2Oracle::Generic)?;
        ensure(opt == 1, || format!("m={m}: OPT {opt}"))?;
        ensure((lp1 - 1.0 / m as f64).abs() <= 1e-9, || format!("m={m}: LP1 {lp1}"))?;
        let row = evaluate(&GridPoint::Path { m }, settings).map_err(|e| e.to_string())?;
        let reported = row.csv_row().split(',').nth(11).unwrap_or_default().to_string();
        ensure(reported == format!("{m}.000000"), || format!("m={m}: reported gap {reported}"))?;
        parts.push(format!("m={m} gap {reported}"));
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 1.0, || format!("took {secs:.3} s"))?;
    Ok(format!("{} ({secs:.3} s)", parts.join(", ")))
}

fn uniform_feasibility() -> Outcome {
    let start = Instant::now();
    let mut n = 0;
    for (k, d, h) in [(2usize, 2usize, 1usize), (3, 2, 2), (4, 4, 2)] {
        for seed in [1u64, 2, 3] {
            let gap = make_gap_instance(&GadgetParams::new(k, d, h, seed).unwrap()).map_err(|e| e.to_string())?;
            let x = FractionalLabeling::uniform(k * d, 1.0 / d as f64);
            let generic = separate_lp2_generic(&gap.instance, &x, 1e-7, DEFAULT_NODE_LIMIT).map_err(|e| e.to_string())?;
            let gadget = separate_lp2_gadget(&gap.instance, &gap.permutations, &x, 1e-7).map_err(|e| e.to_string())?;
            ensure(generic.is_none() && gadget.is_none(), || format!("({k},{d},{h}) seed {seed}: violated path"))?;
            ensure((x.objective() - k as f64).abs() < 1e-12, || format!("objective {}", x.objective()))?;
            n += 1;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 5.0, || format!("took {secs:.3} s"))?;
    Ok(format!("{n} instances feasible, objective k ({secs:.3} s)"))
}

fn hand_solved() -> Outcome {
    let params = GadgetParams::new(2, 2, 1, 0).unwrap();
    let gap = assemble(&params, PermutationTable::identity(2, 2, 1), false).map_err(|e| e.to_string())?;
    let g = &gap.instance;
    let lp1 = lp_value(g, Relaxation::Lp1, Lp2Oracle::Generic)?;
    let lp2g = lp_value(g, Relaxation::Lp2, Lp2Oracle::Generic)?;
    let lp2s = lp_value(g, Relaxation::Lp2, Lp2Oracle::Gadget(&gap.permutations))?;
    let opt = min_label_cut_exhaustive(g, None).map_err(|e| e.to_string())?;
    let opt = opt.optimal().map(|r| r.size);
    ensure((lp1 - 1.0).abs() <= 1e-6, || format!("LP1 {lp1}"))?;
    ensure((lp2g - 2.0).abs() <= 1e-6 && (lp2s - 2.0).abs() <= 1e-6, || format!("LP2 {lp2g} / {lp2s}"))?;
    ensure(opt == Some(2), || format!("OPT {opt:?}"))?;
    Ok(format!("LP1 {lp1:.6}, LP2 {lp2s:.6}, OPT 2"))
}

fn dominance() -> Outcome {
    let start = Instant::now();
    let mut cases = 0u64;
    for a in [0.5f64, 1.0, 2.0, 4.0] {
        let top = (4.0 * a).floor() as u64;
        for d in (16.0 * a).ceil() as u64 + 1..=64 * a.ceil() as u64 {
            let bound = chain_sep_prob_bound(a, d as f64).map_err(|e| e.to_string())?;
            for x in 0..=top {
                for y in 0..=top {
                    let p = chain_sep_exact_prob(x, y, d).map_err(|e| e.to_string())?;
                    ensure(p <= bound, || format!("a={a} d={d} sizes ({x},{y}): {p} > {bound}"))?;
                    cases += 1;
                }
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 10.0, || format!("took {secs:.3} s"))?;
    Ok(format!("{cases} cases, no exceedance ({secs:.3} s)"))
}

fn monte_carlo() -> Outcome {
    let triples: [(&[usize], &[usize], usize, Option<f64>); 3] = [
        (&[1], &[1], 2, Some(0.5)),
        (&[1, 2], &[1], 3, Some(2.0 / 3.0)),
        (&[1, 2, 3], &[1, 2], 8, None),
    ];
    let mut parts = Vec::new();
    for (t, (j_mu, j_nu, d, known)) in triples.into_iter().enumerate() {
        let exact = chain_sep_exact_prob(j_mu.len() as u64, j_nu.len() as u64, d as u64).map_err(|e| e.to_string())?;
        if let Some(v) = known {
            ensure((exact - v).abs() < 1e-15, || format!("exact value {exact} for d={d}"))?;
        }
        let mut inside = 0;
        for rep in 0..100u64 {
            let est = monte_carlo_chain_sep(j_mu, j_nu, d, 100_000, 5000 * t as u64 + rep).map_err(|e| e.to_string())?;
            inside += u32::from(est.within(exact, 4.0));
        }
        ensure(inside >= 99, || format!("d={d}: {inside}/100 within 4 SE"))?;
        parts.push(format!("d={d}: {inside}/100"));
    }
    Ok(parts.join(", "))
}

fn counting() -> Outcome {
    let mut triples = 0;
    for k in 1..=2usize {
        for d in 1..=4usize {
            for c in 0..=4usize.min(k * d) {
                let count = enumerate_configurations_exact(k, d, c).map_err(|e| e.to_string())?;
                let bound = log_config_count_bound(k as f64, d as f64, c as f64 / k as f64).map_err(|e| e.to_string())?;
                ensure((count as f64).ln() <= bound + 1e-12, || format!("k={k} d={d} c={c}: {count}"))?;
                triples += 1;
            }
        }
    }
    // the tail inequality as used: r = 4a with a = c/k, and d > 8a
    let mut pairs = 0;
    for d in 2..=64u64 {
        for r in (1..d).filter(|&r| d > 2 * r) {
            ensure(binomial_tail_holds(d, r).map_err(|e| e.to_string())?, || format!("tail fails at d={d} r={r}"))?;
            pairs += 1;
        }
    }
    let mut outside = 0;
    for d in 2..=64u64 {
        for r in (1..d).filter(|&r| d <= 2 * r) {
            outside += u32::from(!binomial_tail_holds(d, r).map_err(|e| e.to_string())?);
        }
    }
    Ok(format!(
        "{triples} triples within the count bound; tail holds on {pairs} pairs with d <= 64, d > 8a \
         ({outside} failures outside that regime)"
    ))
}

fn log_z() -> Outcome {
    let v = eval_log_z(4.0, 128.0, 4.0, 2.0).map_err(|e| e.to_string())?;
    ensure((v - 178.41).abs() <= 0.01, || format!("ln z = {v}"))?;
    let small = derive_params(0.32, 4).map_err(|e| e.to_string())?;
    let scan = scan_log_z(0.32, 2.0, 1.5, 1e40).map_err(|e| e.to_string())?;
    let k = scan.crossover.ok_or("no crossover found")?;
    let after = log_z_at(0.32, k).map_err(|e| e.to_string())?;
    ensure(after < 0.0, || format!("ln z({k}) = {after}"))?;
    Ok(format!(
        "ln z(4,128,4,2) = {v:.4}; eps=0.32 (k=4 gives d={}, h={}): ln z < 0 from k = {k:.6e}",
        small.d, small.h
    ))
}

fn oracle_suites() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut gadgets = Vec::new();
    for k in 2..=3 {
        for d in 1..=3 {
            for h in 1..=2 {
                gadgets.push(make_gap_instance(&GadgetParams::new(k, d, h, rng.gen()).unwrap()).map_err(|e| e.to_string())?);
            }
        }
    }
    let mut worst = 0.0f64;
    for i in 0..100 {
        let gap = &gadgets[i % gadgets.len()];
        let q = gap.instance.label_count();
        let x = FractionalLabeling::new((0..q).map(|_| rng.gen_range(0.0..0.8)).collect()).unwrap();
        let a = min_weight_path_lp2_gadget(&gap.instance, &gap.permutations, &x).map_err(|e| e.to_string())?;
        let b = min_weight_path_lp2_generic(&gap.instance, &x, DEFAULT_NODE_LIMIT).map_err(|e| e.to_string())?;
        worst = worst.max((a.weight - b.weight).abs());
    }
    ensure(worst <= 1e-9, || format!("oracle weights differ by {worst}"))?;

    let mut randoms = Vec::new();
    while randoms.len() < 50 {
        let n = rng.gen_range(4..=12);
        let m = rng.gen_range(n..=(n * (n - 1) / 2).min(3 * n));
        let q = rng.gen_range(1..=6);
        randoms.push(make_random_instance(n, m, q, rng.gen_bool(0.3), rng.gen()).map_err(|e| e.to_string())?);
    }
    for (i, g) in randoms.iter().enumerate() {
        let ex = min_label_cut_exhaustive(g, None).map_err(|e| e.to_string())?;
        let ex = ex.optimal().cloned().ok_or("exhaustive capped")?;
        let bb = min_label_cut_bnb(g).map_err(|e| e.to_string())?;
        ensure(ex.size == bb.size && ex.witness == bb.witness, || format!("random instance {i}: {ex:?} vs {bb:?}"))?;
    }

    let mut sandwiched = 0;
    let all = gadgets
        .iter()
        .map(|g| (&g.instance, Some(&g.permutations)))
        .chain(randoms.iter().map(|g| (g, None)));
    for (g, table) in all {
        if !g.is_connected() {
            continue;
        }
        let oracle = table.map_or(Lp2Oracle::Generic, Lp2Oracle::Gadget);
        let lp1 = lp_value(g, Relaxation::Lp1, Lp2Oracle::Generic)?;
        let lp2 = lp_value(g, Relaxation::Lp2, oracle)?;
        let opt = min_label_cut_bnb(g).map_err(|e| e.to_string())?.size as f64;
        ensure(lp1 <= lp2 + 1e-6 && lp2 <= opt + 1e-6, || format!("LP1 {lp1}, LP2 {lp2}, OPT {opt}"))?;
        sandwiched += 1;
    }
    Ok(format!(
        "100 labelings (max diff {worst:.1e}); 50 random instances agree; sandwich on {sandwiched} connected instances"
    ))
}

fn reproducibility() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let run = |name: &str| -> Result<Vec<u8>, String> {
        let path = dir.path().join(name);
        let status = Command::new(env!("CARGO_BIN_EXE_labelcut"))
            .args(["gap", "--family", "gadget", "--k", "2,3,4", "--d", "2,3", "--h", "1,2"])
            .args(["--seeds", "0,1,2", "--jobs", "4", "--csv"])
            .arg(&path)
            .status()
            .map_err(|e| e.to_string())?;
        ensure(status.success(), || format!("gap exited with {status}"))?;
        std::fs::read(&path).map_err(|e| e.to_string())
    };
    let a = run("a.csv")?;
    let b = run("b.csv")?;
    ensure(a == b, || "the two CSV files differ".into())?;
    let rows = a.iter().filter(|&&c| c == b'\n').count() - 1;
    Ok(format!("{rows} rows, {} bytes, identical", a.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("path family: OPT 1, LP1 1/m, gap m", path_family),
        ("x = 1/d feasible under both oracles", uniform_feasibility),
        ("hand-solved k=2 d=2 h=1 values", hand_solved),
        ("separation probability dominated by the bound", dominance),
        ("Monte Carlo within 4 SE", monte_carlo),
        ("configuration counts and tail inequality", counting),
        ("ln z reference value and crossover", log_z),
        ("oracle equivalence and sandwich", oracle_suites),
        ("gap CSV reproducible", reproducibility),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("PASS criterion {}: {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
