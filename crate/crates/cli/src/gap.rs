//! Optimum versus relaxation values over a grid of instances.
//!
//! CSV columns, in order:
//!
//! ```text
//! instance_id,k,d,h,seed,n,m,q,opt,lp1,lp2,gap1,gap2,t_opt_ms,t_lp1_ms,t_lp2_ms,opt_status
//! ```
//!
//! `opt_status` is `exact`, `above_cap` (then `opt` reads `>cap` and the
//! ratios are empty) or `unsolved` (both exact solvers hit their guards).
//! Timing cells are filled only under `--timings`, so that the default
//! output depends on nothing but the flags.

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, ValueEnum};
use labelcut::exact::{min_label_cut_bnb_limited, min_label_cut_exhaustive_limited, ExactOutcome};
use labelcut::generators::{make_gap_instance, make_path_instance, GadgetParams, PermutationTable};
use labelcut::lp::{solve_relaxation, CuttingPlaneOptions, Lp2Oracle, Relaxation};
use labelcut::{Error, Instance};
use rayon::prelude::*;
use serde::Serialize;

use crate::{write_file, CliError, CliResult};

pub const CSV_HEADER: &str =
    "instance_id,k,d,h,seed,n,m,q,opt,lp1,lp2,gap1,gap2,t_opt_ms,t_lp1_ms,t_lp2_ms,opt_status";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GapFamily {
    Path,
    Gadget,
}

#[derive(Debug, Args)]
pub struct GapArgs {
    #[arg(long, value_enum)]
    pub family: GapFamily,
    /// Path lengths (path family).
    #[arg(long, value_delimiter = ',')]
    pub m: Vec<usize>,
    #[arg(long, value_delimiter = ',')]
    pub k: Vec<usize>,
    #[arg(long, value_delimiter = ',')]
    pub d: Vec<usize>,
    #[arg(long, value_delimiter = ',')]
    pub h: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "0")]
    pub seeds: Vec<u64>,
    /// Size cap for the exhaustive fallback.
    #[arg(long, default_value_t = 6)]
    pub cap: usize,
    /// Node guard for branch and bound and per-level guard for the fallback.
    #[arg(long, default_value_t = 1_000_000)]
    pub guard: u64,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    /// CSV destination; stdout when absent.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// JSON-lines destination for the full records.
    #[arg(long)]
    pub records: Option<PathBuf>,
    #[arg(long)]
    pub timings: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OptStatus {
    Exact,
    AboveCap,
    Unsolved,
}

/// One row of the experiment table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GapReport {
    pub instance_id: String,
    pub k: Option<usize>,
    pub d: Option<usize>,
    pub h: Option<usize>,
    pub seed: Option<u64>,
    pub n: usize,
    pub m: usize,
    pub q: usize,
    pub opt: Option<usize>,
    pub opt_status: OptStatus,
    pub cap: usize,
    pub lp1: f64,
    pub lp2: f64,
    pub gap1: Option<f64>,
    pub gap2: Option<f64>,
    pub t_opt_ms: Option<f64>,
    pub t_lp1_ms: Option<f64>,
    pub t_lp2_ms: Option<f64>,
}

fn cell<T: ToString>(v: Option<T>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

fn fcell(v: Option<f64>) -> String {
    v.map(|v| format!("{v:.6}")).unwrap_or_default()
}

impl GapReport {
    pub fn csv_row(&self) -> String {
        let opt = match self.opt_status {
            OptStatus::Exact => cell(self.opt),
            OptStatus::AboveCap => format!(">{}", self.cap),
            OptStatus::Unsolved => String::new(),
        };
        let status = match self.opt_status {
            OptStatus::Exact => "exact",
            OptStatus::AboveCap => "above_cap",
            OptStatus::Unsolved => "unsolved",
        };
        [
            self.instance_id.clone(),
            cell(self.k),
            cell(self.d),
            cell(self.h),
            cell(self.seed),
            self.n.to_string(),
            self.m.to_string(),
            self.q.to_string(),
            opt,
            format!("{:.6}", self.lp1),
            format!("{:.6}", self.lp2),
            fcell(self.gap1),
            fcell(self.gap2),
            fcell(self.t_opt_ms),
            fcell(self.t_lp1_ms),
            fcell(self.t_lp2_ms),
            status.to_string(),
        ]
        .join(",")
    }
}

/// One grid point.
#[derive(Debug, Clone, PartialEq)]
pub enum GridPoint {
    Path { m: usize },
    Gadget(GadgetParams),
}

#[derive(Debug, Clone, Copy)]
pub struct SolveSettings {
    pub cap: usize,
    pub guard: u64,
    pub timings: bool,
}

fn timed<T>(on: bool, f: impl FnOnce() -> T) -> (T, Option<f64>) {
    let start = Instant::now();
    let v = f();
    (v, on.then(|| start.elapsed().as_secs_f64() * 1e3))
}

fn solve_opt(instance: &Instance, s: SolveSettings) -> labelcut::Result<(Option<usize>, OptStatus)> {
    match min_label_cut_bnb_limited(instance, s.guard) {
        Ok(r) => return Ok((Some(r.size), OptStatus::Exact)),
        Err(Error::Resource { .. }) => {}
        Err(e) => return Err(e),
    }
    match min_label_cut_exhaustive_limited(instance, Some(s.cap), s.guard) {
        Ok(ExactOutcome::Optimal(r)) => Ok((Some(r.size), OptStatus::Exact)),
        Ok(ExactOutcome::AboveCap { .. }) => Ok((None, OptStatus::AboveCap)),
        Err(Error::Resource { .. }) => Ok((None, OptStatus::Unsolved)),
        Err(e) => Err(e),
    }
}

/// Builds the instance for `point` and measures OPT, LP1 and LP2.
pub fn evaluate(point: &GridPoint, s: SolveSettings) -> labelcut::Result<GapReport> {
    let (instance, table, id, params): (Instance, Option<PermutationTable>, String, Option<GadgetParams>) =
        match point {
            GridPoint::Path { m } => (make_path_instance(*m)?, None, format!("path-m{m}"), None),
            GridPoint::Gadget(p) => {
                let gap = make_gap_instance(p)?;
                let id = format!("gadget-k{}-d{}-h{}-s{}", p.k, p.d, p.h, p.seed);
                (gap.instance, Some(gap.permutations), id, Some(*p))
            }
        };
    let opts = CuttingPlaneOptions::default();
    let (opt, t_opt_ms) = timed(s.timings, || solve_opt(&instance, s));
    let (opt, opt_status) = opt?;
    let (lp1, t_lp1_ms) = timed(s.timings, || solve_relaxation(&instance, Relaxation::Lp1, Lp2Oracle::Generic, &opts));
    let oracle = match &table {
        Some(t) => Lp2Oracle::Gadget(t),
        None => Lp2Oracle::Generic,
    };
    let (lp2, t_lp2_ms) = timed(s.timings, || solve_relaxation(&instance, Relaxation::Lp2, oracle, &opts));
    let (lp1, lp2) = (lp1?.value, lp2?.value);
    let ratio = |lp: f64| opt.filter(|_| lp > 0.0).map(|o| o as f64 / lp);
    Ok(GapReport {
        instance_id: id,
        k: params.map(|p| p.k),
        d: params.map(|p| p.d),
        h: params.map(|p| p.h),
        seed: params.map(|p| p.seed),
        n: instance.vertex_count(),
        m: instance.edge_count(),
        q: instance.label_count(),
        opt,
        opt_status,
        cap: s.cap,
        lp1,
        lp2,
        gap1: ratio(lp1),
        gap2: ratio(lp2),
        t_opt_ms,
        t_lp1_ms,
        t_lp2_ms,
    })
}

/// Grid points in output order.
pub fn grid(args: &GapArgs) -> CliResult<Vec<GridPoint>> {
    match args.family {
        GapFamily::Path => {
            if args.m.is_empty() {
                return Err(CliError::Usage("the path family needs --m".into()));
            }
            Ok(args.m.iter().map(|&m| GridPoint::Path { m }).collect())
        }
        GapFamily::Gadget => {
            if args.k.is_empty() || args.d.is_empty() || args.h.is_empty() {
                return Err(CliError::Usage("the gadget family needs --k, --d and --h".into()));
            }
            let mut points = Vec::new();
            for &k in &args.k {
                for &d in &args.d {
                    for &h in &args.h {
                        for &seed in &args.seeds {
                            points.push(GridPoint::Gadget(GadgetParams::new(k, d, h, seed)?));
                        }
                    }
                }
            }
            Ok(points)
        }
    }
}

/// Evaluates every point on a pool of `jobs` threads; rows come back in
/// grid order.
pub fn run_grid(points: &[GridPoint], s: SolveSettings, jobs: usize) -> CliResult<Vec<GapReport>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start {jobs} workers: {e}")))?;
    let rows: Vec<labelcut::Result<GapReport>> =
        pool.install(|| points.par_iter().map(|p| evaluate(p, s)).collect());
    Ok(rows.into_iter().collect::<labelcut::Result<Vec<_>>>()?)
}

pub fn to_csv(rows: &[GapReport]) -> String {
    let mut text = String::from(CSV_HEADER);
    text.push('\n');
    for r in rows {
        text.push_str(&r.csv_row());
        text.push('\n');
    }
    text
}

pub(crate) fn run(args: GapArgs, out: &mut impl Write) -> CliResult<()> {
    let points = grid(&args)?;
    let settings = SolveSettings {
        cap: args.cap,
        guard: args.guard,
        timings: args.timings,
    };
    let rows = run_grid(&points, settings, args.jobs)?;
    let csv = to_csv(&rows);
    match &args.csv {
        Some(path) => write_file(path, &csv)?,
        None => out.write_all(csv.as_bytes())?,
    }
    if let Some(path) = &args.records {
        let mut text = String::new();
        for r in &rows {
            text.push_str(&serde_json::to_string(r).expect("report serializes"));
            text.push('\n');
        }
        write_file(path, &text)?;
    }
    Ok(())
}
