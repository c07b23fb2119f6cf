use std::io::Write;

use labelcut::exact::{min_label_cut_bnb_limited, min_label_cut_exhaustive_limited, CutResult, ExactOutcome};
use labelcut::generators::{sidecar_path, GadgetMeta};
use labelcut::lp::{solve_relaxation, to_lp_format, CuttingPlaneOptions, Lp2Oracle, Relaxation};
use labelcut::LabelSubset;

use crate::{read_instance, write_file, CliError, CliResult, ExactMethod, OracleKind, SolveExactArgs, SolveLpArgs, Variant};

fn join(labels: &LabelSubset) -> String {
    labels.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" ")
}

pub(crate) fn run_exact(args: SolveExactArgs, out: &mut impl Write) -> CliResult<()> {
    let instance = read_instance(&args.instance)?;
    let outcome = match args.method {
        ExactMethod::Exhaustive => min_label_cut_exhaustive_limited(&instance, args.cap, args.guard)?,
        ExactMethod::Bnb => {
            if args.cap.is_some() {
                return Err(CliError::Usage("--cap applies to --method exhaustive".into()));
            }
            ExactOutcome::Optimal(min_label_cut_bnb_limited(&instance, args.guard)?)
        }
    };
    if args.json {
        writeln!(out, "{}", serde_json::to_string(&outcome).expect("outcome serializes"))?;
        return Ok(());
    }
    match outcome {
        ExactOutcome::Optimal(CutResult {
            size,
            witness,
            method,
            nodes,
        }) => {
            writeln!(out, "method {method}")?;
            writeln!(out, "opt {size}")?;
            writeln!(out, "witness {}", join(&witness))?;
            writeln!(out, "nodes {nodes}")?;
        }
        ExactOutcome::AboveCap { cap, nodes } => {
            writeln!(out, "method exhaustive")?;
            writeln!(out, "opt >{cap}")?;
            writeln!(out, "nodes {nodes}")?;
        }
    }
    Ok(())
}

pub(crate) fn run_lp(args: SolveLpArgs, out: &mut impl Write) -> CliResult<()> {
    let instance = read_instance(&args.instance)?;
    let variant = match args.variant {
        Variant::Lp1 => Relaxation::Lp1,
        Variant::Lp2 => Relaxation::Lp2,
    };
    let table = match args.oracle {
        OracleKind::Generic => None,
        OracleKind::Gadget => {
            let meta = args.meta.clone().unwrap_or_else(|| sidecar_path(&args.instance));
            Some(GadgetMeta::read(&meta)?.table()?)
        }
    };
    let oracle = match &table {
        Some(t) => Lp2Oracle::Gadget(t),
        None => Lp2Oracle::Generic,
    };
    let opts = CuttingPlaneOptions {
        max_cuts: args.max_cuts,
        ..Default::default()
    };
    let result = solve_relaxation(&instance, variant, oracle, &opts)?;
    if let Some(path) = &args.emit_lp {
        write_file(path, &to_lp_format(instance.label_count(), variant, &result.cuts))?;
    }
    if args.json {
        writeln!(out, "{}", serde_json::to_string(&result).expect("result serializes"))?;
        return Ok(());
    }
    let x: Vec<String> = result.labeling.as_slice().iter().map(|v| format!("{v:.6}")).collect();
    writeln!(out, "variant {}", if variant == Relaxation::Lp1 { "lp1" } else { "lp2" })?;
    writeln!(out, "value {:.6}", result.value)?;
    writeln!(out, "cuts {}", result.cuts.len())?;
    writeln!(out, "active {}", result.active.len())?;
    writeln!(out, "iterations {}", result.iterations)?;
    writeln!(out, "x {}", x.join(" "))?;
    Ok(())
}
