use std::io::Write;

use labelcut::format;
use labelcut::generators::{
    derive_params, make_gap_instance_capped, make_path_instance, sidecar_path, GadgetMeta, GadgetParams,
};

use crate::{write_file, CliError, CliResult, Family, GenerateArgs};

pub(crate) fn run(args: GenerateArgs, out: &mut impl Write) -> CliResult<()> {
    match args.family {
        Family::Path { m, out: path } => {
            let instance = make_path_instance(m)?;
            let text = format::emit(&instance);
            match path {
                Some(path) => {
                    write_file(&path, &text)?;
                    writeln!(
                        out,
                        "wrote {} (n={} m={} q={})",
                        path.display(),
                        instance.vertex_count(),
                        instance.edge_count(),
                        instance.label_count()
                    )?;
                }
                None => out.write_all(text.as_bytes())?,
            }
        }
        Family::Gadget {
            k,
            d,
            h,
            epsilon,
            seed,
            edge_cap,
            out: path,
        } => {
            let params = match (epsilon, d, h) {
                (Some(eps), None, None) => derive_params(eps, k)?.with_seed(seed),
                (None, Some(d), Some(h)) => GadgetParams::new(k, d, h, seed)?,
                _ => {
                    return Err(CliError::Usage(
                        "gadget needs either --d and --h, or --epsilon".into(),
                    ))
                }
            };
            let gap = make_gap_instance_capped(&params, edge_cap)?;
            let text = format::emit(&gap.instance);
            match path {
                Some(path) => {
                    write_file(&path, &text)?;
                    let meta = sidecar_path(&path);
                    write_file(&meta, &GadgetMeta::of(&gap).to_json())?;
                    writeln!(
                        out,
                        "wrote {} and {} (n={} m={} q={})",
                        path.display(),
                        meta.display(),
                        gap.instance.vertex_count(),
                        gap.instance.edge_count(),
                        gap.instance.label_count()
                    )?;
                }
                None => out.write_all(text.as_bytes())?,
            }
        }
    }
    Ok(())
}
