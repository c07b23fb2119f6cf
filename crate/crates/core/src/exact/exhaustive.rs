use super::{CutMethod, CutResult, ExactOutcome, DEFAULT_EXACT_GUARD};
use crate::analysis::binomial_u128;
use crate::error::{Error, Result};
use crate::graph::{Instance, LabelSubset};

/// Tries label sets of size 0, 1, 2, ... in lexicographic order within each
/// size and returns the first one that disconnects s from t. Only labels
/// that appear on some edge are considered.
pub fn min_label_cut_exhaustive(instance: &Instance, cap: Option<usize>) -> Result<ExactOutcome> {
    min_label_cut_exhaustive_limited(instance, cap, DEFAULT_EXACT_GUARD)
}

/// [`min_label_cut_exhaustive`] with an explicit per-level subset guard.
pub fn min_label_cut_exhaustive_limited(
    instance: &Instance,
    cap: Option<usize>,
    guard: u64,
) -> Result<ExactOutcome> {
    let used = instance.used_labels();
    let mut removed = vec![false; instance.label_count()];
    let mut tested = 1u64;
    if !instance.connected_avoiding(&removed) {
        return Ok(ExactOutcome::Optimal(CutResult {
            size: 0,
            witness: LabelSubset::empty(),
            method: CutMethod::Exhaustive,
            nodes: tested,
        }));
    }
    let top = cap.map_or(used.len(), |c| c.min(used.len()));
    for size in 1..=top {
        let count = binomial_u128(used.len() as u64, size as u64).unwrap_or(u128::MAX);
        if count > guard as u128 {
            return Err(Error::Resource {
                guard: "exhaustive-level",
                detail: format!(
                    "level {size} has C({}, {size}) = {count} subsets, above the guard {guard}",
                    used.len()
                ),
            });
        }
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            for &i in &idx {
                removed[used[i]] = true;
            }
            tested += 1;
            let cut = !instance.connected_avoiding(&removed);
            for &i in &idx {
                removed[used[i]] = false;
            }
            if cut {
                return Ok(ExactOutcome::Optimal(CutResult {
                    size,
                    witness: idx.iter().map(|&i| used[i]).collect(),
                    method: CutMethod::Exhaustive,
                    nodes: tested,
                }));
            }
            let n = used.len();
            let Some(i) = (0..size).rev().find(|&i| idx[i] != i + n - size) else {
                break;
            };
            idx[i] += 1;
            for j in i + 1..size {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    match cap {
        Some(cap) if cap < used.len() => Ok(ExactOutcome::AboveCap { cap, nodes: tested }),
        // removing every used label always separates s from t
        _ => unreachable!("the full set of used labels is a cut"),
    }
}
