use super::mincut::label_cut_upper_bound_via_min_cut;
use super::{CutMethod, CutResult, DEFAULT_EXACT_GUARD};
use crate::error::{Error, Result};
use crate::graph::{Instance, LabelId, LabelSubset};

struct Search<'a> {
    instance: &'a Instance,
    multiplicity: Vec<usize>,
    chosen: Vec<bool>,
    forbidden: Vec<bool>,
    // a cut must have fewer than `bound` labels to be recorded
    bound: usize,
    best: Option<Vec<LabelId>>,
    stop_at_first: bool,
    nodes: u64,
    guard: u64,
}

impl Search<'_> {
    fn chosen_labels(&self) -> Vec<LabelId> {
        (0..self.chosen.len()).filter(|&l| self.chosen[l]).collect()
    }

    /// Number of paths, pairwise disjoint in their selectable labels, that
    /// survive the current choice. `None` when some surviving path has no
    /// selectable label at all.
    fn disjoint_paths(&self) -> Option<usize> {
        let mut removed = self.chosen.clone();
        let mut count = 0;
        while let Some(path) = self.instance.find_path_avoiding(&removed) {
            let mut any = false;
            for &ei in &path {
                let l = self.instance.edges()[ei].label;
                if !self.forbidden[l] {
                    removed[l] = true;
                    any = true;
                }
            }
            if !any {
                return None;
            }
            count += 1;
        }
        Some(count)
    }

    fn visit(&mut self, depth: usize) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.guard {
            return Err(Error::Resource {
                guard: "bnb-nodes",
                detail: format!("branch and bound passed {} nodes", self.guard),
            });
        }
        let Some(path) = self.instance.find_path_avoiding(&self.chosen) else {
            if depth < self.bound {
                self.bound = depth;
                self.best = Some(self.chosen_labels());
            }
            return Ok(());
        };
        match self.disjoint_paths() {
            Some(lb) if depth + lb < self.bound => {}
            _ => return Ok(()),
        }
        let mut branch: Vec<LabelId> = path
            .iter()
            .map(|&ei| self.instance.edges()[ei].label)
            .filter(|&l| !self.forbidden[l])
            .collect();
        branch.sort_unstable_by(|&a, &b| self.multiplicity[b].cmp(&self.multiplicity[a]).then(a.cmp(&b)));
        branch.dedup();
        let saved = self.forbidden.clone();
        for &l in &branch {
            if depth + 1 >= self.bound {
                break;
            }
            self.chosen[l] = true;
            self.visit(depth + 1)?;
            self.chosen[l] = false;
            if self.stop_at_first && self.best.is_some() {
                break;
            }
            // later siblings never take an earlier sibling's label
            self.forbidden[l] = true;
        }
        self.forbidden = saved;
        Ok(())
    }
}

/// Minimum label cut by branch and bound on the hitting-set view: every
/// s-t path must lose one of its labels. Each node finds a fewest-hop path
/// that survives the labels chosen so far and branches on which of its
/// labels to remove, most frequent label first. Nodes are pruned against
/// the incumbent (seeded from [`label_cut_upper_bound_via_min_cut`]) using
/// a greedy family of label-disjoint paths as a lower bound.
///
/// The reported witness is the lexicographically smallest optimal set.
pub fn min_label_cut_bnb(instance: &Instance) -> Result<CutResult> {
    min_label_cut_bnb_limited(instance, DEFAULT_EXACT_GUARD)
}

/// [`min_label_cut_bnb`] with an explicit node guard shared by the
/// optimization and the witness selection.
pub fn min_label_cut_bnb_limited(instance: &Instance, guard: u64) -> Result<CutResult> {
    let q = instance.label_count();
    let mut search = Search {
        instance,
        multiplicity: instance.label_multiplicity(),
        chosen: vec![false; q],
        forbidden: vec![false; q],
        bound: usize::MAX,
        best: None,
        stop_at_first: false,
        nodes: 0,
        guard,
    };
    if instance.is_connected() {
        let upper = label_cut_upper_bound_via_min_cut(instance);
        search.bound = upper.size;
        search.best = Some(upper.witness.as_slice().to_vec());
    }
    search.visit(0)?;
    let opt = search.bound;

    // Fix labels in increasing order, keeping each one exactly when some
    // optimal cut still extends the current decisions.
    let mut forced = vec![false; q];
    let mut excluded = vec![false; q];
    let mut taken = 0;
    for l in instance.used_labels() {
        if taken == opt {
            break;
        }
        forced[l] = true;
        search.chosen = forced.clone();
        search.forbidden = excluded.clone();
        search.bound = opt + 1;
        search.best = None;
        search.stop_at_first = true;
        search.visit(taken + 1)?;
        if search.best.is_some() {
            taken += 1;
        } else {
            forced[l] = false;
            excluded[l] = true;
        }
    }
    let witness: LabelSubset = (0..q).filter(|&l| forced[l]).collect();
    debug_assert!(!instance.connected_avoiding(&forced));
    Ok(CutResult {
        size: opt,
        witness,
        method: CutMethod::BranchAndBound,
        nodes: search.nodes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::min_label_cut_exhaustive;
    use crate::generators::{assemble, make_path_instance, make_random_instance, GadgetParams, PermutationTable};
    use crate::graph::Edge;

    #[test]
    fn path_and_tiny_gadget() {
        assert_eq!(min_label_cut_bnb(&make_path_instance(7).unwrap()).unwrap().size, 1);
        let params = GadgetParams::new(2, 2, 1, 0).unwrap();
        let gap = assemble(&params, PermutationTable::identity(2, 2, 1), false).unwrap();
        let r = min_label_cut_bnb(&gap.instance).unwrap();
        assert_eq!(r.size, 2);
        assert_eq!(r.witness.as_slice(), &[0, 2]);
    }

    #[test]
    fn disconnected_is_zero() {
        let g = Instance::new(3, vec![Edge::new(0, 2, 0)], 0, 1, 1, false).unwrap();
        let r = min_label_cut_bnb(&g).unwrap();
        assert_eq!((r.size, r.witness.len()), (0, 0));
    }

    #[test]
    fn matches_exhaustive_including_witness() {
        for seed in 0..40 {
            let g = make_random_instance(9, 16, 5, seed % 2 == 1, seed).unwrap();
            let a = min_label_cut_exhaustive(&g, None).unwrap().optimal().unwrap().clone();
            let b = min_label_cut_bnb(&g).unwrap();
            assert_eq!((a.size, &a.witness), (b.size, &b.witness), "seed {seed}");
        }
    }

    #[test]
    fn node_guard() {
        let g = crate::generators::make_gap_instance(&GadgetParams::new(4, 4, 2, 3).unwrap())
            .unwrap()
            .instance;
        assert!(matches!(
            min_label_cut_bnb_limited(&g, 3),
            Err(Error::Resource { guard: "bnb-nodes", .. })
        ));
    }
}
