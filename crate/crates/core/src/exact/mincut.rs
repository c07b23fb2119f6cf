use std::collections::VecDeque;

use super::{CutMethod, CutResult};
use crate::graph::{Instance, LabelSubset};

struct Arc {
    to: usize,
    cap: u32,
    rev: usize,
}

/// Labels of a minimum s-t edge cut, found by unit-capacity augmenting
/// paths. Always a label cut, rarely an optimal one. `nodes` counts the
/// augmenting paths.
pub fn label_cut_upper_bound_via_min_cut(instance: &Instance) -> CutResult {
    let n = instance.vertex_count();
    let mut graph: Vec<Vec<Arc>> = (0..n).map(|_| Vec::new()).collect();
    for e in instance.edges() {
        let back = if instance.is_directed() { 0 } else { 1 };
        let (iu, iv) = (graph[e.u].len(), graph[e.v].len() + usize::from(e.u == e.v));
        graph[e.u].push(Arc { to: e.v, cap: 1, rev: iv });
        graph[e.v].push(Arc { to: e.u, cap: back, rev: iu });
    }
    let (s, t) = (instance.source(), instance.sink());
    let mut paths = 0u64;
    let reach = loop {
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut seen = vec![false; n];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for (i, arc) in graph[u].iter().enumerate() {
                if arc.cap > 0 && !seen[arc.to] {
                    seen[arc.to] = true;
                    parent[arc.to] = Some((u, i));
                    queue.push_back(arc.to);
                }
            }
        }
        if !seen[t] {
            break seen;
        }
        let mut v = t;
        while let Some((u, i)) = parent[v] {
            graph[u][i].cap -= 1;
            let rev = graph[u][i].rev;
            graph[v][rev].cap += 1;
            v = u;
        }
        paths += 1;
    };
    let witness: LabelSubset = instance
        .edges()
        .iter()
        .filter(|e| reach[e.u] != reach[e.v] && (reach[e.u] || !instance.is_directed()))
        .map(|e| e.label)
        .collect();
    CutResult {
        size: witness.len(),
        witness,
        method: CutMethod::MinCut,
        nodes: paths,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{assemble, make_path_instance, GadgetParams, PermutationTable};
    use crate::graph::{is_label_cut, Edge};

    #[test]
    fn tiny_gadget_takes_the_source_edges() {
        let params = GadgetParams::new(2, 2, 1, 0).unwrap();
        let gap = assemble(&params, PermutationTable::identity(2, 2, 1), false).unwrap();
        let r = label_cut_upper_bound_via_min_cut(&gap.instance);
        assert_eq!(r.size, 2);
        assert_eq!(r.nodes, 2);
        let source_labels: LabelSubset = gap.instance.neighbors(0).iter().map(|&(_, ei)| gap.instance.edges()[ei].label).collect();
        assert_eq!(r.witness, source_labels);
        assert!(is_label_cut(&gap.instance, &r.witness).unwrap());
    }

    #[test]
    fn path_and_disconnected() {
        let r = label_cut_upper_bound_via_min_cut(&make_path_instance(9).unwrap());
        assert_eq!(r.size, 1);
        let g = Instance::new(3, vec![Edge::new(0, 2, 0)], 0, 1, 1, false).unwrap();
        assert_eq!(label_cut_upper_bound_via_min_cut(&g).size, 0);
    }

    #[test]
    fn directed_cut_uses_forward_edges_only() {
        // s -> a -> t plus a back edge t -> s that is irrelevant
        let g = Instance::new(
            3,
            vec![Edge::new(0, 2, 0), Edge::new(2, 1, 1), Edge::new(1, 0, 2)],
            0,
            1,
            3,
            true,
        )
        .unwrap();
        let r = label_cut_upper_bound_via_min_cut(&g);
        assert_eq!(r.size, 1);
        assert!(!r.witness.contains(2));
        assert!(is_label_cut(&g, &r.witness).unwrap());
    }
}
