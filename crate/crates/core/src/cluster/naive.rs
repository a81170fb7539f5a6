//! Syndrome validation with a plain cluster-index table.
//!
//! Each vertex stores its cluster label directly, so lookups are O(1) but a merge
//! relabels every vertex of the smaller cluster, and growth scans every member instead
//! of a boundary list. Quadratic in the worst case.

use crate::lattice::{SyndromeGraph, VertexId};
use crate::sets::{EdgeSet, VertexSet};

use super::ValidationResult;

pub(super) fn validate_naive(
    graph: &SyndromeGraph,
    erasure: &EdgeSet,
    syndrome: &VertexSet,
) -> ValidationResult {
    let n = graph.vertex_count();
    let mut level: Vec<u8> = erasure.as_slice().iter().map(|&b| if b { 2 } else { 0 }).collect();
    let mut label = vec![usize::MAX; n];
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut odd = vec![false; n];

    for root in 0..n {
        if label[root] != usize::MAX {
            continue;
        }
        label[root] = root;
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            members[root].push(v);
            odd[root] ^= syndrome.as_slice()[v];
            for &(e, w) in graph.incident(VertexId(v)) {
                if level[e.0] == 2 && label[w.0] == usize::MAX {
                    label[w.0] = root;
                    stack.push(w.0);
                }
            }
        }
    }

    let mut odd_list: Vec<usize> = (0..n).filter(|&c| label[c] == c && odd[c]).collect();
    let (mut rounds, mut unions, mut lookups) = (0usize, 0u64, 0u64);
    let mut fusion = Vec::new();
    while !odd_list.is_empty() {
        rounds += 1;
        fusion.clear();
        for &c in &odd_list {
            for &v in &members[c] {
                for &(e, _) in graph.incident(VertexId(v)) {
                    if level[e.0] < 2 {
                        level[e.0] += 1;
                        if level[e.0] == 2 {
                            fusion.push(e);
                        }
                    }
                }
            }
        }
        for &e in &fusion {
            let [a, b] = graph.endpoints(e);
            let (la, lb) = (label[a.0], label[b.0]);
            lookups += 2;
            if la == lb {
                continue;
            }
            unions += 1;
            let (big, small) = if members[la].len() >= members[lb].len() { (la, lb) } else { (lb, la) };
            let moved = std::mem::take(&mut members[small]);
            for &w in &moved {
                label[w] = big;
            }
            members[big].extend(moved);
            odd[big] ^= odd[small];
        }
        // Each old label vertex still sits in its (possibly merged) cluster.
        for c in odd_list.iter_mut() {
            *c = label[*c];
            lookups += 1;
        }
        odd_list.sort_unstable();
        odd_list.dedup();
        odd_list.retain(|&c| odd[c]);
    }

    ValidationResult {
        modified_erasure: EdgeSet::from_indices(
            graph.edge_count(),
            (0..graph.edge_count()).filter(|&e| level[e] == 2),
        ),
        growth_rounds: rounds,
        union_calls: unions,
        find_calls: lookups,
    }
}
