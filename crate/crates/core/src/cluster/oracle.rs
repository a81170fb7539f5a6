//! Reference syndrome validation that relabels all clusters from scratch every round.
//!
//! No union-find and no boundary lists: each round labels the connected components of
//! the fully grown edges, and every vertex of an odd component advances each of its
//! incident edges by one half-step. Used to check the fast implementations.

use crate::lattice::{SyndromeGraph, VertexId};
use crate::sets::{EdgeSet, VertexSet};

/// Modified erasure produced by uniform growth, computed the slow way.
pub fn validate_equivalence_oracle(
    graph: &SyndromeGraph,
    erasure: &EdgeSet,
    syndrome: &VertexSet,
) -> EdgeSet {
    let n = graph.vertex_count();
    let mut level: Vec<u8> = erasure.as_slice().iter().map(|&b| if b { 2 } else { 0 }).collect();
    loop {
        let component = components(graph, &level);
        let mut odd = vec![false; n];
        for v in 0..n {
            odd[component[v]] ^= syndrome.as_slice()[v];
        }
        if !odd.iter().any(|&o| o) {
            break;
        }
        let mut step = vec![0u8; graph.edge_count()];
        for v in (0..n).filter(|&v| odd[component[v]]) {
            for &(e, _) in graph.incident(VertexId(v)) {
                step[e.0] += 1;
            }
        }
        for (l, s) in level.iter_mut().zip(step) {
            if *l < 2 {
                *l = (*l + s).min(2);
            }
        }
    }
    EdgeSet::from_indices(graph.edge_count(), (0..graph.edge_count()).filter(|&e| level[e] == 2))
}

/// Component label per vertex over the edges at level 2.
fn components(graph: &SyndromeGraph, level: &[u8]) -> Vec<usize> {
    let n = graph.vertex_count();
    let mut label = vec![usize::MAX; n];
    let mut queue = std::collections::VecDeque::new();
    for s in 0..n {
        if label[s] != usize::MAX {
            continue;
        }
        label[s] = s;
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            for &(e, w) in graph.incident(VertexId(v)) {
                if level[e.0] == 2 && label[w.0] == usize::MAX {
                    label[w.0] = s;
                    queue.push_back(w.0);
                }
            }
        }
    }
    label
}
