//! Peeling decoder for erasures.
//!
//! Builds a spanning forest of the erased subgraph and peels it from the leaves: a
//! pendant vertex carrying a syndrome bit puts its tree edge into the correction and
//! passes the bit to its parent. Linear in the size of the graph.

use crate::error::{Error, Result};
use crate::lattice::{EdgeId, SyndromeGraph, VertexId};
use crate::sets::{EdgeSet, VertexSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Correction {
    pub edges: EdgeSet,
}

/// Depth-first spanning forest of `(V, edges)`.
///
/// Each component is rooted at its lowest vertex and neighbors are explored in
/// ascending edge order. `order` lists vertices in discovery order, so reading it
/// backwards visits every vertex before its parent.
#[derive(Clone, Debug, Default)]
pub struct SpanningForest {
    parent_edge: Vec<Option<EdgeId>>,
    order: Vec<VertexId>,
    // scratch for the traversal: (vertex, next incident slot)
    stack: Vec<(VertexId, usize)>,
    seen: Vec<bool>,
}

impl SpanningForest {
    pub fn build(graph: &SyndromeGraph, edges: &EdgeSet) -> Self {
        let mut forest = Self::default();
        forest.rebuild(graph, edges);
        forest
    }

    pub fn rebuild(&mut self, graph: &SyndromeGraph, edges: &EdgeSet) {
        let n = graph.vertex_count();
        self.parent_edge.clear();
        self.parent_edge.resize(n, None);
        self.seen.clear();
        self.seen.resize(n, false);
        self.order.clear();
        for root in graph.vertices() {
            if self.seen[root.0] {
                continue;
            }
            self.seen[root.0] = true;
            self.order.push(root);
            self.stack.push((root, 0));
            while let Some(top) = self.stack.last_mut() {
                let (v, slot) = *top;
                let incident = graph.incident(v);
                let Some(&(e, w)) = incident.get(slot) else {
                    self.stack.pop();
                    continue;
                };
                top.1 += 1;
                if edges.contains(e) && !self.seen[w.0] {
                    self.seen[w.0] = true;
                    self.parent_edge[w.0] = Some(e);
                    self.order.push(w);
                    self.stack.push((w, 0));
                }
            }
        }
    }

    /// Tree edge joining `v` to its parent; `None` for component roots.
    pub fn parent_edge(&self, v: VertexId) -> Option<EdgeId> {
        self.parent_edge[v.0]
    }

    /// Vertices in discovery order.
    pub fn order(&self) -> &[VertexId] {
        &self.order
    }

    pub fn tree_edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.parent_edge.iter().filter_map(|&e| e)
    }
}

/// Reusable buffers for [`peel`].
#[derive(Clone, Debug, Default)]
pub struct Peeler {
    forest: SpanningForest,
    pending: Vec<bool>,
}

impl Peeler {
    /// Writes a correction into `out`. Fails if some component of `(V, erasure)` holds an
    /// odd number of syndrome vertices.
    pub fn peel_into(
        &mut self,
        graph: &SyndromeGraph,
        erasure: &EdgeSet,
        syndrome: &VertexSet,
        out: &mut EdgeSet,
    ) -> Result<()> {
        self.forest.rebuild(graph, erasure);
        self.pending.clear();
        self.pending.extend_from_slice(syndrome.as_slice());
        out.clear();
        for &v in self.forest.order.iter().rev() {
            match self.forest.parent_edge[v.0] {
                Some(e) => {
                    if self.pending[v.0] {
                        self.pending[v.0] = false;
                        out.insert(e);
                        let [a, b] = graph.endpoints(e);
                        let u = if a == v { b } else { a };
                        self.pending[u.0] ^= true;
                    }
                }
                None if self.pending[v.0] => return Err(Error::OddComponent { root: v.0 }),
                None => {}
            }
        }
        Ok(())
    }
}

/// Correction `C ⊆ erasure` whose syndrome is exactly `syndrome`.
pub fn peel(graph: &SyndromeGraph, erasure: &EdgeSet, syndrome: &VertexSet) -> Result<Correction> {
    let mut edges = EdgeSet::empty(graph.edge_count());
    Peeler::default().peel_into(graph, erasure, syndrome, &mut edges)?;
    Ok(Correction { edges })
}
