//! Cluster trees with weighted union and path compression, the edge support table and
//! per-cluster boundary lists.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::lattice::{EdgeId, SyndromeGraph, VertexId};
use crate::sets::{EdgeSet, VertexSet};

/// Growth state of one edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeSupport {
    Unoccupied,
    /// Half of the edge has been grown, starting from `from`.
    HalfGrown { from: VertexId },
    Grown,
}

impl EdgeSupport {
    /// Position in the only allowed order Unoccupied < HalfGrown < Grown.
    pub fn level(self) -> u8 {
        match self {
            EdgeSupport::Unoccupied => 0,
            EdgeSupport::HalfGrown { .. } => 1,
            EdgeSupport::Grown => 2,
        }
    }
}

/// Counters for one call to [`ClusterForest::grow_round`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RoundStats {
    /// Edges that became fully grown during the round.
    pub grown_edges: usize,
    /// Fusion edges that actually merged two clusters.
    pub fusions: usize,
}

/// Union-find state for one decoding call. Reusable across trials on the same graph
/// via [`ClusterForest::init`].
#[derive(Clone, Debug, Default)]
pub struct ClusterForest {
    parent: Vec<usize>,
    size: Vec<usize>,
    odd: Vec<bool>,
    boundary: Vec<Vec<VertexId>>,
    support: Vec<EdgeSupport>,
    odd_roots: Vec<VertexId>,
    on_list: Vec<bool>,
    find_calls: u64,
    union_calls: u64,
    // scratch
    fusion: Vec<EdgeId>,
    merges: Vec<(usize, usize)>,
    stack: Vec<usize>,
    queue: BinaryHeap<Reverse<(usize, usize)>>,
}

/// Builds a forest with one cluster per connected component of `(V, erasure)`.
pub fn init_forest(graph: &SyndromeGraph, erasure: &EdgeSet, syndrome: &VertexSet) -> ClusterForest {
    let mut forest = ClusterForest::default();
    forest.init(graph, erasure, syndrome);
    forest
}

impl ClusterForest {
    /// Resets to the initial clusters of `(erasure, syndrome)`.
    ///
    /// Components are explored from their lowest vertex, which becomes the root; every
    /// other member links straight to it, so all trees start with depth at most one.
    pub fn init(&mut self, graph: &SyndromeGraph, erasure: &EdgeSet, syndrome: &VertexSet) {
        let n = graph.vertex_count();
        assert_eq!(erasure.universe(), graph.edge_count(), "erasure universe");
        assert_eq!(syndrome.universe(), n, "syndrome universe");

        self.parent.clear();
        self.parent.resize(n, usize::MAX);
        self.size.clear();
        self.size.resize(n, 0);
        self.odd.clear();
        self.odd.resize(n, false);
        self.on_list.clear();
        self.on_list.resize(n, false);
        self.boundary.resize_with(n, Vec::new);
        self.boundary.iter_mut().for_each(Vec::clear);
        self.support.clear();
        self.support.extend(erasure.as_slice().iter().map(|&erased| {
            if erased {
                EdgeSupport::Grown
            } else {
                EdgeSupport::Unoccupied
            }
        }));
        self.odd_roots.clear();
        self.find_calls = 0;
        self.union_calls = 0;

        for root in 0..n {
            if self.parent[root] != usize::MAX {
                continue;
            }
            self.parent[root] = root;
            self.stack.clear();
            self.stack.push(root);
            let mut size = 0;
            let mut odd = false;
            while let Some(v) = self.stack.pop() {
                size += 1;
                odd ^= syndrome.as_slice()[v];
                let mut boundary = false;
                for &(e, w) in graph.incident(VertexId(v)) {
                    if self.support[e.0] != EdgeSupport::Grown {
                        boundary = true;
                    } else if self.parent[w.0] == usize::MAX {
                        self.parent[w.0] = root;
                        self.stack.push(w.0);
                    }
                }
                if boundary {
                    self.boundary[root].push(VertexId(v));
                }
            }
            self.size[root] = size;
            self.odd[root] = odd;
            if odd {
                self.odd_roots.push(VertexId(root));
            }
        }
    }

    /// Root of `v`'s cluster. Every vertex on the path is relinked to the root.
    pub fn find(&mut self, v: VertexId) -> VertexId {
        VertexId(self.find_index(v.0))
    }

    fn find_index(&mut self, v: usize) -> usize {
        self.find_calls += 1;
        let mut root = v;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = v;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    /// Merges two distinct clusters given by their roots and returns the surviving root.
    ///
    /// The larger cluster keeps its root; on equal sizes the lower index wins. Boundary
    /// lists are left alone, see [`ClusterForest::grow_round`].
    pub fn union(&mut self, ru: VertexId, rv: VertexId) -> Result<VertexId> {
        if ru == rv {
            return Err(Error::UnionContract(format!("{ru} and {rv} are the same cluster")));
        }
        for r in [ru, rv] {
            if self.parent[r.0] != r.0 {
                return Err(Error::UnionContract(format!("{r} is not a root")));
            }
        }
        Ok(VertexId(self.link(ru.0, rv.0).0))
    }

    /// Returns `(survivor, absorbed)`.
    fn link(&mut self, a: usize, b: usize) -> (usize, usize) {
        self.union_calls += 1;
        let (big, small) = match self.size[a].cmp(&self.size[b]) {
            std::cmp::Ordering::Greater => (a, b),
            std::cmp::Ordering::Less => (b, a),
            std::cmp::Ordering::Equal => (a.min(b), a.max(b)),
        };
        self.parent[small] = big;
        self.size[big] += self.size[small];
        self.odd[big] ^= self.odd[small];
        (big, small)
    }

    fn is_boundary(&self, graph: &SyndromeGraph, v: VertexId) -> bool {
        graph
            .incident(v)
            .iter()
            .any(|&(e, _)| self.support[e.0] != EdgeSupport::Grown)
    }

    /// One growth round for the clusters rooted at `roots`, which must be distinct
    /// roots of odd clusters. On return `roots` holds the roots of the clusters that are
    /// still odd, without duplicates.
    ///
    /// (i) every incident edge of every boundary vertex advances one half-step, edges
    /// that become grown are fusion edges; (ii) fusion edges joining distinct clusters
    /// are unioned, the others dropped; (iii) the boundary list of each absorbed cluster
    /// is appended to its absorber's; (iv) roots are replaced by their `find`;
    /// (v) boundary lists are pruned; (vi) even clusters leave the list.
    pub fn grow_round(&mut self, graph: &SyndromeGraph, roots: &mut Vec<VertexId>) -> RoundStats {
        let mut stats = RoundStats::default();
        for &r in roots.iter() {
            self.on_list[r.0] = true;
        }

        // (i)
        self.fusion.clear();
        for &r in roots.iter() {
            for &v in &self.boundary[r.0] {
                for &(e, _) in graph.incident(v) {
                    let slot = &mut self.support[e.0];
                    match *slot {
                        EdgeSupport::Unoccupied => *slot = EdgeSupport::HalfGrown { from: v },
                        EdgeSupport::HalfGrown { .. } => {
                            *slot = EdgeSupport::Grown;
                            self.fusion.push(e);
                        }
                        EdgeSupport::Grown => {}
                    }
                }
            }
        }
        stats.grown_edges = self.fusion.len();

        // (ii)
        self.merges.clear();
        for i in 0..self.fusion.len() {
            let [a, b] = graph.endpoints(self.fusion[i]);
            let ra = self.find_index(a.0);
            let rb = self.find_index(b.0);
            if ra != rb {
                let merge = self.link(ra, rb);
                self.merges.push(merge);
            }
        }
        stats.fusions = self.merges.len();

        // (iii) in union order, so chained merges funnel into the final root
        for i in 0..self.merges.len() {
            let (big, small) = self.merges[i];
            let mut moved = std::mem::take(&mut self.boundary[small]);
            self.boundary[big].extend_from_slice(&moved);
            moved.clear();
            self.boundary[small] = moved;
        }

        // (iv)
        let mut kept = 0;
        for i in 0..roots.len() {
            let u = roots[i].0;
            let r = self.find_index(u);
            if r != u {
                self.on_list[u] = false;
                if self.on_list[r] {
                    continue;
                }
                self.on_list[r] = true;
            }
            roots[kept] = VertexId(r);
            kept += 1;
        }
        roots.truncate(kept);

        // (v)
        for &r in roots.iter() {
            let mut list = std::mem::take(&mut self.boundary[r.0]);
            list.retain(|&v| self.is_boundary(graph, v));
            self.boundary[r.0] = list;
        }

        // (vi)
        roots.retain(|&r| {
            let odd = self.odd[r.0];
            self.on_list[r.0] = false;
            odd
        });
        stats
    }

    /// Grows every odd cluster each round until none is left. Returns the round count.
    pub fn grow_uniform(&mut self, graph: &SyndromeGraph) -> usize {
        let mut roots = std::mem::take(&mut self.odd_roots);
        let mut rounds = 0;
        while !roots.is_empty() {
            self.grow_round(graph, &mut roots);
            rounds += 1;
        }
        self.odd_roots = roots;
        rounds
    }

    /// Repeatedly grows the odd clusters whose boundary list is shortest, all of them
    /// together in one round, until none is left. Returns the number of rounds.
    ///
    /// Odd roots sit in a min-heap keyed by boundary length. Entries are never updated
    /// in place; a popped entry whose root was absorbed or whose length changed is
    /// skipped, and every round pushes fresh entries for the roots it leaves odd.
    pub fn grow_weighted(&mut self, graph: &SyndromeGraph) -> usize {
        self.grow_weighted_limited(graph, usize::MAX)
    }

    fn grow_weighted_limited(&mut self, graph: &SyndromeGraph, max_steps: usize) -> usize {
        let mut queue = std::mem::take(&mut self.queue);
        queue.clear();
        for &r in &self.odd_roots {
            queue.push(Reverse((self.boundary[r.0].len(), r.0)));
        }
        self.odd_roots.clear();

        let mut steps = 0;
        let mut list = Vec::new();
        while steps < max_steps {
            let valid = |f: &Self, len: usize, r: usize| f.parent[r] == r && f.odd[r] && f.boundary[r].len() == len;
            let Some(Reverse((min_len, r))) = queue.pop() else {
                break;
            };
            if !valid(self, min_len, r) {
                continue;
            }
            list.clear();
            list.push(VertexId(r));
            while let Some(&Reverse((len, r))) = queue.peek() {
                if len != min_len {
                    break;
                }
                queue.pop();
                if valid(self, len, r) {
                    list.push(VertexId(r));
                }
            }
            list.sort_unstable();
            list.dedup();
            self.grow_round(graph, &mut list);
            steps += 1;
            for &root in &list {
                queue.push(Reverse((self.boundary[root.0].len(), root.0)));
            }
        }
        // Whatever is left (only when stopped early) goes back on the odd list.
        for Reverse((len, r)) in queue.drain() {
            if self.parent[r] == r && self.odd[r] && self.boundary[r].len() == len {
                self.odd_roots.push(VertexId(r));
            }
        }
        self.odd_roots.sort_unstable();
        self.odd_roots.dedup();
        self.queue = queue;
        steps
    }

    /// Writes the fully grown edges into `out`.
    pub fn grown_edges_into(&self, out: &mut EdgeSet) {
        let slice = out.as_mut_slice();
        assert_eq!(slice.len(), self.support.len(), "edge universe");
        for (bit, s) in slice.iter_mut().zip(&self.support) {
            *bit = *s == EdgeSupport::Grown;
        }
    }

    pub fn grown_edges(&self) -> EdgeSet {
        let mut out = EdgeSet::empty(self.support.len());
        self.grown_edges_into(&mut out);
        out
    }

    pub fn parent(&self, v: VertexId) -> VertexId {
        VertexId(self.parent[v.0])
    }

    pub fn is_root(&self, v: VertexId) -> bool {
        self.parent[v.0] == v.0
    }

    pub fn roots(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.parent.len()).filter(|&v| self.parent[v] == v).map(VertexId)
    }

    /// Vertex count of the cluster rooted at `root`. Meaningless for non-roots.
    pub fn size(&self, root: VertexId) -> usize {
        self.size[root.0]
    }

    /// Syndrome parity of the cluster rooted at `root`.
    pub fn is_odd(&self, root: VertexId) -> bool {
        self.odd[root.0]
    }

    pub fn boundary(&self, root: VertexId) -> &[VertexId] {
        &self.boundary[root.0]
    }

    pub fn support(&self, e: EdgeId) -> EdgeSupport {
        self.support[e.0]
    }

    pub fn odd_roots(&self) -> &[VertexId] {
        &self.odd_roots
    }

    pub fn find_calls(&self) -> u64 {
        self.find_calls
    }

    pub fn union_calls(&self) -> u64 {
        self.union_calls
    }

    #[cfg(test)]
    pub(crate) fn set_parent(&mut self, v: VertexId, p: VertexId) {
        self.parent[v.0] = p.0;
    }
}
