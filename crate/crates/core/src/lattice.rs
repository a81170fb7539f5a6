//! Syndrome graphs of the 2d toric code and of the (2+1)d repeated-measurement lattice.
//!
//! Vertices are X-type checks, edges are qubits (space-like) or measurement
//! outcomes (time-like). Coordinates are laid out row-major, `x` fastest:
//! vertex `(x, y[, t])` has index `x + L*y [+ L*L*t]`. Edges come in one block per
//! axis, and inside a block the edge leaving vertex `v` in the positive direction of
//! that axis has offset `v`. On the 2d torus this is "all horizontal edges, then all
//! vertical edges, row-major".
//!
//! The logical cuts are the edges crossing the planes `x = L-1 | 0` and `y = L-1 | 0`.
//! A cycle winds an odd number of times around a spatial direction iff it crosses the
//! matching cut an odd number of times. Time-like winding is never a logical.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sets::EdgeSet;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub usize);

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub usize);

impl VertexId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl EdgeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Dimensionality {
    /// L x L square lattice on the torus, perfect measurements.
    #[serde(rename = "2d")]
    Torus2D,
    /// L x L x L periodic cubic lattice: L rounds of noisy syndrome measurement.
    #[serde(rename = "3d")]
    Torus3D,
}

impl Dimensionality {
    pub fn name(self) -> &'static str {
        match self {
            Dimensionality::Torus2D => "2d",
            Dimensionality::Torus3D => "3d",
        }
    }
}

impl std::str::FromStr for Dimensionality {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "2d" => Ok(Dimensionality::Torus2D),
            "3d" => Ok(Dimensionality::Torus3D),
            other => Err(Error::InvalidParameter(format!("unknown lattice {other:?}"))),
        }
    }
}

impl Dimensionality {
    pub fn axes(self) -> &'static [Axis] {
        match self {
            Dimensionality::Torus2D => &[Axis::X, Axis::Y],
            Dimensionality::Torus3D => &[Axis::X, Axis::Y, Axis::T],
        }
    }
}

/// Direction of an edge. `X` and `Y` edges are qubits, `T` edges are measurement outcomes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
    T,
}

impl Axis {
    fn block(self) -> usize {
        match self {
            Axis::X => 0,
            Axis::Y => 1,
            Axis::T => 2,
        }
    }

    pub fn is_time_like(self) -> bool {
        self == Axis::T
    }
}

/// Selects one of the two logical cuts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Cut {
    /// X-edges crossing from `x = L-1` to `x = 0`; detects winding along x.
    X,
    /// Y-edges crossing from `y = L-1` to `y = 0`; detects winding along y.
    Y,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyndromeGraph {
    dimensionality: Dimensionality,
    size: usize,
    vertex_count: usize,
    edges: Vec<[VertexId; 2]>,
    // CSR incidence, each row sorted by edge id.
    incident_offsets: Vec<usize>,
    incident: Vec<(EdgeId, VertexId)>,
    cut_x: Vec<EdgeId>,
    cut_y: Vec<EdgeId>,
}

/// Square lattice on the torus, `L*L` vertices and `2*L*L` edges.
pub fn build_torus_2d(size: usize) -> Result<SyndromeGraph> {
    SyndromeGraph::build(Dimensionality::Torus2D, size)
}

/// Periodic cubic lattice, `L^3` vertices and `3*L^3` edges. Periodic in time too.
pub fn build_torus_3d(size: usize) -> Result<SyndromeGraph> {
    SyndromeGraph::build(Dimensionality::Torus3D, size)
}

impl SyndromeGraph {
    pub fn build(dimensionality: Dimensionality, size: usize) -> Result<Self> {
        if size < 2 {
            return Err(Error::InvalidParameter(format!(
                "lattice size must be at least 2, got {size}"
            )));
        }
        let axes = dimensionality.axes();
        let vertex_count = size.pow(axes.len() as u32);
        let mut graph = SyndromeGraph {
            dimensionality,
            size,
            vertex_count,
            edges: Vec::with_capacity(axes.len() * vertex_count),
            incident_offsets: Vec::new(),
            incident: Vec::new(),
            cut_x: Vec::new(),
            cut_y: Vec::new(),
        };
        for &axis in axes {
            for v in 0..vertex_count {
                let u = VertexId(v);
                graph.edges.push([u, graph.step(u, axis)]);
            }
        }

        let mut degree = vec![0usize; vertex_count];
        for [a, b] in &graph.edges {
            degree[a.0] += 1;
            degree[b.0] += 1;
        }
        let mut offsets = Vec::with_capacity(vertex_count + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut fill = offsets.clone();
        let mut incident = vec![(EdgeId(0), VertexId(0)); offsets[vertex_count]];
        // Edges are visited in increasing id, so each row ends up sorted.
        for (e, &[a, b]) in graph.edges.iter().enumerate() {
            incident[fill[a.0]] = (EdgeId(e), b);
            fill[a.0] += 1;
            incident[fill[b.0]] = (EdgeId(e), a);
            fill[b.0] += 1;
        }
        graph.incident_offsets = offsets;
        graph.incident = incident;

        graph.cut_x = (0..graph.edge_count())
            .map(EdgeId)
            .filter(|&e| graph.in_cut(e, Cut::X))
            .collect();
        graph.cut_y = (0..graph.edge_count())
            .map(EdgeId)
            .filter(|&e| graph.in_cut(e, Cut::Y))
            .collect();
        Ok(graph)
    }

    pub fn dimensionality(&self) -> Dimensionality {
        self.dimensionality
    }

    /// Linear lattice size `L`.
    pub fn size(&self) -> usize {
        self.size
    }

    /// Minimum distance; equals `L` on both lattices.
    pub fn distance(&self) -> usize {
        self.size
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.vertex_count).map(VertexId)
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> {
        (0..self.edges.len()).map(EdgeId)
    }

    #[inline]
    pub fn endpoints(&self, e: EdgeId) -> [VertexId; 2] {
        self.edges[e.0]
    }

    /// Incident `(edge, neighbor)` pairs of `v`, in ascending edge order.
    #[inline]
    pub fn incident(&self, v: VertexId) -> &[(EdgeId, VertexId)] {
        &self.incident[self.incident_offsets[v.0]..self.incident_offsets[v.0 + 1]]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.incident_offsets[v.0 + 1] - self.incident_offsets[v.0]
    }

    pub fn axis(&self, e: EdgeId) -> Axis {
        match e.0 / self.vertex_count {
            0 => Axis::X,
            1 => Axis::Y,
            _ => Axis::T,
        }
    }

    pub fn is_time_like(&self, e: EdgeId) -> bool {
        self.axis(e).is_time_like()
    }

    /// Coordinates `[x, y]` or `[x, y, t]`.
    pub fn coords(&self, v: VertexId) -> Vec<usize> {
        let l = self.size;
        let mut rest = v.0;
        self.dimensionality
            .axes()
            .iter()
            .map(|_| {
                let c = rest % l;
                rest /= l;
                c
            })
            .collect()
    }

    /// Vertex at the given coordinates, each taken modulo `L`.
    pub fn vertex_at(&self, coords: &[usize]) -> VertexId {
        assert_eq!(coords.len(), self.dimensionality.axes().len(), "coordinate arity");
        let l = self.size;
        let idx = coords.iter().rev().fold(0, |acc, &c| acc * l + c % l);
        VertexId(idx)
    }

    /// Edge leaving `v` in the positive direction of `axis`.
    pub fn edge_from(&self, v: VertexId, axis: Axis) -> EdgeId {
        assert!(
            self.dimensionality.axes().contains(&axis),
            "axis {axis:?} not present on {:?}",
            self.dimensionality
        );
        EdgeId(axis.block() * self.vertex_count + v.0)
    }

    /// Neighbor of `v` one step along `axis`, wrapping around.
    pub fn step(&self, v: VertexId, axis: Axis) -> VertexId {
        let l = self.size;
        let stride = l.pow(axis.block() as u32);
        let c = (v.0 / stride) % l;
        if c + 1 == l {
            VertexId(v.0 + stride - l * stride)
        } else {
            VertexId(v.0 + stride)
        }
    }

    /// The four edges bounding the face spanned by `a` and `b` at corner `v`.
    pub fn face_edges(&self, v: VertexId, a: Axis, b: Axis) -> [EdgeId; 4] {
        assert_ne!(a, b, "a face needs two distinct axes");
        [
            self.edge_from(v, a),
            self.edge_from(self.step(v, a), b),
            self.edge_from(self.step(v, b), a),
            self.edge_from(v, b),
        ]
    }

    /// O(1) membership test for a logical cut.
    #[inline]
    pub fn in_cut(&self, e: EdgeId, cut: Cut) -> bool {
        let l = self.size;
        let block = e.0 / self.vertex_count;
        let v = e.0 % self.vertex_count;
        match cut {
            Cut::X => block == 0 && v % l == l - 1,
            Cut::Y => block == 1 && (v / l) % l == l - 1,
        }
    }

    pub fn logical_cut(&self, cut: Cut) -> &[EdgeId] {
        match cut {
            Cut::X => &self.cut_x,
            Cut::Y => &self.cut_y,
        }
    }
}

/// Parity of `|edges ∩ cut|`.
pub fn crossing_parity(graph: &SyndromeGraph, edges: &EdgeSet, cut: Cut) -> bool {
    graph
        .logical_cut(cut)
        .iter()
        .filter(|&&e| edges.contains(e))
        .count()
        % 2
        == 1
}
