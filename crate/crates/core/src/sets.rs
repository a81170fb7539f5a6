//! Dense subsets of graph elements, indexed by [`VertexId`] or [`EdgeId`].

use crate::lattice::{EdgeId, VertexId};

macro_rules! dense_set {
    ($(#[$meta:meta])* $name:ident, $id:ident) => {
        $(#[$meta])*
        #[derive(Clone, Debug, PartialEq, Eq, Hash)]
        pub struct $name {
            bits: Vec<bool>,
        }

        impl $name {
            /// Empty subset of a universe of `len` elements.
            pub fn empty(len: usize) -> Self {
                Self { bits: vec![false; len] }
            }

            pub fn full(len: usize) -> Self {
                Self { bits: vec![true; len] }
            }

            pub fn from_ids<I: IntoIterator<Item = $id>>(len: usize, ids: I) -> Self {
                let mut set = Self::empty(len);
                for id in ids {
                    set.insert(id);
                }
                set
            }

            pub fn from_indices<I: IntoIterator<Item = usize>>(len: usize, ids: I) -> Self {
                Self::from_ids(len, ids.into_iter().map($id))
            }

            /// Size of the universe, not the number of members.
            pub fn universe(&self) -> usize {
                self.bits.len()
            }

            #[inline]
            pub fn contains(&self, id: $id) -> bool {
                self.bits[id.0]
            }

            #[inline]
            pub fn insert(&mut self, id: $id) {
                self.bits[id.0] = true;
            }

            #[inline]
            pub fn remove(&mut self, id: $id) {
                self.bits[id.0] = false;
            }

            #[inline]
            pub fn toggle(&mut self, id: $id) {
                self.bits[id.0] ^= true;
            }

            pub fn clear(&mut self) {
                self.bits.iter_mut().for_each(|b| *b = false);
            }

            pub fn len(&self) -> usize {
                self.bits.iter().filter(|&&b| b).count()
            }

            pub fn is_empty(&self) -> bool {
                !self.bits.iter().any(|&b| b)
            }

            pub fn iter(&self) -> impl Iterator<Item = $id> + '_ {
                self.bits
                    .iter()
                    .enumerate()
                    .filter(|(_, &b)| b)
                    .map(|(i, _)| $id(i))
            }

            pub fn is_subset(&self, other: &Self) -> bool {
                self.bits.len() == other.bits.len()
                    && self.bits.iter().zip(&other.bits).all(|(&a, &b)| !a || b)
            }

            pub fn symmetric_difference(&self, other: &Self) -> Self {
                assert_eq!(self.bits.len(), other.bits.len(), "universe mismatch");
                Self {
                    bits: self.bits.iter().zip(&other.bits).map(|(&a, &b)| a ^ b).collect(),
                }
            }

            pub fn as_slice(&self) -> &[bool] {
                &self.bits
            }

            #[allow(dead_code)]
            pub(crate) fn as_mut_slice(&mut self) -> &mut [bool] {
                &mut self.bits
            }
        }
    };
}

dense_set!(
    /// A set of edges (qubits, or measurement outcomes on the 3d lattice).
    EdgeSet,
    EdgeId
);
dense_set!(
    /// A set of vertices, typically a syndrome.
    VertexSet,
    VertexId
);
