//! Union-Find decoder for the toric code under mixed erasure and Pauli-Z noise.
//!
//! The decoding pipeline is
//!
//! 1. [`noise::sample`] draws an erasure and a Z error on a [`lattice::SyndromeGraph`],
//! 2. [`cluster::validate`] grows odd clusters until every cluster has even syndrome
//!    parity, producing a modified erasure,
//! 3. [`peeling::peel`] finds a correction supported on the modified erasure,
//! 4. [`homology::judge`] decides whether the residual error is a stabilizer or a logical.
//!
//! [`harness`] drives Monte Carlo experiments over this pipeline and backs the `ufsim` CLI.

pub mod cluster;
pub mod error;
pub mod harness;
pub mod homology;
pub mod lattice;
pub mod noise;
pub mod peeling;
pub mod sets;

pub use cluster::{validate, Strategy, ValidationResult};
pub use error::{Error, Result};
pub use homology::{judge, Verdict};
pub use lattice::{Cut, Dimensionality, EdgeId, SyndromeGraph, VertexId};
pub use noise::{ErrorState, NoiseParams};
pub use peeling::{peel, Correction};
pub use sets::{EdgeSet, VertexSet};
