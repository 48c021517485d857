//! Exact computation of finite-node light-sector packages for multi-node
//! conifold degenerations.
//!
//! Inputs are exact rational data: a skew pairing, one vanishing-cycle
//! vector per node, optional cycle-node incidence, an optional block
//! partition, and an optional corrected-class coefficient vector. From these
//! the crate builds
//!
//! - the corrected-extension realization: the realized subspace of `Q^r` and
//!   its split/interacting verdict ([`gluing`]);
//! - the transport realization: Picard–Lefschetz operators, the interaction
//!   matrix, and commutators ([`transport`]);
//! - the atom realization: splitting verdicts and mixing clusters
//!   ([`atoms`]);
//! - block data: relation lattices, block separation, and the reduced
//!   interaction matrix ([`blocks`]);
//!
//! and assembles them into a [`package::LightSectorPackage`] with a two-layer
//! classification: relation collapse, then residual interaction among the
//! surviving block sectors.
//!
//! All arithmetic is exact; no floating point is used anywhere.

pub mod atoms;
pub mod blocks;
pub mod builtins;
pub mod error;
pub mod gluing;
pub mod linalg;
pub mod package;
pub mod pairing;
pub mod report;
pub mod scenario;
pub mod selftest;
pub mod transport;
pub mod verify;

pub use error::{Error, Result};
pub use linalg::{Matrix, Rational, Subspace, Vector};
pub use package::{assemble, classify, verify_block_reduced_structure, Classification, LightSectorPackage};
pub use pairing::{CycleConfiguration, PairingSpace};
