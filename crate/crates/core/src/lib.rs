//! Classical-simulability upper bounds on fault-tolerance thresholds.
//!
//! A Clifford circuit fed with single-qubit resources that sit inside the
//! stabilizer octahedron can be simulated efficiently, so any noise level that
//! pushes every non-Clifford resource into the octahedron bounds the
//! fault-tolerance threshold from above. This crate models the noise as affine
//! maps on the Bloch ball, shifts Pauli noise around teleportation
//! state-injection circuits onto the resource, and solves for the smallest
//! noise strength that makes the resource classical.
//!
//! Module map:
//!
//! - [`bloch`]: Bloch vectors, phase states, octahedron geometry.
//! - [`channel`]: qubit channels as affine Bloch maps.
//! - [`noise`]: noise models assigned to the injection-circuit locations.
//! - [`shift`]: commutes location noise onto the resource.
//! - [`threshold`]: bisection solvers and closed-form bounds.
//! - [`decoding`]: the decoding-circuit polynomial and its root.
//! - [`robustness`]: searches for the most noise-robust resource.
//! - [`oracle`]: dense density-matrix simulation of the injection circuits.

pub mod bloch;
pub mod channel;
pub mod decoding;
pub mod error;
pub mod noise;
pub mod oracle;
pub mod robustness;
pub mod shift;
pub mod threshold;

pub use bloch::{BlochVector, DensityMatrix2, PhaseAngle};
pub use channel::{AffineChannel, Pauli};
pub use error::{Error, Result};
pub use noise::{InjectionVariant, Location, LocationNoise, NoiseModel, PairDistribution, ResourceSpec};
pub use shift::{EffectiveMap, ShiftOutcome};
pub use threshold::ThresholdResult;
