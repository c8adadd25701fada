//! Executable model of radar-style signalling kinematics.
//!
//! The crate builds, layer by layer, everything needed to run coordinate
//! experiments with nothing but inertial particles and light signals, and to
//! check that the resulting reference-frame semantics matches closed-form
//! Minkowski geometry:
//!
//! * [`scalar`] — exact rational / tolerance-checked float field arithmetic;
//! * [`minkowski`] — events, intervals, separation classification, frames and
//!   the closed-form coordinate transform used as the independent oracle;
//! * [`sigmodel`] — the standard model over a field: inertial particles,
//!   lightlike signals, finite scenarios and their generators;
//! * [`signalling`] — the constructive experiments: radar simultaneity,
//!   causal order, clock transport, arithmetic on worldline points, spatial
//!   geometry, coordinates, and invariant distance, each paired with an
//!   independent oracle;
//! * [`specrel`] — the derived reference-frame semantics (quantities, bodies,
//!   worldview relation) and samplers that check its axioms;
//! * [`interp`] — the two concrete signature interpretations between the
//!   signalling vocabulary and the reference-frame vocabulary, with
//!   round-trip and separation checks;
//! * [`sample`] — seeded deterministic generators shared by sweeps.

pub mod interp;
pub mod minkowski;
pub mod sample;
pub mod scalar;
pub mod sigmodel;
pub mod signalling;
pub mod specrel;

pub use scalar::{Backend, Scalar, ScalarError, DEFAULT_EPS};
