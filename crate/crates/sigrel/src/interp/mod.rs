//! The bridge between the signalling world and the reference-frame world.
//!
//! Everything here runs in both directions:
//!
//! * **Syntactically** ([`specs`]): two [`folkit::InterpretationSpec`]s give
//!   formula-by-formula translations — frame sorts defined over the
//!   signalling vocabulary and signalling sorts defined over the frame
//!   vocabulary — plus the macro layer grounding the extended vocabularies
//!   and the frame axioms as translatable sentences.
//! * **On finite models** ([`finite`]): a desk-size Minkowski scenario is
//!   exported as a [`folkit::FiniteModel`] of the extended signalling
//!   language, the quotient construction is exercised on it, and meaning
//!   preservation is checked formula by formula.
//! * **Semantically** ([`bridge`]): the numeric model builders on each side
//!   are composed directly — observers to particles and back, photons to
//!   signals and back — and the composites are checked to be the identity
//!   up to the defining equivalences, at sample sizes the syntactic
//!   machinery cannot reach.  The same module houses the separation
//!   experiment for the unit-distance extension and the symmetry-axiom
//!   bridge.

mod bridge;
mod finite;
mod specs;

pub use bridge::{
    axsym_bridge_check, roundtrip_check, tu_separation, AxSymBridgeReport, RoundtripReport,
    SignallingView, TuSeparationReport,
};
pub use finite::{desk_model, desk_quotient, DeskScenario};
pub use specs::{
    extended_frame_signature, extended_signalling_signature, field_fragment_spec, frame_axioms,
    frame_macros, frame_signature, frames_in_signalling, signalling_in_frames, signalling_macros,
    signalling_signature, ConcreteInterpretations, MacroDef,
};

use thiserror::Error;

/// Failures while assembling or exercising the interpretations.
#[derive(Debug, Error)]
pub enum InterpError {
    #[error("interpretation spec: {0}")]
    Spec(#[from] folkit::SpecError),
    #[error("finite model: {0}")]
    Model(#[from] folkit::ModelError),
    #[error("sort error: {0}")]
    Sort(#[from] folkit::SortError),
    #[error("scalar arithmetic: {0}")]
    Scalar(#[from] crate::scalar::ScalarError),
    #[error("signalling experiment: {0}")]
    Signalling(#[from] crate::signalling::SignallingError),
    #[error("scenario: {0}")]
    Scenario(#[from] crate::sigmodel::ModelError),
    #[error("chart geometry: {0}")]
    Frame(#[from] crate::minkowski::FrameError),
    #[error("frame theory: {0}")]
    SpecRel(#[from] crate::specrel::SpecRelError),
    #[error("{0}")]
    Other(String),
}
