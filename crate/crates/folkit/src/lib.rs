//! Many-sorted first-order logic toolkit.
//!
//! The crate has three layers:
//!
//! * [`syntax`] / [`parse`] — sorted formulas with an s-expression concrete
//!   syntax, signatures, and well-sortedness checking.
//! * [`interp`] — interpretations of one signature in another.  Beyond the
//!   classical relation-by-formula scheme, a source *sort* may be defined in
//!   the target: its variables are matched to tuples of target variables, a
//!   domain formula picks the representing tuples, and an equivalence
//!   formula identifies tuples representing the same element.  Translation
//!   rewrites quantifiers, equalities, and atoms accordingly, and the
//!   definitional-extension generator emits the equivalent sentences over a
//!   joint signature with explicit representation relations.
//! * [`model`] — finite models with Tarskian evaluation, construction of the
//!   model a target model induces through an interpretation (quotient
//!   carriers for defined sorts), and meaning-preservation checks that the
//!   syntactic translation and the semantic construction agree.
//!
//! The running example in the tests interprets two-sorted incidence geometry
//! (points, lines, `I`) in one-sorted collinearity geometry (points, `Col`):
//! a line is represented by an ordered pair of distinct points, two pairs
//! represent the same line when each point of one is collinear with the
//! other, and incidence becomes collinearity with the representing pair.

pub mod interp;
pub mod model;
pub mod parse;
pub mod syntax;

pub use interp::{InterpretationSpec, RelDef, SortDef, SpecError};
pub use model::{
    build_translated_model, meaning_preservation_check, meaning_preservation_check_with_model,
    meaning_preservation_exhaustive, FiniteModel, Mismatch, ModelError, OpenFormula,
    PreservationReport, TranslatedModel,
};
pub use parse::{parse, ParseError};
pub use syntax::{Formula, Signature, SortError, Var};
