//! Constructive coordinate experiments.
//!
//! Each operation here decides or constructs something using only what an
//! inertial experimenter could do with sub-light particles and light signals:
//! bounce radar pulses off comoving mirror lines, throw auxiliary particles,
//! and compare arrival events.  Every operation is paired with a closed-form
//! Minkowski counterpart in [`oracle`]; the two are developed independently
//! and the test suites require them to agree.
//!
//! Numbers on a worldline are represented by [`FieldPoint`]s: events on a
//! calibrated worldline ([`Calibration`]) whose affine parameter — origin
//! event at 0, clock event at 1 — renders them as scalars.  Spatial talk is
//! about [`Location`]s: lines comoving with an anchor worldline.
//!
//! On the exact backend some constructions need square roots that a rational
//! field lacks; those return [`ScalarError::NonConstructibleExact`] (the
//! curated fixtures use Pythagorean data so the roots exist), while the
//! randomized sweeps run on the approximate backend where roots always exist.

mod coords;
mod field;
mod motion;
pub mod oracle;
mod radar;
mod space;
mod timing;

pub(crate) use radar::{light_emission_past, light_hit_future};

pub use coords::{cord, cord_trace, med, med_with, mu, mu_trace};
pub use field::{iso, plus, times, times_trace};
pub use motion::{desargues_experiment, desargues_trace, motionless};
pub use space::{bw, col, col_trace, dd, dd_trace, ed, ort, ort_trace, pa, Location};
pub use timing::{
    causal_leq, causal_witness, simultaneous, simultaneous_trace, strictly_earlier, ted, ted_trace,
    time_coord, time_coord_trace,
};

use serde::Serialize;
use thiserror::Error;

use crate::minkowski::{separation, Event, FrameError, Separation};
use crate::scalar::{Scalar, ScalarError};
use crate::sigmodel::{ModelError, Particle, Signal};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SignallingError {
    #[error("event is not on the required worldline")]
    NotOnWorldline,
    #[error("a location must be comoving with its anchor")]
    NotComoving,
    #[error("locations anchored to different worldlines cannot be compared")]
    AnchorMismatch,
    #[error("construction requires a non-degenerate line")]
    DegenerateLine,
    #[error("the event pair spans no sub-light worldline")]
    NotTimelike,
    #[error("calibration search failed after {attempts} seeded attempts")]
    CalibrationFailure { attempts: u32 },
    #[error("invalid calibration: {0}")]
    BadCalibration(&'static str),
    #[error(transparent)]
    Frame(#[from] FrameError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// The light signal from `e1` to `e2`, if one exists (zero length allowed).
pub fn signal_between(e1: &Event, e2: &Event) -> Option<Signal> {
    Signal::new(e1.clone(), e2.clone()).ok()
}

/// A worldline with an origin event and a strictly later clock event on it.
/// This is the data that renders events on the worldline as field elements.
#[derive(Clone, Debug, PartialEq)]
pub struct Calibration {
    a: Particle,
    o: Event,
    u: Event,
}

impl Calibration {
    pub fn new(a: Particle, o: Event, u: Event) -> Result<Self, SignallingError> {
        if !a.contains(&o) {
            return Err(SignallingError::BadCalibration("origin off worldline"));
        }
        if !a.contains(&u) {
            return Err(SignallingError::BadCalibration("clock event off worldline"));
        }
        if separation(&o, &u) != Separation::TimelikeFuture {
            return Err(SignallingError::BadCalibration(
                "clock event must be strictly later than the origin",
            ));
        }
        Ok(Calibration { a, o, u })
    }

    pub fn worldline(&self) -> &Particle {
        &self.a
    }

    pub fn origin(&self) -> &Event {
        &self.o
    }

    pub fn clock(&self) -> &Event {
        &self.u
    }

    /// Affine parameter of an on-worldline event (origin 0, clock event 1).
    pub fn value_of(&self, carrier: &Event) -> Result<Scalar, SignallingError> {
        if !self.a.contains(carrier) {
            return Err(SignallingError::NotOnWorldline);
        }
        let span = &self.u.t - &self.o.t;
        Ok((&carrier.t - &self.o.t)
            .checked_div(&span)
            .expect("calibration span is nonzero"))
    }

    /// The event on the worldline with the given affine parameter.
    pub fn carrier_at(&self, value: &Scalar) -> Event {
        let span = &self.u.t - &self.o.t;
        self.a.position_at(&(&self.o.t + &(value * &span)))
    }

    /// Reflect an on-worldline event through the origin.
    pub fn reflect(&self, carrier: &Event) -> Event {
        let d = carrier.sub(&self.o);
        self.o.add_vec(&d.neg())
    }

    pub fn field_point(&self, carrier: Event) -> Result<FieldPoint, SignallingError> {
        if !self.a.contains(&carrier) {
            return Err(SignallingError::NotOnWorldline);
        }
        Ok(FieldPoint {
            carrier,
            cal: self.clone(),
        })
    }

    pub fn point_at(&self, value: &Scalar) -> FieldPoint {
        FieldPoint {
            carrier: self.carrier_at(value),
            cal: self.clone(),
        }
    }
}

/// An event on a calibrated worldline, read as a field element.
#[derive(Clone, Debug, PartialEq)]
pub struct FieldPoint {
    carrier: Event,
    cal: Calibration,
}

impl FieldPoint {
    pub fn carrier(&self) -> &Event {
        &self.carrier
    }

    pub fn calibration(&self) -> &Calibration {
        &self.cal
    }

    /// Scalar rendering under this point's own calibration.
    pub fn value(&self) -> Scalar {
        self.cal
            .value_of(&self.carrier)
            .expect("field point carrier is on its worldline")
    }
}

/// One named entity recorded in a witness trace.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "kebab-case")]
pub enum TraceItem {
    Event(Event),
    Particle(Particle),
    Signal(Signal),
    Scalar(Scalar),
    Flag(bool),
    Note(String),
}

/// The auxiliary objects an experiment constructed, in construction order,
/// under the labels used in the accompanying prose.
#[derive(Clone, Debug, Serialize)]
pub struct Trace {
    pub op: &'static str,
    pub items: Vec<(String, TraceItem)>,
}

impl Trace {
    pub fn new(op: &'static str) -> Self {
        Trace { op, items: Vec::new() }
    }

    pub fn event(&mut self, label: &str, e: &Event) -> &mut Self {
        self.items.push((label.to_string(), TraceItem::Event(e.clone())));
        self
    }

    pub fn particle(&mut self, label: &str, p: &Particle) -> &mut Self {
        self.items.push((label.to_string(), TraceItem::Particle(p.clone())));
        self
    }

    pub fn signal(&mut self, label: &str, s: &Signal) -> &mut Self {
        self.items.push((label.to_string(), TraceItem::Signal(s.clone())));
        self
    }

    pub fn scalar(&mut self, label: &str, s: &Scalar) -> &mut Self {
        self.items.push((label.to_string(), TraceItem::Scalar(s.clone())));
        self
    }

    pub fn flag(&mut self, label: &str, b: bool) -> &mut Self {
        self.items.push((label.to_string(), TraceItem::Flag(b)));
        self
    }

    pub fn note(&mut self, label: &str, text: &str) -> &mut Self {
        self.items.push((label.to_string(), TraceItem::Note(text.to_string())));
        self
    }
}
