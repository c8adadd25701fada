//! Reference-frame semantics derived from the signalling layer.
//!
//! The vocabulary here is the one relativity texts start from — quantities,
//! bodies, observers, photons, and the six-place worldview relation "body
//! `b` is at place `(t, x, y, z)` in observer `m`'s coordinates" — but every
//! notion is *constructed* from calibrated worldlines and light signals
//! rather than postulated:
//!
//! * a [`Quantity`] is an observer-independent field value: an event on some
//!   calibrated worldline, identified across calibrations by the distance
//!   transfer isomorphism ([`signalling::iso`](crate::signalling::iso));
//! * a [`Body`] is either a photon (a light signal of nonzero extent, taken
//!   up to its lightlike line) or an observer (a full coordinate frame,
//!   taken up to the coordinate map it induces);
//! * [`w_holds`] locates the chart point named by four quantities and asks
//!   whether the body's worldline passes through it.
//!
//! [`axioms`] supplies seeded samplers that probe this semantics against
//! the textbook axioms and report witnesses when one fails.

mod axioms;

pub use axioms::{check_axiom, Axiom, AxiomReport};

use serde::Serialize;
use thiserror::Error;

use crate::minkowski::{Frame, FrameError};
use crate::scalar::{Backend, Scalar, ScalarError};
use crate::sigmodel::{LightLine, ModelError, Signal};
use crate::signalling::{iso, plus, times, Calibration, FieldPoint, SignallingError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpecRelError {
    #[error("a photon body needs a signal of nonzero extent")]
    NotAPhoton,
    #[error("unknown axiom name: {0}")]
    UnknownAxiom(String),
    #[error(transparent)]
    Frame(#[from] FrameError),
    #[error(transparent)]
    Signalling(#[from] SignallingError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// The calibration a frame's worldline, origin, and clock event determine.
pub fn frame_calibration(f: &Frame) -> Result<Calibration, SpecRelError> {
    Ok(Calibration::new(f.a.clone(), f.o.clone(), f.u.clone())?)
}

/// An observer-independent field value.
///
/// Concretely it is a point on one particular calibrated worldline; any
/// other calibrated worldline carries exactly one point representing the
/// same value, reachable through the distance-transfer isomorphism.  The
/// scalar the representative renders to is the same under every
/// calibration, so it is cached as the `canonical` form and equality is
/// decided on it (the test suites cross-check this against the geometric
/// isomorphism).
#[derive(Clone, Debug)]
pub struct Quantity {
    rep: FieldPoint,
    canonical: Scalar,
}

impl Quantity {
    pub fn new(rep: FieldPoint) -> Self {
        let canonical = rep.value();
        Quantity { rep, canonical }
    }

    /// The quantity whose rendering under `cal` is `v`.
    pub fn from_value(cal: &Calibration, v: &Scalar) -> Self {
        Quantity::new(cal.point_at(v))
    }

    pub fn representative(&self) -> &FieldPoint {
        &self.rep
    }

    pub fn canonical(&self) -> &Scalar {
        &self.canonical
    }
}

/// Equality of observer-independent values.
pub fn quantity_eq(q1: &Quantity, q2: &Quantity) -> bool {
    q1.canonical == q2.canonical
}

/// The representative of `q` on the worldline calibrated by `cal` — the
/// "concrete reading" an experimenter with that calibration assigns to the
/// abstract value.
pub fn rep(q: &Quantity, cal: &Calibration) -> Result<FieldPoint, SpecRelError> {
    Ok(iso(q.rep.calibration(), cal, &q.rep)?)
}

/// Sum of two quantities: pull the second into the first one's calibration
/// and run the worldline addition experiment there.
pub fn q_plus(q1: &Quantity, q2: &Quantity) -> Result<Quantity, SpecRelError> {
    let cal = q1.rep.calibration();
    let moved = iso(q2.rep.calibration(), cal, &q2.rep)?;
    Ok(Quantity::new(plus(cal, &q1.rep, &moved)?))
}

/// Product of two quantities, by the worldline multiplication experiment.
pub fn q_times(q1: &Quantity, q2: &Quantity) -> Result<Quantity, SpecRelError> {
    let cal = q1.rep.calibration();
    let moved = iso(q2.rep.calibration(), cal, &q2.rep)?;
    Ok(Quantity::new(times(cal, &q1.rep, &moved)?))
}

/// A body: a photon or an observer.
///
/// A photon is carried by a light signal of nonzero extent and stands for
/// the whole lightlike line through it.  An observer is a coordinate
/// system — worldline, origin, clock event, three orthogonal axis lines —
/// and stands for the coordinate map those parameters induce.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Body {
    Photon { signal: Signal },
    Observer { frame: Frame },
}

impl Body {
    pub fn photon(signal: Signal) -> Result<Body, SpecRelError> {
        if signal.is_event() {
            return Err(SpecRelError::NotAPhoton);
        }
        Ok(Body::Photon { signal })
    }

    pub fn observer(frame: Frame) -> Result<Body, SpecRelError> {
        frame.validate()?;
        Ok(Body::Observer { frame })
    }

    pub fn is_photon(&self) -> bool {
        matches!(self, Body::Photon { .. })
    }

    pub fn is_observer(&self) -> bool {
        matches!(self, Body::Observer { .. })
    }

    pub fn as_photon(&self) -> Option<&Signal> {
        match self {
            Body::Photon { signal } => Some(signal),
            Body::Observer { .. } => None,
        }
    }

    pub fn as_observer(&self) -> Option<&Frame> {
        match self {
            Body::Observer { frame } => Some(frame),
            Body::Photon { .. } => None,
        }
    }
}

/// Body equality: photons are equal when they share a lightlike line,
/// observers when they induce the same coordinate map; a photon never
/// equals an observer.
pub fn body_eq(b1: &Body, b2: &Body) -> Result<bool, SpecRelError> {
    match (b1, b2) {
        (Body::Photon { signal: s1 }, Body::Photon { signal: s2 }) => {
            let line = LightLine::of_signal(s1)?;
            Ok(line.contains(s2.beg()) && line.contains(s2.end()))
        }
        (Body::Observer { frame: f1 }, Body::Observer { frame: f2 }) => {
            observers_agree(f1, f2)
        }
        _ => Ok(false),
    }
}

/// Two coordinate maps are affine, so they agree everywhere exactly when
/// they agree on the origin and the four chart unit points.
fn observers_agree(f1: &Frame, f2: &Frame) -> Result<bool, SpecRelError> {
    let backend = f1.o.t.backend();
    let mut probes = [[0i64; 4]; 5];
    for (i, p) in probes.iter_mut().enumerate().skip(1) {
        p[i - 1] = 1;
    }
    for probe in probes {
        let coords = probe.map(|c| backend.int(c));
        let e = f1.event_at(&coords)?;
        if f2.coords_of(&e)? != coords {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The worldview relation: observer `m` sees body `b` at chart place
/// `(t, x, y, z)`.
///
/// Returns `false` outright when `m` is not an observer.  Otherwise each
/// quantity is pulled into `m`'s calibration to obtain its concrete
/// reading, the chart point with those readings is located, and the body's
/// worldline is tested for passing through it.
pub fn w_holds(
    m: &Body,
    b: &Body,
    t: &Quantity,
    x: &Quantity,
    y: &Quantity,
    z: &Quantity,
) -> Result<bool, SpecRelError> {
    let Body::Observer { frame } = m else {
        return Ok(false);
    };
    let cal = frame_calibration(frame)?;
    let coords = [
        rep(t, &cal)?.value(),
        rep(x, &cal)?.value(),
        rep(y, &cal)?.value(),
        rep(z, &cal)?.value(),
    ];
    let e = frame.event_at(&coords)?;
    Ok(match b {
        Body::Photon { signal } => LightLine::of_signal(signal)?.contains(&e),
        Body::Observer { frame: g } => g.a.contains(&e),
    })
}

/// The reference-frame view of a standard signalling model: the carrier of
/// quantities and bodies is everything constructible over the given field
/// backend, and `tu` records whether the underlying model carries the
/// unit-interval relation on event pairs.
///
/// The flag decides how observers are sampled for axiom checks: with the
/// unit relation available every sampled observer calibrates its clock to
/// proper time one, without it the clock scale is arbitrary.
#[derive(Clone, Copy, Debug)]
pub struct SpecRelModel {
    backend: Backend,
    tu: bool,
}

impl SpecRelModel {
    pub fn new(backend: Backend) -> Self {
        SpecRelModel { backend, tu: false }
    }

    pub fn with_time_unit(backend: Backend) -> Self {
        SpecRelModel { backend, tu: true }
    }

    pub fn backend(&self) -> Backend {
        self.backend
    }

    pub fn has_time_unit(&self) -> bool {
        self.tu
    }
}
