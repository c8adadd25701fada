//! Events, intervals, and the closed-form coordinate oracle.
//!
//! Everything here is plain Minkowski algebra with signature `(+,-,-,-)` and
//! light speed 1.  The constructive experiments in [`crate::signalling`] must
//! reproduce these closed forms; this module is deliberately free of any
//! signal-based reasoning so the two routes stay independent.

use std::fmt;

use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::{Backend, Scalar, ScalarError};
use crate::sigmodel::Particle;

/// A spatial 3-vector (velocities, offsets, directions).
#[derive(Clone, Debug, PartialEq)]
pub struct Vec3 {
    pub x: Scalar,
    pub y: Scalar,
    pub z: Scalar,
}

impl Vec3 {
    pub fn new(x: Scalar, y: Scalar, z: Scalar) -> Self {
        Vec3 { x, y, z }
    }

    pub fn zero(backend: &Backend) -> Self {
        Vec3::new(backend.int(0), backend.int(0), backend.int(0))
    }

    pub fn dot(&self, o: &Vec3) -> Scalar {
        &self.x * &o.x + &self.y * &o.y + &self.z * &o.z
    }

    pub fn norm2(&self) -> Scalar {
        self.dot(self)
    }

    pub fn cross(&self, o: &Vec3) -> Vec3 {
        Vec3::new(
            &self.y * &o.z - &self.z * &o.y,
            &self.z * &o.x - &self.x * &o.z,
            &self.x * &o.y - &self.y * &o.x,
        )
    }

    pub fn add(&self, o: &Vec3) -> Vec3 {
        Vec3::new(&self.x + &o.x, &self.y + &o.y, &self.z + &o.z)
    }

    pub fn sub(&self, o: &Vec3) -> Vec3 {
        Vec3::new(&self.x - &o.x, &self.y - &o.y, &self.z - &o.z)
    }

    pub fn scale(&self, k: &Scalar) -> Vec3 {
        Vec3::new(&self.x * k, &self.y * k, &self.z * k)
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }
}

impl Serialize for Vec3 {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(3))?;
        seq.serialize_element(&self.x)?;
        seq.serialize_element(&self.y)?;
        seq.serialize_element(&self.z)?;
        seq.end()
    }
}

impl<'de> Deserialize<'de> for Vec3 {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let v: Vec<Scalar> = Vec::deserialize(deserializer)?;
        if v.len() != 3 {
            return Err(de::Error::custom("vector must have 3 components"));
        }
        let mut it = v.into_iter();
        Ok(Vec3::new(it.next().unwrap(), it.next().unwrap(), it.next().unwrap()))
    }
}

/// A spacetime point.  Serializes as a 4-element `[t, x, y, z]` array.
#[derive(Clone, PartialEq)]
pub struct Event {
    pub t: Scalar,
    pub x: Scalar,
    pub y: Scalar,
    pub z: Scalar,
}

impl Event {
    pub fn new(t: Scalar, x: Scalar, y: Scalar, z: Scalar) -> Self {
        Event { t, x, y, z }
    }

    pub fn from_ints(backend: &Backend, c: [i64; 4]) -> Self {
        Event::new(backend.int(c[0]), backend.int(c[1]), backend.int(c[2]), backend.int(c[3]))
    }

    pub fn origin(backend: &Backend) -> Self {
        Event::from_ints(backend, [0, 0, 0, 0])
    }

    pub fn spatial(&self) -> Vec3 {
        Vec3::new(self.x.clone(), self.y.clone(), self.z.clone())
    }

    pub fn sub(&self, o: &Event) -> FourVec {
        FourVec::new(&self.t - &o.t, &self.x - &o.x, &self.y - &o.y, &self.z - &o.z)
    }

    pub fn add_vec(&self, v: &FourVec) -> Event {
        Event::new(&self.t + &v.t, &self.x + &v.x, &self.y + &v.y, &self.z + &v.z)
    }

    /// Uniform rescaling of all coordinates about the origin.
    pub fn dilate(&self, k: &Scalar) -> Event {
        Event::new(&self.t * k, &self.x * k, &self.y * k, &self.z * k)
    }
}

impl fmt::Debug for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {:?}, {:?}, {:?})", self.t, self.x, self.y, self.z)
    }
}

impl Serialize for Event {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(4))?;
        seq.serialize_element(&self.t)?;
        seq.serialize_element(&self.x)?;
        seq.serialize_element(&self.y)?;
        seq.serialize_element(&self.z)?;
        seq.end()
    }
}

impl<'de> Deserialize<'de> for Event {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = Event;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                write!(f, "a 4-element [t, x, y, z] array")
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Event, A::Error> {
                let t = seq.next_element()?.ok_or_else(|| de::Error::custom("missing t"))?;
                let x = seq.next_element()?.ok_or_else(|| de::Error::custom("missing x"))?;
                let y = seq.next_element()?.ok_or_else(|| de::Error::custom("missing y"))?;
                let z = seq.next_element()?.ok_or_else(|| de::Error::custom("missing z"))?;
                if seq.next_element::<Scalar>()?.is_some() {
                    return Err(de::Error::custom("event has more than 4 components"));
                }
                Ok(Event::new(t, x, y, z))
            }
        }
        deserializer.deserialize_seq(V)
    }
}

/// A spacetime displacement.
#[derive(Clone, Debug, PartialEq)]
pub struct FourVec {
    pub t: Scalar,
    pub x: Scalar,
    pub y: Scalar,
    pub z: Scalar,
}

impl FourVec {
    pub fn new(t: Scalar, x: Scalar, y: Scalar, z: Scalar) -> Self {
        FourVec { t, x, y, z }
    }

    pub fn zero(backend: &Backend) -> Self {
        FourVec::new(backend.int(0), backend.int(0), backend.int(0), backend.int(0))
    }

    pub fn from_time_space(t: Scalar, s: &Vec3) -> Self {
        FourVec::new(t, s.x.clone(), s.y.clone(), s.z.clone())
    }

    pub fn spatial(&self) -> Vec3 {
        Vec3::new(self.x.clone(), self.y.clone(), self.z.clone())
    }

    /// Minkowski inner product, signature `(+,-,-,-)`.
    pub fn mdot(&self, o: &FourVec) -> Scalar {
        &self.t * &o.t - &self.x * &o.x - &self.y * &o.y - &self.z * &o.z
    }

    pub fn norm2(&self) -> Scalar {
        self.mdot(self)
    }

    pub fn add(&self, o: &FourVec) -> FourVec {
        FourVec::new(&self.t + &o.t, &self.x + &o.x, &self.y + &o.y, &self.z + &o.z)
    }

    pub fn sub(&self, o: &FourVec) -> FourVec {
        FourVec::new(&self.t - &o.t, &self.x - &o.x, &self.y - &o.y, &self.z - &o.z)
    }

    pub fn scale(&self, k: &Scalar) -> FourVec {
        FourVec::new(&self.t * k, &self.x * k, &self.y * k, &self.z * k)
    }

    pub fn neg(&self) -> FourVec {
        self.scale(&Scalar::from_int(-1))
    }

    pub fn is_zero(&self) -> bool {
        self.t.is_zero() && self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }
}

/// Squared Minkowski interval between two events.
pub fn interval2(e1: &Event, e2: &Event) -> Scalar {
    e2.sub(e1).norm2()
}

/// How two events sit relative to each other's light cones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Separation {
    Equal,
    LightlikeFuture,
    LightlikePast,
    TimelikeFuture,
    TimelikePast,
    Spacelike,
}

/// Classify the separation from `e1` to `e2` ("future" means `e2` later).
pub fn separation(e1: &Event, e2: &Event) -> Separation {
    if e1 == e2 {
        return Separation::Equal;
    }
    let d = e2.sub(e1);
    // Compare the squared climb and run directly rather than testing their
    // difference against zero: the approximate backend's tolerance then
    // tracks the magnitude of the coordinates instead of collapsing to an
    // absolute threshold after the cancellation.
    let climb = d.t.square();
    let run = d.spatial().norm2();
    if climb > run {
        if d.t.is_positive() {
            Separation::TimelikeFuture
        } else {
            Separation::TimelikePast
        }
    } else if climb == run {
        if d.t.is_positive() {
            Separation::LightlikeFuture
        } else if d.t.is_negative() {
            Separation::LightlikePast
        } else {
            // Within tolerance of equality on every coordinate.
            Separation::Equal
        }
    } else {
        Separation::Spacelike
    }
}

/// `e2` is in the closed causal future of `e1`.
pub fn causally_after(e1: &Event, e2: &Event) -> bool {
    matches!(
        separation(e1, e2),
        Separation::Equal | Separation::LightlikeFuture | Separation::TimelikeFuture
    )
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FrameError {
    #[error("frame origin is not on the worldline")]
    OriginOffWorldline,
    #[error("clock event is not on the worldline")]
    ClockOffWorldline,
    #[error("clock event must be strictly later than the origin")]
    ClockNotFuture,
    #[error("axis {0} is not motionless with respect to the worldline")]
    AxisMoving(usize),
    #[error("axis {0} coincides with the worldline")]
    AxisDegenerate(usize),
    #[error("axes {0} and {1} are not orthogonal")]
    AxesNotOrthogonal(usize, usize),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// A reference frame: a worldline carrying an origin event, a clock event
/// fixing the unit, and three mutually orthogonal motionless axis lines.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Frame {
    pub a: Particle,
    pub o: Event,
    pub u: Event,
    pub ax: Particle,
    pub ay: Particle,
    pub az: Particle,
}

impl Frame {
    pub fn new(a: Particle, o: Event, u: Event, ax: Particle, ay: Particle, az: Particle) -> Self {
        Frame { a, o, u, ax, ay, az }
    }

    fn axes(&self) -> [&Particle; 3] {
        [&self.ax, &self.ay, &self.az]
    }

    /// Check the geometric well-formedness conditions.
    pub fn validate(&self) -> Result<(), FrameError> {
        if !self.a.contains(&self.o) {
            return Err(FrameError::OriginOffWorldline);
        }
        if !self.a.contains(&self.u) {
            return Err(FrameError::ClockOffWorldline);
        }
        if separation(&self.o, &self.u) != Separation::TimelikeFuture {
            return Err(FrameError::ClockNotFuture);
        }
        let offsets: Vec<FourVec> = self
            .axes()
            .iter()
            .map(|axis| self.a.rest_offset_to(axis))
            .collect();
        for (i, axis) in self.axes().iter().enumerate() {
            if axis.velocity() != self.a.velocity() {
                return Err(FrameError::AxisMoving(i));
            }
            if offsets[i].is_zero() {
                return Err(FrameError::AxisDegenerate(i));
            }
        }
        for i in 0..3 {
            for j in (i + 1)..3 {
                if !offsets[i].mdot(&offsets[j]).is_zero() {
                    return Err(FrameError::AxesNotOrthogonal(i, j));
                }
            }
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }

    /// Derive the orthonormal basis and unit scale.  Axis directions go
    /// through Gram–Schmidt in the fixed order x, y, z, so the derived basis
    /// is deterministic; validation has already ensured the inputs are
    /// pairwise orthogonal, which makes the projection steps exact no-ops up
    /// to tolerance.
    pub fn tetrad(&self) -> Result<Tetrad, FrameError> {
        self.validate()?;
        let backend = self.o.t.backend();
        let u_dir = self.a.four_velocity();
        let time = unit_timelike(&u_dir)?;
        let mut space: Vec<FourVec> = Vec::with_capacity(3);
        for axis in self.axes() {
            let mut d = self.a.rest_offset_to(axis);
            for prev in &space {
                // prev is unit spacelike: <prev,prev> = -1.
                let coeff = d.mdot(prev);
                d = d.add(&prev.scale(&coeff));
            }
            space.push(unit_spacelike(&d)?);
        }
        let scale = interval2(&self.o, &self.u).sqrt()?;
        Ok(Tetrad {
            origin: self.o.clone(),
            time,
            space: [space[0].clone(), space[1].clone(), space[2].clone()],
            scale,
            backend,
        })
    }

    /// Coordinates of `e` in this frame: the Poincaré transform fixed by the
    /// worldline, origin, and axes, composed with the dilation that puts the
    /// clock event at time 1.
    pub fn coords_of(&self, e: &Event) -> Result<[Scalar; 4], FrameError> {
        Ok(self.tetrad()?.coords_of(e))
    }

    /// Inverse of [`Frame::coords_of`].
    pub fn event_at(&self, coords: &[Scalar; 4]) -> Result<Event, FrameError> {
        Ok(self.tetrad()?.event_at(coords))
    }
}

fn unit_timelike(v: &FourVec) -> Result<FourVec, ScalarError> {
    let n = v.norm2().sqrt()?;
    let inv = Scalar::one(&n.backend()).checked_div(&n)?;
    Ok(v.scale(&inv))
}

fn unit_spacelike(v: &FourVec) -> Result<FourVec, ScalarError> {
    let n = (-v.norm2()).sqrt()?;
    let inv = Scalar::one(&n.backend()).checked_div(&n)?;
    Ok(v.scale(&inv))
}

/// An orthonormal basis with origin and dilation scale; the concrete form of
/// a frame's coordinate map.
#[derive(Clone, Debug)]
pub struct Tetrad {
    pub origin: Event,
    pub time: FourVec,
    pub space: [FourVec; 3],
    pub scale: Scalar,
    backend: Backend,
}

impl Tetrad {
    /// Rest chart of a bare worldline: origin at `o`, unit scale, spatial axes
    /// from Gram–Schmidt over the global x, y, z directions.  Used by
    /// constructions that need *some* orthonormal rest basis.
    pub fn rest_chart(a: &Particle, o: &Event) -> Result<Tetrad, ScalarError> {
        let backend = o.t.backend();
        let time = unit_timelike(&a.four_velocity())?;
        let axes = [
            FourVec::new(backend.int(0), backend.int(1), backend.int(0), backend.int(0)),
            FourVec::new(backend.int(0), backend.int(0), backend.int(1), backend.int(0)),
            FourVec::new(backend.int(0), backend.int(0), backend.int(0), backend.int(1)),
        ];
        let mut space: Vec<FourVec> = Vec::with_capacity(3);
        for axis in &axes {
            let mut d = axis.sub(&time.scale(&axis.mdot(&time)));
            for prev in &space {
                let coeff = d.mdot(prev);
                d = d.add(&prev.scale(&coeff));
            }
            space.push(unit_spacelike(&d)?);
        }
        Ok(Tetrad {
            origin: o.clone(),
            time,
            space: [space[0].clone(), space[1].clone(), space[2].clone()],
            scale: backend.int(1),
            backend,
        })
    }

    pub fn coords_of(&self, e: &Event) -> [Scalar; 4] {
        let d = e.sub(&self.origin);
        let inv = Scalar::one(&self.backend)
            .checked_div(&self.scale)
            .expect("tetrad scale is nonzero");
        [
            d.mdot(&self.time) * &inv,
            -(d.mdot(&self.space[0])) * &inv,
            -(d.mdot(&self.space[1])) * &inv,
            -(d.mdot(&self.space[2])) * &inv,
        ]
    }

    pub fn event_at(&self, coords: &[Scalar; 4]) -> Event {
        let mut v = self.time.scale(&coords[0]);
        for (i, s) in self.space.iter().enumerate() {
            v = v.add(&s.scale(&coords[i + 1]));
        }
        self.origin.add_vec(&v.scale(&self.scale))
    }

    /// Map a displacement (direction, not point) into chart components.
    pub fn vec_coords(&self, v: &FourVec) -> [Scalar; 4] {
        let shifted = self.origin.add_vec(v);
        self.coords_of(&shifted)
    }

    /// Build the displacement with the given chart components.
    pub fn vec_at(&self, coords: &[Scalar; 4]) -> FourVec {
        self.event_at(coords).sub(&self.origin)
    }
}

/// The standard test frame moving at 3/5 along x: worldline through the
/// origin, clock event at proper time 1, axis lines through unit points at
/// t = 0.  Shared by fixture tests across modules.
#[cfg(test)]
pub(crate) fn boosted_frame() -> Frame {
    use crate::sigmodel::Particle;
    let ev = |t: i64, x: i64, y: i64, z: i64| Event::from_ints(&Backend::Exact, [t, x, y, z]);
    let v = Vec3::new(Scalar::ratio(3, 5), Scalar::from_int(0), Scalar::from_int(0));
    let a = Particle::new(ev(0, 0, 0, 0), v.clone()).unwrap();
    let mk_axis = |base: Event| Particle::new(base, v.clone()).unwrap();
    Frame::new(
        a,
        ev(0, 0, 0, 0),
        Event::new(Scalar::ratio(5, 4), Scalar::ratio(3, 4), Scalar::from_int(0), Scalar::from_int(0)),
        mk_axis(ev(0, 1, 0, 0)),
        mk_axis(ev(0, 0, 1, 0)),
        mk_axis(ev(0, 0, 0, 1)),
    )
}
