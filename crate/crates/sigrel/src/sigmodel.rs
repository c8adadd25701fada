//! The standard kinematic model over a field: inertial particles moving
//! slower than light, directed lightlike signals (zero length allowed), and
//! finite scenarios bundling both for quantifier-style checks.
//!
//! Particles and light lines are kept in canonical form — base point on the
//! `t = 0` hyperplane plus a velocity — so structural equality coincides with
//! equality of the underlying point sets.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::minkowski::{interval2, separation, Event, FourVec, Separation, Vec3};
use crate::scalar::{Backend, Scalar};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    #[error("particle velocity must be slower than light")]
    Superluminal,
    #[error("signal endpoints must be lightlike or coincident")]
    NotLightlike,
    #[error("signal end must not precede its beginning")]
    NotFutureDirected,
    #[error("the two events do not span a sub-light line")]
    NotTimelike,
    #[error("the two events do not span a light line")]
    NotLightline,
    #[error("unit-distance relation is not part of this scenario")]
    FeatureDisabled,
    #[error("invalid scenario: {0}")]
    InvalidScenario(String),
}

/// An inertial sub-light particle: the straight worldline through `base`
/// (normalized to `t = 0`) with spatial velocity `vel`, `|vel| < 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct Particle {
    base: Event,
    vel: Vec3,
}

impl Particle {
    pub fn new(through: Event, vel: Vec3) -> Result<Self, ModelError> {
        if vel.norm2() >= Scalar::one(&vel.x.backend()) {
            return Err(ModelError::Superluminal);
        }
        Ok(Particle {
            base: canonical_base(&through, &vel),
            vel,
        })
    }

    /// The sub-light line through two timelike-separated events.
    pub fn through(e1: &Event, e2: &Event) -> Result<Self, ModelError> {
        match separation(e1, e2) {
            Separation::TimelikeFuture | Separation::TimelikePast => {}
            _ => return Err(ModelError::NotTimelike),
        }
        let d = e2.sub(e1);
        let inv = Scalar::one(&d.t.backend())
            .checked_div(&d.t)
            .expect("timelike separation has nonzero time component");
        Particle::new(e1.clone(), d.spatial().scale(&inv))
    }

    pub fn velocity(&self) -> &Vec3 {
        &self.vel
    }

    /// Canonical base point (always on the `t = 0` hyperplane).
    pub fn base(&self) -> &Event {
        &self.base
    }

    /// Unnormalized future-directed tangent `(1, vel)`.
    pub fn four_velocity(&self) -> FourVec {
        FourVec::from_time_space(Scalar::one(&self.base.t.backend()), &self.vel)
    }

    pub fn position_at(&self, t: &Scalar) -> Event {
        Event::new(
            t.clone(),
            &self.base.x + &(&self.vel.x * t),
            &self.base.y + &(&self.vel.y * t),
            &self.base.z + &(&self.vel.z * t),
        )
    }

    pub fn contains(&self, e: &Event) -> bool {
        &self.position_at(&e.t) == e
    }

    /// This particle transmits a signal: the signal departs from its worldline.
    pub fn transmits(&self, s: &Signal) -> bool {
        self.contains(s.beg())
    }

    /// This particle receives a signal: the signal arrives on its worldline.
    pub fn receives(&self, s: &Signal) -> bool {
        self.contains(s.end())
    }

    /// Parallel worldline through a translated base point.
    pub fn translate(&self, v: &FourVec) -> Particle {
        Particle {
            base: canonical_base(&self.base.add_vec(v), &self.vel),
            vel: self.vel.clone(),
        }
    }

    /// Image under the uniform rescaling `e -> k e` (velocities unchanged).
    pub fn dilate(&self, k: &Scalar) -> Particle {
        Particle {
            base: self.base.dilate(k),
            vel: self.vel.clone(),
        }
    }

    /// Constant separation to a comoving line, as a displacement orthogonal to
    /// the shared tangent.  Meaningful when `other` has the same velocity; for
    /// other lines it is the separation of the canonical base points, projected.
    pub fn rest_offset_to(&self, other: &Particle) -> FourVec {
        let u = self.four_velocity();
        let d = other.base.sub(&self.base);
        let coeff = d
            .mdot(&u)
            .checked_div(&u.norm2())
            .expect("sub-light tangent has positive norm");
        d.sub(&u.scale(&coeff))
    }
}

fn canonical_base(through: &Event, vel: &Vec3) -> Event {
    let shift = FourVec::from_time_space(Scalar::one(&through.t.backend()), vel).scale(&through.t);
    Event::new(
        &through.t - &shift.t,
        &through.x - &shift.x,
        &through.y - &shift.y,
        &through.z - &shift.z,
    )
}

#[derive(Serialize, Deserialize)]
struct ParticleRepr {
    base: Event,
    velocity: Vec3,
}

impl Serialize for Particle {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ParticleRepr {
            base: self.base.clone(),
            velocity: self.vel.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Particle {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = ParticleRepr::deserialize(d)?;
        Particle::new(repr.base, repr.velocity).map_err(serde::de::Error::custom)
    }
}

/// A directed lightlike segment.  `beg == end` is allowed: such an "event
/// signal" stands for the spacetime point itself.
#[derive(Clone, Debug, PartialEq)]
pub struct Signal {
    beg: Event,
    end: Event,
}

impl Signal {
    pub fn new(beg: Event, end: Event) -> Result<Self, ModelError> {
        match separation(&beg, &end) {
            Separation::Equal | Separation::LightlikeFuture => Ok(Signal { beg, end }),
            Separation::LightlikePast => Err(ModelError::NotFutureDirected),
            _ => Err(ModelError::NotLightlike),
        }
    }

    /// The zero-length signal standing for an event.
    pub fn event(e: Event) -> Self {
        Signal { beg: e.clone(), end: e }
    }

    pub fn beg(&self) -> &Event {
        &self.beg
    }

    pub fn end(&self) -> &Event {
        &self.end
    }

    /// True iff the signal has zero length and so denotes a single event.
    pub fn is_event(&self) -> bool {
        self.beg == self.end
    }

    pub fn dilate(&self, k: &Scalar) -> Signal {
        Signal {
            beg: self.beg.dilate(k),
            end: self.end.dilate(k),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct SignalRepr {
    beg: Event,
    end: Event,
}

impl Serialize for Signal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        SignalRepr {
            beg: self.beg.clone(),
            end: self.end.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Signal {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = SignalRepr::deserialize(d)?;
        Signal::new(repr.beg, repr.end).map_err(serde::de::Error::custom)
    }
}

/// A full lightlike line, canonicalized like a particle: base at `t = 0` and
/// a unit-speed spatial direction, so equality is extensional.
#[derive(Clone, Debug, PartialEq)]
pub struct LightLine {
    base: Event,
    dir: Vec3,
}

impl LightLine {
    /// The light line through two distinct lightlike-separated events.
    pub fn through(e1: &Event, e2: &Event) -> Result<Self, ModelError> {
        match separation(e1, e2) {
            Separation::LightlikeFuture | Separation::LightlikePast => {}
            _ => return Err(ModelError::NotLightline),
        }
        let d = e2.sub(e1);
        let inv = Scalar::one(&d.t.backend())
            .checked_div(&d.t)
            .expect("lightlike separation of distinct events has nonzero time component");
        let dir = d.spatial().scale(&inv);
        Ok(LightLine {
            base: canonical_base(e1, &dir),
            dir,
        })
    }

    /// Extend a signal of nonzero length to its full line.
    pub fn of_signal(s: &Signal) -> Result<Self, ModelError> {
        LightLine::through(s.beg(), s.end())
    }

    pub fn direction(&self) -> &Vec3 {
        &self.dir
    }

    pub fn base(&self) -> &Event {
        &self.base
    }

    pub fn position_at(&self, t: &Scalar) -> Event {
        Event::new(
            t.clone(),
            &self.base.x + &(&self.dir.x * t),
            &self.base.y + &(&self.dir.y * t),
            &self.base.z + &(&self.dir.z * t),
        )
    }

    pub fn contains(&self, e: &Event) -> bool {
        &self.position_at(&e.t) == e
    }
}

/// Intersection of two lines parameterized by coordinate time (sub-light or
/// lightlike).  Returns the unique common event of two transversal lines;
/// `None` when the lines are parallel, identical, or skew.
pub fn intersect_uniform(base1: &Event, v1: &Vec3, base2: &Event, v2: &Vec3) -> Option<Event> {
    let d = base1.spatial().sub(&base2.spatial());
    let w = v2.sub(v1);
    if w.is_zero() {
        return None;
    }
    let t = if !w.x.is_zero() {
        d.x.checked_div(&w.x).unwrap()
    } else if !w.y.is_zero() {
        d.y.checked_div(&w.y).unwrap()
    } else {
        d.z.checked_div(&w.z).unwrap()
    };
    if d == w.scale(&t) {
        let p = base1.spatial().add(&v1.scale(&t));
        Some(Event::new(t, p.x, p.y, p.z))
    } else {
        None
    }
}

/// Intersection of two particle worldlines.
pub fn meet_point(a: &Particle, b: &Particle) -> Option<Event> {
    intersect_uniform(a.base(), a.velocity(), b.base(), b.velocity())
}

/// A finite collection of particles and signals used as the carrier of
/// quantifier-style checks: the "for all particles" in a defining formula
/// ranges over `particles`, and so on.
#[derive(Clone, Debug, PartialEq)]
pub struct Scenario {
    pub backend: Backend,
    /// Whether the unit-distance relation on event pairs is part of the model.
    pub tu: bool,
    pub particles: Vec<Particle>,
    pub signals: Vec<Signal>,
}

impl Scenario {
    pub fn new(backend: Backend, tu: bool) -> Self {
        Scenario {
            backend,
            tu,
            particles: Vec::new(),
            signals: Vec::new(),
        }
    }

    /// The unit-distance relation: defined only when the scenario carries it.
    pub fn tu_holds(&self, e1: &Event, e2: &Event) -> Result<bool, ModelError> {
        if !self.tu {
            return Err(ModelError::FeatureDisabled);
        }
        Ok(interval2(e1, e2) == Scalar::one(&self.backend))
    }

    /// The quantified reading of "this signal is an event": every particle in
    /// the scenario that transmits it also receives it.  Matches
    /// [`Signal::is_event`] on scenarios that contain a discriminating
    /// particle for each extended signal (see
    /// [`Scenario::add_event_witnesses`]).
    pub fn ev_by_quantifier(&self, s: &Signal) -> bool {
        self.particles
            .iter()
            .all(|a| !a.transmits(s) || a.receives(s))
    }

    /// For every extended signal, add a particle that transmits but does not
    /// receive it, so `ev_by_quantifier` can refute event-hood.  The witness
    /// velocity is chosen deterministically.
    pub fn add_event_witnesses(&mut self) {
        let zero = Vec3::zero(&self.backend);
        let half = Vec3::new(self.backend.ratio(1, 2), self.backend.int(0), self.backend.int(0));
        let mut fresh = Vec::new();
        for s in &self.signals {
            if s.is_event() {
                continue;
            }
            // Any sub-light particle through the beginning misses the end,
            // because the end lies on the light cone; two candidate velocities
            // guard against one already being present.
            for vel in [&zero, &half] {
                let w = Particle::new(s.beg().clone(), vel.clone()).expect("sub-light by construction");
                debug_assert!(w.transmits(s) && !w.receives(s));
                if !self.particles.contains(&w) && !fresh.contains(&w) {
                    fresh.push(w);
                    break;
                }
            }
        }
        self.particles.extend(fresh);
    }

    /// Image of the whole scenario under `e -> k e`.
    pub fn dilate(&self, k: &Scalar) -> Scenario {
        Scenario {
            backend: self.backend,
            tu: self.tu,
            particles: self.particles.iter().map(|p| p.dilate(k)).collect(),
            signals: self.signals.iter().map(|s| s.dilate(k)).collect(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(ScenarioFile::from(self)).expect("scenario serializes")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, ModelError> {
        let file: ScenarioFile = serde_json::from_value(v.clone())
            .map_err(|e| ModelError::InvalidScenario(e.to_string()))?;
        file.try_into()
    }
}

#[derive(Serialize, Deserialize)]
struct ScenarioFile {
    field: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    eps: Option<f64>,
    tu: bool,
    particles: Vec<Particle>,
    signals: Vec<Signal>,
}

impl From<&Scenario> for ScenarioFile {
    fn from(s: &Scenario) -> Self {
        let (field, eps) = match s.backend {
            Backend::Exact => ("exact".to_string(), None),
            Backend::Approx { eps } => ("approx".to_string(), Some(eps)),
        };
        ScenarioFile {
            field,
            eps,
            tu: s.tu,
            particles: s.particles.clone(),
            signals: s.signals.clone(),
        }
    }
}

impl TryFrom<ScenarioFile> for Scenario {
    type Error = ModelError;

    fn try_from(f: ScenarioFile) -> Result<Self, ModelError> {
        let backend = match f.field.as_str() {
            "exact" => Backend::Exact,
            "approx" => Backend::Approx {
                eps: f.eps.unwrap_or(crate::scalar::DEFAULT_EPS),
            },
            other => {
                return Err(ModelError::InvalidScenario(format!(
                    "unknown field backend {other:?}"
                )))
            }
        };
        let mut scenario = Scenario {
            backend,
            tu: f.tu,
            particles: f.particles,
            signals: f.signals,
        };
        match backend {
            Backend::Exact => {
                let all_exact = scenario
                    .particles
                    .iter()
                    .map(|p| p.base().t.backend().is_exact() && p.velocity().x.backend().is_exact())
                    .chain(scenario.signals.iter().map(|s| s.beg().t.backend().is_exact()))
                    .all(|b| b);
                if !all_exact {
                    return Err(ModelError::InvalidScenario(
                        "exact scenario contains approximate literals".into(),
                    ));
                }
            }
            Backend::Approx { eps } => {
                // Re-tag every scalar with the configured tolerance.
                let retag_event =
                    |e: &Event| Event::new(e.t.with_eps(eps), e.x.with_eps(eps), e.y.with_eps(eps), e.z.with_eps(eps));
                scenario.particles = scenario
                    .particles
                    .iter()
                    .map(|p| {
                        let v = p.velocity();
                        Particle::new(
                            retag_event(p.base()),
                            Vec3::new(v.x.with_eps(eps), v.y.with_eps(eps), v.z.with_eps(eps)),
                        )
                        .expect("was valid before re-tagging")
                    })
                    .collect();
                scenario.signals = scenario
                    .signals
                    .iter()
                    .map(|s| Signal::new(retag_event(s.beg()), retag_event(s.end())).expect("was valid"))
                    .collect();
            }
        }
        Ok(scenario)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::Sampler;

    fn exact() -> Backend {
        Backend::Exact
    }

    fn ev(t: i64, x: i64, y: i64, z: i64) -> Event {
        Event::from_ints(&exact(), [t, x, y, z])
    }

    #[test]
    fn sub_light_is_enforced() {
        let c = Vec3::new(Scalar::from_int(1), Scalar::from_int(0), Scalar::from_int(0));
        assert_eq!(Particle::new(ev(0, 0, 0, 0), c).unwrap_err(), ModelError::Superluminal);
        // |v| = 1 exactly (3/5, 4/5) is also rejected: strictly slower only.
        let unit = Vec3::new(Scalar::ratio(3, 5), Scalar::ratio(4, 5), Scalar::from_int(0));
        assert_eq!(Particle::new(ev(0, 0, 0, 0), unit).unwrap_err(), ModelError::Superluminal);
    }

    #[test]
    fn canonical_form_makes_equality_extensional() {
        let v = Vec3::new(Scalar::ratio(1, 3), Scalar::ratio(-1, 4), Scalar::from_int(0));
        let a = Particle::new(ev(0, 2, 1, -1), v.clone()).unwrap();
        for t in [-7i64, 0, 3, 12] {
            let p = a.position_at(&Scalar::from_int(t));
            let b = Particle::new(p, v.clone()).unwrap();
            assert_eq!(a, b);
            assert!(a.contains(&b.position_at(&Scalar::from_int(5))));
        }
        let elsewhere = Particle::new(ev(0, 2, 1, 0), v).unwrap();
        assert_ne!(a, elsewhere);
    }

    #[test]
    fn transmits_and_receives() {
        let a = Particle::new(
            ev(0, 0, 0, 0),
            Vec3::new(Scalar::ratio(1, 2), Scalar::from_int(0), Scalar::from_int(0)),
        )
        .unwrap();
        let s = Signal::new(ev(0, 0, 0, 0), ev(2, 2, 0, 0)).unwrap();
        assert!(a.transmits(&s));
        assert!(!a.receives(&s));
        let at_particle = Signal::event(ev(2, 1, 0, 0));
        assert!(a.transmits(&at_particle) && a.receives(&at_particle));
        assert!(at_particle.is_event());
        assert!(!s.is_event());
    }

    #[test]
    fn signal_construction_is_checked() {
        assert_eq!(
            Signal::new(ev(0, 0, 0, 0), ev(1, 0, 2, 0)).unwrap_err(),
            ModelError::NotLightlike
        );
        assert_eq!(
            Signal::new(ev(0, 0, 0, 0), ev(-2, 2, 0, 0)).unwrap_err(),
            ModelError::NotFutureDirected
        );
        assert!(Signal::new(ev(0, 0, 0, 0), ev(3, 1, 2, 2)).is_ok());
    }

    #[test]
    fn light_line_is_extensional() {
        let l1 = LightLine::through(&ev(0, 0, 0, 0), &ev(2, 2, 0, 0)).unwrap();
        let l2 = LightLine::through(&ev(3, 3, 0, 0), &ev(1, 1, 0, 0)).unwrap();
        assert_eq!(l1, l2);
        assert!(l1.contains(&ev(-4, -4, 0, 0)));
        assert!(!l1.contains(&ev(2, -2, 0, 0)));
        assert_eq!(
            LightLine::through(&ev(0, 0, 0, 0), &ev(5, 3, 0, 0)).unwrap_err(),
            ModelError::NotLightline
        );
    }

    #[test]
    fn uniform_line_intersection() {
        let a = Particle::new(ev(0, 0, 0, 0), Vec3::zero(&exact())).unwrap();
        let b = Particle::new(
            ev(0, -1, 0, 0),
            Vec3::new(Scalar::ratio(1, 2), Scalar::from_int(0), Scalar::from_int(0)),
        )
        .unwrap();
        assert_eq!(meet_point(&a, &b), Some(ev(2, 0, 0, 0)));
        // Parallel lines do not meet in a unique point.
        let c = Particle::new(ev(0, 1, 0, 0), Vec3::zero(&exact())).unwrap();
        assert_eq!(meet_point(&a, &c), None);
        // Skew lines neither.
        let d = Particle::new(
            ev(0, 0, 1, 0),
            Vec3::new(Scalar::ratio(1, 2), Scalar::from_int(0), Scalar::from_int(0)),
        )
        .unwrap();
        assert_eq!(meet_point(&b, &d), None);
    }

    #[test]
    fn unit_distance_relation() {
        let with = Scenario::new(exact(), true);
        assert!(with.tu_holds(&ev(0, 0, 0, 0), &ev(1, 0, 0, 0)).unwrap());
        assert!(!with.tu_holds(&ev(0, 0, 0, 0), &ev(2, 0, 0, 0)).unwrap());
        // Spacelike unit pairs do not qualify: squared interval is -1 there.
        assert!(!with.tu_holds(&ev(0, 0, 0, 0), &ev(0, 1, 0, 0)).unwrap());
        let without = Scenario::new(exact(), false);
        assert_eq!(
            without.tu_holds(&ev(0, 0, 0, 0), &ev(1, 0, 0, 0)).unwrap_err(),
            ModelError::FeatureDisabled
        );
    }

    #[test]
    fn quantified_event_reading_matches_zero_length() {
        let mut sc = Sampler::new(Backend::approx(), 01223).scenario(6, 10, false);
        sc.add_event_witnesses();
        for s in sc.signals.clone() {
            assert_eq!(
                sc.ev_by_quantifier(&s),
                s.is_event(),
                "quantified and zero-length readings disagree on {s:?}"
            );
        }
    }

    #[test]
    fn dilation_preserves_membership_but_not_unit_distance() {
        let two = Scalar::from_int(2);
        let mut sampler = Sampler::new(Backend::Exact, 7);
        for _ in 0..50 {
            let a = sampler.particle(4);
            let s = sampler.signal(4);
            assert_eq!(a.transmits(&s), a.dilate(&two).transmits(&s.dilate(&two)));
            assert_eq!(a.receives(&s), a.dilate(&two).receives(&s.dilate(&two)));
        }
        let sc = Scenario::new(exact(), true);
        let (e1, e2) = (ev(0, 0, 0, 0), ev(1, 0, 0, 0));
        assert!(sc.tu_holds(&e1, &e2).unwrap());
        assert!(!sc.tu_holds(&e1.dilate(&two), &e2.dilate(&two)).unwrap());
    }

    #[test]
    fn scenario_generation_is_deterministic() {
        let s1 = Sampler::new(Backend::approx(), 42).scenario(5, 8, true);
        let s2 = Sampler::new(Backend::approx(), 42).scenario(5, 8, true);
        assert_eq!(s1, s2);
        let s3 = Sampler::new(Backend::approx(), 43).scenario(5, 8, true);
        assert_ne!(s1, s3);
        assert_eq!(s1.particles.len(), 5);
        assert_eq!(s1.signals.len(), 8);
    }

    #[test]
    fn scenario_json_round_trip() {
        for backend in [Backend::Exact, Backend::Approx { eps: 1e-9 }] {
            let sc = Sampler::new(backend, 11).scenario(3, 4, true);
            let json = sc.to_json();
            let back = Scenario::from_json(&json).unwrap();
            assert_eq!(back, sc);
            assert_eq!(json["field"], if backend.is_exact() { "exact" } else { "approx" });
        }
        let bad = serde_json::json!({
            "field": "decimal", "tu": false, "particles": [], "signals": []
        });
        assert!(matches!(
            Scenario::from_json(&bad).unwrap_err(),
            ModelError::InvalidScenario(_)
        ));
    }
}
