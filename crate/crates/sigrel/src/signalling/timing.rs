//! Experiments that compare or measure times along a worldline.

use super::radar::{null_split, RadarQuadratic};
use super::{Calibration, FieldPoint, SignallingError, Trace};
use crate::minkowski::{separation, Event, Separation};
use crate::sigmodel::{Particle, Signal};

/// Midpoint mirror line used by the simultaneity experiment: comoving with
/// `a`, through the coordinate midpoint of the two probed events.
fn midpoint_mirror(a: &Particle, e1: &Event, e2: &Event) -> Particle {
    let half = e1.t.backend().ratio(1, 2);
    let mid = Event::new(
        &(&e1.t + &e2.t) * &half,
        &(&e1.x + &e2.x) * &half,
        &(&e1.y + &e2.y) * &half,
        &(&e1.z + &e2.z) * &half,
    );
    Particle::new(mid, a.velocity().clone()).expect("sub-light velocity is preserved")
}

/// Does `a` see `e1` and `e2` at the same moment?
///
/// The experiment stations a mirror line comoving with `a` halfway between
/// the two events and radar-ranges both from it.  The events pass as
/// simultaneous exactly when the two echoes share their emission event and
/// their reception event.  Root pairs of the two radar quadratics are
/// compared through their shared leading coefficient, linear coefficient and
/// discriminant, so the decision needs no square roots and is total on the
/// exact backend.
pub fn simultaneous(a: &Particle, e1: &Event, e2: &Event) -> bool {
    let mirror = midpoint_mirror(a, e1, e2);
    let q1 = RadarQuadratic::new(&mirror, e1);
    let q2 = RadarQuadratic::new(&mirror, e2);
    q1.linear() == q2.linear() && q1.discriminant() == q2.discriminant()
}

/// Like [`simultaneous`] but also materialising the mirror line and, when the
/// roots are constructible, the actual echo signals.
pub fn simultaneous_trace(
    a: &Particle,
    e1: &Event,
    e2: &Event,
) -> Result<(bool, Trace), SignallingError> {
    let mirror = midpoint_mirror(a, e1, e2);
    let mut trace = Trace::new("simultaneous");
    trace.particle("mirror", &mirror);
    let (emit1, recv1) = RadarQuadratic::new(&mirror, e1).roots()?;
    let (emit2, recv2) = RadarQuadratic::new(&mirror, e2).roots()?;
    for (label, time, probe) in [("ping-1", &emit1, e1), ("ping-2", &emit2, e2)] {
        if let Ok(sig) = Signal::new(mirror.position_at(time), probe.clone()) {
            trace.signal(label, &sig);
        }
    }
    for (label, probe, time) in [("echo-1", e1, &recv1), ("echo-2", e2, &recv2)] {
        if let Ok(sig) = Signal::new(probe.clone(), mirror.position_at(time)) {
            trace.signal(label, &sig);
        }
    }
    let verdict = emit1 == emit2 && recv1 == recv2;
    debug_assert_eq!(verdict, simultaneous(a, e1, e2));
    trace.flag("verdict", verdict);
    Ok((verdict, trace))
}

/// A relay event through which light hops from `e1` to `e2`, if the pair is
/// causally ordered.  The split of the connecting vector into two lightlike
/// legs is rational, and the legs are then validated as genuine
/// future-directed signals, so this is total on both backends and returns
/// `None` exactly on non-causal pairs.
pub fn causal_witness(e1: &Event, e2: &Event) -> Option<Event> {
    let d = e2.sub(e1);
    if d.is_zero() {
        return Some(e1.clone());
    }
    let (l1, _) = null_split(&d)?;
    let mid = e1.add_vec(&l1);
    Signal::new(e1.clone(), mid.clone()).ok()?;
    Signal::new(mid.clone(), e2.clone()).ok()?;
    Some(mid)
}

/// Can a signal chain reach `e2` from `e1`?
pub fn causal_leq(e1: &Event, e2: &Event) -> bool {
    causal_witness(e1, e2).is_some()
}

pub fn strictly_earlier(e1: &Event, e2: &Event) -> bool {
    e1 != e2 && causal_leq(e1, e2)
}

fn require_on(a: &Particle, events: &[&Event]) -> Result<(), SignallingError> {
    for e in events {
        if !a.contains(e) {
            return Err(SignallingError::NotOnWorldline);
        }
    }
    Ok(())
}

/// Shared core of [`ted`] and [`ted_trace`]: build the bounce geometry for
/// the oriented first pair and return the translated bounce point the second
/// pair must echo through, with the assembled trace.
fn ted_setup(
    a: &Particle,
    e1: &Event,
    e2: &Event,
    e3: &Event,
    e4: &Event,
) -> Result<(Event, Event, Trace), SignallingError> {
    require_on(a, &[e1, e2, e3, e4])?;
    // Orient so the first radar pair points to the future; swapping both
    // pairs at once leaves the tested relation unchanged.
    let (e1, e2, e3, e4) = if e3.t < e1.t { (e3, e4, e1, e2) } else { (e1, e2, e3, e4) };
    let mut trace = Trace::new("ted");
    let d13 = e3.sub(e1);
    let (l1, _) = null_split(&d13).expect("worldline displacement is causal");
    let bounce = e1.add_vec(&l1);
    trace.event("bounce", &bounce);
    let mirror = Particle::new(bounce.clone(), a.velocity().clone()).expect("sub-light");
    trace.particle("mirror", &mirror);
    let out1 = Signal::new(e1.clone(), bounce.clone()).expect("lightlike by construction");
    let back1 = Signal::new(bounce.clone(), e3.clone()).expect("lightlike by construction");
    trace.signal("ping-1", &out1);
    trace.signal("echo-1", &back1);
    // Slide the bounce along the mirror by the worldline step from e1 to e2;
    // the second radar exchange must close through this translated point.
    let bounce2 = bounce.add_vec(&e2.sub(e1));
    debug_assert!(mirror.contains(&bounce2));
    trace.event("bounce-shifted", &bounce2);
    let out2 = Signal::new(e2.clone(), bounce2.clone()).expect("translation preserves signals");
    trace.signal("ping-2", &out2);
    Ok((bounce2, e4.clone(), trace))
}

/// Do `e1 -> e2` and `e3 -> e4` (all on `a`) span equal signed time
/// distances?  Decided by a radar exchange for the first pair, translated
/// along the worldline to serve the second pair: the relation holds exactly
/// when the translated echo closes at `e4`.
pub fn ted(
    a: &Particle,
    e1: &Event,
    e2: &Event,
    e3: &Event,
    e4: &Event,
) -> Result<bool, SignallingError> {
    let (bounce2, target, _) = ted_setup(a, e1, e2, e3, e4)?;
    Ok(matches!(
        separation(&bounce2, &target),
        Separation::LightlikeFuture | Separation::Equal
    ))
}

pub fn ted_trace(
    a: &Particle,
    e1: &Event,
    e2: &Event,
    e3: &Event,
    e4: &Event,
) -> Result<(bool, Trace), SignallingError> {
    let (bounce2, target, mut trace) = ted_setup(a, e1, e2, e3, e4)?;
    let verdict = match Signal::new(bounce2, target) {
        Ok(echo) => {
            trace.signal("echo-2", &echo);
            true
        }
        Err(_) => false,
    };
    trace.flag("verdict", verdict);
    Ok((verdict, trace))
}

/// The worldline moment `a` assigns to an arbitrary event: halfway (by
/// Vieta, root-free) between sending a radar pulse to the event and hearing
/// it back.
pub fn time_coord(cal: &Calibration, e: &Event) -> FieldPoint {
    let t = RadarQuadratic::new(cal.worldline(), e).midpoint_time();
    cal.field_point(cal.worldline().position_at(&t))
        .expect("midpoint lies on the worldline")
}

/// The echo geometry behind [`time_coord`], for reporting.
pub fn time_coord_trace(
    cal: &Calibration,
    e: &Event,
) -> Result<(FieldPoint, Trace), SignallingError> {
    let point = time_coord(cal, e);
    let mut trace = Trace::new("time-coord");
    let (emit, recv) = RadarQuadratic::new(cal.worldline(), e).roots()?;
    if let Ok(sig) = Signal::new(cal.worldline().position_at(&emit), e.clone()) {
        trace.signal("ping", &sig);
    }
    if let Ok(sig) = Signal::new(e.clone(), cal.worldline().position_at(&recv)) {
        trace.signal("echo", &sig);
    }
    trace.event("midpoint", point.carrier());
    Ok((point, trace))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minkowski::Vec3;
    use crate::scalar::{Backend, Scalar};
    use crate::signalling::oracle;

    const B: Backend = Backend::Exact;

    fn ev(t: i64, x: i64, y: i64, z: i64) -> Event {
        Event::from_ints(&B, [t, x, y, z])
    }

    fn half_x_mover() -> Particle {
        Particle::new(
            ev(0, 0, 0, 0),
            Vec3::new(Scalar::ratio(1, 2), Scalar::from_int(0), Scalar::from_int(0)),
        )
        .unwrap()
    }

    fn rest_at_origin() -> Particle {
        Particle::new(ev(0, 0, 0, 0), Vec3::zero(&B)).unwrap()
    }

    #[test]
    fn moving_observer_judges_tilted_pair_simultaneous() {
        let a = half_x_mover();
        let e1 = ev(0, 0, 0, 0);
        let e2 = Event::new(
            Scalar::ratio(1, 2),
            Scalar::from_int(1),
            Scalar::from_int(0),
            Scalar::from_int(0),
        );
        assert!(simultaneous(&a, &e1, &e2));
        assert!(oracle::simultaneous(&a, &e1, &e2));
        // A resting observer disagrees about the same pair.
        let rest = rest_at_origin();
        assert!(!simultaneous(&rest, &e1, &e2));
        assert!(!oracle::simultaneous(&rest, &e1, &e2));
        let (verdict, trace) = simultaneous_trace(&a, &e1, &e2).unwrap();
        assert!(verdict);
        assert!(trace.items.iter().any(|(l, _)| l == "mirror"));
    }

    #[test]
    fn simultaneity_is_reflexive_and_detects_time_shifts() {
        let a = rest_at_origin();
        assert!(simultaneous(&a, &ev(1, 2, 3, 4), &ev(1, 2, 3, 4)));
        assert!(simultaneous(&a, &ev(3, 1, 0, 0), &ev(3, 0, 1, 0)));
        assert!(!simultaneous(&a, &ev(3, 1, 0, 0), &ev(4, 1, 0, 0)));
    }

    #[test]
    fn causal_witness_matches_documented_relay() {
        let w = causal_witness(&ev(0, 0, 0, 0), &ev(2, 1, 0, 0)).unwrap();
        assert_eq!(
            w,
            Event::new(
                Scalar::ratio(3, 2),
                Scalar::ratio(3, 2),
                Scalar::from_int(0),
                Scalar::from_int(0),
            )
        );
    }

    #[test]
    fn causal_order_agrees_with_separation_classes() {
        let o = ev(0, 0, 0, 0);
        let cases = [
            (ev(2, 1, 0, 0), true),   // timelike future
            (ev(3, 3, 0, 0), true),   // lightlike future
            (ev(0, 0, 0, 0), true),   // same event
            (ev(1, 5, 0, 0), false),  // spacelike
            (ev(-2, 1, 0, 0), false), // past
            (ev(-3, 3, 0, 0), false), // lightlike past
        ];
        for (e, expect) in cases {
            assert_eq!(causal_leq(&o, &e), expect, "target {e:?}");
            assert_eq!(oracle::causal_leq(&o, &e), expect);
        }
        assert!(strictly_earlier(&o, &ev(1, 0, 0, 0)));
        assert!(!strictly_earlier(&o, &o));
    }

    #[test]
    fn equal_time_spans_on_a_moving_line() {
        let a = half_x_mover();
        let at = |t: i64| a.position_at(&Scalar::from_int(t));
        // Spans 0->2 and 5->7 are congruent; 0->2 and 5->8 are not.
        assert!(ted(&a, &at(0), &at(2), &at(5), &at(7)).unwrap());
        assert!(!ted(&a, &at(0), &at(2), &at(5), &at(8)).unwrap());
        // Signed: 2->0 pairs with 7->5, not with 5->7.
        assert!(ted(&a, &at(2), &at(0), &at(7), &at(5)).unwrap());
        assert!(!ted(&a, &at(2), &at(0), &at(5), &at(7)).unwrap());
        // Works with the pairs given in reverse order too.
        assert!(ted(&a, &at(5), &at(7), &at(0), &at(2)).unwrap());
        // Degenerate spans.
        assert!(ted(&a, &at(1), &at(1), &at(4), &at(4)).unwrap());
        assert!(!ted(&a, &at(1), &at(1), &at(4), &at(5)).unwrap());
        let off = ev(0, 1, 1, 0);
        assert_eq!(
            ted(&a, &off, &at(2), &at(5), &at(7)).unwrap_err(),
            SignallingError::NotOnWorldline
        );
    }

    #[test]
    fn ted_trace_records_the_bounce_fan() {
        let a = rest_at_origin();
        let at = |t: i64| a.position_at(&Scalar::from_int(t));
        let (verdict, trace) = ted_trace(&a, &at(0), &at(1), &at(4), &at(5)).unwrap();
        assert!(verdict);
        for label in ["bounce", "mirror", "ping-1", "echo-1", "bounce-shifted", "ping-2", "echo-2"] {
            assert!(trace.items.iter().any(|(l, _)| l == label), "missing {label}");
        }
    }

    #[test]
    fn radar_time_for_boosted_worldline() {
        let frame = crate::minkowski::boosted_frame();
        let cal = Calibration::new(frame.a.clone(), frame.o.clone(), frame.u.clone()).unwrap();
        let point = time_coord(&cal, &ev(5, 3, 0, 0));
        // The probe sits on the worldline itself, four proper ticks out.
        assert_eq!(point.carrier(), &ev(5, 3, 0, 0));
        assert_eq!(point.value(), Scalar::from_int(4));
        // An off-worldline probe against a resting observer: light leaves at
        // t = -2, returns at t = 4, so the logged moment is t = 1.
        let rest = Calibration::new(rest_at_origin(), ev(0, 0, 0, 0), ev(1, 0, 0, 0)).unwrap();
        let p = time_coord(&rest, &ev(1, 3, 0, 0));
        assert_eq!(p.carrier(), &ev(1, 0, 0, 0));
        assert_eq!(p.value(), Scalar::from_int(1));
        let (_, trace) = time_coord_trace(&rest, &ev(1, 3, 0, 0)).unwrap();
        assert!(trace.items.iter().any(|(l, _)| l == "ping"));
        assert!(trace.items.iter().any(|(l, _)| l == "echo"));
    }
}
