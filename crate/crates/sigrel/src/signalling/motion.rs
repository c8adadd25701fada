//! Deciding whether two worldlines are mutually at rest.

use rand::Rng;

use super::radar::light_hit_future;
use super::{SignallingError, Trace};
use crate::minkowski::{Event, Tetrad, Vec3};
use crate::sample::Sampler;
use crate::scalar::Scalar;
use crate::sigmodel::{meet_point, Particle};

/// Mutual rest as plain velocity agreement; the closed-form counterpart of
/// [`desargues_experiment`].
pub fn motionless(a: &Particle, b: &Particle) -> bool {
    a.velocity() == b.velocity()
}

const ATTEMPTS: u32 = 64;

/// Decide whether `b` is at rest relative to `a` by replaying a thrown-ball
/// coincidence.
///
/// A thrower event is placed off `a`, in the common plane of the two lines
/// when they span one.  Three balls are thrown at once: two are timed so
/// that, for `a`, a light pulse fired when the first ball arrives and
/// bounced off the third ball comes back exactly when the second arrives.
/// The experiment then replays the same protocol against `b` — meet the
/// first ball, fire at the bouncing ball, hear the echo — and passes exactly
/// when the echo again coincides with the second ball's arrival.  Comoving
/// lines always reproduce the coincidence; lines in relative motion (or skew
/// to the throw plane) break it.
///
/// The throw geometry is sampled from `seed`; throws that degenerate (for
/// example a thrower sitting on `b` itself) are re-rolled, and
/// [`SignallingError::CalibrationFailure`] reports a search that never found
/// a usable throw.
pub fn desargues_experiment(a: &Particle, b: &Particle, seed: u64) -> Result<bool, SignallingError> {
    desargues_impl(a, b, seed).map(|(v, _)| v)
}

pub fn desargues_trace(
    a: &Particle,
    b: &Particle,
    seed: u64,
) -> Result<(bool, Trace), SignallingError> {
    desargues_impl(a, b, seed)
}

fn desargues_impl(
    a: &Particle,
    b: &Particle,
    seed: u64,
) -> Result<(bool, Trace), SignallingError> {
    let mut trace = Trace::new("desargues");
    if a == b {
        // The replay would be the calibration itself.
        trace.note("setup", "probe line coincides with the reference line");
        trace.flag("verdict", true);
        return Ok((true, trace));
    }
    let backend = a.base().t.backend();
    let chart = Tetrad::rest_chart(a, a.base())?;

    // The probe's track in the reference rest chart: spatial position at
    // chart time zero, and chart velocity.
    let base_c = chart.coords_of(b.base());
    let vel_c = chart.vec_coords(&b.four_velocity());
    let w = Vec3::new(
        vel_c[1].checked_div(&vel_c[0]).expect("future-directed tangent"),
        vel_c[2].checked_div(&vel_c[0]).expect("future-directed tangent"),
        vel_c[3].checked_div(&vel_c[0]).expect("future-directed tangent"),
    );
    let pos0 = Vec3::new(base_c[1].clone(), base_c[2].clone(), base_c[3].clone())
        .sub(&w.scale(&base_c[0]));
    // The two lines span a plane exactly when the probe's spatial track runs
    // through the reference line's own chart position (the origin).
    let coplanar = w.cross(&pos0).is_zero();
    trace.flag("coplanar", coplanar);

    // Spatial direction of the throw plane.  For skew probes any plane
    // containing the reference line misses the probe; the default keeps the
    // probe's chart offset in view so the replay fails visibly rather than
    // trivially.
    let dir = if pos0.is_zero() { w.clone() } else { pos0.clone() };
    debug_assert!(!dir.is_zero(), "distinct lines leave a nonzero track");
    let norm = dir.norm2().sqrt()?;
    let unit = dir.scale(&Scalar::one(&backend).checked_div(&norm).expect("nonzero"));
    // Signed height of the probe's track along the plane direction.
    let height = pos0.dot(&unit);

    let plane_event = |tau: &Scalar, s: &Scalar| -> Event {
        chart.event_at(&[tau.clone(), s * &unit.x, s * &unit.y, s * &unit.z])
    };

    let mut sampler = Sampler::new(backend.clone(), seed);
    for _ in 0..ATTEMPTS {
        match throw_once(a, b, &mut sampler, &height, &plane_event) {
            Ok(Some((verdict, throw_trace))) => {
                trace.items.extend(throw_trace.items);
                trace.flag("verdict", verdict);
                return Ok((verdict, trace));
            }
            Ok(None) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(SignallingError::CalibrationFailure { attempts: ATTEMPTS })
}

/// One seeded throw.  `Ok(None)` requests a re-roll.
fn throw_once(
    a: &Particle,
    b: &Particle,
    sampler: &mut Sampler,
    height: &Scalar,
    plane_event: &dyn Fn(&Scalar, &Scalar) -> Event,
) -> Result<Option<(bool, Trace)>, SignallingError> {
    let backend = height.backend();
    let zero = Scalar::zero(&backend);
    let one = Scalar::one(&backend);
    let half = backend.ratio(1, 2);

    // Arrival times of the first and second balls on the reference line and
    // the bounce half-gap.
    let t1 = sampler.scalar_in(-2, -1);
    let gap = sampler.scalar_in(1, 2);
    let t3 = &t1 + &gap;
    let side = if sampler.rng().gen::<bool>() { one.clone() } else { -&one };
    // Thrower: above both the reference line and the probe's track (so every
    // constant-height replay looks into the future), well before the
    // arrivals (so every ball is sub-light).
    let lift = sampler.scalar_in(1, 2);
    let s0 = if height.is_positive() { height + &lift } else { lift };
    let lead = &(&sampler.scalar_in(1, 2) + &s0) + &gap;
    let t0 = &t1 - &lead;
    let thrower = plane_event(&t0, &s0);
    if b.contains(&thrower) {
        // A throw from the probe's own position degenerately echoes true.
        return Ok(None);
    }
    let arrive1 = plane_event(&t1, &zero);
    let arrive3 = plane_event(&t3, &zero);
    let bounce = plane_event(&(&t1 + &(&gap * &half)), &(&side * &(&gap * &half)));

    let ball1 = match Particle::through(&thrower, &arrive1) {
        Ok(p) => p,
        Err(_) => return Ok(None),
    };
    let ball3 = match Particle::through(&thrower, &arrive3) {
        Ok(p) => p,
        Err(_) => return Ok(None),
    };
    let ball2 = match Particle::through(&thrower, &bounce) {
        Ok(p) => p,
        Err(_) => return Ok(None),
    };

    // Calibration check against the reference line: the radar pulse fired at
    // the first arrival must bounce off the middle ball and return exactly
    // at the third arrival.
    let cal_bounce = light_hit_future(&arrive1, &ball2)?;
    let cal_echo = light_hit_future(&cal_bounce, a)?;
    if cal_bounce != bounce || cal_echo != arrive3 {
        return Ok(None);
    }

    let mut trace = Trace::new("throw");
    trace.event("thrower", &thrower);
    trace.particle("ball-1", &ball1);
    trace.particle("ball-2", &ball2);
    trace.particle("ball-3", &ball3);
    trace.event("arrival-1", &arrive1);
    trace.event("bounce", &bounce);
    trace.event("arrival-3", &arrive3);

    // Replay against the probe.
    let (Some(q1), Some(q3)) = (meet_point(&ball1, b), meet_point(&ball3, b)) else {
        trace.note("replay", "a ball never reaches the probe");
        return Ok(Some((false, trace)));
    };
    trace.event("probe-arrival-1", &q1);
    trace.event("probe-arrival-3", &q3);
    let replay_bounce = light_hit_future(&q1, &ball2)?;
    let echo = light_hit_future(&replay_bounce, b)?;
    trace.event("probe-bounce", &replay_bounce);
    trace.event("probe-echo", &echo);
    Ok(Some((echo == q3, trace)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Backend;

    const B: Backend = Backend::Exact;

    fn ev(t: i64, x: i64, y: i64, z: i64) -> Event {
        Event::from_ints(&B, [t, x, y, z])
    }

    fn rest_line() -> Particle {
        Particle::new(ev(0, 0, 0, 0), Vec3::zero(&B)).unwrap()
    }

    #[test]
    fn comoving_offset_line_passes() {
        let a = rest_line();
        let b = Particle::new(ev(0, 3, 0, 0), Vec3::zero(&B)).unwrap();
        assert!(motionless(&a, &b));
        for seed in 0..8 {
            assert!(desargues_experiment(&a, &b, seed).unwrap(), "seed {seed}");
        }
    }

    #[test]
    fn moving_coplanar_line_fails() {
        let a = rest_line();
        let v = Vec3::new(B.ratio(3, 5), B.int(0), B.int(0));
        let b = Particle::new(ev(0, 3, 0, 0), v).unwrap();
        assert!(!motionless(&a, &b));
        for seed in 0..8 {
            assert!(!desargues_experiment(&a, &b, seed).unwrap(), "seed {seed}");
        }
    }

    #[test]
    fn moving_through_anchor_base_fails() {
        let a = rest_line();
        let v = Vec3::new(B.ratio(3, 5), B.int(0), B.int(0));
        let b = Particle::new(ev(0, 0, 0, 0), v).unwrap();
        assert!(!desargues_experiment(&a, &b, 11).unwrap());
    }

    #[test]
    fn skew_line_fails() {
        let a = rest_line();
        let v = Vec3::new(B.ratio(3, 5), B.int(0), B.int(0));
        let b = Particle::new(ev(0, 0, 3, 0), v).unwrap();
        assert!(!motionless(&a, &b));
        assert!(!desargues_experiment(&a, &b, 5).unwrap());
    }

    #[test]
    fn identical_lines_pass_without_a_throw() {
        let a = rest_line();
        let (verdict, trace) = desargues_trace(&a, &a.clone(), 0).unwrap();
        assert!(verdict);
        assert!(trace.items.iter().any(|(label, _)| label == "setup"));
    }

    #[test]
    fn moving_anchor_agrees_with_velocity_comparison() {
        let va = Vec3::new(B.ratio(3, 5), B.int(0), B.int(0));
        let a = Particle::new(ev(0, 0, 0, 0), va.clone()).unwrap();
        let comoving = Particle::new(ev(0, 0, 4, 0), va).unwrap();
        let resting = Particle::new(ev(0, 0, 4, 0), Vec3::zero(&B)).unwrap();
        assert_eq!(
            desargues_experiment(&a, &comoving, 3).unwrap(),
            motionless(&a, &comoving)
        );
        assert_eq!(
            desargues_experiment(&a, &resting, 3).unwrap(),
            motionless(&a, &resting)
        );
    }

    #[test]
    fn trace_records_the_throw_and_replay() {
        let a = rest_line();
        let b = Particle::new(ev(0, 3, 0, 0), Vec3::zero(&B)).unwrap();
        let (verdict, trace) = desargues_trace(&a, &b, 2).unwrap();
        assert!(verdict);
        let labels: Vec<&str> = trace.items.iter().map(|(l, _)| l.as_str()).collect();
        for needed in ["coplanar", "thrower", "ball-2", "probe-echo", "verdict"] {
            assert!(labels.contains(&needed), "missing {needed}");
        }
    }
}
