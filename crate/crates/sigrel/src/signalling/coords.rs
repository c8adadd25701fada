//! Experiments that move measurements between worldlines and assemble full
//! coordinate tuples.

use super::radar::{common_null_neighbor, light_hit_future};
use super::space::{dd, s_dot, Location};
use super::timing::{simultaneous, time_coord};
use super::{oracle, Calibration, FieldPoint, SignallingError, Trace};
use crate::minkowski::{interval2, separation, Event, Frame, Separation, Tetrad, Vec3};
use crate::scalar::Scalar;
use crate::sigmodel::{Particle, Signal};

/// Transfer the proper length of the timelike (or degenerate) pair
/// `e1 -> e2` onto the worldline `a`, measuring from `o`: the returned event
/// sits on `a`, past `o` for future-directed pairs and before it for
/// past-directed ones, at exactly the pair's proper separation.
///
/// The experiment carries the pair along a signal fan so it hangs off `o`,
/// erects a marker simultaneous with `o` for both `a` and the carried pair's
/// own line at lightlike reach of the carried far end, and reads off where
/// the marker's flash crosses `a`.
pub fn mu(a: &Particle, o: &Event, e1: &Event, e2: &Event) -> Result<Event, SignallingError> {
    mu_impl(a, o, e1, e2, None)
}

pub fn mu_trace(
    a: &Particle,
    o: &Event,
    e1: &Event,
    e2: &Event,
) -> Result<(Event, Trace), SignallingError> {
    let mut trace = Trace::new("mu");
    let xi = mu_impl(a, o, e1, e2, Some(&mut trace))?;
    trace.event("reading", &xi);
    Ok((xi, trace))
}

fn mu_impl(
    a: &Particle,
    o: &Event,
    e1: &Event,
    e2: &Event,
    trace: Option<&mut Trace>,
) -> Result<Event, SignallingError> {
    if !a.contains(o) {
        return Err(SignallingError::NotOnWorldline);
    }
    match separation(e1, e2) {
        Separation::Equal => Ok(o.clone()),
        Separation::TimelikeFuture => mu_forward(a, o, e1, e2, trace),
        Separation::TimelikePast => {
            // Measure the reversed pair, then flip the reading through o.
            let ahead = mu_forward(a, o, e2, e1, trace)?;
            Ok(o.add_vec(&ahead.sub(o).neg()))
        }
        _ => Err(SignallingError::NotTimelike),
    }
}

/// A rest-chart spatial unit vector orthogonal to `w` (any one, chosen
/// deterministically).
fn perp_unit(w: &Vec3) -> Result<Vec3, SignallingError> {
    let backend = w.x.backend();
    let one = Scalar::one(&backend);
    let zero = Scalar::zero(&backend);
    let axes = [
        Vec3::new(one.clone(), zero.clone(), zero.clone()),
        Vec3::new(zero.clone(), one.clone(), zero.clone()),
        Vec3::new(zero.clone(), zero.clone(), one.clone()),
    ];
    for axis in axes {
        let reject = if w.is_zero() {
            axis
        } else {
            let coeff = axis.dot(w).checked_div(&w.norm2()).expect("nonzero");
            axis.sub(&w.scale(&coeff))
        };
        if !reject.is_zero() {
            let norm = reject.norm2().sqrt()?;
            let inv = Scalar::one(&backend).checked_div(&norm).expect("nonzero");
            return Ok(reject.scale(&inv));
        }
    }
    unreachable!("three axes cannot all be parallel to one vector")
}

fn mu_forward(
    a: &Particle,
    o: &Event,
    e1: &Event,
    e2: &Event,
    trace: Option<&mut Trace>,
) -> Result<Event, SignallingError> {
    // Carry the pair along a signal fan so it starts at o.
    let relay = common_null_neighbor(o, e1);
    let far = o.add_vec(&e2.sub(e1));
    let pair_line = Particle::through(o, &far)?;
    // Marker direction: orthogonal (in a's rest chart at o) to the carried
    // pair's spatial track, so the marker is o-simultaneous for both lines.
    let chart = Tetrad::rest_chart(a, o)?;
    let d = chart.vec_coords(&far.sub(o));
    let track = Vec3::new(d[1].clone(), d[2].clone(), d[3].clone());
    let n = perp_unit(&track)?;
    let radius = interval2(o, &far).sqrt()?;
    let backend = radius.backend();
    let marker = chart.event_at(&[
        Scalar::zero(&backend),
        &radius * &n.x,
        &radius * &n.y,
        &radius * &n.z,
    ]);
    // The marker must reach the carried far end by light and share o's
    // moment on both worldlines.
    let flash_to_far = Signal::new(marker.clone(), far.clone())
        .expect("marker sits at lightlike reach of the carried far end");
    debug_assert!(simultaneous(a, &marker, o));
    debug_assert!(simultaneous(&pair_line, &marker, o));
    let xi = light_hit_future(&marker, a)?;
    if let Some(tr) = trace {
        tr.event("relay", &relay);
        tr.event("carried-far-end", &far);
        tr.particle("carried-line", &pair_line);
        tr.event("marker", &marker);
        tr.signal("marker-flash", &flash_to_far);
        if let Ok(sig) = Signal::new(marker.clone(), xi.clone()) {
            tr.signal("reading-flash", &sig);
        }
    }
    Ok(xi)
}

/// Are the timelike (or degenerate) pairs `e1 -> e2` and `e3 -> e4`
/// congruent, signs included?  Decided by measuring both against the same
/// probe worldline and comparing the readings; the verdict does not depend
/// on which probe is used.
pub fn med_with(
    a: &Particle,
    o: &Event,
    e1: &Event,
    e2: &Event,
    e3: &Event,
    e4: &Event,
) -> Result<bool, SignallingError> {
    let m1 = mu(a, o, e1, e2)?;
    let m2 = mu(a, o, e3, e4)?;
    Ok(m1 == m2)
}

/// [`med_with`] against the default resting probe through the origin.
pub fn med(
    e1: &Event,
    e2: &Event,
    e3: &Event,
    e4: &Event,
) -> Result<bool, SignallingError> {
    let backend = e1.t.backend();
    let probe = Particle::new(Event::origin(&backend), Vec3::zero(&backend))
        .expect("resting line");
    med_with(&probe, &Event::origin(&backend), e1, e2, e3, e4)
}

/// The four clock readings a frame assigns to an event: radar time plus
/// three signed axis distances, every one produced by an experiment
/// ([`time_coord`], axis projections, [`dd`], reflections for signs).
pub fn cord(frame: &Frame, e: &Event) -> Result<[FieldPoint; 4], SignallingError> {
    cord_impl(frame, e, None)
}

pub fn cord_trace(frame: &Frame, e: &Event) -> Result<([FieldPoint; 4], Trace), SignallingError> {
    let mut trace = Trace::new("cord");
    let coords = cord_impl(frame, e, Some(&mut trace))?;
    for (label, p) in ["time", "x", "y", "z"].iter().zip(coords.iter()) {
        trace.scalar(label, &p.value());
    }
    Ok((coords, trace))
}

fn cord_impl(
    frame: &Frame,
    e: &Event,
    mut trace: Option<&mut Trace>,
) -> Result<[FieldPoint; 4], SignallingError> {
    frame.validate()?;
    let cal = Calibration::new(frame.a.clone(), frame.o.clone(), frame.u.clone())?;
    let a = cal.worldline();
    let time = time_coord(&cal, e);

    let here = Location::here(a);
    let b = Location::through(e, a);
    let axes = [
        Location::new(frame.ax.clone(), a.clone())?,
        Location::new(frame.ay.clone(), a.clone())?,
        Location::new(frame.az.clone(), a.clone())?,
    ];
    let db = b.offset();
    // Signed components of the place along each axis direction.
    let comp: Vec<Scalar> = axes
        .iter()
        .map(|axis| {
            let da = axis.offset();
            s_dot(&db, &da)
                .checked_div(&s_dot(&da, &da))
                .expect("axis offsets are nonzero")
        })
        .collect();
    // Strip the z then y components to land on the x ray; strip z then x for
    // the y ray; keep the z step as the difference from the xy shadow.
    let shadow_xy = b.translate(&axes[2].offset().scale(&comp[2]).neg());
    let on_x = shadow_xy.translate(&axes[1].offset().scale(&comp[1]).neg());
    let on_y = shadow_xy.translate(&axes[0].offset().scale(&comp[0]).neg());
    debug_assert!(oracle::col(&here, &on_x, &axes[0]).unwrap_or(false) || on_x.offset().is_zero());
    debug_assert!(oracle::col(&here, &on_y, &axes[1]).unwrap_or(false) || on_y.offset().is_zero());

    let magnitudes = [
        dd(&cal, &here, &on_x)?,
        dd(&cal, &here, &on_y)?,
        dd(&cal, &shadow_xy, &b)?,
    ];
    let mut spatial = Vec::with_capacity(3);
    for (mag, c) in magnitudes.into_iter().zip(comp.iter()) {
        let point = if c.is_negative() {
            cal.field_point(cal.reflect(mag.carrier()))?
        } else {
            mag
        };
        spatial.push(point);
    }
    if let Some(tr) = trace.as_deref_mut() {
        tr.particle("place", b.place());
        tr.particle("xy-shadow", shadow_xy.place());
        tr.particle("x-foot", on_x.place());
        tr.particle("y-foot", on_y.place());
    }
    let [gx, gy, gz] = <[FieldPoint; 3]>::try_from(spatial).expect("three components");
    Ok([time, gx, gy, gz])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Backend;

    const B: Backend = Backend::Exact;

    fn ev(t: i64, x: i64, y: i64, z: i64) -> Event {
        Event::from_ints(&B, [t, x, y, z])
    }

    fn rest_probe() -> (Particle, Event) {
        let a = Particle::new(ev(0, 0, 0, 0), Vec3::zero(&B)).unwrap();
        (a, ev(0, 0, 0, 0))
    }

    #[test]
    fn proper_length_reading_for_documented_pair() {
        let (a, o) = rest_probe();
        // Interval 16 between the origin and (5,3,0,0): reading at t = 4.
        let xi = mu(&a, &o, &ev(0, 0, 0, 0), &ev(5, 3, 0, 0)).unwrap();
        assert_eq!(xi, ev(4, 0, 0, 0));
        assert_eq!(xi, oracle::mu(&a, &o, &ev(0, 0, 0, 0), &ev(5, 3, 0, 0)).unwrap());
        // Reversed pair reads negative.
        let back = mu(&a, &o, &ev(5, 3, 0, 0), &ev(0, 0, 0, 0)).unwrap();
        assert_eq!(back, ev(-4, 0, 0, 0));
        // Degenerate pair reads zero.
        assert_eq!(mu(&a, &o, &ev(1, 1, 1, 1), &ev(1, 1, 1, 1)).unwrap(), o);
        // Spacelike pairs are rejected.
        assert_eq!(
            mu(&a, &o, &ev(0, 0, 0, 0), &ev(1, 3, 0, 0)).unwrap_err(),
            SignallingError::NotTimelike
        );
    }

    #[test]
    fn proper_length_reading_away_from_the_pair() {
        let (a, _) = rest_probe();
        let o = ev(2, 0, 0, 0);
        // Pair floating elsewhere: interval 9 between (1,7,2,0) and (4,7,2,0).
        let xi = mu(&a, &o, &ev(1, 7, 2, 0), &ev(4, 7, 2, 0)).unwrap();
        assert_eq!(xi, ev(5, 0, 0, 0));
        let (same, trace) = mu_trace(&a, &o, &ev(1, 7, 2, 0), &ev(4, 7, 2, 0)).unwrap();
        assert_eq!(same, xi);
        for label in ["relay", "carried-far-end", "marker", "marker-flash", "reading"] {
            assert!(trace.items.iter().any(|(l, _)| l == label), "missing {label}");
        }
    }

    #[test]
    fn congruence_of_pairs_ignores_the_probe() {
        let quad = (ev(0, 0, 0, 0), ev(5, 3, 0, 0), ev(1, 1, 1, 1), ev(6, 4, 1, 1));
        // Second pair: interval 25 - 9 = 16 as well.
        assert!(med(&quad.0, &quad.1, &quad.2, &quad.3).unwrap());
        assert!(oracle::med(&quad.0, &quad.1, &quad.2, &quad.3).unwrap());
        // Equal lengths, opposite directions: not congruent.
        assert!(!med(&quad.0, &quad.1, &quad.3, &quad.2).unwrap());
        assert!(!oracle::med(&quad.0, &quad.1, &quad.3, &quad.2).unwrap());
        // Different probe, same verdicts.
        let probe = Particle::new(
            ev(0, 10, 0, 0),
            Vec3::new(Scalar::ratio(3, 5), Scalar::from_int(0), Scalar::from_int(0)),
        )
        .unwrap();
        let o2 = probe.position_at(&Scalar::from_int(5));
        assert!(med_with(&probe, &o2, &quad.0, &quad.1, &quad.2, &quad.3).unwrap());
        assert!(!med_with(&probe, &o2, &quad.0, &quad.1, &quad.3, &quad.2).unwrap());
    }

    #[test]
    fn coordinates_from_experiments_match_the_frame_transform() {
        let frame = crate::minkowski::boosted_frame();
        // On-worldline probe: pure time reading.
        let coords = cord(&frame, &ev(5, 3, 0, 0)).unwrap();
        let values: Vec<Scalar> = coords.iter().map(|p| p.value()).collect();
        assert_eq!(values, vec![
            Scalar::from_int(4),
            Scalar::from_int(0),
            Scalar::from_int(0),
            Scalar::from_int(0),
        ]);
        assert_eq!(
            frame.coords_of(&ev(5, 3, 0, 0)).unwrap().to_vec(),
            values
        );
        // Probe with spatial components on the y and z axes.
        let e = ev(0, 0, 1, 2);
        let coords = cord(&frame, &e).unwrap();
        let values: Vec<Scalar> = coords.iter().map(|p| p.value()).collect();
        assert_eq!(frame.coords_of(&e).unwrap().to_vec(), values);
        assert_eq!(values[2], Scalar::from_int(1));
        assert_eq!(values[3], Scalar::from_int(2));
    }

    #[test]
    fn negative_components_read_through_reflection() {
        let frame = crate::minkowski::boosted_frame();
        let e = ev(0, 0, -1, 0);
        let coords = cord(&frame, &e).unwrap();
        assert_eq!(coords[2].value(), Scalar::from_int(-1));
        assert_eq!(
            frame.coords_of(&e).unwrap()[2],
            Scalar::from_int(-1)
        );
        let (coords2, trace) = cord_trace(&frame, &e).unwrap();
        assert_eq!(coords2[2].value(), Scalar::from_int(-1));
        assert!(trace.items.iter().any(|(l, _)| l == "xy-shadow"));
    }
}
