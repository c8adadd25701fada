//! Field operations on clock readings, realised as experiments.

use super::coords::mu;
use super::timing::ted;
use super::{oracle, Calibration, FieldPoint, SignallingError, Trace};
use crate::minkowski::{Event, Tetrad};
use crate::scalar::Scalar;
use crate::sigmodel::{meet_point, Particle, Signal};
use crate::signalling::space::Location;

fn require_point_on(cal: &Calibration, p: &FieldPoint) -> Result<(), SignallingError> {
    if !cal.worldline().contains(p.carrier()) {
        return Err(SignallingError::NotOnWorldline);
    }
    Ok(())
}

/// Add two clock readings: slide the span `origin -> t2` so it starts at
/// `t1`.  The defining check is the equal-time-span experiment
/// (`origin -> t2` against `t1 -> sum`), which the construction satisfies by
/// translation invariance.
pub fn plus(
    cal: &Calibration,
    t1: &FieldPoint,
    t2: &FieldPoint,
) -> Result<FieldPoint, SignallingError> {
    require_point_on(cal, t1)?;
    require_point_on(cal, t2)?;
    let sum = t1.carrier().add_vec(&t2.carrier().sub(cal.origin()));
    let checked = ted(cal.worldline(), cal.origin(), t1.carrier(), t2.carrier(), &sum)?;
    debug_assert!(checked);
    cal.field_point(sum)
}

/// Multiply two clock readings.
///
/// The throwing experiment needs one factor past the clock unit and the
/// other past the origin; for such operands it stations a helper place at
/// lightlike reach of the clock event, throws a particle from there through
/// the first factor, and intersects the parallel throw from the second
/// factor's helper place with the worldline — similar triangles scale the
/// readings into their product.  Other operand ranges are handled by
/// reducing to that case (swapping factors, reflecting signs through the
/// origin) or, when both magnitudes are at most the unit, by placing the
/// product point directly; those paths flag the result as extended.
pub fn times(
    cal: &Calibration,
    t1: &FieldPoint,
    t2: &FieldPoint,
) -> Result<FieldPoint, SignallingError> {
    times_impl(cal, t1, t2, None).map(|(p, _)| p)
}

/// [`times`] with the construction record and the extended-range flag.
pub fn times_trace(
    cal: &Calibration,
    t1: &FieldPoint,
    t2: &FieldPoint,
) -> Result<(FieldPoint, Trace), SignallingError> {
    let mut trace = Trace::new("times");
    let (p, extended) = times_impl(cal, t1, t2, Some(&mut trace))?;
    trace.flag("extended", extended);
    trace.scalar("product", &p.value());
    Ok((p, trace))
}

fn times_impl(
    cal: &Calibration,
    t1: &FieldPoint,
    t2: &FieldPoint,
    mut trace: Option<&mut Trace>,
) -> Result<(FieldPoint, bool), SignallingError> {
    require_point_on(cal, t1)?;
    require_point_on(cal, t2)?;
    let v1 = cal.value_of(t1.carrier())?;
    let v2 = cal.value_of(t2.carrier())?;
    let one = Scalar::one(&v1.backend());

    // Direct range: first factor beyond the unit, second past the origin.
    if v1 > one && v2.is_positive() {
        let product = times_throw(cal, t1.carrier(), t2.carrier(), trace)?;
        return Ok((cal.field_point(product)?, false));
    }
    // Swapped range.
    if v2 > one && v1.is_positive() {
        let product = times_throw(cal, t2.carrier(), t1.carrier(), trace)?;
        return Ok((cal.field_point(product)?, true));
    }
    // Sign reduction: reflect negative operands through the origin, multiply
    // the magnitudes, and reflect the result back if the signs differed.
    let m1 = if v1.is_negative() { cal.reflect(t1.carrier()) } else { t1.carrier().clone() };
    let m2 = if v2.is_negative() { cal.reflect(t2.carrier()) } else { t2.carrier().clone() };
    let negate = v1.is_negative() != v2.is_negative();
    let w1 = v1.abs();
    let w2 = v2.abs();
    let magnitude = if w1 > one && w2.is_positive() {
        times_throw(cal, &m1, &m2, trace.as_deref_mut())?
    } else if w2 > one && w1.is_positive() {
        times_throw(cal, &m2, &m1, trace.as_deref_mut())?
    } else {
        // Both magnitudes within the unit (or a zero factor): no throw can
        // reach past the helper place, so the product point is placed by its
        // defining value.
        let prod = &w1 * &w2;
        if let Some(tr) = trace.as_deref_mut() {
            tr.note("path", "unit-interval operands placed directly");
        }
        cal.carrier_at(&prod)
    };
    let result = if negate { cal.reflect(&magnitude) } else { magnitude };
    Ok((cal.field_point(result)?, true))
}

/// The throwing construction proper.  `hi` must read beyond the clock unit
/// and `pos` past the origin.
fn times_throw(
    cal: &Calibration,
    hi: &Event,
    pos: &Event,
    trace: Option<&mut Trace>,
) -> Result<Event, SignallingError> {
    let a = cal.worldline();
    let chart = Tetrad::rest_chart(a, cal.origin())?;
    let backend = cal.origin().t.backend();
    let zero = Scalar::zero(&backend);
    let tau = |e: &Event| chart.coords_of(e)[0].clone();
    let tau_u = tau(cal.clock());
    let tau_2 = tau(pos);
    // Helper places at lightlike reach of the clock event and the second
    // factor, both at the origin's moment, on a common ray.
    let helper_u = chart.event_at(&[zero.clone(), tau_u.clone(), zero.clone(), zero.clone()]);
    let helper_2 = chart.event_at(&[zero.clone(), tau_2.clone(), zero.clone(), zero.clone()]);
    let flash_u = Signal::new(helper_u.clone(), cal.clock().clone())
        .expect("helper sits at lightlike reach of the clock event");
    let flash_2 = Signal::new(helper_2.clone(), pos.clone())
        .expect("helper sits at lightlike reach of the second factor");
    debug_assert!(oracle::col(
        &Location::here(a),
        &Location::through(&helper_u, a),
        &Location::through(&helper_2, a),
    )
    .unwrap());
    // Throw through the first factor; copy the throw from the second helper.
    let throw = Particle::through(&helper_u, hi)?;
    let copy = throw.translate(&helper_2.sub(&helper_u));
    let product = meet_point(&copy, a).expect("a non-parallel coplanar throw meets the worldline");
    if let Some(tr) = trace {
        tr.event("helper-unit", &helper_u);
        tr.event("helper-factor", &helper_2);
        tr.signal("flash-unit", &flash_u);
        tr.signal("flash-factor", &flash_2);
        tr.particle("throw", &throw);
        tr.particle("parallel-throw", &copy);
        tr.event("meet", &product);
    }
    Ok(product)
}

/// Carry a clock reading from one calibrated worldline to another: measure
/// the origin-to-reading span and the origin-to-clock span of the source
/// onto the target with [`mu`], then read off their ratio in the target's
/// own units.  The scalar rendered by the result equals the scalar rendered
/// by the input.
pub fn iso(
    from: &Calibration,
    to: &Calibration,
    x: &FieldPoint,
) -> Result<FieldPoint, SignallingError> {
    require_point_on(from, x)?;
    let carried = mu(to.worldline(), to.origin(), from.origin(), x.carrier())?;
    let carried_unit = mu(to.worldline(), to.origin(), from.origin(), from.clock())?;
    let vx = to.value_of(&carried)?;
    let vu = to.value_of(&carried_unit)?;
    let value = vx.checked_div(&vu).expect("the carried clock unit is nonzero");
    Ok(to.point_at(&value))
}
