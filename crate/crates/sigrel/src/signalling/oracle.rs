//! Closed-form Minkowski counterparts of the signalling experiments.
//!
//! Everything here is computed directly from the metric — inner products,
//! intervals, projections — with no radar geometry, so the experiments and
//! these oracles share no code paths beyond the scalar arithmetic.  The test
//! suites sweep randomized inputs through both and require agreement.
//!
//! Where a closed form can avoid square roots it does (Gram determinants
//! instead of lengths, squared intervals instead of proper times), keeping
//! the oracle total on the exact backend even where the experiment is not.

use super::space::{s_dot, Location};
use super::{Calibration, SignallingError};
use crate::minkowski::{causally_after, interval2, separation, Event, Separation, Tetrad};
use crate::scalar::Scalar;
use crate::sigmodel::Particle;

/// Rest-orthogonality of the displacement: `<e2 - e1, U> = 0`.
pub fn simultaneous(a: &Particle, e1: &Event, e2: &Event) -> bool {
    a.four_velocity().mdot(&e2.sub(e1)).is_zero()
}

/// Causal order straight from the interval classification.
pub fn causal_leq(e1: &Event, e2: &Event) -> bool {
    causally_after(e1, e2)
}

/// Equal signed coordinate-time steps along the worldline (proper time is
/// proportional to coordinate time on a single line).
pub fn ted(
    a: &Particle,
    e1: &Event,
    e2: &Event,
    e3: &Event,
    e4: &Event,
) -> Result<bool, SignallingError> {
    for e in [e1, e2, e3, e4] {
        if !a.contains(e) {
            return Err(SignallingError::NotOnWorldline);
        }
    }
    Ok(&e2.t - &e1.t == &e4.t - &e3.t)
}

/// Clock value of the rest-simultaneous worldline point for `e`, solved
/// linearly — no roots.
pub fn time_value(cal: &Calibration, e: &Event) -> Scalar {
    let a = cal.worldline();
    let u = a.four_velocity();
    // <e - a(t), u> = 0.
    let num = e.sub(a.base()).mdot(&u);
    let t = num.checked_div(&u.norm2()).expect("sub-light tangent");
    let span = &cal.clock().t - &cal.origin().t;
    (&t - &cal.origin().t).checked_div(&span).expect("nonzero span")
}

/// Collinearity as equality in Cauchy-Schwarz for the two steps out of the
/// first place (root-free).
pub fn col(l1: &Location, l2: &Location, l3: &Location) -> Result<bool, SignallingError> {
    anchors(&[l1, l2, l3])?;
    let u = l2.offset().sub(&l1.offset());
    let v = l3.offset().sub(&l1.offset());
    let uu = s_dot(&u, &u);
    let vv = s_dot(&v, &v);
    let uv = s_dot(&u, &v);
    Ok(&uu * &vv == uv.square())
}

/// Parallel steps with both pairs actually spanning lines.
pub fn pa(
    l1: &Location,
    l2: &Location,
    l3: &Location,
    l4: &Location,
) -> Result<bool, SignallingError> {
    anchors(&[l1, l2, l3, l4])?;
    let u = l2.offset().sub(&l1.offset());
    let v = l4.offset().sub(&l3.offset());
    if u.is_zero() || v.is_zero() {
        return Err(SignallingError::DegenerateLine);
    }
    let uu = s_dot(&u, &u);
    let vv = s_dot(&v, &v);
    let uv = s_dot(&u, &v);
    Ok(&uu * &vv == uv.square())
}

/// Right angle at the calibrated worldline: vanishing rest dot product.
pub fn ort(cal: &Calibration, b: &Location, c: &Location) -> Result<bool, SignallingError> {
    let here = Location::here(cal.worldline());
    anchors(&[&here, b, c])?;
    let db = b.offset();
    let dc = c.offset();
    if db.is_zero() || dc.is_zero() {
        return Err(SignallingError::DegenerateLine);
    }
    Ok(s_dot(&db, &dc).is_zero())
}

/// Rest distance between the places, in clock units.
pub fn dd_value(
    cal: &Calibration,
    from: &Location,
    to: &Location,
) -> Result<Scalar, SignallingError> {
    let here = Location::here(cal.worldline());
    anchors(&[&here, from, to])?;
    let step = to.offset().sub(&from.offset());
    let distance = s_dot(&step, &step).sqrt()?;
    let unit = interval2(cal.origin(), cal.clock()).sqrt()?;
    Ok(distance.checked_div(&unit).expect("clock unit is nonzero"))
}

/// The worldline point at the signed proper length of `e1 -> e2` past `o`.
pub fn mu(a: &Particle, o: &Event, e1: &Event, e2: &Event) -> Result<Event, SignallingError> {
    if !a.contains(o) {
        return Err(SignallingError::NotOnWorldline);
    }
    let tau = match separation(e1, e2) {
        Separation::Equal => return Ok(o.clone()),
        Separation::TimelikeFuture => interval2(e1, e2).sqrt()?,
        Separation::TimelikePast => -&interval2(e1, e2).sqrt()?,
        _ => return Err(SignallingError::NotTimelike),
    };
    let chart = Tetrad::rest_chart(a, o)?;
    let backend = tau.backend();
    let zero = Scalar::zero(&backend);
    Ok(chart.event_at(&[tau, zero.clone(), zero.clone(), zero]))
}

/// Same signed squared interval for both pairs — root-free.
pub fn med(
    e1: &Event,
    e2: &Event,
    e3: &Event,
    e4: &Event,
) -> Result<bool, SignallingError> {
    let class = |a: &Event, b: &Event| -> Result<i8, SignallingError> {
        match separation(a, b) {
            Separation::Equal => Ok(0),
            Separation::TimelikeFuture => Ok(1),
            Separation::TimelikePast => Ok(-1),
            _ => Err(SignallingError::NotTimelike),
        }
    };
    let (s1, s2) = (class(e1, e2)?, class(e3, e4)?);
    Ok(s1 == s2 && interval2(e1, e2) == interval2(e3, e4))
}

fn anchors(locs: &[&Location]) -> Result<(), SignallingError> {
    let first = locs[0].anchor();
    if locs.iter().any(|l| l.anchor() != first) {
        return Err(SignallingError::AnchorMismatch);
    }
    Ok(())
}
