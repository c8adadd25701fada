//! Experiments about the mutual rest space of comoving lines.
//!
//! A [`Location`] is a line comoving with an anchor worldline; its rest
//! offset (the anchor-orthogonal component of the base displacement) is the
//! anchor-independent "where" that the experiments below compare.  The
//! Minkowski product is negative definite on rest offsets, so
//! `s_dot = -mdot` plays the role of the Euclidean dot product.

use super::radar::light_hit_future;
use super::timing::simultaneous;
use super::{oracle, Calibration, FieldPoint, SignallingError, Trace};
use crate::minkowski::{Event, FourVec, Tetrad, Vec3};
use crate::scalar::Scalar;
use crate::sigmodel::{Particle, Signal};

/// A line comoving with an anchor worldline: a marked place in the anchor's
/// rest space.
#[derive(Clone, Debug, PartialEq)]
pub struct Location {
    place: Particle,
    anchor: Particle,
}

impl Location {
    pub fn new(place: Particle, anchor: Particle) -> Result<Self, SignallingError> {
        if place.velocity() != anchor.velocity() {
            return Err(SignallingError::NotComoving);
        }
        Ok(Location { place, anchor })
    }

    /// The anchor worldline seen as a place of its own rest space.
    pub fn here(anchor: &Particle) -> Self {
        Location { place: anchor.clone(), anchor: anchor.clone() }
    }

    /// The place whose line passes through `e`.
    pub fn through(e: &Event, anchor: &Particle) -> Self {
        let place = Particle::new(e.clone(), anchor.velocity().clone())
            .expect("anchor velocity is sub-light");
        Location { place, anchor: anchor.clone() }
    }

    pub fn place(&self) -> &Particle {
        &self.place
    }

    pub fn anchor(&self) -> &Particle {
        &self.anchor
    }

    /// Rest offset from the anchor to this place: orthogonal to the anchor's
    /// four-velocity, zero exactly when the place is the anchor itself.
    pub fn offset(&self) -> FourVec {
        self.anchor.rest_offset_to(&self.place)
    }

    pub fn translate(&self, v: &FourVec) -> Location {
        Location { place: self.place.translate(v), anchor: self.anchor.clone() }
    }
}

/// Euclidean dot product of the shared rest space.
pub(crate) fn s_dot(u: &FourVec, v: &FourVec) -> Scalar {
    -(u.mdot(v))
}

fn require_same_anchor(locs: &[&Location]) -> Result<(), SignallingError> {
    let first = locs[0].anchor();
    if locs.iter().any(|l| l.anchor() != first) {
        return Err(SignallingError::AnchorMismatch);
    }
    Ok(())
}

/// Chart spatial positions of the given places in the anchor's rest chart.
fn chart_positions(
    anchor: &Particle,
    locs: &[&Location],
) -> Result<(Tetrad, Vec<Vec3>), SignallingError> {
    let chart = Tetrad::rest_chart(anchor, anchor.base())?;
    let mut positions = Vec::with_capacity(locs.len());
    for l in locs {
        let c = chart.coords_of(l.place().base());
        positions.push(Vec3::new(c[1].clone(), c[2].clone(), c[3].clone()));
    }
    Ok((chart, positions))
}

fn dist(p: &Vec3, q: &Vec3) -> Result<Scalar, SignallingError> {
    Ok(p.sub(q).norm2().sqrt()?)
}

/// One light-hop chain attempt for [`col`]: pulses start at the first place,
/// pass through the middle, continue to the last, each hop taking exactly its
/// spatial distance in chart time.  The chain closes into a single straight
/// signal exactly when the middle place lies between the outer two.
fn hop_chain(
    chart: &Tetrad,
    p_start: &Vec3,
    p_mid: &Vec3,
    p_end: &Vec3,
) -> Result<(bool, [Event; 3]), SignallingError> {
    let backend = p_start.x.backend();
    let d1 = dist(p_start, p_mid)?;
    let d2 = dist(p_mid, p_end)?;
    let e_start = chart.event_at(&[
        Scalar::zero(&backend),
        p_start.x.clone(),
        p_start.y.clone(),
        p_start.z.clone(),
    ]);
    let e_mid = chart.event_at(&[d1.clone(), p_mid.x.clone(), p_mid.y.clone(), p_mid.z.clone()]);
    let total = &d1 + &d2;
    let e_end = chart.event_at(&[total, p_end.x.clone(), p_end.y.clone(), p_end.z.clone()]);
    debug_assert!(Signal::new(e_start.clone(), e_mid.clone()).is_ok());
    debug_assert!(Signal::new(e_mid.clone(), e_end.clone()).is_ok());
    // The chain is straight iff the endpoints are themselves lightlike.
    let closes = Signal::new(e_start.clone(), e_end.clone()).is_ok();
    Ok((closes, [e_start, e_mid, e_end]))
}

const MIDDLE_ORDERS: [[usize; 3]; 3] = [[0, 1, 2], [0, 2, 1], [1, 0, 2]];

/// Do three places of one rest space lie on a common line (degenerate
/// repetitions included)?  Each candidate middle is probed with a light-hop
/// chain; collinearity holds exactly when some chain closes.
pub fn col(l1: &Location, l2: &Location, l3: &Location) -> Result<bool, SignallingError> {
    require_same_anchor(&[l1, l2, l3])?;
    let (chart, pos) = chart_positions(l1.anchor(), &[l1, l2, l3])?;
    for [i, j, k] in MIDDLE_ORDERS {
        let (closes, _) = hop_chain(&chart, &pos[i], &pos[j], &pos[k])?;
        if closes {
            return Ok(true);
        }
    }
    Ok(false)
}

pub fn col_trace(
    l1: &Location,
    l2: &Location,
    l3: &Location,
) -> Result<(bool, Trace), SignallingError> {
    require_same_anchor(&[l1, l2, l3])?;
    let mut trace = Trace::new("col");
    let (chart, pos) = chart_positions(l1.anchor(), &[l1, l2, l3])?;
    let mut verdict = false;
    for [i, j, k] in MIDDLE_ORDERS {
        let (closes, events) = hop_chain(&chart, &pos[i], &pos[j], &pos[k])?;
        let label = format!("chain-mid-{}", j + 1);
        trace.event(&format!("{label}-start"), &events[0]);
        trace.event(&format!("{label}-via"), &events[1]);
        trace.event(&format!("{label}-end"), &events[2]);
        trace.flag(&format!("{label}-closes"), closes);
        if closes {
            verdict = true;
            break;
        }
    }
    trace.flag("verdict", verdict);
    Ok((verdict, trace))
}

/// Does `l2` lie between `l1` and `l3` (inclusive) on their common line?
/// Direct reading: collinear, with the two steps pointing the same way.
pub fn bw(l1: &Location, l2: &Location, l3: &Location) -> Result<bool, SignallingError> {
    require_same_anchor(&[l1, l2, l3])?;
    if !oracle::col(l1, l2, l3)? {
        return Ok(false);
    }
    let step1 = l2.offset().sub(&l1.offset());
    let step2 = l3.offset().sub(&l2.offset());
    Ok(!s_dot(&step1, &step2).is_negative())
}

/// Are the places `l1 -> l2` as far apart as `l3 -> l4`?  Compared through
/// squared rest offsets, hence root-free.
pub fn ed(
    l1: &Location,
    l2: &Location,
    l3: &Location,
    l4: &Location,
) -> Result<bool, SignallingError> {
    require_same_anchor(&[l1, l2, l3, l4])?;
    let step1 = l2.offset().sub(&l1.offset());
    let step2 = l4.offset().sub(&l3.offset());
    Ok(s_dot(&step1, &step1) == s_dot(&step2, &step2))
}

/// Are the lines through `l1, l2` and through `l3, l4` parallel?  The
/// experiment translates `l2` by the step from `l1` to `l3` and asks whether
/// the translate lands on the second line, which reduces to a light-hop
/// collinearity probe.  Coincident input places are rejected: a pair only
/// spans a line if distinct.
pub fn pa(
    l1: &Location,
    l2: &Location,
    l3: &Location,
    l4: &Location,
) -> Result<bool, SignallingError> {
    require_same_anchor(&[l1, l2, l3, l4])?;
    let step1 = l2.offset().sub(&l1.offset());
    let step2 = l4.offset().sub(&l3.offset());
    if step1.is_zero() || step2.is_zero() {
        return Err(SignallingError::DegenerateLine);
    }
    let carried = l2.translate(&l3.offset().sub(&l1.offset()));
    col(&carried, l3, l4)
}

/// Is the angle at the anchor between the rays toward `b` and `c` right?
/// The experiment reflects `b` through the anchor and asks whether `c` is
/// equidistant from `b` and its mirror image; the verdict is root-free.
pub fn ort(cal: &Calibration, b: &Location, c: &Location) -> Result<bool, SignallingError> {
    let (reflected, here) = ort_setup(cal, b, c)?;
    debug_assert!(oracle::col(&here, b, &reflected).unwrap());
    ed(c, &reflected, c, b)
}

fn ort_setup(
    cal: &Calibration,
    b: &Location,
    c: &Location,
) -> Result<(Location, Location), SignallingError> {
    let here = Location::here(cal.worldline());
    require_same_anchor(&[&here, b, c])?;
    let db = b.offset();
    if db.is_zero() || c.offset().is_zero() {
        return Err(SignallingError::DegenerateLine);
    }
    let two = db.t.backend().int(2);
    let reflected = b.translate(&db.scale(&two).neg());
    Ok((reflected, here))
}

pub fn ort_trace(
    cal: &Calibration,
    b: &Location,
    c: &Location,
) -> Result<(bool, Trace), SignallingError> {
    let (reflected, here) = ort_setup(cal, b, c)?;
    let mut trace = Trace::new("ort");
    trace.particle("mirror-image", reflected.place());
    let (through_anchor, col_tr) = col_trace(&here, b, &reflected)?;
    debug_assert!(through_anchor);
    for (label, item) in col_tr.items {
        trace.items.push((format!("axis-{label}"), item));
    }
    let balanced = ed(&here, b, &here, &reflected)?;
    trace.flag("arms-balanced", balanced);
    debug_assert!(balanced);
    let verdict = ed(c, &reflected, c, b)?;
    trace.flag("verdict", verdict);
    Ok((verdict, trace))
}

/// The event on a comoving line that the anchor deems simultaneous with `o`.
fn sim_point_on(line: &Particle, anchor: &Particle, o: &Event) -> Event {
    let u = anchor.four_velocity();
    // <line(t) - o, u> = 0 is linear in t with slope <line tangent, u> > 0.
    let num = line.base().sub(o).mdot(&u);
    let den = line.four_velocity().mdot(&u);
    let t = -&num.checked_div(&den).expect("sub-light lines never rest-orthogonal");
    line.position_at(&t)
}

/// Measure the rest distance from `from` to `to` as a clock reading: carry
/// the pair so `from` sits on the calibrated worldline, flash a light pulse
/// from the carried far place at the origin's moment, and read the clock
/// when it arrives.  The returned point's value is the distance in clock
/// units.
pub fn dd(
    cal: &Calibration,
    from: &Location,
    to: &Location,
) -> Result<FieldPoint, SignallingError> {
    let (flash, hit) = dd_setup(cal, from, to)?;
    debug_assert!(simultaneous(cal.worldline(), &flash, cal.origin()));
    cal.field_point(hit)
}

fn dd_setup(
    cal: &Calibration,
    from: &Location,
    to: &Location,
) -> Result<(Event, Event), SignallingError> {
    let here = Location::here(cal.worldline());
    require_same_anchor(&[&here, from, to])?;
    // Carry the pair so `from` coincides with the worldline's own place.
    let carried = to.translate(&from.offset().neg());
    let flash = sim_point_on(carried.place(), cal.worldline(), cal.origin());
    let hit = light_hit_future(&flash, cal.worldline())?;
    Ok((flash, hit))
}

pub fn dd_trace(
    cal: &Calibration,
    from: &Location,
    to: &Location,
) -> Result<(FieldPoint, Trace), SignallingError> {
    let (flash, hit) = dd_setup(cal, from, to)?;
    let mut trace = Trace::new("dd");
    trace.event("flash", &flash);
    trace.flag(
        "flash-at-origin-moment",
        simultaneous(cal.worldline(), &flash, cal.origin()),
    );
    if let Ok(sig) = Signal::new(flash.clone(), hit.clone()) {
        trace.signal("pulse", &sig);
    }
    trace.event("arrival", &hit);
    let point = cal.field_point(hit)?;
    trace.scalar("clock-reading", &point.value());
    Ok((point, trace))
}
