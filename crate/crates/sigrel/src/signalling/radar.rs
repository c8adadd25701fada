//! Shared geometry for the radar experiments.
//!
//! A light pulse exchanged between an event and a sub-light worldline hits
//! the worldline at the roots of a quadratic in coordinate time.  Because the
//! worldline is sub-light the leading coefficient is positive and the value
//! at the event's own time is `-(spatial distance)^2 <= 0`, so the roots are
//! always real and bracket that time: one emission in the past, one reception
//! in the future.  Several constructions only need the *sum* or coincidence
//! pattern of the roots, which Vieta's formulas give without square roots.

use crate::minkowski::{Event, FourVec, Vec3};
use crate::scalar::{Backend, Scalar, ScalarError};
use crate::sigmodel::Particle;

/// Coefficients of `f(t) = interval2(p(t), q)` as a quadratic `At^2 + Bt + C`
/// in the worldline's coordinate time.
pub(crate) struct RadarQuadratic {
    a: Scalar,
    b: Scalar,
    c: Scalar,
}

impl RadarQuadratic {
    pub(crate) fn new(p: &Particle, q: &Event) -> Self {
        let backend = q.t.backend();
        let v = p.velocity();
        // Spatial offset from q to the worldline's position at t = 0.
        let d = Vec3::new(&p.base().x - &q.x, &p.base().y - &q.y, &p.base().z - &q.z);
        let two = backend.int(2);
        let a = &Scalar::one(&backend) - &v.dot(v);
        let b = -&(&two * &(&q.t + &d.dot(v)));
        let c = &q.t.square() - &d.dot(&d);
        RadarQuadratic { a, b, c }
    }

    /// `-B/(2A)`: the time halfway between emission and reception.
    /// Root-free by Vieta, hence total on the exact backend.
    pub(crate) fn midpoint_time(&self) -> Scalar {
        let two_a = &self.a * &self.a.backend().int(2);
        (-&self.b)
            .checked_div(&two_a)
            .expect("sub-light worldline has positive leading coefficient")
    }

    pub(crate) fn discriminant(&self) -> Scalar {
        &self.b.square() - &(&(&self.a * &self.c) * &self.a.backend().int(4))
    }

    /// Linear coefficient; with the shared leading coefficient and the
    /// discriminant this determines the root pair without extracting it.
    pub(crate) fn linear(&self) -> &Scalar {
        &self.b
    }

    /// `(emission, reception)` times, needing one square root.
    pub(crate) fn roots(&self) -> Result<(Scalar, Scalar), ScalarError> {
        let sq = self.discriminant().sqrt()?;
        let two_a = &self.a * &self.a.backend().int(2);
        let lo = (&(-&self.b) - &sq).checked_div(&two_a).expect("2A != 0");
        let hi = (&(-&self.b) + &sq).checked_div(&two_a).expect("2A != 0");
        Ok((lo, hi))
    }
}

/// The unique event on `p` hit by a future-directed light signal from `from`
/// (equal to `from` itself when `from` lies on `p`).
pub(crate) fn light_hit_future(from: &Event, p: &Particle) -> Result<Event, ScalarError> {
    let (_, hi) = RadarQuadratic::new(p, from).roots()?;
    Ok(p.position_at(&hi))
}

/// The unique event on `p` whose future-directed light signal reaches `to`.
pub(crate) fn light_emission_past(to: &Event, p: &Particle) -> Result<Event, ScalarError> {
    let (lo, _) = RadarQuadratic::new(p, to).roots()?;
    Ok(p.position_at(&lo))
}

/// Spatial unit directions (with signs) tried when a construction needs any
/// lightlike ray not orthogonal to a given vector.  For a nonzero four-vector
/// at least one of the six rays works.
fn axis_rays(backend: &Backend) -> [Vec3; 6] {
    let one = Scalar::one(backend);
    let zero = Scalar::zero(backend);
    let mk = |x: &Scalar, y: &Scalar, z: &Scalar| Vec3::new(x.clone(), y.clone(), z.clone());
    [
        mk(&one, &zero, &zero),
        mk(&(-&one), &zero, &zero),
        mk(&zero, &one, &zero),
        mk(&zero, &(-&one), &zero),
        mk(&zero, &zero, &one),
        mk(&zero, &zero, &(-&one)),
    ]
}

/// Split a four-vector `d` as `l1 + l2` with `l1 = alpha (1, n)` lightlike,
/// choosing `alpha` so `l2 = d - l1` is lightlike too.  Entirely rational.
/// Both parts are future-directed exactly when `d` is causal and
/// future-directed; callers validate the parts as signals.  Returns `None`
/// only if every axis ray is Minkowski-orthogonal to `d`, i.e. `d = 0`.
pub(crate) fn null_split(d: &FourVec) -> Option<(FourVec, FourVec)> {
    let backend = d.t.backend();
    let interval = d.norm2();
    if interval.is_zero() && d.is_zero() {
        let zero = FourVec::zero(&backend);
        return Some((zero.clone(), zero));
    }
    if interval.is_zero() {
        // Already lightlike: ride it the whole way, then a zero-length hop.
        return Some((d.clone(), FourVec::zero(&backend)));
    }
    let half = backend.ratio(1, 2);
    for n in axis_rays(&backend) {
        let ray = FourVec::from_time_space(Scalar::one(&backend), &n);
        let denom = d.mdot(&ray);
        if denom.is_zero() {
            continue;
        }
        let alpha = &interval.checked_div(&denom).expect("nonzero") * &half;
        let l1 = ray.scale(&alpha);
        let l2 = d.sub(&l1);
        debug_assert!(l2.norm2().is_zero());
        return Some((l1, l2));
    }
    None
}

/// An event lightlike-related (in some direction, zero included) to both `o`
/// and `e`.  Used to translate event pairs along signal fans.  Rational.
pub(crate) fn common_null_neighbor(o: &Event, e: &Event) -> Event {
    let d = o.sub(e);
    if d.is_zero() {
        return o.clone();
    }
    let backend = o.t.backend();
    let half = backend.ratio(1, 2);
    for n in axis_rays(&backend) {
        let ray = FourVec::from_time_space(Scalar::one(&backend), &n);
        let denom = d.mdot(&ray);
        if denom.is_zero() {
            continue;
        }
        // interval2(o + beta ray, e) = <d>^2 + 2 beta <d, ray> = 0.
        let beta = -&(&d.norm2().checked_div(&denom).expect("nonzero") * &half);
        return o.add_vec(&ray.scale(&beta));
    }
    unreachable!("a nonzero four-vector meets some axis ray non-orthogonally")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minkowski::{interval2, separation, Separation};

    const B: Backend = Backend::Exact;

    fn ev(t: i64, x: i64, y: i64, z: i64) -> Event {
        Event::from_ints(&B, [t, x, y, z])
    }

    #[test]
    fn radar_roots_bracket_the_probe_time() {
        let p = Particle::new(
            ev(0, 0, 0, 0),
            Vec3::new(Scalar::ratio(3, 5), Scalar::from_int(0), Scalar::from_int(0)),
        )
        .unwrap();
        let q = ev(2, 5, 0, 0);
        let quad = RadarQuadratic::new(&p, &q);
        let (lo, hi) = quad.roots().unwrap();
        assert!(lo < q.t && q.t < hi);
        // Both hits really are lightlike-related to q.
        assert!(interval2(&p.position_at(&lo), &q).is_zero());
        assert!(interval2(&p.position_at(&hi), &q).is_zero());
        // Vieta midpoint agrees with the explicit roots.
        let two = Scalar::from_int(2);
        assert_eq!(quad.midpoint_time(), (&lo + &hi).checked_div(&two).unwrap());
    }

    #[test]
    fn light_hits_are_directed() {
        let p = Particle::new(ev(0, 0, 0, 0), Vec3::zero(&B)).unwrap();
        let q = ev(1, 3, 0, 0);
        let hit = light_hit_future(&q, &p).unwrap();
        assert_eq!(hit, ev(4, 0, 0, 0));
        let emit = light_emission_past(&q, &p).unwrap();
        assert_eq!(emit, ev(-2, 0, 0, 0));
    }

    #[test]
    fn null_split_of_a_timelike_vector() {
        let d = ev(2, 1, 0, 0).sub(&ev(0, 0, 0, 0));
        let (l1, l2) = null_split(&d).unwrap();
        assert!(l1.norm2().is_zero());
        assert!(l2.norm2().is_zero());
        assert_eq!(l1.add(&l2), d);
        // The documented relay point for this pair.
        let mid = ev(0, 0, 0, 0).add_vec(&l1);
        assert_eq!(
            mid,
            Event::new(
                Scalar::ratio(3, 2),
                Scalar::ratio(3, 2),
                Scalar::from_int(0),
                Scalar::from_int(0),
            )
        );
    }

    #[test]
    fn common_null_neighbor_touches_both() {
        let o = ev(0, 0, 0, 0);
        for e in [ev(5, 3, 0, 0), ev(-2, 7, 1, 3), ev(1, 1, 0, 0), ev(0, 0, 0, 0)] {
            let w = common_null_neighbor(&o, &e);
            for other in [&o, &e] {
                let sep = separation(&w, other);
                assert!(
                    matches!(
                        sep,
                        Separation::Equal | Separation::LightlikeFuture | Separation::LightlikePast
                    ),
                    "neighbor {w:?} not lightlike-related to {other:?}: {sep:?}"
                );
            }
        }
    }
}
