//! Seeded deterministic generators for sweeps.
//!
//! All randomized checks in the crate draw from [`Sampler`], which wraps a
//! counter-based generator so a `(backend, seed)` pair fully determines every
//! generated object on every platform.
//!
//! On the exact backend, speeds come from a fixed table of ratios `p/q` with
//! `q^2 - p^2` a perfect square and directions from a table of rational unit
//! vectors, so that time dilation factors — and with them the orthonormal
//! frame data derived downstream — stay rational.  The approximate backend
//! samples freely.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::minkowski::{Event, FourVec, Vec3};
use crate::scalar::{Backend, Scalar};
use crate::sigmodel::{Particle, Scenario, Signal};

/// Speeds `p/q` whose dilation factor `q / sqrt(q^2 - p^2)` is rational.
const PYTH_SPEEDS: &[(i64, i64)] = &[
    (0, 1),
    (3, 5),
    (4, 5),
    (5, 13),
    (12, 13),
    (8, 17),
    (15, 17),
    (7, 25),
    (24, 25),
    (20, 29),
];

/// Unit vectors with rational components, up to permutation and sign.
const RATIONAL_UNITS: &[[(i64, i64); 3]] = &[
    [(1, 1), (0, 1), (0, 1)],
    [(3, 5), (4, 5), (0, 1)],
    [(1, 3), (2, 3), (2, 3)],
    [(2, 7), (3, 7), (6, 7)],
    [(1, 9), (4, 9), (8, 9)],
    [(2, 11), (6, 11), (9, 11)],
    [(12, 13), (3, 13), (4, 13)],
];

pub struct Sampler {
    pub backend: Backend,
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(backend: Backend, seed: u64) -> Self {
        Sampler {
            backend,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// A scalar roughly uniform over `[lo, hi]` (rational with small
    /// denominator on the exact backend).
    pub fn scalar_in(&mut self, lo: i64, hi: i64) -> Scalar {
        match self.backend {
            Backend::Exact => {
                let q = self.rng.gen_range(1i64..=4);
                let p = self.rng.gen_range(lo * q..=hi * q);
                Scalar::ratio(p, q)
            }
            Backend::Approx { eps } => {
                Scalar::approx_eps(self.rng.gen_range(lo as f64..=hi as f64), eps)
            }
        }
    }

    /// A unit spatial direction, exactly unit on both backends.
    pub fn unit_dir(&mut self) -> Vec3 {
        match self.backend {
            Backend::Exact => {
                let raw = RATIONAL_UNITS[self.rng.gen_range(0..RATIONAL_UNITS.len())];
                let mut comps: Vec<Scalar> = raw
                    .iter()
                    .map(|(p, q)| {
                        let sign = if self.rng.gen_bool(0.5) { 1 } else { -1 };
                        Scalar::ratio(sign * p, *q)
                    })
                    .collect();
                // Random transposition + rotation covers all 6 permutations.
                if self.rng.gen_bool(0.5) {
                    comps.swap(0, 1);
                }
                comps.rotate_right(self.rng.gen_range(0..3));
                Vec3::new(comps[0].clone(), comps[1].clone(), comps[2].clone())
            }
            Backend::Approx { eps } => loop {
                let v = Vec3::new(
                    Scalar::approx_eps(self.rng.gen_range(-1.0..1.0), eps),
                    Scalar::approx_eps(self.rng.gen_range(-1.0..1.0), eps),
                    Scalar::approx_eps(self.rng.gen_range(-1.0..1.0), eps),
                );
                let n2 = v.norm2().to_f64();
                if (0.01..=1.0).contains(&n2) {
                    let inv = Scalar::approx_eps(1.0 / n2.sqrt(), eps);
                    return v.scale(&inv);
                }
            },
        }
    }

    /// A sub-light speed (with rational dilation factor when exact).
    pub fn speed(&mut self) -> Scalar {
        match self.backend {
            Backend::Exact => {
                let (p, q) = PYTH_SPEEDS[self.rng.gen_range(0..PYTH_SPEEDS.len())];
                Scalar::ratio(p, q)
            }
            Backend::Approx { eps } => Scalar::approx_eps(self.rng.gen_range(0.0..0.9), eps),
        }
    }

    pub fn velocity(&mut self) -> Vec3 {
        let s = self.speed();
        self.unit_dir().scale(&s)
    }

    pub fn event_in(&mut self, r: i64) -> Event {
        Event::new(
            self.scalar_in(-r, r),
            self.scalar_in(-r, r),
            self.scalar_in(-r, r),
            self.scalar_in(-r, r),
        )
    }

    pub fn particle(&mut self, r: i64) -> Particle {
        let v = self.velocity();
        Particle::new(self.event_in(r), v).expect("sampled velocity is sub-light")
    }

    /// A particle comoving with `anchor`, offset by a bounded spatial shift.
    pub fn comoving(&mut self, anchor: &Particle, r: i64) -> Particle {
        let shift = FourVec::from_time_space(
            self.backend.int(0),
            &Vec3::new(self.scalar_in(-r, r), self.scalar_in(-r, r), self.scalar_in(-r, r)),
        );
        anchor.translate(&shift)
    }

    /// A signal with endpoints in range; roughly a quarter are zero-length.
    pub fn signal(&mut self, r: i64) -> Signal {
        let beg = self.event_in(r);
        if self.rng.gen_bool(0.25) {
            return Signal::event(beg);
        }
        let dir = self.unit_dir();
        let span = self.scalar_in(0, r).abs();
        let end = beg.add_vec(&FourVec::from_time_space(span.clone(), &dir.scale(&span)));
        Signal::new(beg, end).expect("lightlike by construction")
    }

    pub fn scenario(&mut self, particles: usize, signals: usize, tu: bool) -> Scenario {
        let mut sc = Scenario::new(self.backend, tu);
        for _ in 0..particles {
            sc.particles.push(self.particle(5));
        }
        for _ in 0..signals {
            sc.signals.push(self.signal(5));
        }
        sc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minkowski::separation;
    use crate::minkowski::Separation;

    #[test]
    fn exact_unit_dirs_are_exactly_unit() {
        let mut s = Sampler::new(Backend::Exact, 9);
        for _ in 0..200 {
            assert_eq!(s.unit_dir().norm2(), Scalar::from_int(1));
        }
    }

    #[test]
    fn exact_speeds_have_rational_dilation() {
        let mut s = Sampler::new(Backend::Exact, 10);
        for _ in 0..100 {
            let v = s.speed();
            let g2 = Scalar::from_int(1)
                .checked_div(&(Scalar::from_int(1) - v.square()))
                .unwrap();
            assert!(g2.sqrt().is_ok(), "dilation factor for {v:?} must be rational");
        }
    }

    #[test]
    fn signals_are_lightlike_or_events() {
        for backend in [Backend::Exact, Backend::approx()] {
            let mut s = Sampler::new(backend, 11);
            let mut events = 0;
            for _ in 0..100 {
                let sig = s.signal(5);
                match separation(sig.beg(), sig.end()) {
                    Separation::Equal => events += 1,
                    Separation::LightlikeFuture => {}
                    other => panic!("sampled signal with separation {other:?}"),
                }
            }
            assert!(events > 5, "expected a visible share of zero-length signals");
        }
    }
}
