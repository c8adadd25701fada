//! Field scalars with two interchangeable backends.
//!
//! Every quantity in this crate is a [`Scalar`]: either an exact arbitrary-
//! precision rational or a float paired with the tolerance it was produced
//! under.  The exact backend is used for hand-curated fixtures where results
//! must come out bit-for-bit; the approximate backend is used for randomized
//! sweeps.  Approximate equality is the mixed relative/absolute test
//! `|a - b| <= eps * max(1, |a|, |b|)`, so values near zero are compared
//! absolutely and large values relatively.
//!
//! Square roots are partial on the exact backend: a rational has an exact
//! square root only when numerator and denominator are perfect squares, and
//! anything else reports [`ScalarError::NonConstructibleExact`] rather than
//! silently degrading to a float.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer, Visitor};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Tolerance used by the approximate backend unless a caller configures one.
pub const DEFAULT_EPS: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("square root of a negative scalar")]
    NegativeSqrt,
    #[error("square root is irrational on the exact backend")]
    NonConstructibleExact,
}

/// Which arithmetic a value (or a generator) lives in.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "kind")]
pub enum Backend {
    Exact,
    Approx {
        #[serde(default = "default_eps")]
        eps: f64,
    },
}

fn default_eps() -> f64 {
    DEFAULT_EPS
}

impl Backend {
    pub fn approx() -> Self {
        Backend::Approx { eps: DEFAULT_EPS }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Backend::Exact)
    }

    /// Embed an integer.
    pub fn int(&self, n: i64) -> Scalar {
        match self {
            Backend::Exact => Scalar::from_int(n),
            Backend::Approx { eps } => Scalar::approx_eps(n as f64, *eps),
        }
    }

    /// Embed a ratio `p/q`.  Panics if `q == 0`; ratios in fixtures are static.
    pub fn ratio(&self, p: i64, q: i64) -> Scalar {
        assert!(q != 0, "ratio denominator must be nonzero");
        match self {
            Backend::Exact => Scalar::ratio(p, q),
            Backend::Approx { eps } => Scalar::approx_eps(p as f64 / q as f64, *eps),
        }
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Backend::Exact => write!(f, "exact"),
            Backend::Approx { eps } => write!(f, "approx(eps={eps})"),
        }
    }
}

/// A field element: exact rational or tolerance-tagged float.
///
/// Values are immutable; all operations return fresh scalars.  Mixing the two
/// backends in one expression demotes the exact side to a float, carrying the
/// approximate side's tolerance.
#[derive(Clone)]
pub enum Scalar {
    Exact(BigRational),
    Approx { value: f64, eps: f64 },
}

impl Scalar {
    pub fn from_int(n: i64) -> Self {
        Scalar::Exact(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn ratio(p: i64, q: i64) -> Self {
        assert!(q != 0, "ratio denominator must be nonzero");
        Scalar::Exact(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn approx(value: f64) -> Self {
        Scalar::approx_eps(value, DEFAULT_EPS)
    }

    pub fn approx_eps(value: f64, eps: f64) -> Self {
        assert!(value.is_finite(), "approximate scalar must be finite");
        Scalar::Approx { value, eps }
    }

    pub fn zero(backend: &Backend) -> Self {
        backend.int(0)
    }

    pub fn one(backend: &Backend) -> Self {
        backend.int(1)
    }

    pub fn backend(&self) -> Backend {
        match self {
            Scalar::Exact(_) => Backend::Exact,
            Scalar::Approx { eps, .. } => Backend::Approx { eps: *eps },
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(q) => q.to_f64().expect("rational out of f64 range"),
            Scalar::Approx { value, .. } => *value,
        }
    }

    /// Re-tag an approximate value with a new tolerance (no-op on exact).
    pub fn with_eps(&self, eps: f64) -> Scalar {
        match self {
            Scalar::Exact(q) => Scalar::Exact(q.clone()),
            Scalar::Approx { value, .. } => Scalar::Approx { value: *value, eps },
        }
    }

    fn eps_of(&self) -> Option<f64> {
        match self {
            Scalar::Exact(_) => None,
            Scalar::Approx { eps, .. } => Some(*eps),
        }
    }

    /// Tolerance governing a comparison between `self` and `other`: the larger
    /// of the two tags, or `None` when both sides are exact.
    fn joint_eps(&self, other: &Scalar) -> Option<f64> {
        match (self.eps_of(), other.eps_of()) {
            (None, None) => None,
            (a, b) => Some(a.unwrap_or(0.0).max(b.unwrap_or(0.0))),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(q) => q.is_zero(),
            Scalar::Approx { value, eps } => value.abs() <= *eps,
        }
    }

    pub fn is_positive(&self) -> bool {
        self.cmp_scalar(&Scalar::zero(&self.backend())) == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.cmp_scalar(&Scalar::zero(&self.backend())) == Ordering::Less
    }

    /// Total comparison; on the approximate backend, values within tolerance
    /// compare equal.
    pub fn cmp_scalar(&self, other: &Scalar) -> Ordering {
        match self.joint_eps(other) {
            None => match (self, other) {
                (Scalar::Exact(a), Scalar::Exact(b)) => a.cmp(b),
                _ => unreachable!("joint_eps is None only for two exact scalars"),
            },
            Some(eps) => {
                let a = self.to_f64();
                let b = other.to_f64();
                if (a - b).abs() <= eps * 1.0_f64.max(a.abs()).max(b.abs()) {
                    Ordering::Equal
                } else if a < b {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            }
        }
    }

    /// Strict value order ignoring tolerance; used only to sort reports
    /// deterministically, never to decide geometry.
    pub fn strict_cmp(&self, other: &Scalar) -> Ordering {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => a.cmp(b),
            _ => self
                .to_f64()
                .partial_cmp(&other.to_f64())
                .expect("scalars are finite"),
        }
    }

    pub fn abs(&self) -> Scalar {
        match self {
            Scalar::Exact(q) => Scalar::Exact(q.abs()),
            Scalar::Approx { value, eps } => Scalar::Approx {
                value: value.abs(),
                eps: *eps,
            },
        }
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        if other.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a / b),
            _ => Scalar::Approx {
                value: self.to_f64() / other.to_f64(),
                eps: self.joint_eps(other).unwrap(),
            },
        })
    }

    /// Square root.  Exact rationals admit one only when both reduced parts
    /// are perfect squares; negative inputs (beyond tolerance) are rejected.
    pub fn sqrt(&self) -> Result<Scalar, ScalarError> {
        match self {
            Scalar::Exact(q) => {
                if q.is_negative() {
                    return Err(ScalarError::NegativeSqrt);
                }
                let num = q.numer();
                let den = q.denom();
                let rn = num.sqrt();
                let rd = den.sqrt();
                if &(&rn * &rn) == num && &(&rd * &rd) == den {
                    Ok(Scalar::Exact(BigRational::new(rn, rd)))
                } else {
                    Err(ScalarError::NonConstructibleExact)
                }
            }
            Scalar::Approx { value, eps } => {
                if *value < -*eps {
                    Err(ScalarError::NegativeSqrt)
                } else {
                    Ok(Scalar::Approx {
                        value: value.max(0.0).sqrt(),
                        eps: *eps,
                    })
                }
            }
        }
    }

    /// `self * self`, avoiding a clone at call sites.
    pub fn square(&self) -> Scalar {
        self * self
    }

    fn binop(&self, other: &Scalar, exact: fn(&BigRational, &BigRational) -> BigRational, approx: fn(f64, f64) -> f64) -> Scalar {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(exact(a, b)),
            _ => Scalar::Approx {
                value: approx(self.to_f64(), other.to_f64()),
                eps: self.joint_eps(other).unwrap(),
            },
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(q) => write!(f, "{q}"),
            Scalar::Approx { value, .. } => write!(f, "{value}~"),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            Scalar::Approx { value, .. } => write!(f, "{value}"),
        }
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_scalar(other) == Ordering::Equal
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp_scalar(other))
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $exact:expr, $approx:expr) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.binop(rhs, $exact, $approx)
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).binop(&rhs, $exact, $approx)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).binop(rhs, $exact, $approx)
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.binop(&rhs, $exact, $approx)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a + b, |a, b| a + b);
forward_binop!(Sub, sub, |a, b| a - b, |a, b| a - b);
forward_binop!(Mul, mul, |a, b| a * b, |a, b| a * b);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Exact(q) => Scalar::Exact(-q),
            Scalar::Approx { value, eps } => Scalar::Approx {
                value: -value,
                eps: *eps,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl FromStr for Scalar {
    type Err = String;

    /// Accepts `p/q` (exact) or a decimal literal (approximate, default
    /// tolerance).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Some((p, q)) = s.split_once('/') {
            let p: BigInt = p.trim().parse().map_err(|e| format!("bad numerator: {e}"))?;
            let q: BigInt = q.trim().parse().map_err(|e| format!("bad denominator: {e}"))?;
            if q.is_zero() {
                return Err("zero denominator".into());
            }
            Ok(Scalar::Exact(BigRational::new(p, q)))
        } else {
            let v: f64 = s.trim().parse().map_err(|e| format!("bad float: {e}"))?;
            if !v.is_finite() {
                return Err("non-finite float".into());
            }
            Ok(Scalar::approx(v))
        }
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = Scalar;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                write!(f, "a scalar as \"p/q\", a decimal string, or a number")
            }
            fn visit_str<E: de::Error>(self, s: &str) -> Result<Scalar, E> {
                s.parse().map_err(E::custom)
            }
            fn visit_i64<E: de::Error>(self, n: i64) -> Result<Scalar, E> {
                Ok(Scalar::from_int(n))
            }
            fn visit_u64<E: de::Error>(self, n: u64) -> Result<Scalar, E> {
                Ok(Scalar::Exact(BigRational::from_integer(BigInt::from(n))))
            }
            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Scalar, E> {
                if v.is_finite() {
                    Ok(Scalar::approx(v))
                } else {
                    Err(E::custom("non-finite float"))
                }
            }
        }
        deserializer.deserialize_any(V)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ex(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn arithmetic_basics() {
        assert_eq!(ex(2) + ex(3), ex(5));
        assert_eq!(ex(2) - ex(5), ex(-3));
        assert_eq!(Scalar::ratio(1, 3) * ex(3), ex(1));
        assert_eq!(ex(7).checked_div(&ex(2)).unwrap(), Scalar::ratio(7, 2));
        assert_eq!(
            ex(1).checked_div(&ex(0)),
            Err(ScalarError::DivisionByZero)
        );
    }

    #[test]
    fn sqrt_exact_only_for_perfect_squares() {
        assert_eq!(Scalar::ratio(9, 4).sqrt().unwrap(), Scalar::ratio(3, 2));
        assert_eq!(ex(2).sqrt(), Err(ScalarError::NonConstructibleExact));
        assert_eq!(ex(-1).sqrt(), Err(ScalarError::NegativeSqrt));
        // 25 has an exact root on both backends, and comparison sees them equal.
        assert_eq!(ex(25).sqrt().unwrap().cmp_scalar(&ex(5)), Ordering::Equal);
        let approx_root = Scalar::approx(25.0).sqrt().unwrap();
        assert_eq!(approx_root.cmp_scalar(&ex(5)), Ordering::Equal);
    }

    #[test]
    fn tolerance_is_mixed_relative_absolute() {
        let a = Scalar::approx(1.0);
        let b = Scalar::approx(1.0 + 1e-13);
        assert_eq!(a, b);
        let big_a = Scalar::approx(1e6);
        let big_b = Scalar::approx(1e6 + 1e-7);
        assert_eq!(big_a, big_b); // relative: 1e-7 / 1e6 = 1e-13 < eps
        let c = Scalar::approx(0.0);
        let d = Scalar::approx(1e-11);
        assert_ne!(c, d); // absolute near zero: 1e-11 > eps
    }

    #[test]
    fn mixed_backend_comparison_promotes() {
        assert_eq!(ex(5), Scalar::approx(5.0 + 1e-14));
        assert!(ex(5) < Scalar::approx(5.1));
    }

    #[test]
    fn serialization_round_trip() {
        for s in [Scalar::ratio(-7, 3), ex(4), Scalar::approx(0.1), Scalar::approx(-2.5e-9)] {
            let json = serde_json::to_string(&s).unwrap();
            let back: Scalar = serde_json::from_str(&json).unwrap();
            assert_eq!(s, back, "round-trip through {json}");
            // Exactness of the backend must survive the trip.
            assert_eq!(s.backend().is_exact(), back.backend().is_exact());
        }
        // Plain JSON numbers are accepted on input.
        let n: Scalar = serde_json::from_str("3").unwrap();
        assert_eq!(n, ex(3));
        assert!(n.backend().is_exact());
        let f: Scalar = serde_json::from_str("0.5").unwrap();
        assert_eq!(f, Scalar::ratio(1, 2));
        assert!(!f.backend().is_exact());
    }

    fn sample_exact(rng: &mut ChaCha8Rng) -> Scalar {
        let p = rng.gen_range(-60i64..=60);
        let q = rng.gen_range(1i64..=12);
        Scalar::ratio(p, q)
    }

    fn sample_approx(rng: &mut ChaCha8Rng) -> Scalar {
        Scalar::approx(rng.gen_range(-50.0..50.0))
    }

    /// Ordered-field laws on 10^4 random triples per backend.
    #[test]
    fn field_laws_random_sweep() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5ca1a);
        for case in 0..10_000 {
            let exact = case % 2 == 0;
            let (a, b, c) = if exact {
                (sample_exact(&mut rng), sample_exact(&mut rng), sample_exact(&mut rng))
            } else {
                (sample_approx(&mut rng), sample_approx(&mut rng), sample_approx(&mut rng))
            };
            assert_eq!(&a + &b, &b + &a);
            assert_eq!(&a * &b, &b * &a);
            assert_eq!((&a + &b) + &c, &a + (&b + &c));
            assert_eq!((&a * &b) * &c, &a * (&b * &c));
            assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
            let zero = Scalar::zero(&a.backend());
            let one = Scalar::one(&a.backend());
            assert_eq!(&a + &zero, a);
            assert_eq!(&a * &one, a);
            assert_eq!(&a + (-&a), zero);
            if !a.is_zero() {
                let inv = one.checked_div(&a).unwrap();
                assert_eq!(&a * &inv, Scalar::one(&a.backend()));
            }
            // Order compatibility.
            if a.cmp_scalar(&b) == Ordering::Less {
                assert_ne!((&a + &c).cmp_scalar(&(&b + &c)), Ordering::Greater);
                if c.is_positive() {
                    assert_ne!((&a * &c).cmp_scalar(&(&b * &c)), Ordering::Greater);
                }
            }
            // Squares are non-negative and admit roots on the approx backend.
            let sq = a.square();
            assert!(!sq.is_negative());
            if !exact {
                let root = sq.sqrt().unwrap();
                assert_eq!(root, a.abs());
            }
        }
    }
}
