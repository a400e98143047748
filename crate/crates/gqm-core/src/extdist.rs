//! Exact extended distances.
//!
//! Distances are nonnegative extended reals, but the carriers in this crate
//! only ever produce two exact shapes: logarithms of positive integers
//! (`log k`, stored as the integer `k`) and integer dimension counts. Both are
//! kept exact through all arithmetic; conversion to `f64` happens only when a
//! report is rendered.
//!
//! The two finite shapes are different unit systems. A single carrier always
//! sticks to one of them, so mixed-unit arithmetic indicates a bug; adding or
//! ordering a nonzero `log` against a nonzero `dim` panics. Zero is zero in
//! either unit and compares/adds freely.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;

/// A finite distance magnitude in one of the two exact unit systems.
#[derive(Clone, Debug)]
pub enum Magnitude {
    /// `log k` in nats for an exact integer `k >= 1`. Addition multiplies the
    /// integers, so the value stays exact along arbitrarily long sums.
    LogInt(BigUint),
    /// An integer dimension count. Addition adds.
    Dim(u64),
}

impl Magnitude {
    pub fn is_zero(&self) -> bool {
        match self {
            Magnitude::LogInt(k) => k.is_one(),
            Magnitude::Dim(n) => *n == 0,
        }
    }

    /// Value in nats as `f64` (report rendering only).
    pub fn to_nats(&self) -> f64 {
        match self {
            Magnitude::LogInt(k) => big_ln(k),
            Magnitude::Dim(n) => *n as f64,
        }
    }

    fn add(&self, other: &Magnitude) -> Magnitude {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        match (self, other) {
            (Magnitude::LogInt(a), Magnitude::LogInt(b)) => Magnitude::LogInt(a * b),
            (Magnitude::Dim(a), Magnitude::Dim(b)) => {
                Magnitude::Dim(a.checked_add(*b).expect("dimension overflow"))
            }
            _ => panic!("cannot add distances from different unit systems"),
        }
    }

    fn times(&self, k: u64) -> Magnitude {
        if k == 0 || self.is_zero() {
            // Empty sum convention.
            return Magnitude::Dim(0).canonical_zero_like(self);
        }
        match self {
            Magnitude::LogInt(v) => {
                let exp = u32::try_from(k).expect("multiplier too large");
                Magnitude::LogInt(num_traits::Pow::pow(v, exp))
            }
            Magnitude::Dim(n) => Magnitude::Dim(n.checked_mul(k).expect("dimension overflow")),
        }
    }

    /// Preserve the unit system when producing a zero.
    fn canonical_zero_like(self, like: &Magnitude) -> Magnitude {
        match like {
            Magnitude::LogInt(_) => Magnitude::LogInt(BigUint::one()),
            Magnitude::Dim(_) => Magnitude::Dim(0),
        }
    }
}

impl PartialEq for Magnitude {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Magnitude::LogInt(a), Magnitude::LogInt(b)) => a == b,
            (Magnitude::Dim(a), Magnitude::Dim(b)) => a == b,
            // Zero is the only value shared by the two unit systems.
            _ => self.is_zero() && other.is_zero(),
        }
    }
}

impl Eq for Magnitude {}

impl PartialOrd for Magnitude {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (Magnitude::LogInt(a), Magnitude::LogInt(b)) => Some(a.cmp(b)),
            (Magnitude::Dim(a), Magnitude::Dim(b)) => Some(a.cmp(b)),
            _ => match (self.is_zero(), other.is_zero()) {
                (true, true) => Some(Ordering::Equal),
                (true, false) => Some(Ordering::Less),
                (false, true) => Some(Ordering::Greater),
                (false, false) => None,
            },
        }
    }
}

impl fmt::Display for Magnitude {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Magnitude::LogInt(k) => write!(f, "log {k}"),
            Magnitude::Dim(n) => write!(f, "dim {n}"),
        }
    }
}

/// A directed distance value: an exact finite magnitude or infinity.
///
/// Arithmetic saturates at infinity (`r + inf = inf + inf = inf`), and
/// infinity is strictly greater than every finite value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExtDist {
    Finite(Magnitude),
    Infinite,
}

impl ExtDist {
    /// Zero in the `log` unit system. Compares equal to `zero_dim()`.
    pub fn zero() -> ExtDist {
        ExtDist::Finite(Magnitude::LogInt(BigUint::one()))
    }

    /// Zero in the `dim` unit system.
    pub fn zero_dim() -> ExtDist {
        ExtDist::Finite(Magnitude::Dim(0))
    }

    /// `log k` for a machine-sized `k >= 1`.
    pub fn log_int(k: u64) -> ExtDist {
        assert!(k >= 1, "log argument must be >= 1");
        ExtDist::Finite(Magnitude::LogInt(BigUint::from(k)))
    }

    /// `log k` for an exact big `k >= 1`.
    pub fn log_big(k: BigUint) -> ExtDist {
        assert!(!k.is_zero(), "log argument must be >= 1");
        ExtDist::Finite(Magnitude::LogInt(k))
    }

    pub fn dim(n: u64) -> ExtDist {
        ExtDist::Finite(Magnitude::Dim(n))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ExtDist::Finite(m) if m.is_zero())
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtDist::Finite(_))
    }

    /// Saturating addition. Panics on mixed nonzero unit systems.
    pub fn add(&self, other: &ExtDist) -> ExtDist {
        match (self, other) {
            (ExtDist::Finite(a), ExtDist::Finite(b)) => ExtDist::Finite(a.add(b)),
            _ => ExtDist::Infinite,
        }
    }

    /// `k`-fold sum; `k = 0` gives zero (empty sum), including for infinity.
    pub fn times(&self, k: u64) -> ExtDist {
        match self {
            ExtDist::Finite(m) => ExtDist::Finite(m.times(k)),
            ExtDist::Infinite => {
                if k == 0 {
                    ExtDist::zero()
                } else {
                    ExtDist::Infinite
                }
            }
        }
    }

    /// Total order within one unit system. Panics on mixed nonzero units,
    /// which would mean two different carriers' distances were compared.
    pub fn cmp_same_unit(&self, other: &ExtDist) -> Ordering {
        self.partial_cmp(other)
            .expect("compared distances from different unit systems")
    }

    pub fn le(&self, other: &ExtDist) -> bool {
        self.cmp_same_unit(other) != Ordering::Greater
    }

    /// Value in nats; `f64::INFINITY` for the infinite point.
    pub fn to_nats(&self) -> f64 {
        match self {
            ExtDist::Finite(m) => m.to_nats(),
            ExtDist::Infinite => f64::INFINITY,
        }
    }
}

impl PartialOrd for ExtDist {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (ExtDist::Finite(a), ExtDist::Finite(b)) => a.partial_cmp(b),
            (ExtDist::Finite(_), ExtDist::Infinite) => Some(Ordering::Less),
            (ExtDist::Infinite, ExtDist::Finite(_)) => Some(Ordering::Greater),
            (ExtDist::Infinite, ExtDist::Infinite) => Some(Ordering::Equal),
        }
    }
}

impl fmt::Display for ExtDist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtDist::Finite(m) => m.fmt(f),
            ExtDist::Infinite => write!(f, "inf"),
        }
    }
}

/// Natural log of a positive big integer, stable for values far past `f64`.
fn big_ln(k: &BigUint) -> f64 {
    debug_assert!(!k.is_zero());
    let bits = k.bits();
    if bits <= 52 {
        return (k.to_u64().unwrap() as f64).ln();
    }
    // Take the top 52 bits as a mantissa m, so k = m * 2^shift * (1 + eps)
    // with |eps| < 2^-52: ln k = ln m + shift * ln 2 up to f64 precision.
    let shift = bits - 52;
    let top = (k >> shift).to_u64().unwrap();
    (top as f64).ln() + (shift as f64) * std::f64::consts::LN_2
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_addition_multiplies() {
        let a = ExtDist::log_int(4);
        let b = ExtDist::log_int(2);
        assert_eq!(a.add(&b), ExtDist::log_int(8));
    }

    #[test]
    fn dim_addition_adds() {
        assert_eq!(ExtDist::dim(3).add(&ExtDist::dim(2)), ExtDist::dim(5));
    }

    #[test]
    fn infinity_saturates() {
        let r = ExtDist::log_int(7);
        assert_eq!(r.add(&ExtDist::Infinite), ExtDist::Infinite);
        assert_eq!(ExtDist::Infinite.add(&ExtDist::Infinite), ExtDist::Infinite);
        // r < r + inf
        assert!(r.cmp_same_unit(&r.add(&ExtDist::Infinite)) == Ordering::Less);
    }

    #[test]
    fn zero_crosses_unit_systems() {
        assert_eq!(ExtDist::zero(), ExtDist::zero_dim());
        assert_eq!(ExtDist::zero().add(&ExtDist::dim(2)), ExtDist::dim(2));
        assert_eq!(ExtDist::zero_dim().add(&ExtDist::log_int(3)), ExtDist::log_int(3));
    }

    #[test]
    #[should_panic(expected = "different unit systems")]
    fn mixed_nonzero_addition_panics() {
        let _ = ExtDist::log_int(2).add(&ExtDist::dim(1));
    }

    #[test]
    fn ordering_within_units() {
        assert!(ExtDist::log_int(2).le(&ExtDist::log_int(3)));
        assert!(ExtDist::dim(1).le(&ExtDist::dim(1)));
        assert!(ExtDist::log_int(900).le(&ExtDist::Infinite));
    }

    #[test]
    fn times_is_repeated_addition() {
        assert_eq!(ExtDist::log_int(2).times(3), ExtDist::log_int(8));
        assert_eq!(ExtDist::dim(2).times(5), ExtDist::dim(10));
        assert_eq!(ExtDist::Infinite.times(2), ExtDist::Infinite);
        assert_eq!(ExtDist::Infinite.times(0), ExtDist::zero());
    }

    #[test]
    fn nats_rendering_handles_huge_logs() {
        let k = num_traits::Pow::pow(&BigUint::from(6u32), 512u32);
        let got = ExtDist::log_big(k).to_nats();
        let want = 512.0 * 6f64.ln();
        assert!((got - want).abs() < 1e-9 * want);
    }
}
