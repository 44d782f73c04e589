//! Closed intervals with exact rational endpoints.
//!
//! Irrational quantities (d-th roots of volumes, square roots of
//! discriminants) are enclosed by dyadic bounds of a requested precision.
//! Comparisons that need roots go through [`decide`], which doubles the
//! precision until the two sides separate or the cap is reached.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::rational::{exact_root, fmt_rational, parse_rational, to_f64, Rational};

/// Starting precision for root enclosures, in bits.
pub const DEFAULT_PRECISION_BITS: u32 = 128;
/// Hard cap for precision escalation unless overridden by the environment.
pub const DEFAULT_PRECISION_CAP: u32 = 2048;
/// Environment variable overriding the precision cap.
pub const PRECISION_CAP_ENV: &str = "LORENTZKIT_PRECISION_CAP";

pub fn precision_cap() -> u32 {
    std::env::var(PRECISION_CAP_ENV)
        .ok()
        .and_then(|v| v.parse::<u32>().ok())
        .filter(|&v| v >= 64)
        .unwrap_or(DEFAULT_PRECISION_CAP)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        debug_assert!(lo <= hi, "interval endpoints out of order");
        Interval { lo, hi }
    }

    pub fn exact(q: Rational) -> Self {
        Interval {
            lo: q.clone(),
            hi: q,
        }
    }

    pub fn zero() -> Self {
        Self::exact(Rational::zero())
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, q: &Rational) -> bool {
        &self.lo <= q && q <= &self.hi
    }

    pub fn midpoint_f64(&self) -> f64 {
        to_f64(&((&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2))))
    }

    pub fn add(&self, o: &Interval) -> Interval {
        Interval::new(&self.lo + &o.lo, &self.hi + &o.hi)
    }

    pub fn sub(&self, o: &Interval) -> Interval {
        Interval::new(&self.lo - &o.hi, &self.hi - &o.lo)
    }

    pub fn neg(&self) -> Interval {
        Interval::new(-&self.hi, -&self.lo)
    }

    pub fn add_q(&self, q: &Rational) -> Interval {
        Interval::new(&self.lo + q, &self.hi + q)
    }

    pub fn scale(&self, q: &Rational) -> Interval {
        if q.is_negative() {
            Interval::new(&self.hi * q, &self.lo * q)
        } else {
            Interval::new(&self.lo * q, &self.hi * q)
        }
    }

    pub fn mul(&self, o: &Interval) -> Interval {
        let c = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        Interval::new(lo, hi)
    }

    /// Division; `None` when the divisor interval contains zero.
    pub fn div(&self, o: &Interval) -> Option<Interval> {
        if o.contains(&Rational::zero()) {
            return None;
        }
        let inv = Interval::new(o.hi.recip(), o.lo.recip());
        Some(self.mul(&inv))
    }

    pub fn max(&self, o: &Interval) -> Interval {
        Interval::new(
            (&self.lo).max(&o.lo).clone(),
            (&self.hi).max(&o.hi).clone(),
        )
    }

    pub fn min(&self, o: &Interval) -> Interval {
        Interval::new(
            (&self.lo).min(&o.lo).clone(),
            (&self.hi).min(&o.hi).clone(),
        )
    }

    /// Encloses `x^(1/n)` for the nonnegative part of the interval.
    pub fn nth_root(&self, n: u32, bits: u32) -> Interval {
        let lo = root_bound(&self.lo, n, bits, false);
        let hi = root_bound(&self.hi, n, bits, true);
        Interval::new(lo, hi)
    }

    pub fn sqrt(&self, bits: u32) -> Interval {
        self.nth_root(2, bits)
    }

    pub fn powi(&self, k: u32) -> Interval {
        let mut acc = Interval::exact(Rational::one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Three-way comparison that only answers when the intervals separate
    /// (or both are the same exact point).
    pub fn compare(&self, o: &Interval) -> Option<Ordering> {
        if self.hi < o.lo {
            Some(Ordering::Less)
        } else if self.lo > o.hi {
            Some(Ordering::Greater)
        } else if self.is_exact() && o.is_exact() && self.lo == o.lo {
            Some(Ordering::Equal)
        } else {
            None
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_exact() {
            write!(f, "{:.6} (exact)", to_f64(&self.lo))
        } else {
            write!(f, "[{:.6}, {:.6}]", to_f64(&self.lo), to_f64(&self.hi))
        }
    }
}

impl Serialize for Interval {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [fmt_rational(&self.lo), fmt_rational(&self.hi)].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Interval {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [lo, hi] = <[String; 2]>::deserialize(d)?;
        let lo = parse_rational(&lo).map_err(serde::de::Error::custom)?;
        let hi = parse_rational(&hi).map_err(serde::de::Error::custom)?;
        if lo > hi {
            return Err(serde::de::Error::custom("interval endpoints out of order"));
        }
        Ok(Interval { lo, hi })
    }
}

/// Dyadic lower (or upper) bound of `q^(1/n)` with `bits` fractional bits.
/// Negative inputs are clamped to zero.
fn root_bound(q: &Rational, n: u32, bits: u32, upper: bool) -> Rational {
    if !q.is_positive() {
        return Rational::zero();
    }
    if let Some(r) = exact_root(q, n) {
        return r;
    }
    let scale = BigInt::one() << ((n as usize) * (bits as usize));
    let big = (q.numer() * &scale) / q.denom();
    let a = big.nth_root(n);
    let denom = BigInt::one() << (bits as usize);
    if upper {
        BigRational::new(a + BigInt::one(), denom)
    } else {
        BigRational::new(a, denom)
    }
}

/// Outcome of a certified comparison `lhs <= rhs`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Decision {
    Holds,
    Fails,
    Indeterminate,
}

/// Decides `lhs <= rhs` where both sides are recomputed at increasing
/// precision. Starts at `start_bits` and doubles up to [`precision_cap`].
pub fn decide<F>(start_bits: u32, mut eval: F) -> (Decision, Interval, Interval)
where
    F: FnMut(u32) -> (Interval, Interval),
{
    let cap = precision_cap();
    let mut bits = start_bits.max(16);
    loop {
        let (lhs, rhs) = eval(bits);
        if lhs.hi <= rhs.lo {
            return (Decision::Holds, lhs, rhs);
        }
        if lhs.lo > rhs.hi {
            return (Decision::Fails, lhs, rhs);
        }
        if bits >= cap {
            return (Decision::Indeterminate, lhs, rhs);
        }
        bits = (bits * 2).min(cap);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn sqrt_two_enclosure() {
        let s = Interval::exact(int(2)).sqrt(64);
        assert!(s.lo < s.hi);
        assert!(&s.lo * &s.lo < int(2));
        assert!(&s.hi * &s.hi > int(2));
        assert!(s.width() <= rat(1, 1 << 62));
    }

    #[test]
    fn exact_roots_stay_exact() {
        let r = Interval::exact(rat(27, 8)).nth_root(3, 128);
        assert!(r.is_exact());
        assert_eq!(r.lo, rat(3, 2));
    }

    #[test]
    fn division_by_straddling_interval_is_refused() {
        let a = Interval::exact(int(1));
        let b = Interval::new(int(-1), int(1));
        assert!(a.div(&b).is_none());
    }

    #[test]
    fn decide_escalates_until_separation() {
        // sqrt(2) <= 1.41422 holds, sqrt(2) <= 1.41421 fails
        let (d, _, _) = decide(16, |b| {
            (Interval::exact(int(2)).sqrt(b), Interval::exact(rat(141422, 100000)))
        });
        assert_eq!(d, Decision::Holds);
        let (d, _, _) = decide(16, |b| {
            (Interval::exact(int(2)).sqrt(b), Interval::exact(rat(141421, 100000)))
        });
        assert_eq!(d, Decision::Fails);
    }

    #[test]
    fn equal_irrational_sides_are_indeterminate() {
        let (d, _, _) = decide(64, |b| {
            let s = Interval::exact(int(2)).sqrt(b);
            (s.clone(), s)
        });
        assert_eq!(d, Decision::Indeterminate);
    }
}
