//! Nonnegative extended rationals `[0, ∞]`, exact.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A value in `[0, ∞]`. The derived order is the numeric one, with
/// `Infinity` above every finite value.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Extended {
    Finite(BigRational),
    Infinity,
}

impl Extended {
    pub fn zero() -> Self {
        Extended::Finite(BigRational::zero())
    }

    pub fn one() -> Self {
        Extended::Finite(BigRational::one())
    }

    pub fn int(n: u64) -> Self {
        Extended::Finite(BigRational::from_integer(BigInt::from(n)))
    }

    /// `num / den`. Panics on a zero denominator; use [`Extended::new`] for
    /// untrusted values.
    pub fn ratio(num: u64, den: u64) -> Self {
        assert!(den != 0, "zero denominator");
        Extended::Finite(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn new(r: BigRational) -> Result<Self> {
        if r.is_negative() {
            return Err(Error::Invalid(format!("negative value {}", r)));
        }
        Ok(Extended::Finite(r))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Extended::Finite(r) if r.is_zero())
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Extended::Infinity)
    }

    pub fn as_finite(&self) -> Option<&BigRational> {
        match self {
            Extended::Finite(r) => Some(r),
            Extended::Infinity => None,
        }
    }

    /// `a + b`, with `∞` absorbing.
    pub fn add(&self, other: &Self) -> Self {
        match (self, other) {
            (Extended::Finite(a), Extended::Finite(b)) => Extended::Finite(a + b),
            _ => Extended::Infinity,
        }
    }

    /// `a · b` with `α · ∞ = ∞` for every `α`, zero included.
    pub fn mul(&self, other: &Self) -> Self {
        match (self, other) {
            (Extended::Finite(a), Extended::Finite(b)) => Extended::Finite(a * b),
            _ => Extended::Infinity,
        }
    }

    /// Truncated difference `max(v - u, 0)`: the least `w` with `w + u >= v`.
    pub fn monus(v: &Self, u: &Self) -> Self {
        match (v, u) {
            (_, Extended::Infinity) => Extended::zero(),
            (Extended::Infinity, Extended::Finite(_)) => Extended::Infinity,
            (Extended::Finite(v), Extended::Finite(u)) => {
                if v > u {
                    Extended::Finite(v - u)
                } else {
                    Extended::zero()
                }
            }
        }
    }

    /// `v / u` with `0/0 = 0`, `α/0 = ∞` for `α > 0`, `α/∞ = 0`: the least
    /// `w` with `w · u >= v`.
    pub fn quotient(v: &Self, u: &Self) -> Self {
        match (v, u) {
            (_, Extended::Infinity) => Extended::zero(),
            (v, u) if u.is_zero() => {
                if v.is_zero() {
                    Extended::zero()
                } else {
                    Extended::Infinity
                }
            }
            (Extended::Infinity, _) => Extended::Infinity,
            (Extended::Finite(v), Extended::Finite(u)) => Extended::Finite(v / u),
        }
    }

    pub fn min<'a>(&'a self, other: &'a Self) -> &'a Self {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max<'a>(&'a self, other: &'a Self) -> &'a Self {
        if self >= other {
            self
        } else {
            other
        }
    }

    pub fn cmp_numeric(&self, other: &Self) -> Ordering {
        self.cmp(other)
    }
}

impl fmt::Display for Extended {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extended::Infinity => write!(f, "inf"),
            Extended::Finite(r) => write!(f, "{}", r),
        }
    }
}

impl FromStr for Extended {
    type Err = Error;

    /// Accepts `inf`, `∞`, integers, `p/q` and finite decimals.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let bad = || Error::Invalid(format!("not a value in [0, inf]: {:?}", s));
        if matches!(t, "inf" | "infinity" | "∞" | "Infinity") {
            return Ok(Extended::Infinity);
        }
        if let Some((n, d)) = t.split_once('/') {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            return Extended::new(BigRational::new(n, d)).map_err(|_| bad());
        }
        if let Some((i, frac)) = t.split_once('.') {
            if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let digits = format!("{}{}", i, frac);
            let n: BigInt = digits.parse().map_err(|_| bad())?;
            let d = num_traits::pow(BigInt::from(10), frac.len());
            return Extended::new(BigRational::new(n, d)).map_err(|_| bad());
        }
        let n: BigInt = t.parse().map_err(|_| bad())?;
        Extended::new(BigRational::from_integer(n)).map_err(|_| bad())
    }
}
