//! Point sequences in finite V-categories and the Lipschitz norms of maps.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use super::CauchyVerdict;
use crate::error::{Error, Result};
use crate::quantale::{Extended, LawvereQuantale, Quantale};
use crate::vcat::VCategory;

/// `⋀_{x, x'} [X(x, x'), Y(fx, fx')]`.
pub fn dset_norm<Q: Quantale>(q: &Q, x: &VCategory<Q::Elem>, y: &VCategory<Q::Elem>, f: &[usize]) -> Q::Elem {
    let n = x.len();
    q.meet((0..n).flat_map(|a| (0..n).map(move |b| (a, b))).map(|(a, b)| q.hom(x.d(a, b), y.d(f[a], f[b]))))
}

/// `sup Y(fx, fx') / X(x, x')` with `0/0 = 0`, `α/0 = ∞`, `α/∞ = 0`.
pub fn lipschitz_multiplicative(x: &VCategory<Extended>, y: &VCategory<Extended>, f: &[usize]) -> Extended {
    dset_norm(&LawvereQuantale::multiplicative(), x, y, f)
}

/// `max(0, log_b r)` as an exact value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LogNorm {
    Exact(BigRational),
    Infinite,
    /// `log_base(arg)`, irrational, `arg > 1`.
    Log { base: u64, arg: BigRational },
}

impl LogNorm {
    pub fn is_zero(&self) -> bool {
        matches!(self, LogNorm::Exact(r) if r.is_zero())
    }
}

impl fmt::Display for LogNorm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LogNorm::Exact(r) => write!(f, "{}", r),
            LogNorm::Infinite => write!(f, "inf"),
            LogNorm::Log { base, arg } => write!(f, "log_{}({})", base, arg),
        }
    }
}

impl Serialize for LogNorm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// `b = c^k` with `k` maximal.
fn primitive_root(b: u64) -> (u64, u32) {
    for k in (2..64u32).rev() {
        let c = b.nth_root(k);
        if c >= 2 && c.checked_pow(k) == Some(b) {
            return (c, k);
        }
    }
    (b, 1)
}

/// `max(0, log_b r)`: exact when `r` is a rational power of `b`, which
/// forces `r = c^j` for the primitive root `c` of `b`.
pub fn log_of(r: &Extended, base: u64) -> Result<LogNorm> {
    if base < 2 {
        return Err(Error::Invalid(format!("log base must be at least 2, got {}", base)));
    }
    let r = match r {
        Extended::Infinity => return Ok(LogNorm::Infinite),
        Extended::Finite(r) => r,
    };
    if *r <= BigRational::one() {
        return Ok(LogNorm::Exact(BigRational::zero()));
    }
    let symbolic = LogNorm::Log { base, arg: r.clone() };
    if !r.is_integer() {
        return Ok(symbolic);
    }
    let (c, k) = primitive_root(base);
    let c = BigInt::from(c);
    let mut rest = r.to_integer();
    let mut j: u64 = 0;
    while (&rest % &c).is_zero() {
        rest /= &c;
        j += 1;
    }
    if rest.is_one() {
        Ok(LogNorm::Exact(BigRational::new(BigInt::from(j), BigInt::from(k))))
    } else {
        Ok(symbolic)
    }
}

pub fn log_lipschitz(x: &VCategory<Extended>, y: &VCategory<Extended>, f: &[usize], base: u64) -> Result<LogNorm> {
    log_of(&lipschitz_multiplicative(x, y, f), base)
}

/// Points `prefix` followed by `tail` repeated forever.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricSequence<E> {
    pub space: VCategory<E>,
    pub prefix: Vec<usize>,
    pub tail: Vec<usize>,
}

impl<E> MetricSequence<E> {
    pub fn check(&self) -> Result<()> {
        if self.tail.is_empty() {
            return Err(Error::Shape("tail of a point sequence needs at least one point".into()));
        }
        let n = self.space.len();
        if let Some(p) = self.prefix.iter().chain(&self.tail).find(|&&p| p >= n) {
            return Err(Error::Shape(format!("point {} outside a space of {} points", p, n)));
        }
        Ok(())
    }

    pub fn point(&self, n: usize) -> usize {
        self.prefix.get(n).copied().unwrap_or_else(|| self.tail[(n - self.prefix.len()) % self.tail.len()])
    }
}

/// `⋁_N ⋀_{N <= m <= n} X(x_m, x_n)` against `k`.
pub fn forward_cauchy_metric<Q: Quantale>(q: &Q, ms: &MetricSequence<Q::Elem>) -> Result<CauchyVerdict<Q::Elem>> {
    ms.check()?;
    let x = &ms.space;
    let (n0, p) = (ms.prefix.len(), ms.tail.len());
    let mut suffix = q.meet(ms.tail.iter().flat_map(|&a| ms.tail.iter().map(move |&b| x.d(a, b).clone())));
    let mut value = suffix.clone();
    for m in (0..n0).rev() {
        let row = q.meet((m..n0 + p).map(|n| x.d(ms.point(m), ms.point(n)).clone()));
        suffix = q.meet2(&suffix, &row);
        value = q.join2(&value, &suffix);
    }
    Ok(CauchyVerdict { cauchy: q.above_unit(&value), value })
}

/// `X(c, y) = ⋁_N ⋀_{n >= N} X(x_n, y)` for every `y`; the right side is
/// the meet over the tail points.
pub fn forward_limit_metric<Q: Quantale>(q: &Q, ms: &MetricSequence<Q::Elem>, c: usize) -> Result<bool> {
    ms.check()?;
    let x = &ms.space;
    if c >= x.len() {
        return Err(Error::Shape(format!("candidate {} outside a space of {} points", c, x.len())));
    }
    Ok((0..x.len()).all(|y| *x.d(c, y) == q.meet(ms.tail.iter().map(|&t| x.d(t, y).clone()))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantale::FiniteQuantale;

    fn space(d: &[&[u64]]) -> VCategory<Extended> {
        VCategory::from_matrix(d.iter().map(|r| r.iter().map(|&v| Extended::int(v)).collect()).collect())
    }

    #[test]
    fn identity_is_nonexpansive() {
        let x = space(&[&[0, 3], &[3, 0]]);
        assert_eq!(lipschitz_multiplicative(&x, &x, &[0, 1]), Extended::one());
        assert!(log_lipschitz(&x, &x, &[0, 1], 2).unwrap().is_zero());
    }

    #[test]
    fn doubling_has_log_one() {
        let x = space(&[&[0, 1], &[1, 0]]);
        let y = space(&[&[0, 2], &[2, 0]]);
        assert_eq!(lipschitz_multiplicative(&x, &y, &[0, 1]), Extended::int(2));
        assert_eq!(log_lipschitz(&x, &y, &[0, 1], 2).unwrap(), LogNorm::Exact(BigRational::one()));
    }

    #[test]
    fn collapsing_contributes_zero() {
        let x = space(&[&[0, 3, 1], &[3, 0, 2], &[1, 2, 0]]);
        let y = space(&[&[0, 2], &[2, 0]]);
        // pairs (0,1) collapse: 0/3; pairs with 2 give 2/1 and 2/2.
        assert_eq!(lipschitz_multiplicative(&x, &y, &[0, 0, 1]), Extended::int(2));
    }

    #[test]
    fn log_values() {
        let r = |n: u64| Extended::int(n);
        assert_eq!(log_of(&r(8), 4).unwrap(), LogNorm::Exact(BigRational::new(3.into(), 2.into())));
        assert_eq!(log_of(&r(9), 27).unwrap(), LogNorm::Exact(BigRational::new(2.into(), 3.into())));
        assert_eq!(log_of(&r(3), 2).unwrap().to_string(), "log_2(3)");
        assert_eq!(log_of(&Extended::ratio(3, 2), 2).unwrap().to_string(), "log_2(3/2)");
        assert_eq!(log_of(&Extended::Infinity, 2).unwrap(), LogNorm::Infinite);
        assert!(log_of(&Extended::ratio(1, 2), 2).unwrap().is_zero());
        assert!(log_of(&r(2), 1).is_err());
        assert_eq!(primitive_root(64), (2, 6));
        assert_eq!(primitive_root(12), (12, 1));
    }

    #[test]
    fn forward_limit_in_a_chain() {
        let q = FiniteQuantale::builtin("bool2").unwrap();
        let chain = VCategory::from_matrix((0..3).map(|a| (0..3).map(|b| usize::from(a <= b)).collect()).collect());
        let ms = MetricSequence { space: chain, prefix: vec![0, 1], tail: vec![2] };
        assert!(forward_cauchy_metric(&q, &ms).unwrap().cauchy);
        let limits: Vec<usize> = (0..3).filter(|&c| forward_limit_metric(&q, &ms, c).unwrap()).collect();
        assert_eq!(limits, vec![2]);
    }

    #[test]
    fn alternating_points_are_not_cauchy() {
        let q = LawvereQuantale::additive();
        let ms = MetricSequence { space: space(&[&[0, 1], &[1, 0]]), prefix: vec![], tail: vec![0, 1] };
        let v = forward_cauchy_metric(&q, &ms).unwrap();
        assert!(!v.cauchy);
        assert_eq!(v.value, Extended::one());
    }

    #[test]
    fn eventually_constant_converges() {
        let q = LawvereQuantale::additive();
        let ms = MetricSequence { space: space(&[&[0, 1], &[1, 0]]), prefix: vec![0, 1, 0], tail: vec![1] };
        assert!(forward_cauchy_metric(&q, &ms).unwrap().cauchy);
        assert!(forward_limit_metric(&q, &ms, 1).unwrap());
        assert!(!forward_limit_metric(&q, &ms, 0).unwrap());
    }
}
