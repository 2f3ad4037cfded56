//! Scalar traits and valuation types shared by every module.
//!
//! Magnitudes are never stored as floats. A magnitude `p^{-e}` is carried as
//! its exponent `e`, so "smaller magnitude" means "larger exponent".

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Ring scalars usable as polynomial coefficients and ball centers.
pub trait Scalar:
    Clone
    + fmt::Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// Embed an integer.
    fn from_integer(n: &BigInt) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_integer(&BigInt::from(n))
    }
}

impl Scalar for BigInt {
    fn from_integer(n: &BigInt) -> Self {
        n.clone()
    }
}

impl Scalar for BigRational {
    fn from_integer(n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }
}

/// Scalars with a p-adic valuation.
pub trait PadicValued {
    /// Valuation at `p`. The caller guarantees that `p` is prime.
    fn padic_valuation(&self, p: u32) -> Valuation;
}

impl PadicValued for BigInt {
    fn padic_valuation(&self, p: u32) -> Valuation {
        if self.is_zero() {
            return Valuation::Infinite;
        }
        Valuation::Finite(count_factor(self, p) as i64)
    }
}

impl PadicValued for BigRational {
    fn padic_valuation(&self, p: u32) -> Valuation {
        if self.is_zero() {
            return Valuation::Infinite;
        }
        let num = count_factor(self.numer(), p) as i64;
        let den = count_factor(self.denom(), p) as i64;
        Valuation::Finite(num - den)
    }
}

impl PadicValued for i64 {
    fn padic_valuation(&self, p: u32) -> Valuation {
        BigInt::from(*self).padic_valuation(p)
    }
}

fn count_factor(z: &BigInt, p: u32) -> u64 {
    let p = BigInt::from(p);
    let mut z = z.abs();
    let mut v = 0;
    loop {
        let (q, r) = z.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        z = q;
        v += 1;
    }
}

/// A p-adic valuation.
///
/// `AtLeast(n)` is a value known only to vanish modulo `p^n`. It is kept
/// apart from the exact zero so that truncation artifacts never pass strict
/// inequality checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Valuation {
    Finite(i64),
    AtLeast(i64),
    Infinite,
}

impl Valuation {
    pub fn is_exact(&self) -> bool {
        !matches!(self, Valuation::AtLeast(_))
    }

    pub fn finite(&self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(*v),
            _ => None,
        }
    }

    /// Sound lower bound on the valuation, as a norm exponent.
    pub fn lower_bound(&self) -> NormExponent {
        match self {
            Valuation::Finite(v) | Valuation::AtLeast(v) => NormExponent::Finite(*v),
            Valuation::Infinite => NormExponent::Infinity,
        }
    }

    /// Decide `self >= n`, or `None` when a truncated value cannot settle it.
    pub fn at_least(&self, n: i64) -> Option<bool> {
        match self {
            Valuation::Finite(v) => Some(*v >= n),
            Valuation::Infinite => Some(true),
            Valuation::AtLeast(v) if *v >= n => Some(true),
            Valuation::AtLeast(_) => None,
        }
    }

    /// Offset by an integer, keeping the kind.
    pub fn shift(&self, k: i64) -> Valuation {
        match self {
            Valuation::Finite(v) => Valuation::Finite(v + k),
            Valuation::AtLeast(v) => Valuation::AtLeast(v + k),
            Valuation::Infinite => Valuation::Infinite,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::AtLeast(v) => write!(f, ">={v}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

/// Exponent `e` of a magnitude `p^{-e}`. `Infinity` is the magnitude of zero.
///
/// The derived order compares exponents, which is the reverse of comparing
/// magnitudes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NormExponent {
    Finite(i64),
    Infinity,
}

impl NormExponent {
    pub fn finite(&self) -> Option<i64> {
        match self {
            NormExponent::Finite(e) => Some(*e),
            NormExponent::Infinity => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, NormExponent::Infinity)
    }
}

impl Add for NormExponent {
    type Output = NormExponent;

    fn add(self, rhs: NormExponent) -> NormExponent {
        match (self, rhs) {
            (NormExponent::Finite(a), NormExponent::Finite(b)) => NormExponent::Finite(a + b),
            _ => NormExponent::Infinity,
        }
    }
}

impl Add<i64> for NormExponent {
    type Output = NormExponent;

    fn add(self, rhs: i64) -> NormExponent {
        self + NormExponent::Finite(rhs)
    }
}

impl fmt::Display for NormExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormExponent::Finite(e) => write!(f, "{e}"),
            NormExponent::Infinity => write!(f, "inf"),
        }
    }
}

/// Trial-division primality test for the small primes used here.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_valuations_can_be_negative() {
        let r = BigRational::new(BigInt::from(3), BigInt::from(8));
        assert_eq!(r.padic_valuation(2), Valuation::Finite(-3));
        assert_eq!(r.padic_valuation(3), Valuation::Finite(1));
    }

    #[test]
    fn norm_exponent_order_and_sum() {
        assert!(NormExponent::Finite(3) < NormExponent::Infinity);
        assert!(NormExponent::Finite(-1) < NormExponent::Finite(0));
        assert_eq!(NormExponent::Finite(2) + 3, NormExponent::Finite(5));
        assert_eq!(NormExponent::Infinity + 3, NormExponent::Infinity);
    }

    #[test]
    fn truncated_zero_does_not_settle_deep_comparisons() {
        assert_eq!(Valuation::AtLeast(3).at_least(2), Some(true));
        assert_eq!(Valuation::AtLeast(3).at_least(4), None);
        assert_eq!(Valuation::Infinite.at_least(100), Some(true));
    }

    #[test]
    fn small_primes() {
        let primes: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }
}
