//! Closed balls `B(c, p^{-n}) = c + p^n O`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::padic::{check_prime, pow_p, reduce};
use crate::scalar::{PadicValued, Scalar, Valuation};

/// Relative position of two balls. In an ultrametric space two balls are
/// either disjoint or nested.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Nesting {
    Disjoint,
    FirstInsideSecond,
    SecondInsideFirst,
    Equal,
}

/// The ball of radius `p^{-radius_exp}` around `center`.
///
/// Equality is equality of sets: two balls compare equal when they share `p`
/// and the radius and their centers are congruent modulo `p^n`.
#[derive(Debug, Clone)]
pub struct Ball<C = BigInt> {
    center: C,
    radius_exp: u32,
    p: u32,
}

impl<C> Ball<C> {
    pub fn new(center: C, radius_exp: u32, p: u32) -> Result<Self> {
        check_prime(p)?;
        Ok(Ball {
            center,
            radius_exp,
            p,
        })
    }

    pub fn center(&self) -> &C {
        &self.center
    }

    pub fn radius_exp(&self) -> u32 {
        self.radius_exp
    }

    pub fn p(&self) -> u32 {
        self.p
    }
}

impl<C: Scalar + PadicValued> Ball<C> {
    /// Whether `z` lies in the ball. Fails if `z - center` is a truncated
    /// zero too coarse to decide.
    pub fn contains(&self, z: &C) -> Result<bool> {
        let d = (z.clone() - self.center.clone()).padic_valuation(self.p);
        decide(d, self.radius_exp as i64)
    }

    pub fn nesting(&self, other: &Ball<C>) -> Result<Nesting> {
        if self.p != other.p {
            return Err(Error::PrimeMismatch {
                left: self.p,
                right: other.p,
            });
        }
        let d = (self.center.clone() - other.center.clone()).padic_valuation(self.p);
        let (n1, n2) = (self.radius_exp, other.radius_exp);
        if !decide(d, n1.min(n2) as i64)? {
            return Ok(Nesting::Disjoint);
        }
        Ok(match n1.cmp(&n2) {
            std::cmp::Ordering::Equal => Nesting::Equal,
            std::cmp::Ordering::Less => Nesting::SecondInsideFirst,
            std::cmp::Ordering::Greater => Nesting::FirstInsideSecond,
        })
    }

    /// Whether `other` is a subset of `self`.
    pub fn contains_ball(&self, other: &Ball<C>) -> Result<bool> {
        Ok(matches!(
            self.nesting(other)?,
            Nesting::Equal | Nesting::SecondInsideFirst
        ))
    }
}

fn decide(d: Valuation, n: i64) -> Result<bool> {
    d.at_least(n).ok_or(Error::Precision {
        requested: n.max(0) as u32,
        available: match d {
            Valuation::AtLeast(k) => k.max(0) as u32,
            _ => 0,
        },
    })
}

impl<C: Scalar + PadicValued> PartialEq for Ball<C> {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p
            && self.radius_exp == other.radius_exp
            && self.contains(&other.center).unwrap_or(false)
    }
}

impl<C: fmt::Display> fmt::Display for Ball<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B({}, {}^-{})", self.center, self.p, self.radius_exp)
    }
}

impl Ball<BigInt> {
    /// Center reduced into `[0, p^n)`.
    pub fn canonical_center(&self) -> BigInt {
        reduce(&self.center, &pow_p(self.p, self.radius_exp))
    }

    /// All residues modulo `p^depth` that lie in the ball, in increasing order.
    pub fn residues(&self, depth: u32) -> Result<Vec<BigInt>> {
        if depth < self.radius_exp {
            return Err(Error::Precision {
                requested: self.radius_exp,
                available: depth,
            });
        }
        let step = pow_p(self.p, self.radius_exp);
        let count = pow_p(self.p, depth - self.radius_exp)
            .to_u64()
            .ok_or(Error::SizeLimit {
                required: u128::MAX,
                limit: u64::MAX as u128,
            })?;
        let c0 = self.canonical_center();
        Ok((0..count).map(|k| &c0 + &step * k).collect())
    }
}

/// `c` and `c2` define the same ball of radius `p^{-n}`.
pub fn ball_equal(c: &BigInt, c2: &BigInt, n: u32, p: u32) -> bool {
    let d = c - c2;
    d.is_zero() || d.padic_valuation(p).at_least(n as i64) == Some(true)
}

/// Image of `b` under `z -> beta + u (z - alpha)`; its radius exponent grows
/// by `v(u)`.
pub fn affine_image<C: Scalar + PadicValued>(
    u: &C,
    alpha: &C,
    beta: &C,
    b: &Ball<C>,
) -> Result<Ball<C>> {
    if u.is_zero() {
        return Err(Error::DegenerateAffine);
    }
    let vu = match u.padic_valuation(b.p) {
        Valuation::Finite(v) => v,
        other => {
            return Err(Error::NonUnit { valuation: other });
        }
    };
    let n = b.radius_exp as i64 + vu;
    if n < 0 || n > u32::MAX as i64 {
        return Err(Error::RadiusOutOfRange(n));
    }
    let center = beta.clone() + u.clone() * (b.center.clone() - alpha.clone());
    Ok(Ball {
        center,
        radius_exp: n as u32,
        p: b.p,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ball(c: i64, n: u32, p: u32) -> Ball {
        Ball::new(BigInt::from(c), n, p).unwrap()
    }

    #[test]
    fn nesting_examples() {
        assert_eq!(
            ball(0, 1, 2).nesting(&ball(0, 2, 2)).unwrap(),
            Nesting::SecondInsideFirst
        );
        assert_eq!(ball(0, 1, 2).nesting(&ball(1, 1, 2)).unwrap(), Nesting::Disjoint);
        assert_eq!(ball(1, 1, 3).nesting(&ball(4, 1, 3)).unwrap(), Nesting::Equal);
        assert_eq!(
            ball(2, 3, 2).nesting(&ball(0, 1, 2)).unwrap(),
            Nesting::FirstInsideSecond
        );
    }

    #[test]
    fn set_equality() {
        assert_eq!(ball(3, 3, 2), ball(11, 3, 2));
        assert_ne!(ball(3, 3, 2), ball(7, 3, 2));
        assert_ne!(ball(3, 3, 2), ball(3, 2, 2));
        assert!(ball_equal(&BigInt::from(3), &BigInt::from(11), 3, 2));
        assert!(!ball_equal(&BigInt::from(3), &BigInt::from(7), 3, 2));
        assert!(ball_equal(&BigInt::from(0), &BigInt::from(0), 40, 5));
    }

    #[test]
    fn affine_examples() {
        let one = BigInt::from(1);
        let zero = BigInt::from(0);
        let img = affine_image(&one, &zero, &one, &ball(0, 2, 2)).unwrap();
        assert_eq!(img, ball(1, 2, 2));
        let two = BigInt::from(2);
        let img = affine_image(&two, &zero, &zero, &ball(0, 1, 3)).unwrap();
        assert_eq!(img, ball(0, 1, 3));
        let img = affine_image(&two, &zero, &zero, &ball(1, 1, 2)).unwrap();
        assert_eq!(img, ball(2, 2, 2));
        assert_eq!(
            affine_image(&zero, &zero, &zero, &ball(1, 1, 2)),
            Err(Error::DegenerateAffine)
        );
    }

    #[test]
    fn residues_at_finer_depth() {
        let r: Vec<i64> = ball(5, 1, 3)
            .residues(2)
            .unwrap()
            .iter()
            .map(|z| z.to_i64().unwrap())
            .collect();
        assert_eq!(r, vec![2, 5, 8]);
        assert!(ball(0, 3, 2).residues(2).is_err());
    }

    #[test]
    fn rational_centers() {
        use num_rational::BigRational;
        let half = BigRational::new(1.into(), 2.into());
        let b = Ball::new(half.clone(), 1, 3).unwrap();
        let other = Ball::new(half + BigRational::from_integer(3.into()), 1, 3).unwrap();
        assert_eq!(b.nesting(&other).unwrap(), Nesting::Equal);
    }
}
