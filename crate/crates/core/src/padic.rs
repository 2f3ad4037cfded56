//! Truncated p-adic integers `Z / p^N`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{is_prime, PadicValued, Valuation};

/// Reject composite or tiny moduli.
pub fn check_prime(p: u32) -> Result<()> {
    if is_prime(p as u64) {
        Ok(())
    } else {
        Err(Error::NotPrime(p as u64))
    }
}

/// Exact valuation of an integer, `Infinite` for zero.
pub fn valuation(z: &BigInt, p: u32) -> Result<Valuation> {
    check_prime(p)?;
    Ok(z.padic_valuation(p))
}

pub fn pow_p(p: u32, n: u32) -> BigInt {
    num_traits::pow(BigInt::from(p), n as usize)
}

/// Canonical representative of `z` in `[0, m)`.
pub fn reduce(z: &BigInt, m: &BigInt) -> BigInt {
    z.mod_floor(m)
}

/// A residue modulo `p^precision`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PadicInt {
    p: u32,
    precision: u32,
    value: BigInt,
}

impl PadicInt {
    pub fn new(p: u32, precision: u32, value: impl Into<BigInt>) -> Result<Self> {
        check_prime(p)?;
        if precision == 0 {
            return Err(Error::Precision {
                requested: 0,
                available: 0,
            });
        }
        let value = reduce(&value.into(), &pow_p(p, precision));
        Ok(PadicInt {
            p,
            precision,
            value,
        })
    }

    fn raw(p: u32, precision: u32, value: BigInt) -> Self {
        let value = reduce(&value, &pow_p(p, precision));
        PadicInt {
            p,
            precision,
            value,
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn value(&self) -> &BigInt {
        &self.value
    }

    pub fn modulus(&self) -> BigInt {
        pow_p(self.p, self.precision)
    }

    /// Zero at working precision has valuation `AtLeast(N)`.
    pub fn valuation(&self) -> Valuation {
        if self.value.is_zero() {
            Valuation::AtLeast(self.precision as i64)
        } else {
            self.value.padic_valuation(self.p)
        }
    }

    pub fn is_unit(&self) -> bool {
        self.valuation() == Valuation::Finite(0)
    }

    fn common(&self, other: &PadicInt) -> Result<u32> {
        if self.p != other.p {
            return Err(Error::PrimeMismatch {
                left: self.p,
                right: other.p,
            });
        }
        Ok(self.precision.min(other.precision))
    }

    pub fn checked_add(&self, other: &PadicInt) -> Result<PadicInt> {
        let n = self.common(other)?;
        Ok(PadicInt::raw(self.p, n, &self.value + &other.value))
    }

    pub fn checked_sub(&self, other: &PadicInt) -> Result<PadicInt> {
        let n = self.common(other)?;
        Ok(PadicInt::raw(self.p, n, &self.value - &other.value))
    }

    pub fn checked_mul(&self, other: &PadicInt) -> Result<PadicInt> {
        let n = self.common(other)?;
        Ok(PadicInt::raw(self.p, n, &self.value * &other.value))
    }

    pub fn neg(&self) -> PadicInt {
        PadicInt::raw(self.p, self.precision, -&self.value)
    }

    pub fn pow(&self, e: u64) -> PadicInt {
        let v = self
            .value
            .modpow(&BigInt::from(e), &self.modulus());
        PadicInt::raw(self.p, self.precision, v)
    }

    /// Inverse of a unit; `NonUnit` carries the valuation otherwise.
    pub fn inverse(&self) -> Result<PadicInt> {
        let m = self.modulus();
        let g = self.value.extended_gcd(&m);
        if !g.gcd.is_one() {
            return Err(Error::NonUnit {
                valuation: self.valuation(),
            });
        }
        Ok(PadicInt::raw(self.p, self.precision, g.x))
    }

    /// Reduction to a coarser precision.
    pub fn truncate(&self, m: u32) -> Result<PadicInt> {
        if m == 0 || m > self.precision {
            return Err(Error::Precision {
                requested: m,
                available: self.precision,
            });
        }
        Ok(PadicInt::raw(self.p, m, self.value.clone()))
    }
}

impl fmt::Display for PadicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {}^{})", self.value, self.p, self.precision)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pi(p: u32, n: u32, v: i64) -> PadicInt {
        PadicInt::new(p, n, v).unwrap()
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(valuation(&BigInt::from(12), 2).unwrap(), Valuation::Finite(2));
        assert_eq!(valuation(&BigInt::from(0), 5).unwrap(), Valuation::Infinite);
        assert_eq!(valuation(&BigInt::from(-1), 2).unwrap(), Valuation::Finite(0));
        assert_eq!(valuation(&BigInt::from(5), 4), Err(Error::NotPrime(4)));
    }

    #[test]
    fn ring_examples() {
        assert_eq!(pi(2, 3, 3).checked_add(&pi(2, 3, 6)).unwrap(), pi(2, 3, 1));
        assert_eq!(pi(3, 2, 2).inverse().unwrap(), pi(3, 2, 5));
        assert_eq!(
            pi(5, 2, 5).inverse(),
            Err(Error::NonUnit {
                valuation: Valuation::Finite(1)
            })
        );
    }

    #[test]
    fn mixed_precision_drops_to_minimum() {
        let s = pi(2, 5, 17).checked_mul(&pi(2, 2, 3)).unwrap();
        assert_eq!(s.precision(), 2);
        assert_eq!(s.value(), &BigInt::from(3));
    }

    #[test]
    fn truncated_zero_is_not_exact() {
        assert_eq!(pi(3, 2, 9).valuation(), Valuation::AtLeast(2));
        assert_eq!(pi(3, 2, 0).inverse().unwrap_err(), Error::NonUnit {
            valuation: Valuation::AtLeast(2)
        });
    }

    #[test]
    fn prime_mismatch_rejected() {
        assert!(pi(2, 3, 1).checked_add(&pi(3, 3, 1)).is_err());
    }

    #[test]
    fn canonical_negative_inputs() {
        assert_eq!(pi(2, 3, -1).value(), &BigInt::from(7));
        assert_eq!(pi(2, 3, 5).neg().value(), &BigInt::from(3));
    }
}
