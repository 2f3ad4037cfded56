//! Lifting an exact cycle of `P mod p` to a periodic point of `P` in `Z_p`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::error::{Error, Result};
use crate::padic::{check_prime, pow_p, PadicInt};
use crate::IntPolynomial;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HenselLiftResult {
    /// `point` has precision `targetN`; `trace[n - 1]` is the lift mod `p^n`.
    Lifted {
        point: PadicInt,
        period: u64,
        trace: Vec<PadicInt>,
    },
    /// The cycle multiplier is `1 mod p`; `multiplier` is its residue.
    Degenerate { multiplier: u64 },
    /// `P^d(xbar) = xbar mod p` for this proper divisor `d` of the period.
    NotExactPeriod(u64),
    /// `P^m(xbar) != xbar mod p`.
    NotPeriodic,
}

fn iterate_mod(poly: &IntPolynomial, x: &BigInt, k: u64, m: &BigInt) -> BigInt {
    (0..k).fold(x.mod_floor(m), |y, _| poly.eval_mod(&y, m))
}

/// `(P^k)'(x) mod modulus` by the chain rule along the orbit of `x`.
pub fn orbit_multiplier(poly: &IntPolynomial, x: &BigInt, k: u64, modulus: &BigInt) -> BigInt {
    let dp = poly.derivative();
    let mut y = x.mod_floor(modulus);
    let mut mu = BigInt::one().mod_floor(modulus);
    for _ in 0..k {
        mu = (mu * dp.eval_mod(&y, modulus)).mod_floor(modulus);
        y = poly.eval_mod(&y, modulus);
    }
    mu
}

/// One Newton step per level on `F(z) = P^m(z) - z`, starting from a
/// residue `xbar` of exact period `m` with multiplier not `1 mod p`.
pub fn hensel_lift_cycle(
    poly: &IntPolynomial,
    p: u32,
    xbar: u64,
    m: u64,
    target_n: u32,
) -> Result<HenselLiftResult> {
    check_prime(p)?;
    if m == 0 {
        return Err(Error::MalformedSystem("period must be positive".into()));
    }
    if target_n == 0 {
        return Err(Error::Precision {
            requested: 0,
            available: 0,
        });
    }
    let pb = BigInt::from(p);
    let x0 = BigInt::from(xbar).mod_floor(&pb);
    if iterate_mod(poly, &x0, m, &pb) != x0 {
        return Ok(HenselLiftResult::NotPeriodic);
    }
    if let Some(d) = (1..m).find(|d| m % d == 0 && iterate_mod(poly, &x0, *d, &pb) == x0) {
        return Ok(HenselLiftResult::NotExactPeriod(d));
    }
    let mu = orbit_multiplier(poly, &x0, m, &pb);
    if mu.is_one() {
        return Ok(HenselLiftResult::Degenerate { multiplier: 1 });
    }

    let mut x = x0;
    let mut trace = vec![PadicInt::new(p, 1, x.clone())?];
    for n in 1..target_n {
        let q = pow_p(p, n + 1);
        let f = (iterate_mod(poly, &x, m, &q) - &x).mod_floor(&q);
        let df = PadicInt::new(p, n + 1, orbit_multiplier(poly, &x, m, &q) - 1)?;
        let inv = df.inverse()?;
        x = (&x - f * inv.value()).mod_floor(&q);
        trace.push(PadicInt::new(p, n + 1, x.clone())?);
    }
    let q = pow_p(p, target_n);
    if iterate_mod(poly, &x, m, &q) != x {
        return Err(Error::Internal("Newton iterate is not periodic".into()));
    }
    Ok(HenselLiftResult::Lifted {
        point: PadicInt::new(p, target_n, x)?,
        period: m,
        trace,
    })
}
