//! Teichmüller digits, Witt coordinates and Witt cylinders.

use std::sync::Arc;

use num_bigint::BigInt;

use super::{OkElement, UnramifiedContext};
use crate::ball::Ball;
use crate::error::{Error, Result};
use crate::padic::pow_p;
use crate::scalar::Scalar;
use crate::DEFAULT_SIZE_LIMIT;

impl OkElement {
    /// Residues `t_0, ..., t_{n-1}` (depth 1) with `self = sum [t_i] p^i`
    /// modulo `p^n`.
    pub fn teichmuller_digits(&self, n: u32) -> Result<Vec<OkElement>> {
        let mut rest = self.truncate(n)?;
        let mut digits = Vec::with_capacity(n as usize);
        for i in 0..n {
            let t = rest.truncate(1)?;
            if i + 1 < n {
                let prec = rest.precision().expect("has context");
                rest = (rest - t.teichmuller(prec)?).div_p()?;
            }
            digits.push(t);
        }
        Ok(digits)
    }

    pub fn from_teichmuller_digits(
        ctx: &Arc<UnramifiedContext>,
        digits: &[OkElement],
        precision: u32,
    ) -> Result<OkElement> {
        let mut acc = OkElement::from_integer_in(ctx, &BigInt::from(0), precision);
        for (i, t) in digits.iter().enumerate().take(precision as usize) {
            let lift = t.teichmuller(precision)?;
            acc = acc + lift * OkElement::from_integer(&pow_p(ctx.p, i as u32));
        }
        Ok(acc)
    }

    /// Witt coordinates `a_i = t_i^{p^i}` of `self mod p^n`.
    pub fn witt_coordinates(&self, n: u32) -> Result<Vec<OkElement>> {
        let p = BigInt::from(self.context().ok_or(Error::ContextMismatch)?.p);
        let mut out = Vec::with_capacity(n as usize);
        for (i, t) in self.teichmuller_digits(n)?.into_iter().enumerate() {
            out.push(t.pow(&num_traits::pow(p.clone(), i)));
        }
        Ok(out)
    }

    pub fn from_witt_coordinates(
        ctx: &Arc<UnramifiedContext>,
        coords: &[OkElement],
        precision: u32,
    ) -> Result<OkElement> {
        let digits: Vec<OkElement> = coords
            .iter()
            .enumerate()
            .map(|(i, a)| {
                (0..i).fold(a.clone(), |x, _| residue_root_p(ctx, &x))
            })
            .collect();
        OkElement::from_teichmuller_digits(ctx, &digits, precision)
    }
}

/// Inverse of the p-power map on the residue field.
fn residue_root_p(ctx: &UnramifiedContext, x: &OkElement) -> OkElement {
    x.pow(&pow_p(ctx.p, ctx.f - 1))
}

/// Check `p * z = V(F(z))` modulo `p^{n+1}` in the Witt coordinate model:
/// multiplication by `p` applies Frobenius to the coordinates of `z mod p^n`
/// and shifts them up by one place.
pub fn verschiebung_shift_check(z: &OkElement, n: u32) -> Result<bool> {
    let ctx = z.context().ok_or(Error::ContextMismatch)?.clone();
    let available = z.precision().unwrap_or(0);
    if available < n + 1 {
        return Err(Error::Precision {
            requested: n + 1,
            available,
        });
    }
    let p = BigInt::from(ctx.p);
    let mut shifted = vec![OkElement::from_integer_in(&ctx, &BigInt::from(0), 1)];
    for a in z.witt_coordinates(n)? {
        shifted.push(a.pow(&p));
    }
    let rebuilt = OkElement::from_witt_coordinates(&ctx, &shifted, n + 1)?;
    let lhs = (OkElement::from_integer(&p) * z.clone()).truncate(n + 1)?;
    Ok(rebuilt == lhs)
}

/// The fiber of reduction modulo `p^depth` over `residue`.
#[derive(Debug, Clone, PartialEq)]
pub struct WittCylinder {
    pub depth: u32,
    pub residue: OkElement,
}

impl WittCylinder {
    pub fn contains(&self, x: &OkElement) -> bool {
        x.truncate(self.depth).is_ok_and(|r| r == self.residue)
    }

    pub fn as_ball(&self) -> Ball<OkElement> {
        let p = self.residue.context().expect("cylinder has context").p;
        Ball::new(self.residue.clone(), self.depth, p).expect("context prime")
    }
}

/// All `q^n` cylinders of depth `n`, in index order.
pub fn witt_cylinder_partition(ctx: &Arc<UnramifiedContext>, n: u32) -> Result<Vec<WittCylinder>> {
    if n == 0 || n > ctx.precision {
        return Err(Error::Precision {
            requested: n,
            available: ctx.precision,
        });
    }
    let count = (ctx.p as u128)
        .checked_pow(ctx.f * n)
        .filter(|&c| c <= DEFAULT_SIZE_LIMIT as u128)
        .ok_or(Error::SizeLimit {
            required: (ctx.p as u128).saturating_pow(ctx.f * n),
            limit: DEFAULT_SIZE_LIMIT as u128,
        })?;
    Ok((0..count as u64)
        .map(|idx| WittCylinder {
            depth: n,
            residue: OkElement::from_index(ctx, idx, n),
        })
        .collect())
}
