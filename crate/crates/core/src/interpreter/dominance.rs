use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::ball::{Ball, Nesting};
use crate::error::{Error, Result};
use crate::padic::pow_p;
use crate::poly::Polynomial;
use crate::scalar::{NormExponent, PadicValued, Scalar, Valuation};
use crate::IntPolynomial;

/// Outcome of the linear dominance test on a ball.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DominanceVerdict {
    /// `min_{k>=2} (v(c_k) + (k-1) n) - v(c_1) = slack > 0`.
    Pass { linear_valuation: i64, slack: NormExponent },
    /// The term of index `index` reaches the linear term.
    Fail {
        index: usize,
        linear_valuation: i64,
        bound: NormExponent,
    },
    /// `c_1 = 0` exactly.
    DegenerateLinearTerm,
    /// A truncated zero coefficient at `index` prevents a decision.
    Inconclusive { index: usize },
}

impl DominanceVerdict {
    pub fn passes(&self) -> bool {
        matches!(self, DominanceVerdict::Pass { .. })
    }

    pub fn linear_valuation(&self) -> Option<i64> {
        match self {
            DominanceVerdict::Pass {
                linear_valuation, ..
            }
            | DominanceVerdict::Fail {
                linear_valuation, ..
            } => Some(*linear_valuation),
            _ => None,
        }
    }
}

/// Linear dominance of `f` on `b` from the exact Taylor coefficients at the
/// center.
pub fn check_linear_dominance<T: Scalar + PadicValued>(
    f: &Polynomial<T>,
    b: &Ball<T>,
) -> DominanceVerdict {
    let p = b.p();
    let n = b.radius_exp() as i64;
    let c = f.recenter(b.center());
    let v1 = match c.coeff(1).padic_valuation(p) {
        Valuation::Infinite => return DominanceVerdict::DegenerateLinearTerm,
        Valuation::AtLeast(_) => return DominanceVerdict::Inconclusive { index: 1 },
        Valuation::Finite(v) => v,
    };
    let mut slack = NormExponent::Infinity;
    let mut inconclusive = None;
    for (k, ck) in c.coeffs().iter().enumerate().skip(2) {
        let v = ck.padic_valuation(p);
        let term = v.lower_bound() + (k as i64 - 1) * n;
        if term <= NormExponent::Finite(v1) {
            match v {
                Valuation::Finite(_) => {
                    return DominanceVerdict::Fail {
                        index: k,
                        linear_valuation: v1,
                        bound: term,
                    };
                }
                _ => {
                    inconclusive.get_or_insert(k);
                }
            }
        }
        let margin = match term {
            NormExponent::Finite(t) => NormExponent::Finite(t - v1),
            NormExponent::Infinity => NormExponent::Infinity,
        };
        slack = slack.min(margin);
    }
    match inconclusive {
        Some(index) => DominanceVerdict::Inconclusive { index },
        None => DominanceVerdict::Pass {
            linear_valuation: v1,
            slack,
        },
    }
}

/// Any perturbation whose Gauss norm exponent on `b` exceeds this value keeps
/// a passing dominance verdict and the linear valuation.
pub fn dominance_perturbation_threshold<T: Scalar + PadicValued>(
    f: &Polynomial<T>,
    b: &Ball<T>,
) -> Option<i64> {
    check_linear_dominance(f, b)
        .passes()
        .then(|| check_linear_dominance(f, b).linear_valuation().unwrap() + b.radius_exp() as i64)
}

/// Under dominance the image of `b` is exactly `B(f(a), p^{-(n + v(c_1))})`.
pub fn image_ball<T: Scalar + PadicValued>(f: &Polynomial<T>, b: &Ball<T>) -> Result<Ball<T>> {
    let v1 = match check_linear_dominance(f, b) {
        DominanceVerdict::Pass {
            linear_valuation, ..
        } => linear_valuation,
        _ => return Err(Error::DominanceRequired),
    };
    let n = b.radius_exp() as i64 + v1;
    if n < 0 || n > u32::MAX as i64 {
        return Err(Error::RadiusOutOfRange(n));
    }
    Ball::new(f.eval(b.center()), n as u32, b.p())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum InterpretationKind {
    Contractive,
    Indifferent,
    Expansive,
}

/// Kind plus the exponent `s` of the ratio `sigma = p^{-s}` between image and
/// target radii.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct InterpretationType {
    pub kind: InterpretationKind,
    pub sigma_exp: i64,
}

impl InterpretationType {
    pub fn from_sigma_exp(sigma_exp: i64) -> Self {
        let kind = match sigma_exp.signum() {
            1 => InterpretationKind::Contractive,
            0 => InterpretationKind::Indifferent,
            _ => InterpretationKind::Expansive,
        };
        InterpretationType { kind, sigma_exp }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Classification<T: Scalar + PadicValued> {
    pub interpretation: InterpretationType,
    pub image: Ball<T>,
    /// Image and target intersect.
    pub meets: bool,
    pub inside: bool,
    pub equal: bool,
}

/// Type of the ball map `source -> target` under `f`; needs dominance.
pub fn classify_ball<T: Scalar + PadicValued>(
    f: &Polynomial<T>,
    source: &Ball<T>,
    target: &Ball<T>,
) -> Result<Classification<T>> {
    let image = image_ball(f, source)?;
    let sigma = image.radius_exp() as i64 - target.radius_exp() as i64;
    let nesting = image.nesting(target)?;
    Ok(Classification {
        interpretation: InterpretationType::from_sigma_exp(sigma),
        meets: nesting != Nesting::Disjoint,
        inside: matches!(nesting, Nesting::Equal | Nesting::FirstInsideSecond),
        equal: nesting == Nesting::Equal,
        image,
    })
}

/// Classification from the residues of the image at a finite depth, used
/// when dominance fails. Valid for integer polynomials on balls of `Z_p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumeratedClassification {
    pub depth: u32,
    /// Exponent of the smallest ball containing the image residues, capped
    /// at `depth`.
    pub covering_exp: u32,
    pub interpretation: InterpretationType,
    /// The image residues fill their covering ball at this depth.
    pub image_is_ball: bool,
    pub meets: bool,
    pub inside: bool,
}

pub fn classify_ball_enumerated(
    f: &IntPolynomial,
    source: &Ball,
    target: &Ball,
    depth: u32,
) -> Result<EnumeratedClassification> {
    let depth = depth.max(source.radius_exp()).max(target.radius_exp());
    let p = source.p();
    let m = pow_p(p, depth);
    let image: BTreeSet<BigInt> = source
        .residues(depth)?
        .iter()
        .map(|z| f.eval_mod(z, &m))
        .collect();
    let base = f.eval_mod(source.center(), &m);
    let covering_exp = image
        .iter()
        .map(|y| match (y - &base).padic_valuation(p) {
            Valuation::Finite(v) => v.min(depth as i64) as u32,
            _ => depth,
        })
        .min()
        .unwrap_or(depth);
    let expected = pow_p(p, depth - covering_exp);
    let image_is_ball = BigInt::from(image.len()) == expected;
    let t_mod = pow_p(p, target.radius_exp());
    let t_center = target.center().mod_floor(&t_mod);
    let hits = image
        .iter()
        .filter(|y| y.mod_floor(&t_mod) == t_center)
        .count();
    Ok(EnumeratedClassification {
        depth,
        covering_exp,
        interpretation: InterpretationType::from_sigma_exp(
            covering_exp as i64 - target.radius_exp() as i64,
        ),
        image_is_ball,
        meets: hits > 0,
        inside: hits == image.len(),
    })
}

/// Exact inclusion and meeting of `f(source)` and `target` for integer
/// polynomials, from residues at depth `max(n, t)`.
pub(crate) fn inclusion_by_residues(f: &IntPolynomial, source: &Ball, target: &Ball) -> Result<(bool, bool)> {
    let t = target.radius_exp();
    let depth = source.radius_exp().max(t);
    let m = pow_p(source.p(), t);
    let want = target.center().mod_floor(&m);
    let count = pow_p(source.p(), depth - source.radius_exp())
        .to_u64()
        .unwrap_or(u64::MAX);
    if count > crate::DEFAULT_SIZE_LIMIT {
        return Err(Error::SizeLimit {
            required: count as u128,
            limit: crate::DEFAULT_SIZE_LIMIT as u128,
        });
    }
    let mut hits = 0u64;
    for z in source.residues(depth)? {
        if f.eval_mod(&z, &m) == want {
            hits += 1;
        }
    }
    Ok((hits > 0, hits == count))
}
