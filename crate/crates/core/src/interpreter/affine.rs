use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::system::BallSystem;
use crate::error::{Error, Result};
use crate::padic::pow_p;
use crate::scalar::{PadicValued, Valuation};
use crate::{IntPolynomial, RatPolynomial};

/// `psi_i(z) = target_center + slope (z - source_center)` on one ball.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffinePiece {
    pub source_center: BigInt,
    pub target_center: BigInt,
    pub slope: BigRational,
}

impl AffinePiece {
    pub fn as_polynomial(&self) -> RatPolynomial {
        let a = BigRational::from_integer(self.source_center.clone());
        let b = BigRational::from_integer(self.target_center.clone());
        RatPolynomial::new(vec![b - &self.slope * a, self.slope.clone()])
    }

    pub fn eval(&self, z: &BigRational) -> BigRational {
        BigRational::from_integer(self.target_center.clone())
            + &self.slope * (z - BigRational::from_integer(self.source_center.clone()))
    }
}

/// One affine piece per ball of a system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiecewiseAffine {
    p: u32,
    pieces: Vec<AffinePiece>,
}

impl PiecewiseAffine {
    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn pieces(&self) -> &[AffinePiece] {
        &self.pieces
    }

    pub fn piece(&self, i: usize) -> &AffinePiece {
        &self.pieces[i]
    }

    /// Slope valuations, which equal the target minus source radius exponents.
    pub fn slope_valuations(&self) -> Vec<Valuation> {
        self.pieces
            .iter()
            .map(|pc| pc.slope.padic_valuation(self.p))
            .collect()
    }
}

fn radius_gap(bs: &BallSystem, i: usize) -> i64 {
    bs.target_of(i).radius_exp() as i64 - bs.balls()[i].radius_exp() as i64
}

fn p_power(p: u32, e: i64) -> BigRational {
    let m = pow_p(p, e.unsigned_abs() as u32);
    if e >= 0 {
        BigRational::from_integer(m)
    } else {
        BigRational::new(BigInt::one(), m)
    }
}

/// Pieces with slope `p^{t - r}` mapping each ball onto its target.
pub fn synthesize_piecewise_affine(bs: &BallSystem) -> PiecewiseAffine {
    let pieces = (0..bs.len())
        .map(|i| AffinePiece {
            source_center: bs.balls()[i].center().clone(),
            target_center: bs.target_of(i).center().clone(),
            slope: p_power(bs.p(), radius_gap(bs, i)),
        })
        .collect();
    PiecewiseAffine { p: bs.p(), pieces }
}

/// Like [`synthesize_piecewise_affine`], but takes the slope `f'(a_i)`
/// whenever its valuation is the required one, so that `f - psi_i` has no
/// linear term at the center.
pub fn synthesize_matching(bs: &BallSystem, f: &IntPolynomial) -> PiecewiseAffine {
    let df = f.derivative();
    let mut psi = synthesize_piecewise_affine(bs);
    for (i, piece) in psi.pieces.iter_mut().enumerate() {
        let d = df.eval(bs.balls()[i].center());
        if d.padic_valuation(bs.p()) == Valuation::Finite(radius_gap(bs, i)) {
            piece.slope = BigRational::from_integer(d);
        }
    }
    psi
}

/// Interpolating polynomial with the valuation of every coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interpolation {
    pub polynomial: RatPolynomial,
    pub coefficient_valuations: Vec<Valuation>,
    /// Some coefficient has negative valuation. Matching the centers then
    /// says nothing about ball images.
    pub non_integral: bool,
}

impl Interpolation {
    /// The polynomial, if every coefficient is an integer.
    pub fn integer_polynomial(&self) -> Option<IntPolynomial> {
        self.polynomial
            .coeffs()
            .iter()
            .all(|c| c.is_integer())
            .then(|| self.polynomial.map(|c| c.to_integer()))
    }
}

/// Lagrange interpolation through `(a_i, b_i)` over the rationals.
pub fn interpolate(points: &[(BigInt, BigInt)], p: u32) -> Result<Interpolation> {
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            if points[i].0 == points[j].0 {
                return Err(Error::DuplicateCenters(i, j));
            }
        }
    }
    let mut total = RatPolynomial::zero();
    for (i, (ai, bi)) in points.iter().enumerate() {
        let mut basis = RatPolynomial::constant(BigRational::from_integer(bi.clone()));
        for (j, (aj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            let denom = BigRational::from_integer(ai - aj);
            let factor = RatPolynomial::new(vec![
                -BigRational::from_integer(aj.clone()) / &denom,
                BigRational::one() / &denom,
            ]);
            basis = &basis * &factor;
        }
        total = &total + &basis;
    }
    let coefficient_valuations: Vec<Valuation> = total
        .coeffs()
        .iter()
        .map(|c| c.padic_valuation(p))
        .collect();
    let non_integral = coefficient_valuations
        .iter()
        .any(|v| v.finite().is_some_and(|e| e < 0));
    Ok(Interpolation {
        polynomial: total,
        coefficient_valuations,
        non_integral,
    })
}

/// The unique polynomial of degree below the number of balls sending each
/// center to its target center.
pub fn interpolate_at_centers(bs: &BallSystem) -> Result<Interpolation> {
    let points: Vec<(BigInt, BigInt)> = (0..bs.len())
        .map(|i| (bs.balls()[i].center().clone(), bs.target_of(i).center().clone()))
        .collect();
    interpolate(&points, bs.p())
}

impl RatPolynomial {
    /// All coefficients have nonnegative valuation at `p`.
    pub fn is_p_integral(&self, p: u32) -> bool {
        self.coeffs()
            .iter()
            .all(|c| c.is_zero() || c.padic_valuation(p).finite().is_some_and(|v| v >= 0))
    }
}
