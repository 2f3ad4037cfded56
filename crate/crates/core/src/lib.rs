//! Lifting finite dynamical systems to certified p-adic ball dynamics.
//!
//! All arithmetic is exact. Radii and norms are integer exponents of `p^{-1}`.

pub mod ball;
pub mod dynamics;
pub mod error;
pub mod graph;
pub mod interpreter;
pub mod padic;
pub mod poly;
pub mod scalar;
pub mod unramified;

use num_bigint::BigInt;
use num_rational::BigRational;

pub use ball::{affine_image, ball_equal, Ball, Nesting};
pub use error::{Error, Result};
pub use padic::{valuation, PadicInt};
pub use poly::{coefficient_stability_gap, gauss_norm_on_ball, Polynomial};
pub use scalar::{is_prime, NormExponent, PadicValued, Scalar, Valuation};

/// Polynomials with exact integer coefficients.
pub type IntPolynomial = Polynomial<BigInt>;

/// Polynomials with exact rational coefficients.
pub type RatPolynomial = Polynomial<BigRational>;

/// Default cap on enumerated vertex or residue counts.
pub const DEFAULT_SIZE_LIMIT: u64 = 1_000_000;
