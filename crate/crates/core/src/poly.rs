//! Dense univariate polynomials over an exact scalar ring.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::ball::Ball;
use crate::scalar::{NormExponent, PadicValued, Scalar};

/// Coefficients stored constant term first, trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Polynomial<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: T) -> Self {
        Polynomial::new(vec![c])
    }

    /// The identity polynomial `z`.
    pub fn identity() -> Self {
        Polynomial::new(vec![T::zero(), T::one()])
    }

    pub fn monomial(c: T, k: usize) -> Self {
        let mut coeffs = vec![T::zero(); k];
        coeffs.push(c);
        Polynomial::new(coeffs)
    }

    pub fn from_i64s(cs: &[i64]) -> Self {
        Polynomial::new(cs.iter().map(|&c| T::from_i64(c)).collect())
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn derivative(&self) -> Self {
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| T::from_i64(k as i64) * c.clone())
                .collect(),
        )
    }

    pub fn scale(&self, s: &T) -> Self {
        Polynomial::new(self.coeffs.iter().map(|c| c.clone() * s.clone()).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Polynomial::constant(T::one());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `self(g(z))`.
    pub fn compose(&self, g: &Polynomial<T>) -> Self {
        self.coeffs.iter().rev().fold(Polynomial::zero(), |acc, c| {
            &(&acc * g) + &Polynomial::constant(c.clone())
        })
    }

    /// Taylor coefficients at `a`: the coefficients of `self(z + a)`, so that
    /// `self(z) = sum c_k (z - a)^k`.
    pub fn recenter(&self, a: &T) -> Self {
        let mut c = self.coeffs.clone();
        let n = c.len();
        // Repeated synthetic division by (z - a).
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let t = c[j + 1].clone() * a.clone();
                c[j] = c[j].clone() + t;
            }
        }
        Polynomial::new(c)
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Polynomial<U> {
        Polynomial::new(self.coeffs.iter().map(f).collect())
    }
}

impl Polynomial<BigInt> {
    /// Evaluate and reduce into `[0, m)`, keeping intermediate values small.
    pub fn eval_mod(&self, x: &BigInt, m: &BigInt) -> BigInt {
        use num_integer::Integer;
        let x = x.mod_floor(m);
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| (acc * &x + c).mod_floor(m))
    }

    pub fn eval_mod_u64(&self, x: u64, m: u64) -> u64 {
        use num_integer::Integer;
        use num_traits::ToPrimitive;
        let big_m = BigInt::from(m);
        let x = (x % m) as u128;
        let mut acc: u128 = 0;
        for c in self.coeffs.iter().rev() {
            let c = c.mod_floor(&big_m).to_u128().expect("residue fits");
            acc = (acc * x + c) % m as u128;
        }
        acc as u64
    }
}

impl<T: Scalar> Add for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn add(self, rhs: &Polynomial<T>) -> Polynomial<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<T: Scalar> Sub for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn sub(self, rhs: &Polynomial<T>) -> Polynomial<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<T: Scalar> Mul for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn mul(self, rhs: &Polynomial<T>) -> Polynomial<T> {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Polynomial::new(out)
    }
}

impl<T: Scalar> Neg for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn neg(self) -> Polynomial<T> {
        Polynomial::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<T: Scalar> $tr for Polynomial<T> {
            type Output = Polynomial<T>;

            fn $m(self, rhs: Polynomial<T>) -> Polynomial<T> {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<T: Scalar + fmt::Display> fmt::Display for Polynomial<T> {
    /// Renders as e.g. `z^2 - 3*z + 1`, highest degree first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let s = c.to_string();
            let (neg, mag) = match s.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, s),
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let needs_parens = mag.contains('/') && k > 0;
            let unit = mag == "1";
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !unit {
                        if needs_parens {
                            write!(f, "({mag})*")?;
                        } else {
                            write!(f, "{mag}*")?;
                        }
                    }
                    if k == 1 {
                        write!(f, "z")?;
                    } else {
                        write!(f, "z^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Gauss norm exponent `min_k (v(c_k) + k n)` of `f` on `b`, with `c_k` the
/// Taylor coefficients at the center. This bounds `|f(z)|` from above for
/// every `z` in the ball.
pub fn gauss_norm_on_ball<T: Scalar + PadicValued>(f: &Polynomial<T>, b: &Ball<T>) -> NormExponent {
    let n = b.radius_exp() as i64;
    f.recenter(b.center())
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, c)| c.padic_valuation(b.p()).lower_bound() + k as i64 * n)
        .min()
        .unwrap_or(NormExponent::Infinity)
}

/// Per-index exponents of `|c_k(f) - c_k(g)| r^k` for the Taylor
/// coefficients at the center of `b`.
pub fn coefficient_stability_gap<T: Scalar + PadicValued>(
    f: &Polynomial<T>,
    g: &Polynomial<T>,
    b: &Ball<T>,
) -> Vec<NormExponent> {
    let n = b.radius_exp() as i64;
    let cf = f.recenter(b.center());
    let cg = g.recenter(b.center());
    let len = cf.coeffs().len().max(cg.coeffs().len());
    (0..len)
        .map(|k| {
            let d = cf.coeff(k) - cg.coeff(k);
            d.padic_valuation(b.p()).lower_bound() + k as i64 * n
        })
        .collect()
}
