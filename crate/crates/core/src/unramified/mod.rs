//! Truncated unramified rings `O_K / p^N`, identified with `W_N(F_q)`.
//!
//! Elements are coordinate vectors in the power basis `1, g, ..., g^{f-1}`
//! of a monic lift of an irreducible polynomial over F_p.

mod fp;
mod witt;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::padic::{check_prime, pow_p};
use crate::poly::Polynomial;
use crate::scalar::{PadicValued, Scalar, Valuation};
use crate::IntPolynomial;

pub use witt::{verschiebung_shift_check, witt_cylinder_partition, WittCylinder};

/// A residue field degree, modulus and default working precision.
#[derive(Debug)]
pub struct UnramifiedContext {
    p: u32,
    f: u32,
    modulus: IntPolynomial,
    precision: u32,
}

impl PartialEq for UnramifiedContext {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.f == other.f && self.modulus == other.modulus
    }
}

/// Whether the reduction of `poly` mod `p` is irreducible over F_p.
pub fn is_irreducible_mod_p(poly: &IntPolynomial, p: u32) -> bool {
    fp::is_irreducible(&to_fp(poly, p), p as u64)
}

fn to_fp(poly: &IntPolynomial, p: u32) -> Vec<u64> {
    let pb = BigInt::from(p);
    fp::trim(
        poly.coeffs()
            .iter()
            .map(|c| c.mod_floor(&pb).to_u64().expect("residue below p"))
            .collect(),
    )
}

/// Built-in moduli for small fields; other fields use the first irreducible
/// monic polynomial in lexicographic order of coefficients.
fn builtin_modulus(p: u32, f: u32) -> Option<Vec<i64>> {
    Some(match (p, f) {
        (_, 1) => vec![0, 1],
        (2, 2) => vec![1, 1, 1],
        (3, 2) | (7, 2) => vec![1, 0, 1],
        (5, 2) => vec![2, 0, 1],
        (2, 3) => vec![1, 1, 0, 1],
        (3, 3) => vec![1, 2, 0, 1],
        (2, 4) => vec![1, 1, 0, 0, 1],
        _ => return None,
    })
}

fn search_modulus(p: u32, f: u32) -> Option<IntPolynomial> {
    let total = (p as u64).checked_pow(f)?;
    (0..total).find_map(|mut idx| {
        let mut cs: Vec<BigInt> = (0..f)
            .map(|_| {
                let d = idx % p as u64;
                idx /= p as u64;
                BigInt::from(d)
            })
            .collect();
        cs.push(BigInt::one());
        let poly = IntPolynomial::new(cs);
        is_irreducible_mod_p(&poly, p).then_some(poly)
    })
}

impl UnramifiedContext {
    /// Validate a user-supplied monic modulus of degree `f`.
    pub fn new(p: u32, f: u32, modulus: IntPolynomial, precision: u32) -> Result<Arc<Self>> {
        check_prime(p)?;
        if f == 0 {
            return Err(Error::InvalidModulus("residue degree must be at least 1".into()));
        }
        if precision == 0 {
            return Err(Error::Precision {
                requested: 0,
                available: 0,
            });
        }
        if modulus.degree() != Some(f as usize) {
            return Err(Error::InvalidModulus(format!(
                "expected degree {f}, got {}",
                modulus
            )));
        }
        if !modulus.leading().is_some_and(|c| c.is_one()) {
            return Err(Error::InvalidModulus(format!("{modulus} is not monic")));
        }
        if !is_irreducible_mod_p(&modulus, p) {
            return Err(Error::InvalidModulus(format!(
                "{modulus} is reducible modulo {p}"
            )));
        }
        Ok(Arc::new(UnramifiedContext {
            p,
            f,
            modulus,
            precision,
        }))
    }

    /// Context with the built-in (or first found) modulus.
    pub fn standard(p: u32, f: u32, precision: u32) -> Result<Arc<Self>> {
        check_prime(p)?;
        let modulus = match builtin_modulus(p, f) {
            Some(cs) => IntPolynomial::from_i64s(&cs),
            None => search_modulus(p, f).ok_or_else(|| {
                Error::InvalidModulus(format!("no irreducible of degree {f} over F_{p} found"))
            })?,
        };
        UnramifiedContext::new(p, f, modulus, precision)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn f(&self) -> u32 {
        self.f
    }

    pub fn modulus(&self) -> &IntPolynomial {
        &self.modulus
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    /// Residue field size `q = p^f`.
    pub fn q(&self) -> BigInt {
        pow_p(self.p, self.f)
    }

    /// Same ring, different default precision.
    pub fn with_precision(&self, precision: u32) -> Result<Arc<Self>> {
        UnramifiedContext::new(self.p, self.f, self.modulus.clone(), precision)
    }
}

/// Build an element at the context's default precision.
pub fn element(ctx: &Arc<UnramifiedContext>, coeffs: &[i64]) -> OkElement {
    let cs: Vec<BigInt> = coeffs.iter().map(|&c| BigInt::from(c)).collect();
    OkElement::from_coeffs(ctx, cs, ctx.precision)
}

/// An element of `O_K / p^N`.
///
/// Integer constants can exist without a context; they adopt the context and
/// precision of whatever they are combined with. This lets `OkElement` serve
/// as a polynomial coefficient type.
#[derive(Clone, Debug)]
pub struct OkElement {
    repr: Repr,
}

#[derive(Clone, Debug)]
enum Repr {
    Integer(BigInt),
    Full {
        ctx: Arc<UnramifiedContext>,
        coeffs: Vec<BigInt>,
        precision: u32,
    },
}

impl OkElement {
    pub fn from_coeffs(ctx: &Arc<UnramifiedContext>, coeffs: Vec<BigInt>, precision: u32) -> Self {
        let m = pow_p(ctx.p, precision);
        let mut cs = coeffs;
        reduce_by_modulus(&mut cs, &ctx.modulus);
        cs.resize(ctx.f as usize, BigInt::zero());
        for c in cs.iter_mut() {
            *c = c.mod_floor(&m);
        }
        OkElement {
            repr: Repr::Full {
                ctx: ctx.clone(),
                coeffs: cs,
                precision,
            },
        }
    }

    pub fn from_integer_in(ctx: &Arc<UnramifiedContext>, n: &BigInt, precision: u32) -> Self {
        OkElement::from_coeffs(ctx, vec![n.clone()], precision)
    }

    /// The generator `g` of the power basis.
    pub fn generator(ctx: &Arc<UnramifiedContext>, precision: u32) -> Self {
        OkElement::from_coeffs(ctx, vec![BigInt::zero(), BigInt::one()], precision)
    }

    /// Element with index `idx = sum c_j (p^N)^j`.
    pub fn from_index(ctx: &Arc<UnramifiedContext>, idx: u64, precision: u32) -> Self {
        let m = pow_p(ctx.p, precision);
        let mut rest = BigInt::from(idx);
        let cs = (0..ctx.f)
            .map(|_| {
                let (q, r) = rest.div_mod_floor(&m);
                rest = q;
                r
            })
            .collect();
        OkElement::from_coeffs(ctx, cs, precision)
    }

    pub fn context(&self) -> Option<&Arc<UnramifiedContext>> {
        match &self.repr {
            Repr::Full { ctx, .. } => Some(ctx),
            Repr::Integer(_) => None,
        }
    }

    /// `None` for context-free exact integers.
    pub fn precision(&self) -> Option<u32> {
        match &self.repr {
            Repr::Full { precision, .. } => Some(*precision),
            Repr::Integer(_) => None,
        }
    }

    /// Coordinates in the power basis. Context-free integers report a
    /// single coordinate.
    pub fn coeffs(&self) -> Vec<BigInt> {
        match &self.repr {
            Repr::Full { coeffs, .. } => coeffs.clone(),
            Repr::Integer(n) => vec![n.clone()],
        }
    }

    /// Inverse of `from_index`.
    pub fn index(&self) -> u64 {
        match &self.repr {
            Repr::Full {
                ctx,
                coeffs,
                precision,
            } => {
                let m = pow_p(ctx.p, *precision);
                let idx = coeffs
                    .iter()
                    .rev()
                    .fold(BigInt::zero(), |acc, c| acc * &m + c);
                idx.to_u64().expect("index fits in u64")
            }
            Repr::Integer(n) => n.to_u64().expect("nonnegative integer"),
        }
    }

    fn in_context(&self, ctx: &Arc<UnramifiedContext>, precision: u32) -> OkElement {
        match &self.repr {
            Repr::Integer(n) => OkElement::from_integer_in(ctx, n, precision),
            Repr::Full { coeffs, .. } => OkElement::from_coeffs(ctx, coeffs.clone(), precision),
        }
    }

    /// Reduction modulo `p^m`.
    pub fn truncate(&self, m: u32) -> Result<OkElement> {
        match &self.repr {
            Repr::Full {
                ctx,
                coeffs,
                precision,
            } => {
                if m == 0 || m > *precision {
                    return Err(Error::Precision {
                        requested: m,
                        available: *precision,
                    });
                }
                Ok(OkElement::from_coeffs(ctx, coeffs.clone(), m))
            }
            Repr::Integer(_) => Err(Error::ContextMismatch),
        }
    }

    /// Reinterpret at a higher precision using the canonical coordinates.
    pub fn lift_to(&self, m: u32) -> Result<OkElement> {
        match &self.repr {
            Repr::Full { ctx, coeffs, .. } => Ok(OkElement::from_coeffs(ctx, coeffs.clone(), m)),
            Repr::Integer(_) => Err(Error::ContextMismatch),
        }
    }

    pub fn pow(&self, e: &BigInt) -> OkElement {
        let mut acc = OkElement::one();
        let mut base = self.clone();
        let mut e = e.clone();
        let two = BigInt::from(2);
        while !e.is_zero() {
            if e.is_odd() {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            e /= &two;
        }
        match &self.repr {
            Repr::Full { ctx, precision, .. } => acc.in_context(ctx, *precision),
            Repr::Integer(_) => acc,
        }
    }

    /// Multiplicative inverse of a unit by Newton iteration from the residue
    /// field inverse.
    pub fn inverse(&self) -> Result<OkElement> {
        let (ctx, precision) = match &self.repr {
            Repr::Full { ctx, precision, .. } => (ctx.clone(), *precision),
            Repr::Integer(_) => return Err(Error::ContextMismatch),
        };
        let v = self.padic_valuation(ctx.p);
        if v != Valuation::Finite(0) {
            return Err(Error::NonUnit { valuation: v });
        }
        let residue = self.truncate(1)?;
        let mut y = residue.pow(&(ctx.q() - 2u32)).lift_to(precision)?;
        let two = OkElement::from_integer_in(&ctx, &BigInt::from(2), precision);
        let mut reached = 1u32;
        while reached < precision {
            y = y.clone() * (two.clone() - self.clone() * y);
            reached *= 2;
        }
        if !(y.clone() * self.clone()).is_one() {
            return Err(Error::Internal("unit inverse failed to converge".into()));
        }
        Ok(y)
    }

    /// Divide by `p`; every coordinate must be divisible. Precision drops by one.
    pub fn div_p(&self) -> Result<OkElement> {
        match &self.repr {
            Repr::Full {
                ctx,
                coeffs,
                precision,
            } => {
                let pb = BigInt::from(ctx.p);
                if *precision < 2 || coeffs.iter().any(|c| !c.is_multiple_of(&pb)) {
                    return Err(Error::NonUnit {
                        valuation: self.padic_valuation(ctx.p),
                    });
                }
                let cs = coeffs.iter().map(|c| c / &pb).collect();
                Ok(OkElement::from_coeffs(ctx, cs, precision - 1))
            }
            Repr::Integer(_) => Err(Error::ContextMismatch),
        }
    }

    /// Teichmüller representative of `self mod p` at precision `target_n`.
    pub fn teichmuller(&self, target_n: u32) -> Result<OkElement> {
        let ctx = self.context().ok_or(Error::ContextMismatch)?.clone();
        let q = ctx.q();
        let mut z = self.truncate(1)?.lift_to(target_n)?;
        for _ in 0..target_n {
            let next = z.pow(&q);
            if next == z {
                break;
            }
            z = next;
        }
        if z.pow(&q) != z {
            return Err(Error::Internal("Teichmüller iteration did not stabilize".into()));
        }
        Ok(z)
    }

    /// Image of the generator under Frobenius at precision `n`: the root of
    /// the modulus congruent to `g^p`, obtained by Hensel lifting.
    pub fn frobenius_of_generator(ctx: &Arc<UnramifiedContext>, n: u32) -> Result<OkElement> {
        let m = ctx.modulus.map(OkElement::from_integer);
        let dm = m.derivative();
        let mut theta = OkElement::generator(ctx, n).pow(&BigInt::from(ctx.p));
        let mut reached = 1u32;
        while reached < n {
            let step = m.eval(&theta) * dm.eval(&theta).inverse()?;
            theta = theta - step;
            reached *= 2;
        }
        if !m.eval(&theta).is_zero() {
            return Err(Error::Internal("Frobenius root did not lift".into()));
        }
        Ok(theta)
    }

    /// The Frobenius automorphism lifting `x -> x^p` on the residue field.
    pub fn frobenius(&self) -> Result<OkElement> {
        let (ctx, precision) = match &self.repr {
            Repr::Full { ctx, precision, .. } => (ctx.clone(), *precision),
            Repr::Integer(_) => return Ok(self.clone()),
        };
        let theta = OkElement::frobenius_of_generator(&ctx, precision)?;
        let poly = Polynomial::new(self.coeffs().iter().map(OkElement::from_integer).collect());
        Ok(poly.eval(&theta).in_context(&ctx, precision))
    }

    /// Exact equality on representatives, with integers coerced.
    pub fn is_one(&self) -> bool {
        *self == OkElement::one()
    }
}

fn reduce_by_modulus(cs: &mut Vec<BigInt>, modulus: &IntPolynomial) {
    let f = modulus.degree().unwrap_or(0);
    if f == 0 {
        cs.clear();
        return;
    }
    let m = modulus.coeffs();
    while cs.len() > f {
        let top = cs.pop().expect("nonempty");
        if top.is_zero() {
            continue;
        }
        let base = cs.len() - f;
        for j in 0..f {
            cs[base + j] -= &top * &m[j];
        }
    }
}

fn binary(
    a: &OkElement,
    b: &OkElement,
    int_op: impl Fn(&BigInt, &BigInt) -> BigInt,
    full_op: impl Fn(&[BigInt], &[BigInt]) -> Vec<BigInt>,
) -> OkElement {
    match (&a.repr, &b.repr) {
        (Repr::Integer(x), Repr::Integer(y)) => OkElement {
            repr: Repr::Integer(int_op(x, y)),
        },
        _ => {
            let (ctx, prec) = common_context(a, b);
            let x = a.in_context(&ctx, prec);
            let y = b.in_context(&ctx, prec);
            OkElement::from_coeffs(&ctx, full_op(&x.coeffs(), &y.coeffs()), prec)
        }
    }
}

fn common_context(a: &OkElement, b: &OkElement) -> (Arc<UnramifiedContext>, u32) {
    match (&a.repr, &b.repr) {
        (
            Repr::Full {
                ctx: c1,
                precision: n1,
                ..
            },
            Repr::Full {
                ctx: c2,
                precision: n2,
                ..
            },
        ) => {
            assert!(c1 == c2, "elements of different unramified contexts combined");
            (c1.clone(), (*n1).min(*n2))
        }
        (Repr::Full { ctx, precision, .. }, _) | (_, Repr::Full { ctx, precision, .. }) => {
            (ctx.clone(), *precision)
        }
        _ => unreachable!("both integers handled by caller"),
    }
}

fn zip_with(a: &[BigInt], b: &[BigInt], op: impl Fn(&BigInt, &BigInt) -> BigInt) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let zero = BigInt::zero();
    (0..n)
        .map(|i| op(a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero)))
        .collect()
}

fn convolve(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

impl Add for OkElement {
    type Output = OkElement;

    fn add(self, rhs: OkElement) -> OkElement {
        binary(&self, &rhs, |x, y| x + y, |a, b| zip_with(a, b, |x, y| x + y))
    }
}

impl Sub for OkElement {
    type Output = OkElement;

    fn sub(self, rhs: OkElement) -> OkElement {
        binary(&self, &rhs, |x, y| x - y, |a, b| zip_with(a, b, |x, y| x - y))
    }
}

impl Mul for OkElement {
    type Output = OkElement;

    fn mul(self, rhs: OkElement) -> OkElement {
        binary(&self, &rhs, |x, y| x * y, convolve)
    }
}

impl Neg for OkElement {
    type Output = OkElement;

    fn neg(self) -> OkElement {
        match &self.repr {
            Repr::Integer(n) => OkElement {
                repr: Repr::Integer(-n),
            },
            Repr::Full {
                ctx,
                coeffs,
                precision,
            } => OkElement::from_coeffs(ctx, coeffs.iter().map(|c| -c).collect(), *precision),
        }
    }
}

impl Zero for OkElement {
    fn zero() -> Self {
        OkElement {
            repr: Repr::Integer(BigInt::zero()),
        }
    }

    fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Integer(n) => n.is_zero(),
            Repr::Full { coeffs, .. } => coeffs.iter().all(|c| c.is_zero()),
        }
    }
}

impl One for OkElement {
    fn one() -> Self {
        OkElement {
            repr: Repr::Integer(BigInt::one()),
        }
    }
}

impl PartialEq for OkElement {
    fn eq(&self, other: &Self) -> bool {
        match (&self.repr, &other.repr) {
            (Repr::Integer(x), Repr::Integer(y)) => x == y,
            (
                Repr::Full {
                    ctx: c1,
                    coeffs: a,
                    precision: n1,
                },
                Repr::Full {
                    ctx: c2,
                    coeffs: b,
                    precision: n2,
                },
            ) => c1 == c2 && n1 == n2 && a == b,
            (Repr::Full { ctx, precision, .. }, Repr::Integer(_)) => {
                *self == other.in_context(ctx, *precision)
            }
            (Repr::Integer(_), Repr::Full { ctx, precision, .. }) => {
                self.in_context(ctx, *precision) == *other
            }
        }
    }
}

impl Scalar for OkElement {
    fn from_integer(n: &BigInt) -> Self {
        OkElement {
            repr: Repr::Integer(n.clone()),
        }
    }
}

impl PadicValued for OkElement {
    /// The power basis of an unramified extension is integral, so the
    /// valuation is the minimum over coordinates.
    fn padic_valuation(&self, p: u32) -> Valuation {
        match &self.repr {
            Repr::Integer(n) => n.padic_valuation(p),
            Repr::Full {
                coeffs, precision, ..
            } => coeffs
                .iter()
                .filter(|c| !c.is_zero())
                .map(|c| c.padic_valuation(p))
                .min_by_key(|v| v.lower_bound())
                .unwrap_or(Valuation::AtLeast(*precision as i64)),
        }
    }
}

impl fmt::Display for OkElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Integer(n) => write!(f, "{n}"),
            Repr::Full { coeffs, .. } => {
                let s = IntPolynomial::new(coeffs.clone()).to_string();
                write!(f, "{}", s.replace('z', "g"))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f4(n: u32) -> Arc<UnramifiedContext> {
        UnramifiedContext::standard(2, 2, n).unwrap()
    }

    #[test]
    fn f4_multiplicative_group() {
        let ctx = f4(1);
        let w = element(&ctx, &[0, 1]);
        let w2 = w.clone() * w.clone();
        assert_eq!(w2, element(&ctx, &[1, 1]));
        assert!((w.clone() * w2.clone()).is_one());
        assert!((w + w2).is_one());
    }

    #[test]
    fn degree_one_is_padic_int() {
        let ctx = UnramifiedContext::standard(3, 1, 2).unwrap();
        let two = element(&ctx, &[2]);
        assert_eq!(two.clone() * two, element(&ctx, &[4]));
    }

    #[test]
    fn truncation_examples() {
        let ctx = UnramifiedContext::standard(2, 1, 3).unwrap();
        let x = element(&ctx, &[5]);
        assert_eq!(x.truncate(1).unwrap().coeffs(), vec![BigInt::from(1)]);
        assert_eq!(x.truncate(3).unwrap(), x);
        assert!(x.truncate(4).is_err());
    }

    #[test]
    fn teichmuller_examples() {
        let ctx = UnramifiedContext::standard(3, 1, 2).unwrap();
        let t = element(&ctx, &[2]).teichmuller(2).unwrap();
        assert_eq!(t.coeffs(), vec![BigInt::from(8)]);
        assert!(element(&ctx, &[0]).teichmuller(2).unwrap().is_zero());
        assert!(element(&ctx, &[1]).teichmuller(2).unwrap().is_one());

        let ctx = f4(2);
        let xi = element(&ctx, &[0, 1]).teichmuller(2).unwrap();
        assert!(xi.pow(&BigInt::from(3)).is_one());
        assert_eq!(xi.truncate(1).unwrap(), element(&f4(1), &[0, 1]).lift_to(1).unwrap());
    }

    #[test]
    fn frobenius_on_f4() {
        let ctx = f4(1);
        let w = element(&ctx, &[0, 1]);
        assert_eq!(w.frobenius().unwrap(), w.clone() * w.clone());
        let ctx = f4(3);
        let x = element(&ctx, &[3, 5]);
        assert_eq!(x.frobenius().unwrap().frobenius().unwrap(), x);
    }

    #[test]
    fn inverse_and_nonunit() {
        let ctx = UnramifiedContext::standard(3, 2, 3).unwrap();
        let x = element(&ctx, &[4, 7]);
        assert!((x.inverse().unwrap() * x).is_one());
        let y = element(&ctx, &[3, 6]);
        assert_eq!(
            y.inverse().unwrap_err(),
            Error::NonUnit {
                valuation: Valuation::Finite(1)
            }
        );
    }

    #[test]
    fn index_round_trip() {
        let ctx = f4(2);
        for idx in 0..16 {
            assert_eq!(OkElement::from_index(&ctx, idx, 2).index(), idx);
        }
        assert_eq!(OkElement::from_index(&f4(1), 3, 1), element(&f4(1), &[1, 1]));
    }

    #[test]
    fn rejects_bad_moduli() {
        let reducible = IntPolynomial::from_i64s(&[1, 0, 1]);
        assert!(UnramifiedContext::new(2, 2, reducible, 1).is_err());
        let not_monic = IntPolynomial::from_i64s(&[1, 1, 3]);
        assert!(UnramifiedContext::new(2, 2, not_monic, 1).is_err());
        let wrong_degree = IntPolynomial::from_i64s(&[1, 1, 0, 1]);
        assert!(UnramifiedContext::new(2, 2, wrong_degree, 1).is_err());
    }

    #[test]
    fn searched_modulus_is_irreducible() {
        let ctx = UnramifiedContext::standard(3, 4, 1).unwrap();
        assert!(is_irreducible_mod_p(ctx.modulus(), 3));
        assert_eq!(ctx.modulus().degree(), Some(4));
    }

    #[test]
    fn integer_constants_adopt_context() {
        let ctx = f4(2);
        let w = element(&ctx, &[0, 1]);
        let sum = w.clone() + OkElement::from_integer(&BigInt::from(5));
        assert_eq!(sum, element(&ctx, &[1, 1]));
        assert_eq!(sum.precision(), Some(2));
    }
}
