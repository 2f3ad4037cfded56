use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::affine::PiecewiseAffine;
use super::dominance::{
    check_linear_dominance, classify_ball, classify_ball_enumerated, inclusion_by_residues,
    DominanceVerdict, InterpretationType,
};
use super::system::BallSystem;
use crate::ball::Ball;
use crate::error::{Error, Result};
use crate::graph::{graph_of_polynomial_ok, FunctionalGraph};
use crate::padic::{check_prime, pow_p};
use crate::poly::{gauss_norm_on_ball, Polynomial};
use crate::scalar::{NormExponent, PadicValued, Scalar, Valuation};
use crate::unramified::{OkElement, UnramifiedContext};
use crate::{IntPolynomial, RatPolynomial};

/// First state where `f mod p^depth` disagrees with the graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommutationWitness {
    pub vertex: usize,
    pub expected: usize,
    pub got: BigInt,
}

/// Result of comparing the reduction of `f` with a graph on state cylinders.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Commutation {
    pub holds: bool,
    pub witness: Option<CommutationWitness>,
    /// Residues below `p^depth` that are not states.
    pub surplus: usize,
    /// Surplus residues whose image is a state.
    pub surplus_into_states: usize,
}

impl Commutation {
    /// The reduction of `f` is exactly the graph map: it commutes on every
    /// state and there are no surplus cylinders.
    pub fn exact_on_states(&self) -> bool {
        self.holds && self.surplus == 0
    }
}

/// Compare `f(x) mod p^depth` with `g` on every state `x < g.size()`. For
/// integer polynomials this is equivalent to `f(B_x) ⊆ B_{g(x)}` for all
/// states.
pub fn check_inclusion_by_commutation(
    f: &IntPolynomial,
    g: &FunctionalGraph,
    p: u32,
    depth: u32,
) -> Result<Commutation> {
    check_prime(p)?;
    let cap = (p as u64)
        .checked_pow(depth)
        .filter(|&c| c <= crate::DEFAULT_SIZE_LIMIT)
        .ok_or(Error::SizeLimit {
            required: (p as u128).saturating_pow(depth),
            limit: crate::DEFAULT_SIZE_LIMIT as u128,
        })?;
    if (g.size() as u64) > cap {
        return Err(Error::DepthTooSmall {
            p,
            depth,
            size: g.size(),
        });
    }
    let mut witness = None;
    for x in 0..g.size() {
        let y = f.eval_mod_u64(x as u64, cap);
        if y != g.successor(x) as u64 {
            witness = Some(CommutationWitness {
                vertex: x,
                expected: g.successor(x),
                got: BigInt::from(y),
            });
            break;
        }
    }
    let surplus_into_states = (g.size() as u64..cap)
        .filter(|&x| f.eval_mod_u64(x, cap) < g.size() as u64)
        .count();
    Ok(Commutation {
        holds: witness.is_none(),
        witness,
        surplus: (cap - g.size() as u64) as usize,
        surplus_into_states,
    })
}

/// Commutation on `O_K / p^depth`, vertices indexed as in
/// [`OkElement::from_index`].
pub fn check_inclusion_by_commutation_ok(
    f: &Polynomial<OkElement>,
    g: &FunctionalGraph,
    ctx: &Arc<UnramifiedContext>,
    depth: u32,
) -> Result<Commutation> {
    let induced = graph_of_polynomial_ok(f, ctx, depth)?;
    if g.size() != induced.size() {
        return Err(Error::DepthTooSmall {
            p: ctx.p(),
            depth,
            size: g.size(),
        });
    }
    let witness = (0..g.size())
        .find(|&x| induced.successor(x) != g.successor(x))
        .map(|x| CommutationWitness {
            vertex: x,
            expected: g.successor(x),
            got: BigInt::from(induced.successor(x)),
        });
    Ok(Commutation {
        holds: witness.is_none(),
        witness,
        surplus: 0,
        surplus_into_states: 0,
    })
}

/// How a per-ball verdict was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerdictSource {
    /// Linear dominance and the exact image ball.
    Dominance,
    /// Finite residue enumeration; decides inclusion and meeting only.
    EnumeratedOnly,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BallReport {
    pub index: usize,
    pub source: Ball,
    pub target: Ball,
    /// Gauss norm exponent of `f - psi_i` on the ball.
    pub epsilon: NormExponent,
    pub dominance: DominanceVerdict,
    pub image: Option<Ball>,
    pub interpretation: Option<InterpretationType>,
    pub meets: bool,
    pub inside: bool,
    pub exact: bool,
    pub source_of_verdict: VerdictSource,
}

/// The perturbation route: `min_i eps_i > max_i t_i` as exponents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RobustRoute {
    pub min_epsilon: NormExponent,
    pub max_target_exp: u32,
    pub passes: bool,
    /// Ball with the smallest exponent when the route fails.
    pub limiting_ball: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CertifiedReport {
    pub balls: Vec<BallReport>,
    pub robust: RobustRoute,
    /// Every image meets its target.
    pub interpreter: bool,
    pub with_inclusion: bool,
    pub exact: bool,
}

impl CertifiedReport {
    pub fn first_non_exact(&self) -> Option<usize> {
        self.balls.iter().position(|b| !b.exact)
    }
}

fn rational_ball(b: &Ball) -> Ball<BigRational> {
    Ball::new(BigRational::from_integer(b.center().clone()), b.radius_exp(), b.p())
        .expect("ball prime already checked")
}

/// Certify `f` against the affine model `psi` of the system.
///
/// When `min_i eps_i` exceeds every target exponent, `f` is a small
/// perturbation of `psi` and every ball inherits dominance with image equal
/// to its target. Per-ball verdicts are re-derived from the exact Taylor
/// coefficients of `f` in all cases; inclusion without dominance is decided
/// by residue enumeration.
pub fn robust_exactness_certificate(
    f: &IntPolynomial,
    psi: &PiecewiseAffine,
    bs: &BallSystem,
) -> Result<CertifiedReport> {
    if psi.pieces().len() != bs.len() || psi.p() != bs.p() {
        return Err(Error::MalformedSystem(
            "affine model does not match the ball system".into(),
        ));
    }
    let f_rat = f.map(|c| BigRational::from_integer(c.clone()));
    let mut balls = Vec::with_capacity(bs.len());
    for i in 0..bs.len() {
        let source = bs.balls()[i].clone();
        let target = bs.target_of(i).clone();
        let diff = &f_rat - &psi.piece(i).as_polynomial();
        let epsilon = gauss_norm_on_ball(&diff, &rational_ball(&source));
        let dominance = check_linear_dominance(f, &source);
        let report = match classify_ball(f, &source, &target) {
            Ok(c) => BallReport {
                index: i,
                epsilon,
                dominance,
                interpretation: Some(c.interpretation),
                meets: c.meets,
                inside: c.inside,
                exact: c.equal,
                image: Some(c.image),
                source,
                target,
                source_of_verdict: VerdictSource::Dominance,
            },
            Err(Error::DominanceRequired) => {
                let (meets, inside) = inclusion_by_residues(f, &source, &target)?;
                let enumerated = classify_ball_enumerated(f, &source, &target, target.radius_exp() + 3)
                    .ok()
                    .map(|e| e.interpretation);
                BallReport {
                    index: i,
                    epsilon,
                    dominance,
                    image: None,
                    interpretation: enumerated,
                    meets,
                    inside,
                    exact: false,
                    source,
                    target,
                    source_of_verdict: VerdictSource::EnumeratedOnly,
                }
            }
            Err(e) => return Err(e),
        };
        balls.push(report);
    }
    let (limiting_ball, min_epsilon) = balls
        .iter()
        .map(|b| (b.index, b.epsilon))
        .min_by_key(|(_, e)| *e)
        .unwrap_or((0, NormExponent::Infinity));
    let max_target_exp = balls.iter().map(|b| b.target.radius_exp()).max().unwrap_or(0);
    let passes = min_epsilon > NormExponent::Finite(max_target_exp as i64);
    let robust = RobustRoute {
        min_epsilon,
        max_target_exp,
        passes,
        limiting_ball: (!passes).then_some(limiting_ball),
    };
    let exact = balls.iter().all(|b| b.exact);
    if passes && !exact {
        return Err(Error::Internal(
            "perturbation bound holds but a ball is not exact".into(),
        ));
    }
    Ok(CertifiedReport {
        interpreter: balls.iter().all(|b| b.meets),
        with_inclusion: balls.iter().all(|b| b.inside),
        exact,
        balls,
        robust,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StabilityClass {
    /// Zero multiplier.
    Superattracting,
    Contractive,
    Indifferent,
    Expansive,
}

impl StabilityClass {
    pub fn from_valuation(v: Valuation) -> Self {
        match v {
            Valuation::Infinite => StabilityClass::Superattracting,
            Valuation::Finite(e) if e > 0 => StabilityClass::Contractive,
            Valuation::Finite(0) => StabilityClass::Indifferent,
            Valuation::Finite(_) => StabilityClass::Expansive,
            Valuation::AtLeast(e) if e > 0 => StabilityClass::Contractive,
            Valuation::AtLeast(_) => StabilityClass::Indifferent,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplierEntry {
    pub index: usize,
    /// Valuation of `f'` at the ball center.
    pub valuation: Valuation,
    pub class: StabilityClass,
    pub dominance: DominanceVerdict,
    /// On exact balls, whether `v(lambda) = t - r` holds.
    pub matches_radius_ratio: Option<bool>,
}

/// Multipliers at the centers of the fixed balls (`tau(i) = i`).
pub fn multiplier_report(f: &IntPolynomial, bs: &BallSystem) -> Vec<MultiplierEntry> {
    let df = f.derivative();
    bs.fixed_indices()
        .into_iter()
        .map(|i| {
            let src = &bs.balls()[i];
            let valuation = df.eval(src.center()).padic_valuation(bs.p());
            let exact = classify_ball(f, src, bs.target_of(i)).is_ok_and(|c| c.equal);
            let gap = bs.target_of(i).radius_exp() as i64 - src.radius_exp() as i64;
            MultiplierEntry {
                index: i,
                valuation,
                class: StabilityClass::from_valuation(valuation),
                dominance: check_linear_dominance(f, src),
                matches_radius_ratio: exact.then_some(valuation == Valuation::Finite(gap)),
            }
        })
        .collect()
}

/// Product of `f'` along a cycle, the multiplier of the `m`-th iterate.
pub fn cycle_multiplier<T: Scalar>(f: &Polynomial<T>, cycle: &[T]) -> T {
    let df = f.derivative();
    cycle
        .iter()
        .fold(T::one(), |acc, x| acc * df.eval(x))
}

/// Multiplier valuations over the fixed balls. Requires that `f` interprets
/// the system with inclusion.
pub fn stratum_signature(f: &IntPolynomial, bs: &BallSystem) -> Result<Vec<(usize, Valuation)>> {
    for i in 0..bs.len() {
        let (_, inside) = inclusion_by_residues(f, &bs.balls()[i], bs.target_of(i))?;
        if !inside {
            return Err(Error::NotCertified(format!(
                "image of ball {i} is not inside its target"
            )));
        }
    }
    Ok(multiplier_report(f, bs)
        .into_iter()
        .map(|m| (m.index, m.valuation))
        .collect())
}

impl PiecewiseAffine {
    /// Slope valuations on the fixed balls, the signature of any exact
    /// interpreter certified against this model.
    pub fn signature(&self, bs: &BallSystem) -> Vec<(usize, Valuation)> {
        bs.fixed_indices()
            .into_iter()
            .map(|i| (i, self.piece(i).slope.padic_valuation(self.p())))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NotStrictReason {
    Constant,
    NonIntegral { index: usize },
    LeadingNotUnit { valuation: Valuation },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GoodReduction {
    StrictGoodMatches,
    StrictGoodMismatch { vertex: usize, expected: usize, got: usize },
    NotStrict(NotStrictReason),
}

/// Strict good reduction of a polynomial over `O_K` and comparison of its
/// reduction with `g` on the residue field. Polynomials fix the point at
/// infinity, so only finite vertices are compared.
pub fn good_reduction_check(
    f: &RatPolynomial,
    g: &FunctionalGraph,
    ctx: &Arc<UnramifiedContext>,
) -> Result<GoodReduction> {
    let p = ctx.p();
    if f.degree().unwrap_or(0) == 0 {
        return Ok(GoodReduction::NotStrict(NotStrictReason::Constant));
    }
    if let Some(index) = f
        .coeffs()
        .iter()
        .position(|c| !c.is_zero() && c.padic_valuation(p).finite().is_some_and(|v| v < 0))
    {
        return Ok(GoodReduction::NotStrict(NotStrictReason::NonIntegral { index }));
    }
    let lead = f.leading().expect("nonconstant").padic_valuation(p);
    if lead != Valuation::Finite(0) {
        return Ok(GoodReduction::NotStrict(NotStrictReason::LeadingNotUnit { valuation: lead }));
    }
    let pb = BigInt::from(p);
    let reduced = f.map(|c| {
        let den_inv = c
            .denom()
            .extended_gcd(&pb)
            .x;
        OkElement::from_integer(&(c.numer() * den_inv).mod_floor(&pb))
    });
    let q = pow_p(p, ctx.f()).to_usize().unwrap_or(usize::MAX);
    if g.size() != q {
        return Err(Error::MalformedSystem(format!(
            "graph has {} vertices, residue field has {q}",
            g.size()
        )));
    }
    let induced = graph_of_polynomial_ok(&reduced, ctx, 1)?;
    Ok(match (0..q).find(|&x| induced.successor(x) != g.successor(x)) {
        Some(vertex) => GoodReduction::StrictGoodMismatch {
            vertex,
            expected: g.successor(vertex),
            got: induced.successor(vertex),
        },
        None => GoodReduction::StrictGoodMatches,
    })
}

/// `sigma^{-1} ∘ f ∘ sigma` for `sigma(z) = alpha z + beta` with `alpha` a
/// p-adic unit. The result is p-integral but may have non-integer
/// coefficients.
pub fn conjugate_affine_isometry(
    f: &IntPolynomial,
    alpha: &BigInt,
    beta: &BigInt,
    p: u32,
) -> Result<RatPolynomial> {
    check_prime(p)?;
    let v = alpha.padic_valuation(p);
    if v != Valuation::Finite(0) {
        return Err(Error::NotIsometry(v));
    }
    let a = BigRational::from_integer(alpha.clone());
    let b = BigRational::from_integer(beta.clone());
    let sigma = RatPolynomial::new(vec![b.clone(), a.clone()]);
    let inner = f.map(|c| BigRational::from_integer(c.clone())).compose(&sigma);
    let inv_a = BigRational::one() / a;
    let shifted = &inner - &RatPolynomial::constant(b);
    Ok(shifted.scale(&inv_a))
}

/// `sigma^{-1}(B)` for the affine isometry `sigma(z) = alpha z + beta`.
pub fn conjugate_ball(b: &Ball, alpha: &BigInt, beta: &BigInt) -> Result<Ball<BigRational>> {
    if alpha.is_zero() {
        return Err(Error::DegenerateAffine);
    }
    let c = BigRational::new(b.center() - beta, alpha.clone());
    Ball::new(c, b.radius_exp(), b.p())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interpreter::{ball_system_from_graph, synthesize_matching, synthesize_piecewise_affine};

    fn g(s: &[usize]) -> FunctionalGraph {
        FunctionalGraph::from_successors(s.to_vec()).unwrap()
    }

    fn ip(cs: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(cs)
    }

    #[test]
    fn commutation_examples() {
        let c = check_inclusion_by_commutation(&ip(&[1, -1]), &g(&[1, 0]), 2, 1).unwrap();
        assert!(c.holds && c.exact_on_states());
        let c = check_inclusion_by_commutation(&ip(&[1, 1]), &g(&[0, 1]), 2, 1).unwrap();
        assert_eq!(
            c.witness,
            Some(CommutationWitness {
                vertex: 0,
                expected: 0,
                got: BigInt::from(1)
            })
        );
        let c = check_inclusion_by_commutation(&ip(&[1, -1]), &g(&[1, 0]), 2, 2).unwrap();
        assert!(c.holds && !c.exact_on_states());
        let c = check_inclusion_by_commutation(&ip(&[0, 1]), &g(&[0, 1, 2]), 2, 2).unwrap();
        assert!(c.holds && !c.exact_on_states());
        assert_eq!((c.surplus, c.surplus_into_states), (1, 0));
    }

    #[test]
    fn frobenius_graph_commutes() {
        let ctx = UnramifiedContext::standard(2, 2, 1).unwrap();
        let sq = ip(&[0, 0, 1]).map(OkElement::from_integer);
        let c = check_inclusion_by_commutation_ok(&sq, &g(&[0, 1, 3, 2]), &ctx, 1).unwrap();
        assert!(c.exact_on_states());
    }

    #[test]
    fn swap_certified_exact() {
        let bs = ball_system_from_graph(&g(&[1, 0]), 2, 1).unwrap();
        let f = ip(&[1, -1]);
        for psi in [synthesize_matching(&bs, &f), synthesize_piecewise_affine(&bs)] {
            let r = robust_exactness_certificate(&f, &psi, &bs).unwrap();
            assert!(r.exact && r.with_inclusion && r.interpreter);
            assert!(r
                .balls
                .iter()
                .all(|b| b.interpretation == Some(InterpretationType::from_sigma_exp(0))));
        }
        let r = robust_exactness_certificate(&f, &synthesize_matching(&bs, &f), &bs).unwrap();
        assert!(r.robust.passes);
        assert_eq!(r.robust.min_epsilon, NormExponent::Infinity);
    }

    #[test]
    fn perturbed_swap() {
        let bs = ball_system_from_graph(&g(&[1, 0]), 2, 1).unwrap();
        let f = ip(&[1, -1, 8]);
        let psi = synthesize_matching(&bs, &ip(&[1, -1]));
        let r = robust_exactness_certificate(&f, &psi, &bs).unwrap();
        assert!(r.robust.passes && r.exact);
        assert!(r.balls.iter().all(|b| b.epsilon >= NormExponent::Finite(3)));
    }

    #[test]
    fn squaring_not_exact_but_included() {
        let bs = ball_system_from_graph(&g(&[0, 1]), 2, 1).unwrap();
        let f = ip(&[0, 0, 1]);
        let r = robust_exactness_certificate(&f, &synthesize_piecewise_affine(&bs), &bs).unwrap();
        assert!(!r.exact && r.with_inclusion && r.interpreter);
        assert!(!r.robust.passes);
        assert_eq!(
            stratum_signature(&f, &bs).unwrap(),
            vec![(0, Valuation::Infinite), (1, Valuation::Finite(1))]
        );
    }

    #[test]
    fn multipliers_of_squaring() {
        let f = ip(&[0, 0, 1]);
        for (p, v1) in [(2u32, 1i64), (3, 0), (5, 0), (7, 0)] {
            let sq = crate::graph::graph_of_polynomial_mod(&f, p as u64).unwrap();
            let bs = ball_system_from_graph(&sq, p, 1).unwrap();
            let rep = multiplier_report(&f, &bs);
            assert_eq!(rep[0].class, StabilityClass::Superattracting);
            assert_eq!(rep[1].index, 1);
            assert_eq!(rep[1].valuation, Valuation::Finite(v1));
        }
    }

    #[test]
    fn signature_examples() {
        let bs = ball_system_from_graph(&g(&[1, 0]), 2, 1).unwrap();
        assert!(stratum_signature(&ip(&[1, -1]), &bs).unwrap().is_empty());
        let bs = ball_system_from_graph(&g(&[1, 0, 1, 3]), 2, 2).unwrap();
        let psi = synthesize_piecewise_affine(&bs);
        assert_eq!(psi.signature(&bs), vec![(3, Valuation::Finite(0))]);
        assert!(matches!(
            stratum_signature(&ip(&[0, 1]), &bs),
            Err(Error::NotCertified(_))
        ));
    }

    #[test]
    fn good_reduction_examples() {
        let f4 = UnramifiedContext::standard(2, 2, 1).unwrap();
        let sq = RatPolynomial::from_i64s(&[0, 0, 1]);
        assert_eq!(
            good_reduction_check(&sq, &g(&[0, 1, 3, 2]), &f4).unwrap(),
            GoodReduction::StrictGoodMatches
        );
        let drop = RatPolynomial::from_i64s(&[0, 1, 2]);
        assert_eq!(
            good_reduction_check(&drop, &g(&[0, 1, 3, 2]), &f4).unwrap(),
            GoodReduction::NotStrict(NotStrictReason::LeadingNotUnit {
                valuation: Valuation::Finite(1)
            })
        );
        let z2 = UnramifiedContext::standard(2, 1, 1).unwrap();
        let f = RatPolynomial::from_i64s(&[1, 0, 1]);
        assert_eq!(
            good_reduction_check(&f, &g(&[1, 0]), &z2).unwrap(),
            GoodReduction::StrictGoodMatches
        );
        assert!(matches!(
            good_reduction_check(&f, &g(&[0, 0]), &z2).unwrap(),
            GoodReduction::StrictGoodMismatch { vertex: 0, .. }
        ));
        let half = RatPolynomial::new(vec![BigRational::new(1.into(), 2.into()), BigRational::one()]);
        assert_eq!(
            good_reduction_check(&half, &g(&[1, 0]), &z2).unwrap(),
            GoodReduction::NotStrict(NotStrictReason::NonIntegral { index: 0 })
        );
    }

    #[test]
    fn conjugation_examples() {
        let f = ip(&[0, 0, 1]);
        let id = conjugate_affine_isometry(&f, &BigInt::from(1), &BigInt::from(0), 3).unwrap();
        assert_eq!(id, RatPolynomial::from_i64s(&[0, 0, 1]));
        let c = conjugate_affine_isometry(&f, &BigInt::from(1), &BigInt::from(1), 3).unwrap();
        assert_eq!(c, RatPolynomial::from_i64s(&[0, 2, 1]));
        assert_eq!(
            conjugate_affine_isometry(&f, &BigInt::from(3), &BigInt::from(0), 3),
            Err(Error::NotIsometry(Valuation::Finite(1)))
        );
        let c = conjugate_affine_isometry(&f, &BigInt::from(2), &BigInt::from(0), 3).unwrap();
        assert!(c.is_p_integral(3));
        assert_eq!(c, RatPolynomial::from_i64s(&[0, 0, 2]));
    }

    #[test]
    fn gf4_cycle_multiplier() {
        let ctx = UnramifiedContext::standard(2, 2, 4).unwrap();
        let w = OkElement::generator(&ctx, 4).teichmuller(4).unwrap();
        let w2 = w.clone() * w.clone();
        let sq = ip(&[0, 0, 1]).map(OkElement::from_integer);
        let mu = cycle_multiplier(&sq, &[w, w2]);
        assert_eq!(mu.padic_valuation(2), Valuation::Finite(2));
    }
}
