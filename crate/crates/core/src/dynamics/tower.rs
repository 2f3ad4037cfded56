//! Compatible towers of maps on `Z/p^n Z` and the finite-depth checks on
//! their limit.

use num_bigint::BigInt;

use crate::ball::Ball;
use crate::error::{Error, Result};
use crate::graph::{graph_of_polynomial_mod_with_limit, FunctionalGraph};
use crate::padic::{check_prime, pow_p};
use crate::poly::gauss_norm_on_ball;
use crate::scalar::NormExponent;
use crate::IntPolynomial;

/// Maps `f_n` on `Z/p^n Z` for `n = 1..=height`; `levels[n - 1]` is `f_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tower {
    p: u32,
    levels: Vec<FunctionalGraph>,
}

fn level_size(p: u32, n: usize) -> Option<usize> {
    (p as usize).checked_pow(n as u32)
}

impl Tower {
    /// Checks that level `n` has `p^n` vertices, not compatibility.
    pub fn from_levels(p: u32, levels: Vec<FunctionalGraph>) -> Result<Self> {
        check_prime(p)?;
        for (i, g) in levels.iter().enumerate() {
            let want = level_size(p, i + 1);
            if want != Some(g.size()) {
                return Err(Error::InvalidTower(format!(
                    "level {} has {} vertices, expected {}^{}",
                    i + 1,
                    g.size(),
                    p,
                    i + 1
                )));
            }
        }
        Ok(Tower { p, levels })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn height(&self) -> usize {
        self.levels.len()
    }

    pub fn levels(&self) -> &[FunctionalGraph] {
        &self.levels
    }

    /// `f_n` for `1 <= n <= height`.
    pub fn level(&self, n: usize) -> &FunctionalGraph {
        &self.levels[n - 1]
    }
}

pub fn build_tower(poly: &IntPolynomial, p: u32, max_n: u32) -> Result<Tower> {
    build_tower_with_limit(poly, p, max_n, crate::DEFAULT_SIZE_LIMIT)
}

pub fn build_tower_with_limit(poly: &IntPolynomial, p: u32, max_n: u32, limit: u64) -> Result<Tower> {
    check_prime(p)?;
    let top = (p as u64).checked_pow(max_n).ok_or(Error::SizeLimit {
        required: u128::MAX,
        limit: limit as u128,
    })?;
    if top > limit {
        return Err(Error::SizeLimit {
            required: top as u128,
            limit: limit as u128,
        });
    }
    let levels = (1..=max_n)
        .map(|n| graph_of_polynomial_mod_with_limit(poly, (p as u64).pow(n), limit))
        .collect::<Result<Vec<_>>>()?;
    let tower = Tower::from_levels(p, levels)?;
    if let Some(w) = check_tower_compatibility(&tower).witness {
        return Err(Error::Internal(format!(
            "polynomial tower incompatible at level {} residue {}",
            w.level, w.residue
        )));
    }
    Ok(tower)
}

/// `f_{level+1}(residue) mod p^level != f_level(residue mod p^level)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TowerWitness {
    pub level: usize,
    pub residue: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TowerCheck {
    pub holds: bool,
    pub witness: Option<TowerWitness>,
}

impl TowerCheck {
    fn from_witness(witness: Option<TowerWitness>) -> Self {
        TowerCheck {
            holds: witness.is_none(),
            witness,
        }
    }
}

fn first_incompatibility(t: &Tower) -> Option<TowerWitness> {
    for n in 1..t.height() {
        let q = t.level(n).size();
        let upper = t.level(n + 1);
        let lower = t.level(n);
        for x in 0..upper.size() {
            if upper.successor(x) % q != lower.successor(x % q) {
                return Some(TowerWitness { level: n, residue: x });
            }
        }
    }
    None
}

/// Reduction commutes with the maps at every pair of adjacent levels.
pub fn check_tower_compatibility(t: &Tower) -> TowerCheck {
    TowerCheck::from_witness(first_incompatibility(t))
}

/// Route-1 convergence at finite depth: the locally constant lifts
/// `f^lc_n(z) = F_n(z mod p^n)`, read as integers in `[0, p^n)`, satisfy
/// `|f^lc_{n+1}(z) - f^lc_n(z)|_p <= p^{-n}` at every residue mod `p^{n+1}`.
pub fn locally_constant_lift_check(t: &Tower) -> TowerCheck {
    for n in 1..t.height() {
        let q = t.level(n).size() as i64;
        for z in 0..t.level(n + 1).size() {
            let hi = t.level(n + 1).successor(z) as i64;
            let lo = t.level(n).successor(z % q as usize) as i64;
            if (hi - lo) % q != 0 {
                return TowerCheck::from_witness(Some(TowerWitness { level: n, residue: z }));
            }
        }
    }
    TowerCheck::from_witness(None)
}

/// Every cycle at level `n + 1` reduces onto a cycle at level `n` whose
/// length divides it.
pub fn reduction_preserves_cycles(t: &Tower) -> bool {
    (1..t.height()).all(|n| {
        let q = t.level(n).size();
        let lower = t.level(n);
        t.level(n + 1).cycles().iter().all(|c| {
            let start = c[0] % q;
            match lower.period(start) {
                Some(len) => {
                    c.len() % len == 0 && c.iter().all(|&x| lower.period(x % q) == Some(len))
                }
                None => false,
            }
        })
    })
}

/// Length of the cycle reached from `seed mod p^n`, for `n = 1..=max_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParabolicGrowth {
    pub lengths: Vec<usize>,
    /// The lengths are not all equal.
    pub parabolic: bool,
}

pub fn detect_parabolic_growth(poly: &IntPolynomial, p: u32, max_n: u32, seed: u64) -> Result<ParabolicGrowth> {
    let tower = build_tower(poly, p, max_n)?;
    let lengths: Vec<usize> = tower
        .levels()
        .iter()
        .map(|g| g.eventual_cycle_length((seed % g.size() as u64) as usize))
        .collect();
    let parabolic = lengths.windows(2).any(|w| w[0] != w[1]);
    Ok(ParabolicGrowth { lengths, parabolic })
}

/// Outcome of the uniform Cauchy test on a sequence of integer polynomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Route2Verdict {
    pub passes: bool,
    /// `seq[level - 1]` disagrees with `f_level` at this residue.
    pub level_failure: Option<TowerWitness>,
    /// Gauss norm exponent of `seq[level] - seq[level - 1]` on the unit ball
    /// falls below `level - C_exp`.
    pub cauchy_failure: Option<(usize, NormExponent)>,
}

/// `seq[n - 1]` must induce `f_n` (level correctness) and successive
/// differences must have Gauss norm at most `p^{C_exp - n}` on `Z_p`.
pub fn route2_cauchy_check(seq: &[IntPolynomial], t: &Tower, c_exp: i64) -> Result<Route2Verdict> {
    if seq.len() != t.height() {
        return Err(Error::InvalidTower(format!(
            "{} polynomials for a tower of height {}",
            seq.len(),
            t.height()
        )));
    }
    let p = t.p();
    let mut level_failure = None;
    'outer: for (i, poly) in seq.iter().enumerate() {
        let g = t.level(i + 1);
        let m = g.size() as u64;
        for z in 0..m {
            if poly.eval_mod_u64(z, m) as usize != g.successor(z as usize) {
                level_failure = Some(TowerWitness {
                    level: i + 1,
                    residue: z as usize,
                });
                break 'outer;
            }
        }
    }
    let unit = Ball::new(BigInt::from(0), 0, p)?;
    let mut cauchy_failure = None;
    for n in 1..seq.len() {
        let diff = &seq[n] - &seq[n - 1];
        let e = gauss_norm_on_ball(&diff, &unit);
        if e < NormExponent::Finite(n as i64 - c_exp) {
            cauchy_failure = Some((n, e));
            break;
        }
    }
    Ok(Route2Verdict {
        passes: level_failure.is_none() && cauchy_failure.is_none(),
        level_failure,
        cauchy_failure,
    })
}

/// `seq[n - 1] = P + p^n z`, the standard example of a Cauchy sequence
/// that converges to `P` while inducing its tower.
pub fn shifted_sequence(poly: &IntPolynomial, p: u32, height: u32) -> Vec<IntPolynomial> {
    (1..=height)
        .map(|n| poly + &IntPolynomial::monomial(pow_p(p, n), 1))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Rigidity {
    /// `c1 = c2 mod p^n` and the graphs agree.
    Identical,
    /// `c1 = c2 mod p^n` yet the graphs differ at this vertex.
    Violated { vertex: usize },
    /// The constants are incongruent, so nothing is asserted.
    NotCongruent { graphs_equal: bool },
}

/// Compares the graphs of `z^2 + c1` and `z^2 + c2` on `Z/p^n Z`.
pub fn rigidity_check(c1: &BigInt, c2: &BigInt, p: u32, n: u32) -> Result<Rigidity> {
    check_prime(p)?;
    let m = (p as u64).checked_pow(n).ok_or(Error::SizeLimit {
        required: u128::MAX,
        limit: crate::DEFAULT_SIZE_LIMIT as u128,
    })?;
    let quad = |c: &BigInt| IntPolynomial::new(vec![c.clone(), BigInt::from(0), BigInt::from(1)]);
    let g1 = graph_of_polynomial_mod_with_limit(&quad(c1), m, crate::DEFAULT_SIZE_LIMIT)?;
    let g2 = graph_of_polynomial_mod_with_limit(&quad(c2), m, crate::DEFAULT_SIZE_LIMIT)?;
    let congruent = ((c1 - c2) % BigInt::from(m)) == BigInt::from(0);
    let diff = (0..g1.size()).find(|&x| g1.successor(x) != g2.successor(x));
    Ok(match (congruent, diff) {
        (true, None) => Rigidity::Identical,
        (true, Some(vertex)) => Rigidity::Violated { vertex },
        (false, d) => Rigidity::NotCongruent {
            graphs_equal: d.is_none(),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(cs: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(cs)
    }

    #[test]
    fn z2_plus_1_tower_over_z2() {
        let t = build_tower(&ip(&[1, 0, 1]), 2, 4).unwrap();
        assert_eq!(t.height(), 4);
        assert_eq!(t.level(1).successors(), &[1, 0]);
        assert_eq!(t.level(2).successors(), &[1, 2, 1, 2]);
        assert!(check_tower_compatibility(&t).holds);
        assert!(locally_constant_lift_check(&t).holds);
        assert!(reduction_preserves_cycles(&t));
    }

    #[test]
    fn translation_tower_is_one_cycle_per_level() {
        let t = build_tower(&ip(&[1, 1]), 2, 3).unwrap();
        for n in 1..=3 {
            let cycles = t.level(n).cycles();
            assert_eq!(cycles.len(), 1);
            assert_eq!(cycles[0].len(), 1 << n);
        }
        assert!(locally_constant_lift_check(&t).holds);
    }

    #[test]
    fn identity_tower() {
        let t = build_tower(&ip(&[0, 1]), 3, 3).unwrap();
        for n in 1..=3 {
            assert_eq!(t.level(n), &FunctionalGraph::identity(3usize.pow(n as u32)));
        }
    }

    #[test]
    fn mutated_level_is_detected() {
        let t = build_tower(&ip(&[1, 0, 1]), 2, 4).unwrap();
        let mut levels = t.levels().to_vec();
        let mut succ = levels[1].successors().to_vec();
        succ[0] = (succ[0] + 1) % 4;
        levels[1] = FunctionalGraph::from_successors(succ).unwrap();
        let bad = Tower::from_levels(2, levels).unwrap();
        let check = check_tower_compatibility(&bad);
        assert!(!check.holds);
        let w = check.witness.unwrap();
        // Residue 0 at level 2 now maps to 2, which reduces to 0, not f_1(0) = 1.
        assert_eq!(w, TowerWitness { level: 1, residue: 0 });
        assert!(!locally_constant_lift_check(&bad).holds);

        let single = Tower::from_levels(2, vec![FunctionalGraph::identity(2)]).unwrap();
        assert!(check_tower_compatibility(&single).holds);
        assert!(locally_constant_lift_check(&single).holds);
    }

    #[test]
    fn from_levels_checks_sizes() {
        assert!(matches!(
            Tower::from_levels(2, vec![FunctionalGraph::identity(3)]),
            Err(Error::InvalidTower(_))
        ));
    }

    #[test]
    fn size_limit() {
        assert!(matches!(
            build_tower_with_limit(&ip(&[0, 1]), 2, 11, 1024),
            Err(Error::SizeLimit { required: 2048, .. })
        ));
    }

    #[test]
    fn growth_examples() {
        let g = detect_parabolic_growth(&ip(&[1, 1]), 2, 3, 0).unwrap();
        assert_eq!(g.lengths, vec![2, 4, 8]);
        assert!(g.parabolic);
        let g = detect_parabolic_growth(&ip(&[0, 0, 1]), 7, 3, 1).unwrap();
        assert_eq!(g.lengths, vec![1, 1, 1]);
        assert!(!g.parabolic);
        let g = detect_parabolic_growth(&ip(&[1, 0, 1]), 5, 3, 0).unwrap();
        assert_eq!(g.lengths, vec![3, 3, 3]);
    }

    #[test]
    fn route2_examples() {
        let p = ip(&[1, 0, 1]);
        let t = build_tower(&p, 2, 4).unwrap();
        let constant = vec![p.clone(); 4];
        assert!(route2_cauchy_check(&constant, &t, 0).unwrap().passes);

        let shifted = shifted_sequence(&p, 2, 4);
        assert_eq!(shifted[0], ip(&[1, 2, 1]));
        let v = route2_cauchy_check(&shifted, &t, 0).unwrap();
        assert!(v.passes, "{v:?}");
        // The differences have norm exactly 2^{-n}; a tighter constant fails.
        let v = route2_cauchy_check(&shifted, &t, -1).unwrap();
        assert_eq!(v.cauchy_failure, Some((1, NormExponent::Finite(1))));

        let perturbed = vec![ip(&[1, 1, 1]); 4];
        let v = route2_cauchy_check(&perturbed, &t, 0).unwrap();
        assert!(!v.passes);
        // z^2 + z + 1 is constant 1 mod 2, while z^2 + 1 sends 1 to 0.
        assert_eq!(v.level_failure, Some(TowerWitness { level: 1, residue: 1 }));
        assert!(route2_cauchy_check(&constant[..3], &t, 0).is_err());
    }

    #[test]
    fn rigidity_examples() {
        let b = |n: i64| BigInt::from(n);
        assert_eq!(rigidity_check(&b(0), &b(9), 3, 2).unwrap(), Rigidity::Identical);
        assert_eq!(rigidity_check(&b(0), &b(3), 3, 1).unwrap(), Rigidity::Identical);
        assert_eq!(rigidity_check(&b(4), &b(4), 2, 3).unwrap(), Rigidity::Identical);
        assert_eq!(rigidity_check(&b(-1), &b(7), 2, 3).unwrap(), Rigidity::Identical);
        assert_eq!(
            rigidity_check(&b(0), &b(3), 3, 2).unwrap(),
            Rigidity::NotCongruent { graphs_equal: false }
        );
    }
}
