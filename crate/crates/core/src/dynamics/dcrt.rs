//! Congruence-preserving maps on `Z/mZ` and their Chinese remainder
//! factorization.

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::graph::{graph_product, FunctionalGraph};
use crate::scalar::is_prime;
use crate::IntPolynomial;

/// Default cap on `m` for brute-force congruence checks.
pub const CP_SIZE_LIMIT: u64 = 10_000;

/// A divisor `d` and states `x < y` with `x = y (mod d)` but
/// `f(x) != f(y) (mod d)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CpWitness {
    pub d: u64,
    pub x: usize,
    pub y: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CpVerdict {
    pub is_cp: bool,
    pub witness: Option<CpWitness>,
}

fn proper_divisors_desc(m: u64) -> Vec<u64> {
    (2..m).rev().filter(|d| m % d == 0).collect()
}

pub fn is_congruence_preserving(g: &FunctionalGraph) -> Result<CpVerdict> {
    is_congruence_preserving_with_limit(g, CP_SIZE_LIMIT)
}

/// Brute force over every proper divisor, largest first, and every
/// congruent pair.
pub fn is_congruence_preserving_with_limit(g: &FunctionalGraph, limit: u64) -> Result<CpVerdict> {
    let m = g.size() as u64;
    if m > limit {
        return Err(Error::SizeLimit {
            required: m as u128,
            limit: limit as u128,
        });
    }
    for d in proper_divisors_desc(m) {
        let du = d as usize;
        // Images mod d must agree on each residue class mod d.
        for r in 0..du {
            let want = g.successor(r) % du;
            let mut y = r + du;
            while y < g.size() {
                if g.successor(y) % du != want {
                    return Ok(CpVerdict {
                        is_cp: false,
                        witness: Some(CpWitness { d, x: r, y }),
                    });
                }
                y += du;
            }
        }
    }
    Ok(CpVerdict {
        is_cp: true,
        witness: None,
    })
}

/// Number of congruence-preserving self-maps of `Z/mZ`, by enumeration.
pub fn count_congruence_preserving_maps(m: usize) -> Result<u64> {
    let total = (m as u64).checked_pow(m as u32).filter(|&t| t <= 1_000_000).ok_or(
        Error::SizeLimit {
            required: (m as u128).saturating_pow(m as u32),
            limit: 1_000_000,
        },
    )?;
    let mut count = 0;
    for code in 0..total {
        let mut c = code;
        let succ = (0..m)
            .map(|_| {
                let s = (c % m as u64) as usize;
                c /= m as u64;
                s
            })
            .collect();
        let g = FunctionalGraph::from_successors(succ)?;
        if is_congruence_preserving(&g)?.is_cp {
            count += 1;
        }
    }
    Ok(count)
}

/// Prime factorization as `(p, k)` pairs in increasing order of `p`.
pub fn factorize(mut m: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= m {
        if m % d == 0 {
            let mut k = 0;
            while m % d == 0 {
                m /= d;
                k += 1;
            }
            out.push((d, k));
        }
        d += 1;
    }
    if m > 1 {
        out.push((m, 1));
    }
    out
}

/// Row-major index of `(x mod q_1, ..., x mod q_k)` in the product graph.
pub fn theta_index(x: u64, moduli: &[u64]) -> usize {
    moduli
        .iter()
        .fold(0u64, |acc, &q| acc * q + x % q) as usize
}

/// The unique `x mod prod(q_i)` with `x = r_i (mod q_i)`; moduli pairwise
/// coprime.
pub fn crt(residues: &[u64], moduli: &[u64]) -> u64 {
    let mut x: u128 = 0;
    let mut m: u128 = 1;
    for (&r, &q) in residues.iter().zip(moduli) {
        // Solve x + m t = r (mod q).
        let q128 = q as i128;
        let mm = (m % q as u128) as i128;
        let inv = mm.extended_gcd(&q128).x.rem_euclid(q128);
        let diff = (r as i128 - (x % q as u128) as i128).rem_euclid(q128);
        let t = (diff * inv).rem_euclid(q128) as u128;
        x += m * t;
        m *= q as u128;
    }
    (x % m) as u64
}

fn check_coprime(moduli: &[u64]) -> Result<()> {
    for i in 0..moduli.len() {
        for j in i + 1..moduli.len() {
            if moduli[i].gcd(&moduli[j]) != 1 {
                return Err(Error::NonCoprimeModuli(moduli[i], moduli[j]));
            }
        }
    }
    Ok(())
}

/// Components of a map together with the verified isomorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dcrt {
    pub moduli: Vec<u64>,
    pub components: Vec<FunctionalGraph>,
}

impl Dcrt {
    pub fn product(&self) -> Result<FunctionalGraph> {
        let mut it = self.components.iter();
        let first = it.next().cloned().unwrap_or_else(|| FunctionalGraph::identity(1));
        it.try_fold(first, |acc, g| graph_product(&acc, g))
    }
}

fn verify_theta(g: &FunctionalGraph, moduli: &[u64], product: &FunctionalGraph) -> Result<()> {
    if product.size() != g.size() {
        return Err(Error::Internal("product size differs from the global map".into()));
    }
    for x in 0..g.size() as u64 {
        let lhs = theta_index(g.successor(x as usize) as u64, moduli);
        let rhs = product.successor(theta_index(x, moduli));
        if lhs != rhs {
            return Err(Error::Internal(format!(
                "edge out of {x} is not preserved by the CRT bijection"
            )));
        }
    }
    Ok(())
}

/// Split a congruence-preserving map along `m = prod p_i^{k_i}` and verify
/// edge by edge that the CRT bijection is a graph isomorphism onto the
/// product of the components.
pub fn dcrt_decompose(g: &FunctionalGraph, factorization: &[(u64, u32)]) -> Result<Dcrt> {
    let m = g.size() as u64;
    let moduli: Vec<u64> = factorization
        .iter()
        .map(|&(p, k)| {
            if !is_prime(p) {
                return Err(Error::InvalidFactorization(format!("{p} is not prime")));
            }
            p.checked_pow(k)
                .ok_or_else(|| Error::InvalidFactorization(format!("{p}^{k} overflows")))
        })
        .collect::<Result<_>>()?;
    if moduli.iter().try_fold(1u64, |a, &q| a.checked_mul(q)) != Some(m) {
        return Err(Error::InvalidFactorization(format!(
            "factors do not multiply to {m}"
        )));
    }
    check_coprime(&moduli)?;
    let verdict = is_congruence_preserving_with_limit(g, crate::DEFAULT_SIZE_LIMIT)?;
    if let Some(w) = verdict.witness {
        return Err(Error::NotCongruencePreserving {
            d: w.d,
            x: w.x,
            y: w.y,
        });
    }
    let components: Vec<FunctionalGraph> = moduli
        .iter()
        .map(|&q| {
            FunctionalGraph::from_successors(
                (0..q as usize)
                    .map(|r| g.successor(r) % q as usize)
                    .collect(),
            )
        })
        .collect::<Result<_>>()?;
    let dcrt = Dcrt { moduli, components };
    verify_theta(g, &dcrt.moduli, &dcrt.product()?)?;
    Ok(dcrt)
}

/// Glue component maps on pairwise coprime moduli into one map on
/// `Z/(prod q_i)Z`.
pub fn dcrt_assemble(components: &[FunctionalGraph]) -> Result<FunctionalGraph> {
    let moduli: Vec<u64> = components.iter().map(|c| c.size() as u64).collect();
    check_coprime(&moduli)?;
    for c in components {
        if let Some(w) = is_congruence_preserving_with_limit(c, crate::DEFAULT_SIZE_LIMIT)?.witness {
            return Err(Error::NotCongruencePreserving {
                d: w.d,
                x: w.x,
                y: w.y,
            });
        }
    }
    let m = moduli
        .iter()
        .try_fold(1u64, |a, &q| a.checked_mul(q))
        .filter(|&m| m <= crate::DEFAULT_SIZE_LIMIT)
        .ok_or(Error::SizeLimit {
            required: moduli.iter().map(|&q| q as u128).product(),
            limit: crate::DEFAULT_SIZE_LIMIT as u128,
        })?;
    let mut residues = vec![0u64; moduli.len()];
    let succ = (0..m)
        .map(|x| {
            for (i, (c, &q)) in components.iter().zip(&moduli).enumerate() {
                residues[i] = c.successor((x % q) as usize) as u64;
            }
            crt(&residues, &moduli) as usize
        })
        .collect();
    let g = FunctionalGraph::from_successors(succ)?;
    if !is_congruence_preserving_with_limit(&g, crate::DEFAULT_SIZE_LIMIT)?.is_cp {
        return Err(Error::Internal("assembled map is not congruence-preserving".into()));
    }
    Ok(g)
}

/// Whether the local polynomial maps, glued by CRT, give the global map:
/// for every residue tuple `r`, `Theta^{-1}(Phi(r)) = F(Theta^{-1}(r))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductCheck {
    pub holds: bool,
    /// A residue tuple where the square fails to commute.
    pub witness: Option<Vec<u64>>,
}

/// `locals[i] = (polynomial, p_i, k_i)`.
pub fn verify_product_phase_space(
    locals: &[(IntPolynomial, u64, u32)],
    global: &FunctionalGraph,
) -> Result<ProductCheck> {
    let moduli: Vec<u64> = locals
        .iter()
        .map(|(_, p, k)| {
            p.checked_pow(*k)
                .ok_or_else(|| Error::InvalidFactorization(format!("{p}^{k} overflows")))
        })
        .collect::<Result<_>>()?;
    check_coprime(&moduli)?;
    let m: u64 = moduli.iter().product();
    if m != global.size() as u64 {
        return Err(Error::InvalidFactorization(format!(
            "local moduli multiply to {m}, global map has {} states",
            global.size()
        )));
    }
    let mut tuple = vec![0u64; moduli.len()];
    let mut image = vec![0u64; moduli.len()];
    for code in 0..m {
        let mut c = code;
        for i in (0..moduli.len()).rev() {
            tuple[i] = c % moduli[i];
            c /= moduli[i];
        }
        for (i, (poly, _, _)) in locals.iter().enumerate() {
            image[i] = poly.eval_mod_u64(tuple[i], moduli[i]);
        }
        let x = crt(&tuple, &moduli);
        if crt(&image, &moduli) != global.successor(x as usize) as u64 {
            return Ok(ProductCheck {
                holds: false,
                witness: Some(tuple.clone()),
            });
        }
    }
    Ok(ProductCheck {
        holds: true,
        witness: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::graph_of_polynomial_mod;

    fn g(s: &[usize]) -> FunctionalGraph {
        FunctionalGraph::from_successors(s.to_vec()).unwrap()
    }

    fn ip(cs: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(cs)
    }

    #[test]
    fn cp_examples() {
        let f = graph_of_polynomial_mod(&ip(&[1, 0, 1]), 6).unwrap();
        assert!(is_congruence_preserving(&f).unwrap().is_cp);
        let bad = is_congruence_preserving(&g(&[1, 2, 3, 5, 0, 1])).unwrap();
        assert_eq!(bad.witness, Some(CpWitness { d: 3, x: 0, y: 3 }));
        assert!(is_congruence_preserving(&g(&[4, 4, 0, 2, 1])).unwrap().is_cp);
    }

    #[test]
    fn counts_for_tiny_moduli() {
        // Prime moduli: every map. m = 4: f mod 2 must be well defined.
        assert_eq!(count_congruence_preserving_maps(3).unwrap(), 27);
        assert_eq!(count_congruence_preserving_maps(4).unwrap(), 4 * 4 * 4 * 4 / 4);
    }

    #[test]
    fn factorization_and_crt() {
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(factorize(7), vec![(7, 1)]);
        for x in 0..30u64 {
            let r = [x % 2, x % 3, x % 5];
            assert_eq!(crt(&r, &[2, 3, 5]), x);
        }
        assert_eq!(theta_index(5, &[2, 3]), 5);
        assert_eq!(theta_index(4, &[2, 3]), 1);
    }

    #[test]
    fn decompose_z2_plus_1_mod_6() {
        let f = graph_of_polynomial_mod(&ip(&[1, 0, 1]), 6).unwrap();
        assert_eq!(f.successors(), &[1, 2, 5, 4, 5, 2]);
        let d = dcrt_decompose(&f, &factorize(6)).unwrap();
        assert_eq!(d.components, vec![g(&[1, 0]), g(&[1, 2, 2])]);
        assert_eq!(dcrt_assemble(&d.components).unwrap(), f);
    }

    #[test]
    fn identity_mod_12() {
        let d = dcrt_decompose(&FunctionalGraph::identity(12), &factorize(12)).unwrap();
        assert_eq!(d.moduli, vec![4, 3]);
        assert_eq!(d.components, vec![FunctionalGraph::identity(4), FunctionalGraph::identity(3)]);
    }

    #[test]
    fn decompose_rejects_example_table() {
        assert_eq!(
            dcrt_decompose(&g(&[1, 2, 3, 5, 0, 1]), &factorize(6)),
            Err(Error::NotCongruencePreserving { d: 3, x: 0, y: 3 })
        );
    }

    #[test]
    fn assemble_examples() {
        let f3 = g(&[2, 0, 0]);
        let f4 = g(&[1, 2, 3, 0]);
        let glued = dcrt_assemble(&[f3.clone(), f4.clone()]).unwrap();
        for x in 0..12 {
            assert_eq!(glued.successor(x) % 3, f3.successor(x % 3));
            assert_eq!(glued.successor(x) % 4, f4.successor(x % 4));
        }
        let glued = dcrt_assemble(&[g(&[1, 0]), g(&[0, 1, 2])]).unwrap();
        assert!(glued.cycles().iter().all(|c| c.len() == 2));
        assert_eq!(
            dcrt_assemble(&[FunctionalGraph::identity(2), FunctionalGraph::identity(3)]).unwrap(),
            FunctionalGraph::identity(6)
        );
        assert_eq!(
            dcrt_assemble(&[FunctionalGraph::identity(4), FunctionalGraph::identity(6)]),
            Err(Error::NonCoprimeModuli(4, 6))
        );
        assert!(matches!(
            dcrt_assemble(&[g(&[1, 0, 0, 0]), FunctionalGraph::identity(3)]),
            Err(Error::NotCongruencePreserving { .. })
        ));
    }

    #[test]
    fn product_phase_space() {
        let global = graph_of_polynomial_mod(&ip(&[1, 0, 1]), 6).unwrap();
        let f = ip(&[1, 0, 1]);
        let ok = verify_product_phase_space(&[(f.clone(), 2, 1), (f.clone(), 3, 1)], &global).unwrap();
        assert!(ok.holds);
        let alt = verify_product_phase_space(&[(ip(&[1, -1]), 2, 1), (f.clone(), 3, 1)], &global)
            .unwrap();
        assert!(alt.holds);
        let bad = verify_product_phase_space(&[(f.clone(), 2, 1), (ip(&[2, 0, 1]), 3, 1)], &global)
            .unwrap();
        assert!(!bad.holds && bad.witness.is_some());
        let id = verify_product_phase_space(
            &[(ip(&[0, 1]), 2, 2), (ip(&[0, 1]), 3, 1)],
            &FunctionalGraph::identity(12),
        )
        .unwrap();
        assert!(id.holds);
    }
}
