//! Functional graphs: finite maps `{0..m-1} -> {0..m-1}` viewed as digraphs
//! with out-degree one. Fixed points are self-loops.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::ball::Ball;
use crate::error::{Error, Result};
use crate::padic::{check_prime, pow_p};
use crate::poly::Polynomial;
use crate::unramified::{OkElement, UnramifiedContext};
use crate::{IntPolynomial, DEFAULT_SIZE_LIMIT};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FunctionalGraph {
    succ: Vec<usize>,
}

/// Structural summary of a functional graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphStats {
    pub indegrees: Vec<usize>,
    /// Vertices of indegree zero, increasing.
    pub leaves: Vec<usize>,
    /// Each cycle starts at its smallest vertex; cycles sorted by that vertex.
    pub cycles: Vec<Vec<usize>>,
    /// Distance to the eventual cycle; zero exactly on cycle vertices.
    pub tail_depth: Vec<usize>,
    /// Index into `cycles` of the cycle each vertex falls into.
    pub cycle_of: Vec<usize>,
}

impl FunctionalGraph {
    pub fn from_successors(succ: Vec<usize>) -> Result<Self> {
        let m = succ.len();
        if let Some((index, &value)) = succ.iter().enumerate().find(|(_, &s)| s >= m) {
            return Err(Error::OutOfRange {
                index,
                value,
                size: m,
            });
        }
        Ok(FunctionalGraph { succ })
    }

    pub fn identity(m: usize) -> Self {
        FunctionalGraph {
            succ: (0..m).collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.succ.len()
    }

    pub fn successors(&self) -> &[usize] {
        &self.succ
    }

    pub fn successor(&self, x: usize) -> usize {
        self.succ[x]
    }

    pub fn iterate(&self, x: usize, k: usize) -> usize {
        (0..k).fold(x, |y, _| self.succ[y])
    }

    /// Length of the cycle eventually reached from `x`.
    pub fn eventual_cycle_length(&self, x: usize) -> usize {
        let mut seen = vec![usize::MAX; self.size()];
        let mut y = x;
        let mut step = 0;
        while seen[y] == usize::MAX {
            seen[y] = step;
            y = self.succ[y];
            step += 1;
        }
        step - seen[y]
    }

    /// Exact period of `x`, or `None` if `x` is not periodic.
    pub fn period(&self, x: usize) -> Option<usize> {
        let mut y = self.succ[x];
        for k in 1..=self.size() {
            if y == x {
                return Some(k);
            }
            y = self.succ[y];
        }
        None
    }

    pub fn stats(&self) -> GraphStats {
        let m = self.size();
        let mut indegrees = vec![0usize; m];
        for &s in &self.succ {
            indegrees[s] += 1;
        }
        let leaves = (0..m).filter(|&x| indegrees[x] == 0).collect();

        const UNSEEN: u8 = 0;
        const ON_PATH: u8 = 1;
        const DONE: u8 = 2;
        let mut state = vec![UNSEEN; m];
        let mut tail_depth = vec![0usize; m];
        let mut cycle_of = vec![usize::MAX; m];
        let mut raw_cycles: Vec<Vec<usize>> = Vec::new();
        let mut path = Vec::new();
        for start in 0..m {
            if state[start] != UNSEEN {
                continue;
            }
            path.clear();
            let mut x = start;
            while state[x] == UNSEEN {
                state[x] = ON_PATH;
                path.push(x);
                x = self.succ[x];
            }
            let mut tail_len = path.len();
            if state[x] == ON_PATH {
                let pos = path.iter().position(|&y| y == x).expect("on path");
                let cycle = path[pos..].to_vec();
                let id = raw_cycles.len();
                for &y in &cycle {
                    cycle_of[y] = id;
                    tail_depth[y] = 0;
                    state[y] = DONE;
                }
                raw_cycles.push(cycle);
                tail_len = pos;
            }
            for i in (0..tail_len).rev() {
                let y = path[i];
                let next = self.succ[y];
                tail_depth[y] = tail_depth[next] + 1;
                cycle_of[y] = cycle_of[next];
                state[y] = DONE;
            }
        }

        // Canonical order: rotate to the minimum, sort by it, renumber ids.
        let mut order: Vec<usize> = (0..raw_cycles.len()).collect();
        for c in raw_cycles.iter_mut() {
            let r = c
                .iter()
                .enumerate()
                .min_by_key(|(_, &v)| v)
                .map(|(i, _)| i)
                .unwrap_or(0);
            c.rotate_left(r);
        }
        order.sort_by_key(|&i| raw_cycles[i][0]);
        let mut renumber = vec![0usize; raw_cycles.len()];
        for (new, &old) in order.iter().enumerate() {
            renumber[old] = new;
        }
        let cycles = order.iter().map(|&i| raw_cycles[i].clone()).collect();
        for c in cycle_of.iter_mut() {
            *c = renumber[*c];
        }

        GraphStats {
            indegrees,
            leaves,
            cycles,
            tail_depth,
            cycle_of,
        }
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        self.stats().cycles
    }

    /// Whether the cyclic sequence `cycle` appears as a cycle of the graph.
    pub fn has_cycle(&self, cycle: &[usize]) -> bool {
        !cycle.is_empty()
            && cycle.iter().all(|&x| x < self.size())
            && cycle
                .iter()
                .enumerate()
                .all(|(i, &x)| self.succ[x] == cycle[(i + 1) % cycle.len()])
            && {
                let mut sorted = cycle.to_vec();
                sorted.sort_unstable();
                sorted.dedup();
                sorted.len() == cycle.len()
            }
    }
}

/// `sum x_i p^{i-1}` for digits `x_1, x_2, ...`.
pub fn encode(digits: &[u64], p: u32) -> Result<BigInt> {
    check_prime(p)?;
    if let Some((index, &digit)) = digits.iter().enumerate().find(|(_, &d)| d >= p as u64) {
        return Err(Error::DigitOutOfRange { index, digit, p });
    }
    Ok(digits
        .iter()
        .rev()
        .fold(BigInt::from(0), |acc, &d| acc * p + d))
}

/// The `n` base-`p` digits of `x mod p^n`, least significant first.
pub fn decode(x: &BigInt, p: u32, n: u32) -> Vec<u64> {
    use num_integer::Integer;
    let pb = BigInt::from(p);
    let mut rest = x.mod_floor(&pow_p(p, n));
    (0..n)
        .map(|_| {
            let (q, r) = rest.div_mod_floor(&pb);
            rest = q;
            r.to_u64().expect("digit")
        })
        .collect()
}

/// Encoding of configurations in `{0..p-1}^n` as integers in `[0, p^n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Encoding {
    pub p: u32,
    pub n: u32,
}

impl Encoding {
    pub fn new(p: u32, n: u32) -> Result<Self> {
        check_prime(p)?;
        Ok(Encoding { p, n })
    }

    pub fn encode(&self, digits: &[u64]) -> Result<BigInt> {
        if digits.len() != self.n as usize {
            return Err(Error::MalformedSystem(format!(
                "expected {} digits, got {}",
                self.n,
                digits.len()
            )));
        }
        encode(digits, self.p)
    }

    pub fn decode(&self, x: &BigInt) -> Vec<u64> {
        decode(x, self.p, self.n)
    }
}

fn checked_power(p: u32, n: u32, limit: u64) -> Result<u64> {
    (p as u64)
        .checked_pow(n)
        .filter(|&c| c <= limit)
        .ok_or(Error::SizeLimit {
            required: (p as u128).saturating_pow(n),
            limit: limit as u128,
        })
}

/// The `p^n` cylinders of depth `n`, centers `0..p^n-1`.
pub fn cylinder_partition(p: u32, n: u32) -> Result<Vec<Ball>> {
    cylinder_partition_with_limit(p, n, DEFAULT_SIZE_LIMIT)
}

pub fn cylinder_partition_with_limit(p: u32, n: u32, limit: u64) -> Result<Vec<Ball>> {
    check_prime(p)?;
    let count = checked_power(p, n, limit)?;
    (0..count)
        .map(|c| Ball::new(BigInt::from(c), n, p))
        .collect()
}

/// Index of the depth-`m` cylinder containing the depth-`n` cylinder `x`,
/// obtained by keeping the first `m` digits.
pub fn refine_index(x: u64, p: u32, m: u32) -> u64 {
    x % (p as u64).pow(m)
}

/// Direct product with row-major indexing `(x1, x2) -> x1 |X2| + x2`.
pub fn graph_product(g1: &FunctionalGraph, g2: &FunctionalGraph) -> Result<FunctionalGraph> {
    let (m1, m2) = (g1.size(), g2.size());
    let m = m1.checked_mul(m2).ok_or(Error::SizeLimit {
        required: m1 as u128 * m2 as u128,
        limit: usize::MAX as u128,
    })?;
    let mut succ = Vec::with_capacity(m);
    for x1 in 0..m1 {
        for x2 in 0..m2 {
            succ.push(g1.successor(x1) * m2 + g2.successor(x2));
        }
    }
    FunctionalGraph::from_successors(succ)
}

/// `x -> P(x) mod m` on `Z/mZ`.
pub fn graph_of_polynomial_mod(poly: &IntPolynomial, m: u64) -> Result<FunctionalGraph> {
    graph_of_polynomial_mod_with_limit(poly, m, DEFAULT_SIZE_LIMIT)
}

pub fn graph_of_polynomial_mod_with_limit(
    poly: &IntPolynomial,
    m: u64,
    limit: u64,
) -> Result<FunctionalGraph> {
    if m == 0 {
        return Err(Error::MalformedSystem("modulus must be positive".into()));
    }
    if m > limit {
        return Err(Error::SizeLimit {
            required: m as u128,
            limit: limit as u128,
        });
    }
    FunctionalGraph::from_successors(
        (0..m)
            .map(|x| poly.eval_mod_u64(x, m) as usize)
            .collect(),
    )
}

/// The induced map of `poly` on `O_K / p^depth`, vertices indexed as in
/// [`OkElement::from_index`].
pub fn graph_of_polynomial_ok(
    poly: &Polynomial<OkElement>,
    ctx: &Arc<UnramifiedContext>,
    depth: u32,
) -> Result<FunctionalGraph> {
    let count = checked_power(ctx.p(), ctx.f() * depth, DEFAULT_SIZE_LIMIT)?;
    FunctionalGraph::from_successors(
        (0..count)
            .map(|idx| {
                let x = OkElement::from_index(ctx, idx, depth);
                let y = poly.eval(&x);
                // Constant polynomials evaluate to context-free integers.
                OkElement::from_coeffs(ctx, y.coeffs(), depth).index() as usize
            })
            .collect(),
    )
}

/// Stats of the map induced by an integer polynomial on the field `F_{p^f}`.
pub fn indegree_under_extension(poly: &IntPolynomial, p: u32, f: u32) -> Result<GraphStats> {
    checked_power(p, f, DEFAULT_SIZE_LIMIT)?;
    let ctx = UnramifiedContext::standard(p, f, 1)?;
    let lifted = poly.map(<OkElement as crate::Scalar>::from_integer);
    Ok(graph_of_polynomial_ok(&lifted, &ctx, 1)?.stats())
}
