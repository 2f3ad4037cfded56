use num_bigint::BigInt;

use crate::ball::{Ball, Nesting};
use crate::error::{Error, Result};
use crate::graph::FunctionalGraph;
use crate::padic::check_prime;

/// Source balls, a transition on their indices and the target balls.
/// The target of ball `i` is `targets[tau[i]]`.
#[derive(Debug, Clone, PartialEq)]
pub struct BallSystem {
    p: u32,
    balls: Vec<Ball>,
    tau: Vec<usize>,
    targets: Vec<Ball>,
}

impl BallSystem {
    pub fn new(balls: Vec<Ball>, tau: Vec<usize>, targets: Vec<Ball>) -> Result<Self> {
        let p = balls
            .first()
            .map(|b| b.p())
            .ok_or_else(|| Error::MalformedSystem("no balls".into()))?;
        if balls.len() != targets.len() || balls.len() != tau.len() {
            return Err(Error::MalformedSystem(format!(
                "{} balls, {} targets, {} transitions",
                balls.len(),
                targets.len(),
                tau.len()
            )));
        }
        if let Some((index, &value)) = tau.iter().enumerate().find(|(_, &t)| t >= balls.len()) {
            return Err(Error::OutOfRange {
                index,
                value,
                size: balls.len(),
            });
        }
        if let Some(b) = balls.iter().chain(&targets).find(|b| b.p() != p) {
            return Err(Error::PrimeMismatch {
                left: p,
                right: b.p(),
            });
        }
        for i in 0..balls.len() {
            for j in i + 1..balls.len() {
                if balls[i].nesting(&balls[j])? != Nesting::Disjoint {
                    return Err(Error::OverlappingBalls(i, j));
                }
            }
        }
        Ok(BallSystem {
            p,
            balls,
            tau,
            targets,
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn len(&self) -> usize {
        self.balls.len()
    }

    pub fn is_empty(&self) -> bool {
        self.balls.is_empty()
    }

    pub fn balls(&self) -> &[Ball] {
        &self.balls
    }

    pub fn tau(&self) -> &[usize] {
        &self.tau
    }

    pub fn targets(&self) -> &[Ball] {
        &self.targets
    }

    /// The prescribed target of ball `i`.
    pub fn target_of(&self, i: usize) -> &Ball {
        &self.targets[self.tau[i]]
    }

    /// Indices with `tau(i) = i`.
    pub fn fixed_indices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.tau[i] == i).collect()
    }
}

/// State cylinders of depth `depth` with centers `0..g.size()`; targets are
/// the same family and `tau` is the successor map.
pub fn ball_system_from_graph(g: &FunctionalGraph, p: u32, depth: u32) -> Result<BallSystem> {
    check_prime(p)?;
    let fits = (p as u64)
        .checked_pow(depth)
        .is_none_or(|cap| cap >= g.size() as u64);
    if !fits || g.size() == 0 {
        return Err(Error::DepthTooSmall {
            p,
            depth,
            size: g.size(),
        });
    }
    let balls: Vec<Ball> = (0..g.size())
        .map(|x| Ball::new(BigInt::from(x), depth, p))
        .collect::<Result<_>>()?;
    BallSystem::new(balls.clone(), g.successors().to_vec(), balls)
}
