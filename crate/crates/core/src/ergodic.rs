//! Finite conditional-expectation-preserving systems: a weight-preserving
//! permutation acting on the trivial conditional system.

use num::integer::gcd;
use num::Zero;

use rand::Rng;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exec;
use crate::rational::Rat;
use crate::space::SampleSpace;
use crate::system::ConditionalSystem;
use crate::vector::LatticeVector;

/// The quadruple `(E, F, S, e)` with `F` the plain expectation and `S` the
/// composition operator `(S f)(ω) = f(τ(ω))` of a permutation `τ` that
/// leaves the weights invariant, so `F S f = F f` for every `f`.
#[derive(Debug, Clone)]
pub struct TransformSystem {
    system: ConditionalSystem,
    tau: Vec<usize>,
    cycles: Vec<Vec<usize>>,
    /// `(cycle index, position within cycle)` per outcome.
    cycle_of: Vec<(usize, usize)>,
}

/// Outcome of sampling the time-maximum identity.
#[derive(Debug, Clone)]
pub enum MaxErgodicReport {
    /// Every sampled vector had its orbit maximum equal to the conditional
    /// supremum.
    Consistent { trials: u32 },
    /// A vector whose orbit maximum differs from the conditional supremum;
    /// for multi-cycle permutations the indicator of one cycle always
    /// works and is produced deterministically.
    Counterexample {
        witness: LatticeVector,
        time_max: LatticeVector,
        cond_sup: LatticeVector,
    },
}

impl TransformSystem {
    pub fn new(space: Arc<SampleSpace>, tau: Vec<usize>) -> Result<Self> {
        let n = space.len();
        if tau.len() != n {
            return Err(Error::NotPermutation {
                detail: format!("map has {} entries, space has {} outcomes", tau.len(), n),
            });
        }
        let mut seen = vec![false; n];
        for &image in &tau {
            if image >= n {
                return Err(Error::NotPermutation {
                    detail: format!("image {image} out of range"),
                });
            }
            if seen[image] {
                return Err(Error::NotPermutation {
                    detail: format!("image {image} repeated"),
                });
            }
            seen[image] = true;
        }
        for (outcome, &image) in tau.iter().enumerate() {
            if space.weight(outcome) != space.weight(image) {
                return Err(Error::WeightsNotInvariant { outcome, image });
            }
        }

        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut cycle_of = vec![(usize::MAX, 0); n];
        let mut visited = vec![false; n];
        for start in 0..n {
            if visited[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut current = start;
            while !visited[current] {
                visited[current] = true;
                cycle_of[current] = (cycles.len(), cycle.len());
                cycle.push(current);
                current = tau[current];
            }
            cycles.push(cycle);
        }

        let system = ConditionalSystem::trivial(space);
        Ok(Self {
            system,
            tau,
            cycles,
            cycle_of,
        })
    }

    /// The underlying trivial conditional system (plain expectation).
    pub fn system(&self) -> &ConditionalSystem {
        &self.system
    }

    pub fn space(&self) -> &Arc<SampleSpace> {
        self.system.space()
    }

    pub fn tau(&self) -> &[usize] {
        &self.tau
    }

    /// Cycles of the permutation, each starting at its smallest outcome.
    pub fn cycles(&self) -> &[Vec<usize>] {
        &self.cycles
    }

    /// Order of the permutation: the lcm of the cycle lengths. `None` when
    /// it overflows `u128`, which cannot happen at desk scale.
    pub fn period(&self) -> Option<u128> {
        self.cycles.iter().try_fold(1u128, |acc, c| {
            let len = c.len() as u128;
            (acc / gcd(acc, len)).checked_mul(len)
        })
    }

    /// `τ^k(ω)` via the cycle decomposition, O(1) per outcome.
    fn power_map(&self, outcome: usize, k: u64) -> usize {
        let (c, pos) = self.cycle_of[outcome];
        let cycle = &self.cycles[c];
        let len = cycle.len() as u64;
        cycle[((pos as u64 + k % len) % len) as usize]
    }

    /// `(S^k f)(ω) = f(τ^k(ω))`; `S⁰` is the identity.
    pub fn apply(&self, f: &LatticeVector, k: u64) -> Result<LatticeVector> {
        self.system.check_vector(f)?;
        let values = exec::map_range(f.len(), |outcome| {
            f.value(self.power_map(outcome, k)).clone()
        });
        LatticeVector::new(self.space().clone(), values)
    }

    /// A finite system is ergodic exactly when the permutation is a single
    /// cycle; equivalently, when the only invariant vectors are constant.
    pub fn is_ergodic(&self) -> bool {
        self.cycles.len() == 1
    }

    /// Pointwise supremum of the orbit `sup_k (S^k f)`; the powers repeat
    /// after the period, and on each cycle the orbit visits exactly the
    /// cycle, so this is the cycle-wise maximum.
    pub fn time_max(&self, f: &LatticeVector) -> Result<LatticeVector> {
        self.system.check_vector(f)?;
        let cycle_max: Vec<Rat> = self
            .cycles
            .iter()
            .map(|cycle| cycle.iter().map(|&i| f.value(i)).max().unwrap().clone())
            .collect();
        let values = exec::map_range(f.len(), |outcome| {
            cycle_max[self.cycle_of[outcome].0].clone()
        });
        LatticeVector::new(self.space().clone(), values)
    }

    /// Exact Cesàro average `(1/n) Σ_{k<n} S^k f`.
    pub fn cesaro_mean(&self, f: &LatticeVector, n: u64) -> Result<LatticeVector> {
        assert!(n >= 1, "the Cesaro average needs at least one term");
        self.system.check_vector(f)?;
        let values = exec::map_range(f.len(), |outcome| {
            let mut acc = Rat::zero();
            for k in 0..n {
                acc = acc + f.value(self.power_map(outcome, k));
            }
            acc / Rat::from_integer((n as i64).into())
        });
        LatticeVector::new(self.space().clone(), values)
    }

    /// Samples random vectors and compares the orbit maximum with the
    /// conditional supremum. For a single cycle they agree for every
    /// vector; otherwise the indicator of the first cycle is a
    /// deterministic counterexample, which is verified and returned.
    pub fn max_ergodic_check(
        &self,
        trials: u32,
        rng: &mut impl Rng,
    ) -> Result<MaxErgodicReport> {
        if self.cycles.len() > 1 {
            let witness = LatticeVector::indicator(self.space().clone(), &self.cycles[0]);
            let time_max = self.time_max(&witness)?;
            let cond_sup = self.system.cond_sup(&witness)?;
            assert_ne!(
                time_max, cond_sup,
                "cycle indicator must separate a multi-cycle permutation"
            );
            return Ok(MaxErgodicReport::Counterexample {
                witness,
                time_max,
                cond_sup,
            });
        }
        for _ in 0..trials {
            let f = crate::random::vector(rng, self.space(), 100, 100);
            let time_max = self.time_max(&f)?;
            let cond_sup = self.system.cond_sup(&f)?;
            if time_max != cond_sup {
                return Ok(MaxErgodicReport::Counterexample {
                    witness: f,
                    time_max,
                    cond_sup,
                });
            }
        }
        Ok(MaxErgodicReport::Consistent { trials })
    }
}
