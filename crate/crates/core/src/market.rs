//! Single-asset discrete market: portfolio values, immediate-profit and
//! arbitrage detection.

use num::{Signed, Zero};

use crate::error::{Error, Result};
use crate::filtration::{AdaptedProcess, Filtration};
use crate::rational::Rat;
use crate::vector::LatticeVector;
use std::sync::Arc;

/// Non-negative adapted price process `S_t` for one risky asset over a
/// filtration; the numeraire is implicit with zero interest.
#[derive(Debug, Clone)]
pub struct MarketModel {
    prices: AdaptedProcess,
}

/// Holdings `θ_t` for `t = start..horizon`, each measurable at its time.
/// Self-financing is built into the value formula, so holdings in the
/// numeraire are never tracked explicitly.
#[derive(Debug, Clone)]
pub struct Strategy {
    start: usize,
    holdings: Vec<LatticeVector>,
}

impl Strategy {
    /// Validates adaptedness: `holdings[k]` must be measurable at time
    /// `start + k`, with the final entry at `horizon − 1`.
    pub fn new(
        filtration: &Arc<Filtration>,
        start: usize,
        holdings: Vec<LatticeVector>,
    ) -> Result<Self> {
        let horizon = filtration.horizon();
        if start + holdings.len() != horizon {
            return Err(Error::StrategyRange {
                start,
                end: start + holdings.len(),
                expected_start: start,
                expected_end: horizon,
            });
        }
        for (k, theta) in holdings.iter().enumerate() {
            let time = start + k;
            if theta.len() != filtration.space().len() {
                return Err(Error::DimensionMismatch {
                    got: theta.len(),
                    expected: filtration.space().len(),
                });
            }
            if !filtration
                .partition(time)
                .is_constant_on_atoms(theta.values())
            {
                return Err(Error::NotAdapted { time });
            }
        }
        Ok(Self { start, holdings })
    }

    /// All-zero strategy from `start`.
    pub fn zero(filtration: &Arc<Filtration>, start: usize) -> Self {
        let horizon = filtration.horizon();
        let holdings = (start..horizon)
            .map(|_| LatticeVector::zero(filtration.space().clone()))
            .collect();
        Self { start, holdings }
    }

    pub fn start(&self) -> usize {
        self.start
    }

    /// Holding at absolute time `t`.
    pub fn holding(&self, time: usize) -> &LatticeVector {
        &self.holdings[time - self.start]
    }

    pub fn holdings(&self) -> &[LatticeVector] {
        &self.holdings
    }
}

/// Claim payable at the horizon, measurable there.
#[derive(Debug, Clone)]
pub struct Claim {
    payoff: LatticeVector,
}

impl Claim {
    pub fn new(filtration: &Arc<Filtration>, payoff: LatticeVector) -> Result<Self> {
        let horizon = filtration.horizon();
        if payoff.len() != filtration.space().len() {
            return Err(Error::DimensionMismatch {
                got: payoff.len(),
                expected: filtration.space().len(),
            });
        }
        if !filtration
            .partition(horizon)
            .is_constant_on_atoms(payoff.values())
        {
            return Err(Error::NotAdapted { time: horizon });
        }
        Ok(Self { payoff })
    }

    pub fn payoff(&self) -> &LatticeVector {
        &self.payoff
    }
}

/// Which side of the price sandwich `m_{F_t}(S_{t+1}) ≤ S_t ≤ M_{F_t}(S_{t+1})`
/// is violated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundSide {
    Lower,
    Upper,
}

/// One immediate-profit witness: on `atom` at `time`, the one-step strategy
/// `theta` started from the strictly negative `price` super-replicates the
/// zero claim.
#[derive(Debug, Clone)]
pub struct AipViolation {
    pub time: usize,
    pub atom_index: usize,
    pub atom: Vec<usize>,
    pub side: BoundSide,
    /// `S_t` on the atom.
    pub market_price: Rat,
    /// The violated conditional bound of `S_{t+1}` on the atom.
    pub bound: Rat,
    pub strategy: Strategy,
    /// Initial capital, in `R(F_t)⁻ \ {0}`.
    pub price: LatticeVector,
}

#[derive(Debug, Clone)]
pub struct AipReport {
    pub violations: Vec<AipViolation>,
}

impl AipReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Violation of the two-index sandwich `m_{F_t}(S_u) ≤ S_t ≤ M_{F_t}(S_u)`.
#[derive(Debug, Clone)]
pub struct PairViolation {
    pub t: usize,
    pub u: usize,
    pub atom_index: usize,
    pub atom: Vec<usize>,
    pub side: BoundSide,
}

#[derive(Debug, Clone)]
pub struct MultiPeriodAipReport {
    pub violations: Vec<PairViolation>,
}

impl MultiPeriodAipReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Long,
    Short,
}

/// One-step arbitrage: `theta` costs nothing and its terminal value is
/// non-negative and non-zero.
#[derive(Debug, Clone)]
pub struct ArbitrageOpportunity {
    pub time: usize,
    pub atom_index: usize,
    pub atom: Vec<usize>,
    pub direction: Direction,
    pub strategy: Strategy,
}

#[derive(Debug, Clone)]
pub struct ArbitrageReport {
    pub opportunities: Vec<ArbitrageOpportunity>,
}

impl ArbitrageReport {
    pub fn holds(&self) -> bool {
        self.opportunities.is_empty()
    }
}

/// No-arbitrage verdict via the strictness route: when every non-inert atom
/// satisfies the strict sandwich, NA is equivalent to AIP and both hold;
/// otherwise the verdict defers to the sign analysis.
#[derive(Debug, Clone)]
pub struct NaReport {
    pub holds: bool,
    /// Whether the strict sandwich held on every atom with `ΔS ≢ 0`.
    pub strictness_holds: bool,
    /// Populated when the verdict came from the sign analysis.
    pub opportunity: Option<ArbitrageOpportunity>,
}

impl MarketModel {
    /// Wraps an adapted process after checking non-negativity.
    pub fn new(prices: AdaptedProcess) -> Result<Self> {
        for (time, v) in prices.vectors().iter().enumerate() {
            for (outcome, value) in v.values().iter().enumerate() {
                if value.is_negative() {
                    return Err(Error::NegativePrice { time, outcome });
                }
            }
        }
        Ok(Self { prices })
    }

    pub fn filtration(&self) -> &Arc<Filtration> {
        self.prices.filtration()
    }

    pub fn horizon(&self) -> usize {
        self.filtration().horizon()
    }

    pub fn prices(&self) -> &AdaptedProcess {
        &self.prices
    }

    pub fn price(&self, time: usize) -> &LatticeVector {
        self.prices.at(time)
    }

    /// Price increment `ΔS_t = S_t − S_{t−1}` for `t ≥ 1`.
    pub fn delta_price(&self, time: usize) -> LatticeVector {
        self.prices.at(time) - self.prices.at(time - 1)
    }

    /// Terminal liquidation value `p + Σ_{i>t₀} θ_{i−1} ΔS_i` of a
    /// self-financing strategy started at `strategy.start()` with initial
    /// capital `p ∈ R(F_{t₀})`.
    pub fn portfolio_value(
        &self,
        strategy: &Strategy,
        initial: &LatticeVector,
    ) -> Result<LatticeVector> {
        let t0 = strategy.start();
        if t0 > self.horizon() {
            return Err(Error::TimeOutOfRange {
                time: t0,
                horizon: self.horizon(),
            });
        }
        if t0 + strategy.holdings.len() != self.horizon() {
            return Err(Error::StrategyRange {
                start: t0,
                end: t0 + strategy.holdings.len(),
                expected_start: t0,
                expected_end: self.horizon(),
            });
        }
        if initial.len() != self.filtration().space().len() {
            return Err(Error::DimensionMismatch {
                got: initial.len(),
                expected: self.filtration().space().len(),
            });
        }
        if !self
            .filtration()
            .partition(t0)
            .is_constant_on_atoms(initial.values())
        {
            return Err(Error::NotAdapted { time: t0 });
        }
        let mut value = initial.clone();
        for i in (t0 + 1)..=self.horizon() {
            value = &value + &(strategy.holding(i - 1) * &self.delta_price(i));
        }
        Ok(value)
    }

    /// Immediate-profit check: AIP holds iff on every atom `A` at every
    /// `t < T`, `min_A S_{t+1} ≤ S_t ≤ max_A S_{t+1}`. Each violation comes
    /// with an explicit certificate strategy and negative price.
    pub fn aip_check(&self) -> AipReport {
        let mut violations = Vec::new();
        let flt = self.filtration();
        for t in 0..self.horizon() {
            let partition = flt.partition(t);
            let next = self.price(t + 1);
            for (a, atom) in partition.atoms().iter().enumerate() {
                let here = self.price(t).value(atom[0]).clone();
                let low = atom.iter().map(|&i| next.value(i)).min().unwrap().clone();
                let high = atom.iter().map(|&i| next.value(i)).max().unwrap().clone();
                if low > here {
                    violations.push(self.aip_violation(
                        t,
                        a,
                        atom,
                        BoundSide::Lower,
                        here,
                        low,
                    ));
                } else if here > high {
                    violations.push(self.aip_violation(
                        t,
                        a,
                        atom,
                        BoundSide::Upper,
                        here,
                        high,
                    ));
                }
            }
        }
        AipReport { violations }
    }

    fn aip_violation(
        &self,
        time: usize,
        atom_index: usize,
        atom: &[usize],
        side: BoundSide,
        market_price: Rat,
        bound: Rat,
    ) -> AipViolation {
        let flt = self.filtration();
        let space = flt.space().clone();
        let gap = match side {
            BoundSide::Lower => &bound - &market_price,
            BoundSide::Upper => &market_price - &bound,
        };
        let sign = match side {
            BoundSide::Lower => Rat::from_integer(1.into()),
            BoundSide::Upper => Rat::from_integer((-1).into()),
        };
        let indicator = LatticeVector::indicator(space.clone(), atom);
        let theta = indicator.scale(&sign);
        let mut holdings = vec![theta];
        for _ in (time + 1)..self.horizon() {
            holdings.push(LatticeVector::zero(space.clone()));
        }
        let strategy =
            Strategy::new(flt, time, holdings).expect("certificate strategy is adapted");
        let price = indicator.scale(&-gap);
        AipViolation {
            time,
            atom_index,
            atom: atom.to_vec(),
            side,
            market_price,
            bound,
            strategy,
            price,
        }
    }

    /// The two-index family `m_{F_t}(S_u) ≤ S_t ≤ M_{F_t}(S_u)` for all
    /// `t ≤ u`; equivalent to [`aip_check`](Self::aip_check) on every
    /// market.
    pub fn aip_check_multiperiod(&self) -> MultiPeriodAipReport {
        let mut violations = Vec::new();
        let flt = self.filtration();
        for t in 0..=self.horizon() {
            let partition = flt.partition(t);
            for u in t..=self.horizon() {
                let at_u = self.price(u);
                for (a, atom) in partition.atoms().iter().enumerate() {
                    let here = self.price(t).value(atom[0]);
                    let low = atom.iter().map(|&i| at_u.value(i)).min().unwrap();
                    let high = atom.iter().map(|&i| at_u.value(i)).max().unwrap();
                    if low > here {
                        violations.push(PairViolation {
                            t,
                            u,
                            atom_index: a,
                            atom: atom.clone(),
                            side: BoundSide::Lower,
                        });
                    } else if here > high {
                        violations.push(PairViolation {
                            t,
                            u,
                            atom_index: a,
                            atom: atom.clone(),
                            side: BoundSide::Upper,
                        });
                    }
                }
            }
        }
        MultiPeriodAipReport { violations }
    }

    /// Sign analysis: NA holds iff on every atom at every step, `ΔS_{t+1}`
    /// is identically zero or takes both a strictly positive and a strictly
    /// negative value. Failures come with the one-step certificate
    /// `θ = ±1_A`.
    pub fn arbitrage_bruteforce(&self) -> ArbitrageReport {
        let mut opportunities = Vec::new();
        let flt = self.filtration();
        for t in 0..self.horizon() {
            let delta = self.delta_price(t + 1);
            for (a, atom) in flt.partition(t).atoms().iter().enumerate() {
                let any_pos = atom.iter().any(|&i| delta.value(i).is_positive());
                let any_neg = atom.iter().any(|&i| delta.value(i).is_negative());
                let all_zero = !any_pos && !any_neg;
                if all_zero || (any_pos && any_neg) {
                    continue;
                }
                let direction = if any_pos {
                    Direction::Long
                } else {
                    Direction::Short
                };
                let sign = match direction {
                    Direction::Long => Rat::from_integer(1.into()),
                    Direction::Short => Rat::from_integer((-1).into()),
                };
                let space = flt.space().clone();
                let theta = LatticeVector::indicator(space.clone(), atom).scale(&sign);
                let mut holdings = vec![theta];
                for _ in (t + 1)..self.horizon() {
                    holdings.push(LatticeVector::zero(space.clone()));
                }
                let strategy =
                    Strategy::new(flt, t, holdings).expect("certificate strategy is adapted");
                opportunities.push(ArbitrageOpportunity {
                    time: t,
                    atom_index: a,
                    atom: atom.clone(),
                    direction,
                    strategy,
                });
            }
        }
        ArbitrageReport { opportunities }
    }

    /// NA via the strictness hypothesis, evaluated with singleton
    /// components: every atom with `ΔS_{t+1} ≢ 0` must satisfy
    /// `min_A S_{t+1} < S_t < max_A S_{t+1}` strictly. Under the hypothesis
    /// NA is equivalent to AIP and both hold; otherwise the verdict defers
    /// to [`arbitrage_bruteforce`](Self::arbitrage_bruteforce).
    pub fn na_check(&self) -> NaReport {
        let flt = self.filtration();
        let mut strictness_holds = true;
        'outer: for t in 0..self.horizon() {
            let next = self.price(t + 1);
            let delta = self.delta_price(t + 1);
            for atom in flt.partition(t).atoms() {
                let inert = atom.iter().all(|&i| delta.value(i).is_zero());
                if inert {
                    continue;
                }
                let here = self.price(t).value(atom[0]);
                let low = atom.iter().map(|&i| next.value(i)).min().unwrap();
                let high = atom.iter().map(|&i| next.value(i)).max().unwrap();
                if !(low < here && here < high) {
                    strictness_holds = false;
                    break 'outer;
                }
            }
        }
        if strictness_holds {
            NaReport {
                holds: true,
                strictness_holds: true,
                opportunity: None,
            }
        } else {
            let scan = self.arbitrage_bruteforce();
            NaReport {
                holds: scan.holds(),
                strictness_holds: false,
                opportunity: scan.opportunities.into_iter().next(),
            }
        }
    }
}
