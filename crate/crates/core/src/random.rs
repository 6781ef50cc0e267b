//! Seeded random instances: spaces, partitions, vectors, filtrations,
//! markets and permutations.
//!
//! Everything here is deterministic given the caller's RNG, which is what
//! the property suites and the CLI's seeded commands rely on.

use std::sync::Arc;

use num::Zero;
use rand::Rng;

use crate::convex::PiecewiseAffineConvex;
use crate::filtration::{AdaptedProcess, Filtration};
use crate::market::MarketModel;
use crate::partition::Partition;
use crate::rational::Rat;
use crate::space::SampleSpace;
use crate::system::ConditionalSystem;
use crate::vector::LatticeVector;

/// Signed rational with numerator in `[-max_num, max_num]` and denominator
/// in `[1, max_den]`.
pub fn rational(rng: &mut impl Rng, max_num: i64, max_den: i64) -> Rat {
    let num = rng.random_range(-max_num..=max_num);
    let den = rng.random_range(1..=max_den);
    Rat::new(num.into(), den.into())
}

/// Non-negative rational with numerator in `[0, max_num]`.
pub fn nonneg_rational(rng: &mut impl Rng, max_num: i64, max_den: i64) -> Rat {
    let num = rng.random_range(0..=max_num);
    let den = rng.random_range(1..=max_den);
    Rat::new(num.into(), den.into())
}

/// Rational in `[0, 1]` with denominator at most `max_den`.
pub fn unit_rational(rng: &mut impl Rng, max_den: i64) -> Rat {
    let den = rng.random_range(1..=max_den);
    let num = rng.random_range(0..=den);
    Rat::new(num.into(), den.into())
}

/// Strictly positive weights summing exactly to one: integer masses
/// `1..=100` over their total.
pub fn weights(rng: &mut impl Rng, n: usize) -> Vec<Rat> {
    let masses: Vec<i64> = (0..n).map(|_| rng.random_range(1..=100)).collect();
    let total: i64 = masses.iter().sum();
    masses
        .into_iter()
        .map(|m| Rat::new(m.into(), total.into()))
        .collect()
}

pub fn space(rng: &mut impl Rng, n: usize) -> Arc<SampleSpace> {
    SampleSpace::new(weights(rng, n)).expect("generated weights are valid")
}

/// Random partition of `0..size`: each outcome draws one of `blocks`
/// labels, empty labels dropped.
pub fn partition(rng: &mut impl Rng, size: usize) -> Partition {
    let blocks = rng.random_range(1..=size);
    let mut atoms: Vec<Vec<usize>> = vec![Vec::new(); blocks];
    for outcome in 0..size {
        atoms[rng.random_range(0..blocks)].push(outcome);
    }
    atoms.retain(|a| !a.is_empty());
    Partition::new(size, atoms).expect("generated atoms partition the space")
}

/// Refines `coarse` by splitting each atom into up to `max_splits` parts.
pub fn refinement_of(rng: &mut impl Rng, coarse: &Partition, max_splits: usize) -> Partition {
    let mut atoms = Vec::new();
    for atom in coarse.atoms() {
        let splits = rng.random_range(1..=max_splits.min(atom.len()));
        let mut parts: Vec<Vec<usize>> = vec![Vec::new(); splits];
        for &outcome in atom {
            parts[rng.random_range(0..splits)].push(outcome);
        }
        atoms.extend(parts.into_iter().filter(|p| !p.is_empty()));
    }
    Partition::new(coarse.size(), atoms).expect("atomwise splits refine the partition")
}

/// Random vector with entries as in [`rational`].
pub fn vector(
    rng: &mut impl Rng,
    space: &Arc<SampleSpace>,
    max_num: i64,
    max_den: i64,
) -> LatticeVector {
    let values = (0..space.len())
        .map(|_| rational(rng, max_num, max_den))
        .collect();
    LatticeVector::new(space.clone(), values).expect("length matches by construction")
}

/// Random non-negative vector with entries in `[0, 1]`.
pub fn unit_vector(rng: &mut impl Rng, space: &Arc<SampleSpace>, max_den: i64) -> LatticeVector {
    let values = (0..space.len()).map(|_| unit_rational(rng, max_den)).collect();
    LatticeVector::new(space.clone(), values).expect("length matches by construction")
}

/// Random element of `R(F)`: one rational per atom, broadcast.
pub fn range_vector(rng: &mut impl Rng, sys: &ConditionalSystem, max_num: i64) -> LatticeVector {
    let atom_values: Vec<Rat> = (0..sys.partition().atom_count())
        .map(|_| rational(rng, max_num, 12))
        .collect();
    LatticeVector::new(
        sys.space().clone(),
        (0..sys.space().len())
            .map(|outcome| atom_values[sys.partition().owner(outcome)].clone())
            .collect(),
    )
    .expect("length matches by construction")
}

/// Random convex function: up to `max_pieces` affine pieces with small
/// rational coefficients.
pub fn convex(rng: &mut impl Rng, max_pieces: usize) -> PiecewiseAffineConvex {
    let count = rng.random_range(1..=max_pieces);
    let pieces = (0..count)
        .map(|_| (rational(rng, 6, 4), rational(rng, 6, 4)))
        .collect();
    PiecewiseAffineConvex::new(pieces).expect("at least one piece")
}

/// Refining chain of `periods + 1` partitions starting from the trivial
/// one.
pub fn filtration(
    rng: &mut impl Rng,
    space: &Arc<SampleSpace>,
    periods: usize,
) -> Arc<Filtration> {
    let mut partitions = vec![Partition::trivial(space.len())];
    for _ in 0..periods {
        let next = refinement_of(rng, partitions.last().expect("non-empty"), 3);
        partitions.push(next);
    }
    Filtration::new(space.clone(), partitions).expect("chain refines by construction")
}

/// How the price process of a random market is conditioned.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MarketKind {
    /// Prices drawn freely; the sandwich may fail.
    Free,
    /// `S_t` drawn inside `[min, max]` of its successors, endpoints
    /// included, so the sandwich holds but may touch the boundary.
    Aip,
    /// `S_t` drawn strictly inside `(min, max)` whenever the successors
    /// spread, so the strictness hypothesis holds as well.
    StrictAip,
}

/// Random market over a fresh space and filtration with the given number
/// of periods and outcomes.
pub fn market(
    rng: &mut impl Rng,
    outcomes: usize,
    periods: usize,
    kind: MarketKind,
) -> MarketModel {
    let space = space(rng, outcomes);
    let flt = filtration(rng, &space, periods);
    let horizon = flt.horizon();

    let mut vectors: Vec<Option<LatticeVector>> = vec![None; horizon + 1];
    // Terminal prices first, then backward so conditioned draws can bracket.
    let terminal_atoms = flt.partition(horizon).atom_count();
    let terminal: Vec<Rat> = (0..terminal_atoms)
        .map(|_| nonneg_rational(rng, 20, 4))
        .collect();
    vectors[horizon] = Some(broadcast(&flt, horizon, &terminal));

    for t in (0..horizon).rev() {
        let next = vectors[t + 1].as_ref().expect("filled backward");
        let partition = flt.partition(t);
        let atom_values: Vec<Rat> = partition
            .atoms()
            .iter()
            .map(|atom| {
                let low = atom.iter().map(|&i| next.value(i)).min().unwrap().clone();
                let high = atom.iter().map(|&i| next.value(i)).max().unwrap().clone();
                match kind {
                    MarketKind::Free => nonneg_rational(rng, 20, 4),
                    MarketKind::Aip => between(rng, &low, &high, false),
                    MarketKind::StrictAip => between(rng, &low, &high, true),
                }
            })
            .collect();
        vectors[t] = Some(broadcast(&flt, t, &atom_values));
    }

    let prices = AdaptedProcess::new(
        flt,
        vectors.into_iter().map(|v| v.expect("filled")).collect(),
    )
    .expect("per-atom draws are adapted");
    MarketModel::new(prices).expect("draws are non-negative")
}

/// Rational in `[low, high]`, strictly interior when `strict` and the
/// interval is non-degenerate.
fn between(rng: &mut impl Rng, low: &Rat, high: &Rat, strict: bool) -> Rat {
    if low == high {
        return low.clone();
    }
    let grid: i64 = 16;
    let step = if strict {
        rng.random_range(1..grid)
    } else {
        rng.random_range(0..=grid)
    };
    low + (high - low) * Rat::new(step.into(), grid.into())
}

fn broadcast(flt: &Arc<Filtration>, time: usize, atom_values: &[Rat]) -> LatticeVector {
    let partition = flt.partition(time);
    LatticeVector::new(
        flt.space().clone(),
        (0..flt.space().len())
            .map(|outcome| atom_values[partition.owner(outcome)].clone())
            .collect(),
    )
    .expect("length matches by construction")
}

/// Uniformly random permutation of `0..n` (Fisher-Yates).
pub fn permutation(rng: &mut impl Rng, n: usize) -> Vec<usize> {
    let mut tau: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        tau.swap(i, rng.random_range(0..=i));
    }
    tau
}

/// Random adapted process over the filtration.
pub fn adapted_process(
    rng: &mut impl Rng,
    flt: &Arc<Filtration>,
    max_num: i64,
) -> AdaptedProcess {
    let vectors: Vec<LatticeVector> = (0..flt.len())
        .map(|t| {
            let atom_values: Vec<Rat> = (0..flt.partition(t).atom_count())
                .map(|_| rational(rng, max_num, 8))
                .collect();
            broadcast(flt, t, &atom_values)
        })
        .collect();
    AdaptedProcess::new(flt.clone(), vectors).expect("per-atom draws are adapted")
}

/// One instance for the algebraic-identity suite: a system, a refinement,
/// test vectors and the auxiliary data every law needs.
pub struct LawInstance {
    pub sys: ConditionalSystem,
    /// Same space, finer partition; for the tower laws.
    pub fine_sys: ConditionalSystem,
    pub f: LatticeVector,
    pub g: LatticeVector,
    /// Non-negative scalar for positive homogeneity.
    pub lambda: Rat,
    /// Signed scalar for the seminorm laws.
    pub mu: Rat,
    /// Random element of `R(F)`.
    pub h: LatticeVector,
    /// Non-negative element of `R(F)`.
    pub h_pos: LatticeVector,
    pub phi: PiecewiseAffineConvex,
    /// Increasing chain for the monotone-convergence law.
    pub chain: Vec<LatticeVector>,
    /// Disjoint non-negative pair: `u ∧ v = 0`.
    pub disjoint: (LatticeVector, LatticeVector),
}

/// Random [`LawInstance`] on at most `max_outcomes` outcomes with entries
/// bounded by `max_num / max_den`.
pub fn law_instance(rng: &mut impl Rng, max_outcomes: usize, max_num: i64) -> LawInstance {
    let n = rng.random_range(1..=max_outcomes);
    let space = space(rng, n);
    let coarse = partition(rng, n);
    let fine = refinement_of(rng, &coarse, 3);
    let sys = ConditionalSystem::new(space.clone(), coarse).expect("valid partition");
    let fine_sys = ConditionalSystem::new(space.clone(), fine).expect("valid partition");

    let f = vector(rng, &space, max_num, 100);
    let g = vector(rng, &space, max_num, 100);
    let lambda = nonneg_rational(rng, 8, 4);
    let mu = rational(rng, 8, 4);
    let h = range_vector(rng, &sys, max_num);
    let h_pos = h.abs();
    let phi = convex(rng, 4);

    let mut chain = vec![vector(rng, &space, max_num, 100)];
    for _ in 0..rng.random_range(1..=3usize) {
        let bump = vector(rng, &space, max_num, 100);
        let prev = chain.last().expect("non-empty");
        chain.push(prev.sup(&bump));
    }

    let mask = vector(rng, &space, 1, 1);
    let u_raw = vector(rng, &space, max_num, 100).abs();
    let v_raw = vector(rng, &space, max_num, 100).abs();
    let u = LatticeVector::new(
        space.clone(),
        (0..n)
            .map(|i| {
                if mask.value(i) > &Rat::zero() {
                    u_raw.value(i).clone()
                } else {
                    Rat::zero()
                }
            })
            .collect(),
    )
    .expect("length matches");
    let v = LatticeVector::new(
        space.clone(),
        (0..n)
            .map(|i| {
                if mask.value(i) > &Rat::zero() {
                    Rat::zero()
                } else {
                    v_raw.value(i).clone()
                }
            })
            .collect(),
    )
    .expect("length matches");

    LawInstance {
        sys,
        fine_sys,
        f,
        g,
        lambda,
        mu,
        h,
        h_pos,
        phi,
        chain,
        disjoint: (u, v),
    }
}
