//! Acceptance suite: one test per criterion, exact arithmetic throughout
//! except where a law is inherently floating point.

use std::sync::Arc;

use num::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use condsup_core::laws;
use condsup_core::random::{self, MarketKind};
use condsup_core::rational::{rat, rat_int, Rat};
use condsup_core::{
    AdaptedProcess, Claim, ConditionalSystem, Filtration, LatticeVector, MarketModel,
    MaxErgodicReport, Partition, SampleSpace, Strategy, TransformSystem,
};

/// Criterion 1: 1000 randomized instances pass every algebraic law with
/// exact arithmetic.
#[test]
fn c1_algebraic_identity_suite() {
    let instances: Vec<_> = {
        let mut rng = ChaCha8Rng::seed_from_u64(1001);
        (0..1000)
            .map(|_| random::law_instance(&mut rng, 12, 100))
            .collect()
    };
    let failures: Vec<String> = instances
        .par_iter()
        .enumerate()
        .filter_map(|(i, inst)| {
            laws::check_instance(inst)
                .err()
                .map(|v| format!("instance {i}: {v}"))
        })
        .collect();
    assert!(failures.is_empty(), "{}", failures.join("\n"));
    println!("criterion 1 (algebraic identities, 1000 instances): PASS");
}

/// Criterion 2: the large-p norm estimate converges to the conditional
/// supremum within the stated gaps on 100 random non-negative vectors.
#[test]
fn c2_lp_limit() {
    let mut rng = ChaCha8Rng::seed_from_u64(2002);
    for case in 0..100 {
        let n = rng.random_range(1..=12usize);
        let space = random::space(&mut rng, n);
        let partition = random::partition(&mut rng, n);
        let sys = ConditionalSystem::new(space.clone(), partition).unwrap();
        let f = random::unit_vector(&mut rng, &space, 100);

        let report = sys.lp_limit_estimate(&f, 4096).unwrap();
        assert!(report.monotone, "case {case}: not monotone");
        let final_gap = *report.sup_gaps.last().unwrap();
        assert!(final_gap < 1e-2, "case {case}: gap {final_gap}");

        // Sharper bound when every busy atom has a heavy maximizer.
        let heavy = sys.partition().atoms().iter().all(|atom| {
            let max = atom.iter().map(|&i| f.value(i)).max().unwrap();
            if max.is_zero() {
                return true;
            }
            let atom_weight = space.weight_of(atom);
            let best = atom
                .iter()
                .filter(|&&i| f.value(i) == max)
                .map(|&i| space.weight(i).clone())
                .max()
                .unwrap();
            best * rat_int(4) >= atom_weight
        });
        if heavy {
            assert!(final_gap < 1e-3, "case {case}: heavy gap {final_gap}");
        }
    }
    println!("criterion 2 (L^p limit, 100 vectors): PASS");
}

/// Criterion 3: the midpoint attains the distance exactly and no random
/// candidate in the range ever comes closer on any atom.
#[test]
fn c3_distance_theorem() {
    let cases: Vec<u64> = (0..200).collect();
    cases.par_iter().for_each(|&case| {
        let mut rng = ChaCha8Rng::seed_from_u64(3003 + case);
        let n = rng.random_range(1..=12usize);
        let space = random::space(&mut rng, n);
        let partition = random::partition(&mut rng, n);
        let sys = ConditionalSystem::new(space.clone(), partition).unwrap();
        let f = random::vector(&mut rng, &space, 100, 100);

        let (nearest, dist) = sys.nearest_in_range(&f).unwrap();
        let achieved = sys.cond_sup(&(&f - &nearest).abs()).unwrap();
        assert_eq!(achieved, dist, "case {case}: distance not attained");
        let delta = sys.delta(&f).unwrap();
        assert_eq!(
            delta.scale(&rat(1, 2)),
            dist,
            "case {case}: dist is not half the oscillation"
        );

        // Per-atom extremes make the candidate evaluation O(1).
        let extremes: Vec<(Rat, Rat, Rat)> = sys
            .partition()
            .atoms()
            .iter()
            .map(|atom| {
                let max = atom.iter().map(|&i| f.value(i)).max().unwrap().clone();
                let min = atom.iter().map(|&i| f.value(i)).min().unwrap().clone();
                let d = dist.value(atom[0]).clone();
                (max, min, d)
            })
            .collect();

        for k in 0..10_000u32 {
            // Half the grid hugs the midpoint, half roams free.
            let candidate: Vec<Rat> = if k % 2 == 0 {
                extremes
                    .iter()
                    .map(|(max, min, _)| {
                        let mid = (max + min) * rat(1, 2);
                        mid + random::rational(&mut rng, 8, 16)
                    })
                    .collect()
            } else {
                (0..extremes.len())
                    .map(|_| random::rational(&mut rng, 120, 16))
                    .collect()
            };
            for (a, (max, min, d)) in extremes.iter().enumerate() {
                let c = &candidate[a];
                let reach = std::cmp::max(max - c, c - min);
                assert!(
                    &reach >= d,
                    "case {case}, candidate {k}, atom {a}: {reach} < {d}"
                );
            }
            // Spot-check the shortcut against the real operator.
            if k % 1000 == 0 {
                let h = LatticeVector::new(
                    space.clone(),
                    (0..space.len())
                        .map(|i| candidate[sys.partition().owner(i)].clone())
                        .collect(),
                )
                .unwrap();
                let via_op = sys.cond_sup(&(&f - &h).abs()).unwrap();
                for (a, atom) in sys.partition().atoms().iter().enumerate() {
                    let c = &candidate[a];
                    let (max, min, _) = &extremes[a];
                    let reach = std::cmp::max(max - c, c - min);
                    assert_eq!(via_op.value(atom[0]), &reach, "shortcut mismatch");
                }
            }
        }
    });
    println!("criterion 3 (distance theorem, 200 x 10^4): PASS");
}

/// Independent immediate-profit search: per-atom sign analysis of the
/// one-step increments, written directly against the raw prices.
fn immediate_profit_oracle(m: &MarketModel) -> bool {
    for t in 0..m.horizon() {
        let next = m.price(t + 1);
        for atom in m.filtration().partition(t).atoms() {
            let here = m.price(t).value(atom[0]);
            let min = atom.iter().map(|&i| next.value(i)).min().unwrap();
            let max = atom.iter().map(|&i| next.value(i)).max().unwrap();
            if min > here || here > max {
                return true;
            }
        }
    }
    false
}

fn random_strategy(rng: &mut ChaCha8Rng, flt: &Arc<Filtration>, start: usize) -> Strategy {
    let holdings: Vec<LatticeVector> = (start..flt.horizon())
        .map(|t| {
            let atom_values: Vec<Rat> = (0..flt.partition(t).atom_count())
                .map(|_| random::rational(rng, 5, 3))
                .collect();
            LatticeVector::new(
                flt.space().clone(),
                (0..flt.space().len())
                    .map(|i| atom_values[flt.partition(t).owner(i)].clone())
                    .collect(),
            )
            .unwrap()
        })
        .collect();
    Strategy::new(flt, start, holdings).unwrap()
}

fn random_market_mixed(rng: &mut ChaCha8Rng) -> MarketModel {
    let outcomes = rng.random_range(2..=8usize);
    let periods = rng.random_range(1..=3usize);
    let kind = match rng.random_range(0..3u8) {
        0 => MarketKind::Free,
        1 => MarketKind::Aip,
        _ => MarketKind::StrictAip,
    };
    random::market(rng, outcomes, periods, kind)
}

/// Criterion 4: one-step, multi-period and direct immediate-profit search
/// agree on 500 random markets, with a valid certificate on every failure.
#[test]
fn c4_aip_equivalence() {
    let cases: Vec<u64> = (0..500).collect();
    cases.par_iter().for_each(|&case| {
        let mut rng = ChaCha8Rng::seed_from_u64(4004 + case);
        let market = random_market_mixed(&mut rng);
        let aip = market.aip_check();
        let multi = market.aip_check_multiperiod();
        let oracle_profit = immediate_profit_oracle(&market);

        assert_eq!(aip.holds(), multi.holds(), "case {case}: one-step vs pairs");
        assert_eq!(
            aip.holds(),
            !oracle_profit,
            "case {case}: verdict vs oracle"
        );

        let flt = market.filtration();
        if aip.holds() {
            // Sampled strategies can only promise a possibility of loss.
            for _ in 0..5 {
                let start = rng.random_range(0..market.horizon());
                let strategy = random_strategy(&mut rng, flt, start);
                let zero = LatticeVector::zero(flt.space().clone());
                let value = market.portfolio_value(&strategy, &zero).unwrap();
                let floor = flt.system(start).cond_inf(&value).unwrap();
                assert!(
                    floor.values().iter().all(|v| !v.is_positive()),
                    "case {case}: strategy with no possibility of loss under AIP"
                );
            }
        } else {
            for violation in &aip.violations {
                // Certificate: negative, non-zero price super-replicating 0.
                assert!(violation.price.values().iter().all(|p| !p.is_positive()));
                assert!(!violation.price.is_zero());
                let value = market
                    .portfolio_value(&violation.strategy, &violation.price)
                    .unwrap();
                assert!(
                    value.is_nonneg(),
                    "case {case}: certificate fails to super-replicate"
                );
                // And it breaks the possibility-of-loss lemma.
                let zero = LatticeVector::zero(flt.space().clone());
                let gain = market.portfolio_value(&violation.strategy, &zero).unwrap();
                let floor = flt.system(violation.time).cond_inf(&gain).unwrap();
                assert!(
                    floor.values().iter().any(|v| v.is_positive()),
                    "case {case}: certificate does not violate the loss lemma"
                );
            }
        }
    });
    println!("criterion 4 (AIP equivalence, 500 markets): PASS");
}

/// Criterion 5: the strictness route agrees with the sign analysis and NA
/// implies AIP on 500 random markets.
#[test]
fn c5_na_equivalence() {
    let cases: Vec<u64> = (0..500).collect();
    cases.par_iter().for_each(|&case| {
        let mut rng = ChaCha8Rng::seed_from_u64(5005 + case);
        let market = random_market_mixed(&mut rng);
        let na = market.na_check();
        let scan = market.arbitrage_bruteforce();
        let aip = market.aip_check();

        assert_eq!(na.holds, scan.holds(), "case {case}: na_check vs scan");
        if na.strictness_holds {
            assert!(na.holds, "case {case}: strictness implies NA");
        }
        if na.holds {
            assert!(aip.holds(), "case {case}: NA must imply AIP");
        }
        for opp in &scan.opportunities {
            let zero = LatticeVector::zero(market.filtration().space().clone());
            let value = market.portfolio_value(&opp.strategy, &zero).unwrap();
            assert!(
                value.is_nonneg() && !value.is_zero(),
                "case {case}: invalid arbitrage certificate"
            );
        }
    });
    println!("criterion 5 (NA vs sign analysis, 500 markets): PASS");
}

/// Criterion 6: superhedging prices verify and are eps-minimal on 200
/// random AIP markets; the canonical call prices to 1 exactly.
#[test]
fn c6_superhedging() {
    let eps = rat(1, 1000);
    let cases: Vec<u64> = (0..200).collect();
    cases.par_iter().for_each(|&case| {
        let mut rng = ChaCha8Rng::seed_from_u64(6006 + case);
        let outcomes = rng.random_range(2..=8usize);
        let periods = rng.random_range(1..=2usize);
        let market = random::market(&mut rng, outcomes, periods, MarketKind::Aip);
        let flt = market.filtration().clone();

        // Random terminal claim; every other case a call on the asset.
        let payoff = if case % 2 == 0 {
            let strike = random::nonneg_rational(&mut rng, 10, 2);
            (market.price(market.horizon())
                - &LatticeVector::constant(flt.space().clone(), strike))
                .pos_part()
        } else {
            let atom_values: Vec<Rat> = (0..flt.partition(flt.horizon()).atom_count())
                .map(|_| random::rational(&mut rng, 20, 4))
                .collect();
            LatticeVector::new(
                flt.space().clone(),
                (0..flt.space().len())
                    .map(|i| atom_values[flt.partition(flt.horizon()).owner(i)].clone())
                    .collect(),
            )
            .unwrap()
        };
        let claim = Claim::new(&flt, payoff).unwrap();

        for t in 0..=market.horizon() {
            let result = market.superhedge_price(&claim, t).unwrap();
            let check = market
                .superhedge_verify(&claim, t, &result.price, &eps)
                .unwrap();
            assert!(check.certified, "case {case} t={t}: price not certified");
            assert!(check.refuted, "case {case} t={t}: probe not refuted");
            assert_eq!(
                check.required, result.price,
                "case {case} t={t}: two minimax routes disagree"
            );
        }
    });

    // Canonical call: S 4 → (8, 2), strike 5.
    let space = SampleSpace::uniform(2);
    let flt = Filtration::new(
        space.clone(),
        vec![Partition::trivial(2), Partition::singletons(2)],
    )
    .unwrap();
    let prices = AdaptedProcess::new(
        flt.clone(),
        vec![
            LatticeVector::constant(space.clone(), rat_int(4)),
            LatticeVector::new(space.clone(), vec![rat_int(8), rat_int(2)]).unwrap(),
        ],
    )
    .unwrap();
    let market = MarketModel::new(prices).unwrap();
    let claim = Claim::new(
        &flt,
        LatticeVector::new(space, vec![rat_int(3), rat_int(0)]).unwrap(),
    )
    .unwrap();
    let result = market.superhedge_price(&claim, 0).unwrap();
    assert_eq!(result.price.value(0), &rat_int(1));
    println!("criterion 6 (superhedging, 200 markets): PASS");
}

fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    // Heap's algorithm.
    let mut items: Vec<usize> = (0..n).collect();
    let mut out = vec![items.clone()];
    let mut c = vec![0usize; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                items.swap(0, i);
            } else {
                items.swap(c[i], i);
            }
            out.push(items.clone());
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

fn cycle_count_oracle(tau: &[usize]) -> usize {
    let mut visited = vec![false; tau.len()];
    let mut count = 0;
    for start in 0..tau.len() {
        if visited[start] {
            continue;
        }
        count += 1;
        let mut current = start;
        while !visited[current] {
            visited[current] = true;
            current = tau[current];
        }
    }
    count
}

/// Unweighted per-cycle averages, broadcast; valid because uniform weights
/// are constant along cycles.
fn cycle_mean_oracle(tau: &[usize], f: &LatticeVector) -> Vec<Rat> {
    let mut visited = vec![false; tau.len()];
    let mut out = vec![Rat::zero(); tau.len()];
    for start in 0..tau.len() {
        if visited[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut current = start;
        while !visited[current] {
            visited[current] = true;
            cycle.push(current);
            current = tau[current];
        }
        let sum: Rat = cycle.iter().fold(Rat::zero(), |acc, &i| acc + f.value(i));
        let mean = sum / rat_int(cycle.len() as i64);
        for &i in &cycle {
            out[i] = mean.clone();
        }
    }
    out
}

/// Criterion 7: exhaustive over all permutations of up to 8 points.
#[test]
fn c7_ergodic_exhaustive() {
    for n in 1..=8usize {
        let space = SampleSpace::uniform(n);
        let perms = all_permutations(n);
        perms.par_iter().enumerate().for_each(|(index, tau)| {
            let mut rng =
                ChaCha8Rng::seed_from_u64(((7000 + n as u64) << 32) | index as u64);
            let ts = TransformSystem::new(space.clone(), tau.clone()).unwrap();
            let single_cycle = cycle_count_oracle(tau) == 1;
            assert_eq!(ts.is_ergodic(), single_cycle, "tau = {tau:?}");

            match ts.max_ergodic_check(2, &mut rng).unwrap() {
                MaxErgodicReport::Consistent { .. } => {
                    assert!(single_cycle, "tau = {tau:?}: consistent but not a cycle")
                }
                MaxErgodicReport::Counterexample {
                    witness,
                    time_max,
                    cond_sup,
                } => {
                    assert!(!single_cycle, "tau = {tau:?}: cycle with counterexample");
                    // Verify the counterexample against the operators.
                    assert_eq!(ts.time_max(&witness).unwrap(), time_max);
                    assert_eq!(ts.system().cond_sup(&witness).unwrap(), cond_sup);
                    assert_ne!(time_max, cond_sup);
                }
            }

            let period = ts.period().unwrap() as u64;
            if single_cycle {
                // Cesaro at the period is the expectation, exactly.
                for _ in 0..100 {
                    let f = random::vector(&mut rng, &space, 50, 20);
                    let mean = ts.cesaro_mean(&f, period).unwrap();
                    let expectation = ts.system().expectation(&f).unwrap();
                    assert_eq!(mean, expectation, "tau = {tau:?}");
                }
            } else {
                // Cesaro at the period is the cycle-wise mean.
                for _ in 0..3 {
                    let f = random::vector(&mut rng, &space, 50, 20);
                    let mean = ts.cesaro_mean(&f, period).unwrap();
                    assert_eq!(
                        mean.values(),
                        cycle_mean_oracle(tau, &f).as_slice(),
                        "tau = {tau:?}"
                    );
                }
            }
        });
    }
    println!("criterion 7 (ergodic, all permutations of <= 8 points): PASS");
}
