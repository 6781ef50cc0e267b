//! Cross-module properties over seeded random instances.

use num::Signed;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use condsup_core::random::{self, MarketKind};
use condsup_core::rational::{rat, Rat};
use condsup_core::{
    filtration, Claim, LatticeVector, MaxingaleClass, Strategy,
};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Conditional sup/inf of an adapted process at its own time stays
    /// adapted, and the running maximum is a sub-maxingale (inclusive).
    #[test]
    fn running_max_is_sub_maxingale(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.random_range(2..=10usize);
        let space = random::space(&mut rng, n);
        let flt = random::filtration(&mut rng, &space, rng.random_range(1..=3usize));
        let x = random::adapted_process(&mut rng, &flt, 20);
        let g = x.running_max();
        for t in 0..g.len() {
            prop_assert!(flt.partition(t).is_constant_on_atoms(g.at(t).values()));
        }
        let class = g.classify_maxingale().class;
        prop_assert!(
            matches!(class, MaxingaleClass::SubMaxingale | MaxingaleClass::Maxingale),
            "running max classified {class:?}"
        );
    }

    /// The process M_{F_n}(f) is a maxingale for every f and filtration.
    #[test]
    fn terminal_maxingale_is_maxingale(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.random_range(2..=10usize);
        let space = random::space(&mut rng, n);
        let flt = random::filtration(&mut rng, &space, rng.random_range(1..=3usize));
        let f = random::vector(&mut rng, &space, 50, 30);
        let process = filtration::maxingale_from_terminal(&f, &flt).unwrap();
        prop_assert_eq!(process.classify_maxingale().class, MaxingaleClass::Maxingale);
    }

    /// A process is a maxingale exactly when it is both a sub- and a
    /// super-maxingale; checked through the step relations.
    #[test]
    fn maxingale_is_sub_and_super(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.random_range(2..=8usize);
        let space = random::space(&mut rng, n);
        let flt = random::filtration(&mut rng, &space, 2);
        let x = random::adapted_process(&mut rng, &flt, 10);
        let report = x.classify_maxingale();
        let sub = report.steps.iter().all(|s| matches!(
            s,
            filtration::StepRelation::Equal | filtration::StepRelation::Dominates
        ));
        let sup = report.steps.iter().all(|s| matches!(
            s,
            filtration::StepRelation::Equal | filtration::StepRelation::Dominated
        ));
        prop_assert_eq!(report.class == MaxingaleClass::Maxingale, sub && sup);
    }

    /// Composing conditional expectations down a filtration collapses to
    /// the earlier time (matrix-composition oracle).
    #[test]
    fn filtration_expectations_compose(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.random_range(2..=10usize);
        let space = random::space(&mut rng, n);
        let flt = random::filtration(&mut rng, &space, 3);
        let f = random::vector(&mut rng, &space, 50, 30);
        for i in 0..flt.len() {
            for j in (i + 1)..flt.len() {
                let nested = flt.system(i).expectation(
                    &flt.system(j).expectation(&f).unwrap()
                ).unwrap();
                prop_assert_eq!(&nested, &flt.system(i).expectation(&f).unwrap());
            }
        }
    }

    /// Superhedging prices are monotone in the claim and translate by
    /// vectors known at the pricing time.
    #[test]
    fn superhedge_monotone_and_translation(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let market = random::market(&mut rng, rng.random_range(2..=8usize), 2, MarketKind::Aip);
        let flt = market.filtration().clone();
        let horizon = market.horizon();

        let h_small = random::range_vector(&mut rng, flt.system(horizon), 10);
        let bump = random::range_vector(&mut rng, flt.system(horizon), 5).abs();
        let h_big = &h_small + &bump;
        let claim_small = Claim::new(&flt, h_small.clone()).unwrap();
        let claim_big = Claim::new(&flt, h_big).unwrap();

        for t in 0..=horizon {
            let pi_small = market.superhedge_price(&claim_small, t).unwrap().price;
            let pi_big = market.superhedge_price(&claim_big, t).unwrap().price;
            prop_assert!(pi_small.le(&pi_big), "monotonicity failed at t={t}");

            // Translation by c in R(F_t).
            let c = random::range_vector(&mut rng, flt.system(t), 10);
            let shifted = Claim::new(&flt, &h_small + &c).unwrap();
            let pi_shifted = market.superhedge_price(&shifted, t).unwrap().price;
            prop_assert_eq!(&pi_shifted, &(&pi_small + &c), "translation failed at t={}", t);
        }
    }

    /// The zero claim prices to zero precisely on AIP markets; on non-AIP
    /// markets the recursion reports unboundedness.
    #[test]
    fn zero_claim_prices_iff_aip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let kind = if seed % 2 == 0 { MarketKind::Free } else { MarketKind::Aip };
        let market = random::market(&mut rng, rng.random_range(2..=8usize), 2, kind);
        let flt = market.filtration().clone();
        let claim = Claim::new(&flt, LatticeVector::zero(flt.space().clone())).unwrap();
        let result = market.superhedge_price(&claim, 0);
        if market.aip_check().holds() {
            let result = result.unwrap();
            prop_assert!(result.price.is_zero());
            for theta in result.strategy.holdings() {
                prop_assert!(theta.is_zero());
            }
        } else {
            prop_assert!(result.is_err());
        }
    }

    /// Telescoping: holding one unit throughout returns the total price
    /// move on every market.
    #[test]
    fn unit_strategy_telescopes(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let market = random::market(&mut rng, rng.random_range(2..=8usize), 3, MarketKind::Free);
        let flt = market.filtration().clone();
        let unit = LatticeVector::unit(flt.space().clone());
        let strategy = Strategy::new(
            &flt,
            0,
            (0..market.horizon()).map(|_| unit.clone()).collect(),
        ).unwrap();
        let zero = LatticeVector::zero(flt.space().clone());
        let value = market.portfolio_value(&strategy, &zero).unwrap();
        prop_assert_eq!(value, market.price(market.horizon()) - market.price(0));
    }

    /// Scaling a strategy scales the zero-capital portfolio value.
    #[test]
    fn portfolio_value_is_linear_in_strategy(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let market = random::market(&mut rng, rng.random_range(2..=6usize), 2, MarketKind::Free);
        let flt = market.filtration().clone();
        let scale = random::rational(&mut rng, 6, 3);
        let holdings: Vec<LatticeVector> = (0..market.horizon())
            .map(|t| random::range_vector(&mut rng, flt.system(t), 6))
            .collect();
        let scaled = Strategy::new(
            &flt,
            0,
            holdings.iter().map(|h| h.scale(&scale)).collect(),
        ).unwrap();
        let plain = Strategy::new(&flt, 0, holdings).unwrap();
        let zero = LatticeVector::zero(flt.space().clone());
        let v_plain = market.portfolio_value(&plain, &zero).unwrap();
        let v_scaled = market.portfolio_value(&scaled, &zero).unwrap();
        prop_assert_eq!(v_scaled, v_plain.scale(&scale));
    }

    /// S^j ∘ S^k = S^{j+k} and expectation is preserved by every power.
    #[test]
    fn transform_powers_compose(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.random_range(1..=10usize);
        let space = condsup_core::SampleSpace::uniform(n);
        let tau = random::permutation(&mut rng, n);
        let ts = condsup_core::TransformSystem::new(space.clone(), tau).unwrap();
        let f = random::vector(&mut rng, &space, 30, 10);
        let j = rng.random_range(0..20u64);
        let k = rng.random_range(0..20u64);
        let composed = ts.apply(&ts.apply(&f, k).unwrap(), j).unwrap();
        prop_assert_eq!(&composed, &ts.apply(&f, j + k).unwrap());
        let e_direct = ts.system().expectation(&f).unwrap();
        let e_shift = ts.system().expectation(&ts.apply(&f, k).unwrap()).unwrap();
        prop_assert_eq!(&e_direct, &e_shift);
    }
}

/// Verification rejects under-priced candidates: the certificate side must
/// fail on price − eps.
#[test]
fn verify_rejects_underpriced_candidates() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED);
    let eps = rat(1, 1000);
    for _ in 0..25 {
        let market = random::market(&mut rng, rng.random_range(2..=8usize), 2, MarketKind::Aip);
        let flt = market.filtration().clone();
        let h = random::range_vector(&mut rng, flt.system(market.horizon()), 10);
        let claim = Claim::new(&flt, h).unwrap();
        let result = market.superhedge_price(&claim, 0).unwrap();
        let low = result.price.add_scalar(&-eps.clone());
        let check = market.superhedge_verify(&claim, 0, &low, &eps).unwrap();
        assert!(!check.certified, "under-priced candidate certified");
    }
}

/// The one-step AIP certificate price is exactly the violated gap.
#[test]
fn aip_certificate_gap_is_tight() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xFACE);
    let mut seen_failures = 0;
    for _ in 0..200 {
        let market = random::market(&mut rng, rng.random_range(2..=8usize), 2, MarketKind::Free);
        let report = market.aip_check();
        for violation in &report.violations {
            seen_failures += 1;
            let gap: Rat = match violation.side {
                condsup_core::BoundSide::Lower => &violation.bound - &violation.market_price,
                condsup_core::BoundSide::Upper => &violation.market_price - &violation.bound,
            };
            assert!(gap.is_positive());
            let lead = violation.atom[0];
            assert_eq!(violation.price.value(lead), &-gap);
        }
    }
    assert!(seen_failures > 0, "free markets never failed AIP");
}
