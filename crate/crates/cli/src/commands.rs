//! The four subcommands, each producing a typed report.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use condsup_core::rational::{format_rat, Rat};
use condsup_core::{BoundSide, Claim, LatticeVector, MarketModel, MaxErgodicReport};

pub use crate::report::*;
use crate::scenario::Scenario;

/// `Ok(report)` or a semantic error message (exit 3).
type CmdResult<T> = Result<T, String>;

fn require_filtration(scenario: &Scenario) -> CmdResult<&std::sync::Arc<condsup_core::Filtration>> {
    scenario
        .filtration
        .as_ref()
        .ok_or_else(|| "scenario has no filtration section".into())
}

fn require_market(scenario: &Scenario) -> CmdResult<&MarketModel> {
    scenario
        .market
        .as_ref()
        .ok_or_else(|| "scenario has no prices section".into())
}

pub fn condops(scenario: &Scenario, vector_name: &str, p_max: u32) -> CmdResult<CondopsReport> {
    let flt = require_filtration(scenario)?;
    let f = scenario
        .vectors
        .get(vector_name)
        .ok_or_else(|| format!("no vector named `{vector_name}` in the scenario"))?;

    let mut times = Vec::new();
    let mut gap_rows = Vec::new();
    let mut grid = Vec::new();
    let mut monotone = true;
    for t in 0..flt.len() {
        let sys = flt.system(t);
        let expectation = sys.expectation(f).map_err(|e| e.to_string())?;
        let cond_sup = sys.cond_sup(f).map_err(|e| e.to_string())?;
        let cond_inf = sys.cond_inf(f).map_err(|e| e.to_string())?;
        let delta = sys.delta(f).map_err(|e| e.to_string())?;
        let (nearest, distance) = sys.nearest_in_range(f).map_err(|e| e.to_string())?;
        times.push(CondopsTime {
            time: t,
            atoms: sys.partition().atoms().to_vec(),
            expectation: rat_row(&expectation),
            cond_sup: rat_row(&cond_sup),
            cond_inf: rat_row(&cond_inf),
            delta: rat_row(&delta),
            nearest: rat_row(&nearest),
            distance: rat_row(&distance),
        });
        let report = sys
            .lp_limit_estimate(&f.abs(), p_max)
            .map_err(|e| e.to_string())?;
        monotone &= report.monotone;
        grid = report.grid.clone();
        gap_rows.push(LpLimitRow {
            time: t,
            gaps: report.sup_gaps,
        });
    }

    Ok(CondopsReport {
        vector: vector_name.to_string(),
        values: rat_row(f),
        times,
        lp_limit: LpLimitSection {
            p_max,
            grid,
            sup_gaps: gap_rows,
            monotone,
        },
    })
}

pub fn check_aip(scenario: &Scenario) -> CmdResult<CheckReport> {
    let market = require_market(scenario)?;
    let report = market.aip_check();
    let multi = market.aip_check_multiperiod();
    let violations = report
        .violations
        .iter()
        .map(|v| CheckViolation {
            time: v.time,
            atom: v.atom.clone(),
            kind: match v.side {
                BoundSide::Lower => "lower bound violated".into(),
                BoundSide::Upper => "upper bound violated".into(),
            },
            detail: match v.side {
                BoundSide::Lower => format!(
                    "price {} < cond inf {}",
                    format_rat(&v.market_price),
                    format_rat(&v.bound)
                ),
                BoundSide::Upper => format!(
                    "price {} > cond sup {}",
                    format_rat(&v.market_price),
                    format_rat(&v.bound)
                ),
            },
            theta: Some(rat_row(v.strategy.holding(v.time))),
            price: Some(rat_row(&v.price)),
        })
        .collect();
    Ok(CheckReport {
        mode: "aip".into(),
        holds: report.holds(),
        multiperiod_holds: Some(multi.holds()),
        strictness_holds: None,
        sign_analysis_holds: None,
        violations,
    })
}

pub fn check_na(scenario: &Scenario) -> CmdResult<CheckReport> {
    let market = require_market(scenario)?;
    let na = market.na_check();
    let scan = market.arbitrage_bruteforce();
    let violations = scan
        .opportunities
        .iter()
        .map(|o| CheckViolation {
            time: o.time,
            atom: o.atom.clone(),
            kind: match o.direction {
                condsup_core::market::Direction::Long => "long arbitrage".into(),
                condsup_core::market::Direction::Short => "short arbitrage".into(),
            },
            detail: "zero-cost strategy with non-negative, non-zero value".into(),
            theta: Some(rat_row(o.strategy.holding(o.time))),
            price: None,
        })
        .collect();
    Ok(CheckReport {
        mode: "na".into(),
        holds: na.holds,
        multiperiod_holds: None,
        strictness_holds: Some(na.strictness_holds),
        sign_analysis_holds: Some(scan.holds()),
        violations,
    })
}

/// Outcome of `price`: either the report, or an AIP witness (exit 1).
pub enum PriceOutcome {
    Report(PriceReport),
    ImmediateProfit(CheckReport),
}

pub fn price(
    scenario: &Scenario,
    claim_name: &str,
    time: usize,
    eps: &Rat,
) -> CmdResult<PriceOutcome> {
    let market = require_market(scenario)?;
    let flt = require_filtration(scenario)?;
    let payoff = scenario
        .claims
        .get(claim_name)
        .ok_or_else(|| format!("no claim named `{claim_name}` in the scenario"))?;
    if time > market.horizon() {
        return Err(format!(
            "time {time} out of range, horizon is {}",
            market.horizon()
        ));
    }
    let aip = check_aip(scenario)?;
    if !aip.holds {
        return Ok(PriceOutcome::ImmediateProfit(aip));
    }
    let claim = Claim::new(flt, payoff.clone()).map_err(|e| e.to_string())?;
    let result = market
        .superhedge_price(&claim, time)
        .map_err(|e| e.to_string())?;
    let verification = market
        .superhedge_verify(&claim, time, &result.price, eps)
        .map_err(|e| e.to_string())?;

    let strategy = (time..market.horizon())
        .map(|t| StrategyStep {
            time: t,
            theta: rat_row(result.strategy.holding(t)),
        })
        .collect();
    let margins = verification
        .margins
        .iter()
        .map(|(atom_index, required, probe)| VerificationMargin {
            atom: flt.partition(time).atom(*atom_index).to_vec(),
            required: format_rat(required),
            probe: format_rat(probe),
        })
        .collect();

    Ok(PriceOutcome::Report(PriceReport {
        claim: claim_name.to_string(),
        time,
        payoff: rat_row(payoff),
        price: rat_row(&result.price),
        strategy,
        verification: VerificationSection {
            eps: format_rat(eps),
            certified: verification.certified,
            refuted_probe: verification.refuted,
            margins,
        },
    }))
}

pub fn ergodic(scenario: &Scenario, trials: u32, seed: u64) -> CmdResult<ErgodicReport> {
    let ts = scenario
        .transform
        .as_ref()
        .ok_or_else(|| "scenario has no transform section".to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let check = ts
        .max_ergodic_check(trials, &mut rng)
        .map_err(|e| e.to_string())?;
    let max_ergodic = match &check {
        MaxErgodicReport::Consistent { trials } => MaxErgodicSection {
            consistent: true,
            trials: *trials,
            counterexample: None,
        },
        MaxErgodicReport::Counterexample {
            witness,
            time_max,
            cond_sup,
        } => MaxErgodicSection {
            consistent: false,
            trials,
            counterexample: Some(CounterexampleSection {
                witness: rat_row(witness),
                time_max: rat_row(time_max),
                cond_sup: rat_row(cond_sup),
            }),
        },
    };

    let period = ts.period().expect("desk-scale period");
    let f = condsup_core::random::vector(&mut rng, ts.space(), 9, 3);
    let expectation = ts.system().expectation(&f).map_err(|e| e.to_string())?;
    let mut rows = Vec::new();
    let mut n = 1u64;
    let cap = 1u64 << 16;
    while (n as u128) < period && n < cap {
        rows.push(cesaro_row(ts, &f, n, &expectation)?);
        n *= 2;
    }
    if period <= cap as u128 {
        rows.push(cesaro_row(ts, &f, period as u64, &expectation)?);
    }

    Ok(ErgodicReport {
        transform: ts.tau().to_vec(),
        cycles: ts.cycles().to_vec(),
        ergodic: ts.is_ergodic(),
        period: period.to_string(),
        max_ergodic,
        cesaro: rows,
        cesaro_vector: rat_row(&f),
    })
}

fn cesaro_row(
    ts: &condsup_core::TransformSystem,
    f: &LatticeVector,
    n: u64,
    expectation: &LatticeVector,
) -> CmdResult<CesaroRow> {
    let mean = ts.cesaro_mean(f, n).map_err(|e| e.to_string())?;
    Ok(CesaroRow {
        n,
        equals_expectation: &mean == expectation,
        values: rat_row(&mean),
    })
}
