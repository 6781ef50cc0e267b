//! Law sheet for the conditional operators.
//!
//! Every identity and inequality the operators satisfy, written as
//! executable checks over a [`LawInstance`](crate::random::LawInstance).
//! All comparisons are exact rational equalities or pointwise order
//! comparisons; only the conditional p-norm law runs in floating point and
//! carries the documented guard. The property suites run
//! [`check_instance`] over randomized instances; [`check_many`] fans a
//! batch out over the `parallel` feature.
//!
//! | Law | Statement |
//! |-----|-----------|
//! | `sandwich` | `m_F(f) ≤ F(f) ≤ M_F(f)` |
//! | `positive-homogeneity` | `M_F(λf) = λM_F(f)`, `m_F(λf) = λm_F(f)`, `λ ≥ 0` |
//! | `subadditive` | `M_F(f+g) ≤ M_F(f) + M_F(g)`; `m_F` superadditive |
//! | `translation` | `M_F(f+h) = h + M_F(f)` and dually for `h ∈ R(F)` |
//! | `lipschitz` | `\|M_F(f) − M_F(g)\| ≤ M_F(\|f−g\|)`, same for `m_F` |
//! | `sup-identity` | `M_F(f∨g) = M_F(f) ∨ M_F(g)`; dual for `m_F`, `∧` |
//! | `mixed-bounds` | `M_F(f∧g) ≤ M_F(f) ∧ M_F(g)`, equality for `g ∈ R(F)` |
//! | `mixed-chain` | `m_F(f∧g) ≤ m_F(f) ∧ M_F(g) ≤ M_F(f∧g)` and `∨` variant |
//! | `disjointness` | `f ∧ g = 0 ⇒ m_F(f) ∧ M_F(g) = 0` |
//! | `parts` | `M_F(f⁺) = M_F(f)⁺`, `M_F(f⁻) = m_F(f)⁻`, duals |
//! | `duality` | `m_F(−f) = −M_F(f)` |
//! | `idempotence` | `M_F`, `m_F`, `F` idempotent; fixed on `R(F)` |
//! | `tower` | `R(F) ⊆ R(G)`: `M_G(f) ≤ M_F(f)`, compositions collapse |
//! | `jensen` | `φ(F f) ≤ F(φf) ≤ M_F(φf)` and `φ(M_F f) ≤ M_F(φf)` |
//! | `product` | `M_F(hf) = hM_F(f)` for `h ∈ R(F)⁺`; signed corollary |
//! | `component` | `p = P_{h⁺}e`: `p∧(e−p) = 0`, `ph = h⁺`, `(e−p)h = −h⁻` |
//! | `norm-attainment` | `M_F(\|f\|)` dominates, lies in `R(F)`, is attained |
//! | `monotone-chain` | increasing chain: `M_F(sup f_i) = sup M_F(f_i)` |
//! | `delta-seminorm` | `δ(μf) = \|μ\|δ(f)`, triangle bounds, `δ = δ(f⁺)+δ(f⁻)` |
//! | `delta-kernel` | `δ(f) = 0 ⟺ f ∈ R(F)`; `δ(f+h) = δ(f)` |
//! | `delta-continuity` | `M_F(\|δ(f)−δ(g)\|) ≤ 2 M_F(\|f−g\|)` |
//! | `distance` | `M_F(\|f−mid\|) = δ(f)/2`, no `h ∈ R(F)` beats it |
//! | `p-norm` | `N_p` atomwise monotone in `p`, below `M_F(\|f\|)` (float) |

use num::{One, Signed};

use crate::error::Result as CoreResult;
use crate::exec;
use crate::norms::MONOTONE_GUARD;
use crate::random::LawInstance;
use crate::rational::{rat_to_f64, Rat};
use crate::system::ConditionalSystem;
use crate::vector::{band_component, LatticeVector};

/// A failed law with enough context to reproduce it.
#[derive(Debug, Clone)]
pub struct LawViolation {
    pub law: &'static str,
    pub detail: String,
}

impl std::fmt::Display for LawViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "law `{}` violated: {}", self.law, self.detail)
    }
}

type LawResult = Result<(), LawViolation>;

fn fail(law: &'static str, detail: String) -> LawResult {
    Err(LawViolation { law, detail })
}

fn require(cond: bool, law: &'static str, detail: impl Fn() -> String) -> LawResult {
    if cond {
        Ok(())
    } else {
        fail(law, detail())
    }
}

/// Runs the whole law sheet on one instance.
pub fn check_instance(inst: &LawInstance) -> LawResult {
    let sys = &inst.sys;
    let f = &inst.f;
    let g = &inst.g;

    let sup_f = ok(sys.cond_sup(f));
    let inf_f = ok(sys.cond_inf(f));
    let exp_f = ok(sys.expectation(f));
    let sup_g = ok(sys.cond_sup(g));
    let inf_g = ok(sys.cond_inf(g));

    require(
        inf_f.le(&exp_f) && exp_f.le(&sup_f) && inf_f.le(f) && f.le(&sup_f),
        "sandwich",
        || format!("f = {f}"),
    )?;

    let scaled = f.scale(&inst.lambda);
    require(
        ok(sys.cond_sup(&scaled)) == sup_f.scale(&inst.lambda)
            && ok(sys.cond_inf(&scaled)) == inf_f.scale(&inst.lambda),
        "positive-homogeneity",
        || format!("lambda = {}, f = {f}", inst.lambda),
    )?;

    let sum = f + g;
    require(
        ok(sys.cond_sup(&sum)).le(&(&sup_f + &sup_g))
            && ok(sys.cond_inf(&sum)).ge(&(&inf_f + &inf_g)),
        "subadditive",
        || format!("f = {f}, g = {g}"),
    )?;

    let shifted = f + &inst.h;
    require(
        ok(sys.cond_sup(&shifted)) == &inst.h + &sup_f
            && ok(sys.cond_inf(&shifted)) == &inst.h + &inf_f,
        "translation",
        || format!("h = {}", inst.h),
    )?;

    let diff_bound = ok(sys.cond_sup(&(f - g).abs()));
    require(
        (&sup_f - &sup_g).abs().le(&diff_bound) && (&inf_f - &inf_g).abs().le(&diff_bound),
        "lipschitz",
        || format!("f = {f}, g = {g}"),
    )?;

    require(
        ok(sys.cond_sup(&f.sup(g))) == sup_f.sup(&sup_g)
            && ok(sys.cond_inf(&f.inf(g))) == inf_f.inf(&inf_g),
        "sup-identity",
        || format!("f = {f}, g = {g}"),
    )?;

    require(
        ok(sys.cond_sup(&f.inf(g))).le(&sup_f.inf(&sup_g))
            && ok(sys.cond_inf(&f.sup(g))).ge(&inf_f.sup(&inf_g))
            && ok(sys.cond_sup(&f.inf(&inst.h))) == sup_f.inf(&inst.h)
            && ok(sys.cond_inf(&f.sup(&inst.h))) == inf_f.sup(&inst.h),
        "mixed-bounds",
        || format!("f = {f}, g = {g}, h = {}", inst.h),
    )?;

    {
        let mid_inf = inf_f.inf(&sup_g);
        let mid_sup = inf_f.sup(&sup_g);
        require(
            ok(sys.cond_inf(&f.inf(g))).le(&mid_inf)
                && mid_inf.le(&ok(sys.cond_sup(&f.inf(g))))
                && ok(sys.cond_inf(&f.sup(g))).le(&mid_sup)
                && mid_sup.le(&ok(sys.cond_sup(&f.sup(g)))),
            "mixed-chain",
            || format!("f = {f}, g = {g}"),
        )?;
    }

    {
        let (u, v) = &inst.disjoint;
        require(
            ok(sys.cond_inf(u)).inf(&ok(sys.cond_sup(v))).is_zero(),
            "disjointness",
            || format!("u = {u}, v = {v}"),
        )?;
    }

    require(
        ok(sys.cond_sup(&f.pos_part())) == sup_f.pos_part()
            && ok(sys.cond_inf(&f.pos_part())) == inf_f.pos_part()
            && ok(sys.cond_sup(&f.neg_part())) == inf_f.neg_part()
            && ok(sys.cond_inf(&f.neg_part())) == sup_f.neg_part(),
        "parts",
        || format!("f = {f}"),
    )?;

    require(
        ok(sys.cond_inf(&-f)) == -&sup_f && ok(sys.cond_sup(&-f)) == -&inf_f,
        "duality",
        || format!("f = {f}"),
    )?;

    require(
        ok(sys.cond_sup(&sup_f)) == sup_f
            && ok(sys.cond_inf(&inf_f)) == inf_f
            && ok(sys.expectation(&exp_f)) == exp_f
            && ok(sys.cond_sup(&inst.h)) == inst.h
            && ok(sys.cond_inf(&inst.h)) == inst.h
            && ok(sys.expectation(&inst.h)) == inst.h
            && ok(sys.expectation(&LatticeVector::unit(sys.space().clone())))
                == LatticeVector::unit(sys.space().clone()),
        "idempotence",
        || format!("f = {f}, h = {}", inst.h),
    )?;

    {
        // fine_sys refines sys, so R(sys) ⊆ R(fine_sys).
        let fine = &inst.fine_sys;
        let sup_fine = ok(fine.cond_sup(f));
        require(
            sup_fine.le(&sup_f)
                && ok(sys.cond_sup(&sup_fine)) == sup_f
                && ok(fine.cond_sup(&sup_f)) == sup_f
                && ok(fine.cond_inf(&inf_f)) == inf_f
                && ok(sys.cond_inf(&ok(fine.cond_inf(f)))) == inf_f,
            "tower",
            || format!("f = {f}"),
        )?;
    }

    {
        let phi_f = inst.phi.apply(f);
        let lhs_exp = inst.phi.apply(&exp_f);
        let mid = ok(sys.expectation(&phi_f));
        let rhs = ok(sys.cond_sup(&phi_f));
        require(
            lhs_exp.le(&mid) && mid.le(&rhs) && inst.phi.apply(&sup_f).le(&rhs),
            "jensen",
            || format!("phi = {:?}, f = {f}", inst.phi.pieces()),
        )?;
    }

    {
        let pos_prod = &inst.h_pos * f;
        let signed_prod = &inst.h * f;
        let signed_expected =
            &(&inst.h.pos_part() * &sup_f) - &(&inst.h.neg_part() * &inf_f);
        require(
            ok(sys.cond_sup(&pos_prod)) == &inst.h_pos * &sup_f
                && ok(sys.cond_sup(&signed_prod)) == signed_expected,
            "product",
            || format!("h = {}, f = {f}", inst.h),
        )?;
    }

    {
        let p = band_component(&inst.h);
        let e = LatticeVector::unit(sys.space().clone());
        let complement = &e - &p;
        require(
            p.inf(&complement).is_zero()
                && &p * &inst.h == inst.h.pos_part()
                && &complement * &inst.h == -&inst.h.neg_part(),
            "component",
            || format!("h = {}", inst.h),
        )?;
    }

    {
        let norm = ok(sys.cond_sup(&f.abs()));
        let dominated = f.abs().le(&norm);
        let in_range = ok(sys.in_range(&norm));
        // Least upper bound via attainment: every atom realizes the value.
        let attained = sys.partition().atoms().iter().all(|atom| {
            atom.iter()
                .any(|&i| &f.value(i).abs() == norm.value(atom[0]))
        });
        require(dominated && in_range && attained, "norm-attainment", || {
            format!("f = {f}")
        })?;
    }

    {
        let total = inst
            .chain
            .iter()
            .skip(1)
            .fold(inst.chain[0].clone(), |acc, x| acc.sup(x));
        let sup_of_sups = inst
            .chain
            .iter()
            .map(|x| ok(sys.cond_sup(x)))
            .reduce(|acc, x| acc.sup(&x))
            .expect("chain is non-empty");
        require(
            ok(sys.cond_sup(&total)) == sup_of_sups,
            "monotone-chain",
            || format!("chain of length {}", inst.chain.len()),
        )?;
    }

    let delta_f = ok(sys.delta(f));
    let delta_g = ok(sys.delta(g));
    {
        let scaled = f.scale(&inst.mu);
        require(
            ok(sys.delta(&scaled)) == delta_f.scale(&inst.mu.abs())
                && ok(sys.delta(&-f)) == delta_f
                && delta_f.is_nonneg(),
            "delta-seminorm",
            || format!("mu = {}, f = {f}", inst.mu),
        )?;
        let delta_diff = ok(sys.delta(&(f - g)));
        require(
            (&delta_f - &delta_g).le(&delta_diff)
                && delta_diff.le(&(&delta_f + &delta_g)),
            "delta-seminorm",
            || format!("triangle: f = {f}, g = {g}"),
        )?;
        require(
            delta_f
                == &ok(sys.delta(&f.pos_part())) + &ok(sys.delta(&f.neg_part())),
            "delta-seminorm",
            || format!("parts split: f = {f}"),
        )?;
    }

    require(
        ok(sys.delta(&(f + &inst.h))) == delta_f
            && ok(sys.delta(&inst.h)).is_zero()
            && (ok(sys.in_range(f)) == delta_f.is_zero()),
        "delta-kernel",
        || format!("f = {f}, h = {}", inst.h),
    )?;

    require(
        ok(sys.cond_sup(&(&delta_f - &delta_g).abs()))
            .le(&ok(sys.cond_sup(&(f - g).abs())).scale(&Rat::from_integer(2.into()))),
        "delta-continuity",
        || format!("f = {f}, g = {g}"),
    )?;

    {
        let (mid, dist) = ok(sys.nearest_in_range(f));
        let achieved = ok(sys.cond_sup(&(f - &mid).abs()));
        let half = Rat::new(1.into(), 2.into());
        require(
            achieved == dist && dist == delta_f.scale(&half) && ok(sys.in_range(&mid)),
            "distance",
            || format!("f = {f}"),
        )?;
        // The instance's h never does better on any atom.
        let other = ok(sys.cond_sup(&(f - &inst.h).abs()));
        require(other.ge(&dist), "distance", || {
            format!("h = {} beat the midpoint on f = {f}", inst.h)
        })?;
    }

    check_p_norm_monotone(sys, f)?;

    Ok(())
}

/// Floating-point law: `N_p(f)` non-decreasing along `p = 1, 2, 4, 8, 16`
/// and below `M_F(|f|)`, both up to [`MONOTONE_GUARD`].
fn check_p_norm_monotone(sys: &ConditionalSystem, f: &LatticeVector) -> LawResult {
    let bound: Vec<f64> = ok(sys.cond_sup(&f.abs()))
        .values()
        .iter()
        .map(rat_to_f64)
        .collect();
    let mut previous: Option<Vec<f64>> = None;
    let mut p = Rat::one();
    for _ in 0..5 {
        let current = ok(sys.n_p_norm(f, &p));
        for (i, (value, cap)) in current.iter().zip(&bound).enumerate() {
            require(*value <= cap + MONOTONE_GUARD, "p-norm", || {
                format!("N_{p}(f)[{i}] = {value} exceeds bound {cap}")
            })?;
            if let Some(prev) = &previous {
                require(*value >= prev[i] - MONOTONE_GUARD, "p-norm", || {
                    format!("N_p not monotone at outcome {i}: {} then {value}", prev[i])
                })?;
            }
        }
        previous = Some(current);
        p = p * Rat::from_integer(2.into());
    }
    Ok(())
}

/// Checks a batch of instances, in parallel under the `parallel` feature;
/// the first violation (by instance index) is reported.
pub fn check_many(instances: &[LawInstance]) -> LawResult {
    let results = exec::map_range(instances.len(), |i| check_instance(&instances[i]));
    results.into_iter().collect()
}

/// Unwraps operations that cannot fail on a well-formed instance.
fn ok<T>(value: CoreResult<T>) -> T {
    value.expect("law instance is internally consistent")
}
