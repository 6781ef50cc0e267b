//! Conditional p-norms `N_p(f) = F(|f|^p)^{1/p}` and their large-p limit.
//!
//! These are the only floating-point computations in the crate. To keep the
//! powers well conditioned, every atom is normalized by the atomwise maximum
//! `M_F(|f|)` first, so the exponentiated ratios lie in `[0, 1]`:
//!
//! `N_p(f) = M · (Σ θ_ω r_ω^p)^{1/p}`, `r_ω = |f_ω|/M ∈ [0,1]`, `θ_ω = w_ω/W`.

use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{rat_to_f64, Rat};
use crate::system::ConditionalSystem;
use crate::vector::LatticeVector;

/// Guard for comparisons between consecutive floating-point norm values;
/// covers `powf`/summation rounding, which is far below any real violation
/// of the monotonicity the exact operator satisfies.
pub const MONOTONE_GUARD: f64 = 1e-12;

/// Norms along a doubling exponent grid plus the gap to the conditional
/// supremum, as produced by
/// [`lp_limit_estimate`](ConditionalSystem::lp_limit_estimate).
#[derive(Debug, Clone)]
pub struct LpLimitReport {
    /// Exponents `2, 4, ..., p_max`.
    pub grid: Vec<u32>,
    /// `norms[k][ω]` is `N_{grid[k]}(f)` at outcome `ω`.
    pub norms: Vec<Vec<f64>>,
    /// Per exponent, `max_ω |M_F(f)(ω) − N_p(f)(ω)|`.
    pub sup_gaps: Vec<f64>,
    /// Whether the norm sequence is non-decreasing in `p` at every outcome
    /// (up to [`MONOTONE_GUARD`]).
    pub monotone: bool,
}

impl ConditionalSystem {
    /// Conditional p-norm per outcome (constant on atoms). Exact for
    /// `p = 1`, where it reduces to `F(|f|)`; floating point with atomwise
    /// normalization otherwise.
    pub fn n_p_norm(&self, f: &LatticeVector, p: &Rat) -> Result<Vec<f64>> {
        if p < &Rat::one() {
            return Err(Error::ExponentBelowOne { p: p.to_string() });
        }
        self.check_vector(f)?;
        if p.is_one() {
            let exact = self.expectation(&f.abs())?;
            return Ok(exact.values().iter().map(rat_to_f64).collect());
        }
        let p_f = rat_to_f64(p);
        let sup_abs = self.cond_sup(&f.abs())?;
        let norm_atoms = self.atom_norms(f, &sup_abs, |r| r.powf(p_f), p_f);
        Ok(self.broadcast(&norm_atoms))
    }

    /// Norms along the doubling grid `p = 2, 4, ..., p_max` together with
    /// the sup-distance to `M_F(|f|)`. Requires `f ≥ 0`; the report records
    /// whether the sequence increased atomwise as the exact operator
    /// demands.
    pub fn lp_limit_estimate(&self, f: &LatticeVector, p_max: u32) -> Result<LpLimitReport> {
        if p_max < 2 {
            return Err(Error::GridTooShort { p_max });
        }
        self.check_vector(f)?;
        if let Some(index) = f.values().iter().position(|v| v < &Rat::zero()) {
            return Err(Error::NegativeEntry { index });
        }

        let sup = self.cond_sup(f)?;
        let sup_f64: Vec<f64> = sup.values().iter().map(rat_to_f64).collect();

        // Ratios r_ω = f_ω / M_F(f)|_ω in [0,1]; squaring them walks the
        // doubling grid exactly.
        let mut ratios: Vec<f64> = (0..f.len())
            .map(|i| {
                if sup.value(i).is_zero() {
                    0.0
                } else {
                    rat_to_f64(&(f.value(i) / sup.value(i)))
                }
            })
            .collect();

        let mut grid = Vec::new();
        let mut norms = Vec::new();
        let mut sup_gaps = Vec::new();
        let mut monotone = true;

        let mut p: u32 = 2;
        while p <= p_max {
            for r in &mut ratios {
                *r = *r * *r;
            }
            let p_f = p as f64;
            let norm_atoms = self.atom_norms_from_ratios(&ratios, &sup, p_f);
            let level = self.broadcast(&norm_atoms);
            if let Some(prev) = norms.last() {
                let prev: &Vec<f64> = prev;
                if level
                    .iter()
                    .zip(prev)
                    .any(|(cur, old)| *cur < old - MONOTONE_GUARD)
                {
                    monotone = false;
                }
            }
            let gap = level
                .iter()
                .zip(&sup_f64)
                .map(|(n, m)| (m - n).abs())
                .fold(0.0_f64, f64::max);
            grid.push(p);
            norms.push(level);
            sup_gaps.push(gap);
            match p.checked_mul(2) {
                Some(next) => p = next,
                None => break,
            }
        }

        Ok(LpLimitReport {
            grid,
            norms,
            sup_gaps,
            monotone,
        })
    }

    /// One normalized norm value per atom for an arbitrary power map.
    fn atom_norms(
        &self,
        f: &LatticeVector,
        sup_abs: &LatticeVector,
        power: impl Fn(f64) -> f64,
        p: f64,
    ) -> Vec<f64> {
        self.partition()
            .atoms()
            .iter()
            .enumerate()
            .map(|(a, atom)| {
                let scale = sup_abs.value(atom[0]);
                if scale.is_zero() {
                    return 0.0;
                }
                let total_weight = rat_to_f64(self.atom_weight(a));
                let s: f64 = atom
                    .iter()
                    .map(|&i| {
                        let r = rat_to_f64(&(f.value(i).abs() / scale));
                        rat_to_f64(self.space().weight(i)) / total_weight * power(r)
                    })
                    .sum();
                rat_to_f64(scale) * s.powf(1.0 / p)
            })
            .collect()
    }

    /// Same as [`atom_norms`](Self::atom_norms) but with the ratio powers
    /// already computed (the doubling grid squares them in place).
    fn atom_norms_from_ratios(&self, ratio_pows: &[f64], sup: &LatticeVector, p: f64) -> Vec<f64> {
        self.partition()
            .atoms()
            .iter()
            .enumerate()
            .map(|(a, atom)| {
                let scale = sup.value(atom[0]);
                if scale.is_zero() {
                    return 0.0;
                }
                let total_weight = rat_to_f64(self.atom_weight(a));
                let s: f64 = atom
                    .iter()
                    .map(|&i| rat_to_f64(self.space().weight(i)) / total_weight * ratio_pows[i])
                    .sum();
                rat_to_f64(scale) * s.powf(1.0 / p)
            })
            .collect()
    }

    fn broadcast(&self, atom_values: &[f64]) -> Vec<f64> {
        (0..self.space().len())
            .map(|outcome| atom_values[self.partition().owner(outcome)])
            .collect()
    }
}
