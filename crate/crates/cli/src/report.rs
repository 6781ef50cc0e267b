//! Typed command reports: the JSON schema of `--format json` and the text
//! renderers of `--format text`.
//!
//! Every report derives both `Serialize` and `Deserialize`, so the schema
//! check is structural: output that round-trips into the type is valid.
//! Rationals are canonical strings, atoms are index lists ordered by their
//! smallest element, vectors are full outcome-length rows.

use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

use condsup_core::rational::format_rat;
use condsup_core::{LatticeVector, Partition};

pub fn rat_row(v: &LatticeVector) -> Vec<String> {
    v.values().iter().map(format_rat).collect()
}

pub fn render_row(values: &[String]) -> String {
    format!("[{}]", values.join(", "))
}

fn atoms_display(atoms: &[Vec<usize>]) -> String {
    atoms
        .iter()
        .map(|a| Partition::atom_display(a))
        .collect::<Vec<_>>()
        .join(" ")
}

// ---------------------------------------------------------------- condops

#[derive(Debug, Serialize, Deserialize)]
pub struct CondopsReport {
    pub vector: String,
    pub values: Vec<String>,
    pub times: Vec<CondopsTime>,
    pub lp_limit: LpLimitSection,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CondopsTime {
    pub time: usize,
    pub atoms: Vec<Vec<usize>>,
    pub expectation: Vec<String>,
    pub cond_sup: Vec<String>,
    pub cond_inf: Vec<String>,
    pub delta: Vec<String>,
    pub nearest: Vec<String>,
    pub distance: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct LpLimitSection {
    pub p_max: u32,
    pub grid: Vec<u32>,
    /// One row per time step: sup-gap to the conditional supremum per `p`.
    pub sup_gaps: Vec<LpLimitRow>,
    pub monotone: bool,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct LpLimitRow {
    pub time: usize,
    pub gaps: Vec<f64>,
}

impl CondopsReport {
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "vector {} = {}", self.vector, render_row(&self.values));
        for t in &self.times {
            let _ = writeln!(out);
            let _ = writeln!(out, "time {}  atoms: {}", t.time, atoms_display(&t.atoms));
            let _ = writeln!(out, "  expectation  {}", render_row(&t.expectation));
            let _ = writeln!(out, "  cond sup     {}", render_row(&t.cond_sup));
            let _ = writeln!(out, "  cond inf     {}", render_row(&t.cond_inf));
            let _ = writeln!(out, "  delta        {}", render_row(&t.delta));
            let _ = writeln!(out, "  nearest      {}", render_row(&t.nearest));
            let _ = writeln!(out, "  distance     {}", render_row(&t.distance));
        }
        let _ = writeln!(out);
        let _ = writeln!(
            out,
            "lp-limit sup gaps (|f|, p-max {}, monotone: {})",
            self.lp_limit.p_max,
            if self.lp_limit.monotone { "yes" } else { "no" }
        );
        let header = self
            .lp_limit
            .sup_gaps
            .iter()
            .map(|row| format!("time {}", row.time))
            .collect::<Vec<_>>()
            .join("  ");
        let _ = writeln!(out, "  p      {header}");
        for (k, p) in self.lp_limit.grid.iter().enumerate() {
            let cells = self
                .lp_limit
                .sup_gaps
                .iter()
                .map(|row| format!("{:.3e}", row.gaps[k]))
                .collect::<Vec<_>>()
                .join("  ");
            let _ = writeln!(out, "  {p:<6} {cells}");
        }
        out
    }
}

// ------------------------------------------------------------------ check

#[derive(Debug, Serialize, Deserialize)]
pub struct CheckReport {
    pub mode: String,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub multiperiod_holds: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub strictness_holds: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sign_analysis_holds: Option<bool>,
    pub violations: Vec<CheckViolation>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CheckViolation {
    pub time: usize,
    pub atom: Vec<usize>,
    pub kind: String,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub price: Option<Vec<String>>,
}

impl CheckReport {
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let label = self.mode.to_uppercase();
        if self.holds {
            let note = match (self.mode.as_str(), self.strictness_holds) {
                ("na", Some(true)) => " (strictness hypothesis satisfied)",
                ("na", Some(false)) => " (by sign analysis)",
                _ => "",
            };
            let _ = writeln!(out, "{label}: holds{note}");
        } else {
            let _ = writeln!(out, "{label}: fails");
        }
        if let Some(mp) = self.multiperiod_holds {
            let _ = writeln!(
                out,
                "multi-period sandwich: {}",
                if mp { "holds" } else { "fails" }
            );
        }
        if let Some(sign) = self.sign_analysis_holds {
            let _ = writeln!(
                out,
                "sign analysis: {}",
                if sign { "no arbitrage" } else { "arbitrage found" }
            );
        }
        for v in &self.violations {
            let _ = writeln!(
                out,
                "  time {} atom {}: {} ({})",
                v.time,
                Partition::atom_display(&v.atom),
                v.kind,
                v.detail
            );
            if let Some(theta) = &v.theta {
                let _ = writeln!(out, "    theta = {}", render_row(theta));
            }
            if let Some(price) = &v.price {
                let _ = writeln!(out, "    price = {}", render_row(price));
            }
        }
        out
    }
}

// ------------------------------------------------------------------ price

#[derive(Debug, Serialize, Deserialize)]
pub struct PriceReport {
    pub claim: String,
    pub time: usize,
    pub payoff: Vec<String>,
    pub price: Vec<String>,
    pub strategy: Vec<StrategyStep>,
    pub verification: VerificationSection,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct StrategyStep {
    pub time: usize,
    pub theta: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct VerificationSection {
    pub eps: String,
    pub certified: bool,
    pub refuted_probe: bool,
    /// Per atom at the pricing time: required capital vs `price − eps`.
    pub margins: Vec<VerificationMargin>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct VerificationMargin {
    pub atom: Vec<usize>,
    pub required: String,
    pub probe: String,
}

impl PriceReport {
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "claim {} at time {}", self.claim, self.time);
        let _ = writeln!(out, "payoff = {}", render_row(&self.payoff));
        let _ = writeln!(out, "pi_{} = {}", self.time, render_row(&self.price));
        for step in &self.strategy {
            let _ = writeln!(out, "theta_{} = {}", step.time, render_row(&step.theta));
        }
        let v = &self.verification;
        let _ = writeln!(
            out,
            "verification (eps = {}): price {}, price - eps {}",
            v.eps,
            if v.certified { "certified" } else { "NOT certified" },
            if v.refuted_probe {
                "refuted"
            } else {
                "NOT refuted"
            }
        );
        for m in &v.margins {
            let _ = writeln!(
                out,
                "  atom {}: required {} > probe {}",
                Partition::atom_display(&m.atom),
                m.required,
                m.probe
            );
        }
        out
    }
}

// ---------------------------------------------------------------- ergodic

#[derive(Debug, Serialize, Deserialize)]
pub struct ErgodicReport {
    pub transform: Vec<usize>,
    pub cycles: Vec<Vec<usize>>,
    pub ergodic: bool,
    pub period: String,
    pub max_ergodic: MaxErgodicSection,
    pub cesaro: Vec<CesaroRow>,
    /// The sampled vector the Cesaro table is computed for.
    pub cesaro_vector: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct MaxErgodicSection {
    pub consistent: bool,
    pub trials: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<CounterexampleSection>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CounterexampleSection {
    pub witness: Vec<String>,
    pub time_max: Vec<String>,
    pub cond_sup: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CesaroRow {
    pub n: u64,
    pub values: Vec<String>,
    pub equals_expectation: bool,
}

impl ErgodicReport {
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "transform: [{}]",
            self.transform
                .iter()
                .map(|i| i.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        );
        let _ = writeln!(
            out,
            "cycles: {}",
            self.cycles
                .iter()
                .map(|c| format!(
                    "({})",
                    c.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(" ")
                ))
                .collect::<Vec<_>>()
                .join(" ")
        );
        let _ = writeln!(out, "ergodic: {}", if self.ergodic { "yes" } else { "no" });
        let _ = writeln!(out, "period: {}", self.period);
        if self.max_ergodic.consistent {
            let _ = writeln!(
                out,
                "max-ergodic: consistent ({} trials)",
                self.max_ergodic.trials
            );
        } else {
            let _ = writeln!(out, "max-ergodic: counterexample");
            if let Some(ce) = &self.max_ergodic.counterexample {
                let _ = writeln!(out, "  witness  = {}", render_row(&ce.witness));
                let _ = writeln!(out, "  time max = {}", render_row(&ce.time_max));
                let _ = writeln!(out, "  cond sup = {}", render_row(&ce.cond_sup));
            }
        }
        let _ = writeln!(
            out,
            "cesaro means for f = {}",
            render_row(&self.cesaro_vector)
        );
        for row in &self.cesaro {
            let _ = writeln!(
                out,
                "  n={:<4} {}  == expectation: {}",
                row.n,
                render_row(&row.values),
                if row.equals_expectation { "yes" } else { "no" }
            );
        }
        out
    }
}
