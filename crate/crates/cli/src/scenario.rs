//! Scenario files: the JSON surface of the toolkit.
//!
//! Layout (all sections except `space` optional):
//!
//! ```json
//! {
//!   "space":      { "size": 4, "weights": ["1/4", "1/4", "1/4", "1/4"] },
//!   "filtration": [ [[0,1,2,3]], [[0,1],[2,3]], [[0],[1],[2],[3]] ],
//!   "prices":     [ ["4","4","4","4"], ["6","6","2","2"], ["7","5","3","1"] ],
//!   "claims":     { "call": ["3","3","0","0"] },
//!   "transform":  [1, 2, 0, 3],
//!   "vectors":    { "x": ["1","3","2","6"] }
//! }
//! ```
//!
//! Rationals are strings `"p"` or `"p/q"`, parsed exactly; decimals are
//! rejected. Loading canonicalizes every rational (reduced form, sign on
//! the numerator), so serializing a loaded scenario is byte-stable and
//! loading is idempotent.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use condsup_core::rational::{format_rat, parse_rat};
use condsup_core::{
    AdaptedProcess, Filtration, LatticeVector, MarketModel, Partition, SampleSpace,
    TransformSystem,
};

/// Raw document shape; rationals are still strings here.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioDoc {
    pub space: SpaceDoc,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub filtration: Option<Vec<Vec<Vec<usize>>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prices: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub claims: Option<BTreeMap<String, Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub transform: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vectors: Option<BTreeMap<String, Vec<String>>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceDoc {
    pub size: usize,
    pub weights: Vec<String>,
}

/// Fully validated scenario with exact values.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub space: Arc<SampleSpace>,
    pub filtration: Option<Arc<Filtration>>,
    pub market: Option<MarketModel>,
    pub claims: BTreeMap<String, LatticeVector>,
    pub transform: Option<TransformSystem>,
    pub vectors: BTreeMap<String, LatticeVector>,
}

/// Errors split by exit-code class: `Parse` exits 2, `Invalid` exits 3.
#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Invalid(String),
}

impl Scenario {
    pub fn load(path: &Path) -> Result<(ScenarioDoc, Scenario), ScenarioError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ScenarioError::Parse(format!("cannot read {}: {e}", path.display())))?;
        let doc: ScenarioDoc = serde_json::from_str(&text)
            .map_err(|e| ScenarioError::Parse(format!("{}: {e}", path.display())))?;
        let scenario = Scenario::from_doc(&doc)?;
        Ok((doc, scenario))
    }

    pub fn from_doc(doc: &ScenarioDoc) -> Result<Scenario, ScenarioError> {
        let invalid = |detail: String| ScenarioError::Invalid(detail);

        if doc.space.weights.len() != doc.space.size {
            return Err(invalid(format!(
                "space.weights has {} entries, space.size is {}",
                doc.space.weights.len(),
                doc.space.size
            )));
        }
        let weights = parse_rationals("space.weights", &doc.space.weights)?;
        let space = SampleSpace::new(weights)
            .map_err(|e| invalid(format!("space.weights: {e}")))?;

        let filtration = match &doc.filtration {
            None => None,
            Some(levels) => {
                let partitions = levels
                    .iter()
                    .enumerate()
                    .map(|(t, atoms)| {
                        Partition::new(space.len(), atoms.clone())
                            .map_err(|e| invalid(format!("filtration[{t}]: {e}")))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Some(
                    Filtration::new(space.clone(), partitions)
                        .map_err(|e| invalid(format!("filtration: {e}")))?,
                )
            }
        };

        let market = match &doc.prices {
            None => None,
            Some(rows) => {
                let flt = filtration
                    .as_ref()
                    .ok_or_else(|| invalid("prices require a filtration section".into()))?;
                if rows.len() != flt.len() {
                    return Err(invalid(format!(
                        "prices has {} rows, filtration has {} times",
                        rows.len(),
                        flt.len()
                    )));
                }
                let vectors = rows
                    .iter()
                    .enumerate()
                    .map(|(t, row)| {
                        let values = parse_rationals(&format!("prices[{t}]"), row)?;
                        LatticeVector::new(space.clone(), values)
                            .map_err(|e| invalid(format!("prices[{t}]: {e}")))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                let process = AdaptedProcess::new(flt.clone(), vectors)
                    .map_err(|e| invalid(format!("prices: {e}")))?;
                Some(MarketModel::new(process).map_err(|e| invalid(format!("prices: {e}")))?)
            }
        };

        let claims = match &doc.claims {
            None => BTreeMap::new(),
            Some(map) => {
                let flt = filtration
                    .as_ref()
                    .ok_or_else(|| invalid("claims require a filtration section".into()))?;
                let horizon = flt.horizon();
                map.iter()
                    .map(|(name, row)| {
                        let values = parse_rationals(&format!("claims.{name}"), row)?;
                        let v = LatticeVector::new(space.clone(), values)
                            .map_err(|e| invalid(format!("claims.{name}: {e}")))?;
                        if !flt.partition(horizon).is_constant_on_atoms(v.values()) {
                            return Err(invalid(format!(
                                "claims.{name}: not measurable at the horizon"
                            )));
                        }
                        Ok((name.clone(), v))
                    })
                    .collect::<Result<BTreeMap<_, _>, _>>()?
            }
        };

        let transform = match &doc.transform {
            None => None,
            Some(tau) => Some(
                TransformSystem::new(space.clone(), tau.clone())
                    .map_err(|e| invalid(format!("transform: {e}")))?,
            ),
        };

        let vectors = match &doc.vectors {
            None => BTreeMap::new(),
            Some(map) => map
                .iter()
                .map(|(name, row)| {
                    let values = parse_rationals(&format!("vectors.{name}"), row)?;
                    let v = LatticeVector::new(space.clone(), values)
                        .map_err(|e| invalid(format!("vectors.{name}: {e}")))?;
                    Ok((name.clone(), v))
                })
                .collect::<Result<BTreeMap<_, _>, ScenarioError>>()?,
        };

        Ok(Scenario {
            space,
            filtration,
            market,
            claims,
            transform,
            vectors,
        })
    }

    /// Canonical document for the loaded scenario: every rational reduced
    /// and re-rendered.
    pub fn to_doc(&self) -> ScenarioDoc {
        let rat_row = |v: &LatticeVector| v.values().iter().map(format_rat).collect::<Vec<_>>();
        ScenarioDoc {
            space: SpaceDoc {
                size: self.space.len(),
                weights: self.space.weights().iter().map(format_rat).collect(),
            },
            filtration: self.filtration.as_ref().map(|flt| {
                (0..flt.len())
                    .map(|t| flt.partition(t).atoms().to_vec())
                    .collect()
            }),
            prices: self.market.as_ref().map(|m| {
                m.prices().vectors().iter().map(&rat_row).collect()
            }),
            claims: if self.claims.is_empty() {
                None
            } else {
                Some(
                    self.claims
                        .iter()
                        .map(|(k, v)| (k.clone(), rat_row(v)))
                        .collect(),
                )
            },
            transform: self.transform.as_ref().map(|t| t.tau().to_vec()),
            vectors: if self.vectors.is_empty() {
                None
            } else {
                Some(
                    self.vectors
                        .iter()
                        .map(|(k, v)| (k.clone(), rat_row(v)))
                        .collect(),
                )
            },
        }
    }
}

fn parse_rationals(
    path: &str,
    raw: &[String],
) -> Result<Vec<condsup_core::Rat>, ScenarioError> {
    raw.iter()
        .enumerate()
        .map(|(i, s)| {
            parse_rat(s).map_err(|e| ScenarioError::Parse(format!("{path}[{i}]: {e}")))
        })
        .collect()
}
