//! Finite outcome set with strictly positive rational weights.

use std::sync::Arc;

use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rat;

/// Finite sample space: outcomes `0..len()` carrying strictly positive
/// rational weights that sum exactly to one.
///
/// Strict positivity is what makes the conditional supremum the atomwise
/// maximum, so it is enforced at construction, not assumed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleSpace {
    weights: Vec<Rat>,
}

impl SampleSpace {
    /// Validates the weights and wraps the space for shared ownership.
    pub fn new(weights: Vec<Rat>) -> Result<Arc<Self>> {
        if weights.is_empty() {
            return Err(Error::EmptySpace);
        }
        for (index, w) in weights.iter().enumerate() {
            if !w.is_positive() {
                return Err(Error::NonPositiveWeight {
                    index,
                    value: w.to_string(),
                });
            }
        }
        let sum: Rat = weights.iter().fold(Rat::zero(), |acc, w| acc + w);
        if !sum.is_one() {
            return Err(Error::WeightSumNotOne {
                sum: sum.to_string(),
            });
        }
        Ok(Arc::new(Self { weights }))
    }

    /// Uniform space on `n` outcomes.
    pub fn uniform(n: usize) -> Arc<Self> {
        let w = Rat::new(1.into(), (n as i64).into());
        Self::new(vec![w; n]).expect("uniform weights are valid")
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weight(&self, outcome: usize) -> &Rat {
        &self.weights[outcome]
    }

    pub fn weights(&self) -> &[Rat] {
        &self.weights
    }

    /// Total weight of a set of outcomes.
    pub fn weight_of(&self, outcomes: &[usize]) -> Rat {
        outcomes
            .iter()
            .fold(Rat::zero(), |acc, &i| acc + &self.weights[i])
    }
}

/// Cheap identity check first, structural equality as fallback, so vectors
/// built from clones of the same space still compose.
pub(crate) fn same_space(a: &Arc<SampleSpace>, b: &Arc<SampleSpace>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}
