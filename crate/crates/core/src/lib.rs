//! Conditional supremum and infimum operators on finite weighted sample spaces.
//!
//! The central object is a conditional Riesz triple `(E, e, F)` realized on a
//! finite outcome set: `E` is the space of rational-valued vectors indexed by
//! outcomes, `e` is the all-ones vector, and `F` is the conditional
//! expectation attached to a partition of the outcomes into atoms. On top of
//! the triple the crate builds
//!
//! - the conditional supremum `M_F` and infimum `m_F` (atomwise max/min),
//!   the oscillation operator `delta = M_F - m_F`, the exact distance to the
//!   range of `F`, conditional `p`-norms and their large-`p` limit
//!   ([`ConditionalSystem`]);
//! - filtrations of refining partitions, adapted processes and their
//!   maxingale classification ([`Filtration`], [`AdaptedProcess`]);
//! - a single-asset discrete market with immediate-profit and arbitrage
//!   detection plus exact minimal superhedging prices ([`MarketModel`]);
//! - measure-preserving permutations with the max-ergodic and Cesaro checks
//!   ([`TransformSystem`]).
//!
//! All order and market computations use exact rational arithmetic
//! ([`Rat`]); only the conditional `p`-norms are evaluated in floating
//! point. Every operation is a pure function on immutable values, so the
//! inner loops over atoms, outcomes and test instances are data-parallel;
//! with the default `parallel` feature they run on rayon, without it the
//! same code runs sequentially.

pub mod convex;
pub mod ergodic;
pub mod error;
mod exec;
pub mod filtration;
pub mod laws;
pub mod market;
mod norms;
pub mod partition;
pub mod random;
pub mod rational;
pub mod space;
mod superhedge;
pub mod system;
pub mod vector;

pub use convex::PiecewiseAffineConvex;
pub use ergodic::{MaxErgodicReport, TransformSystem};
pub use error::{Error, Result};
pub use filtration::{AdaptedProcess, Filtration, MaxingaleClass, MaxingaleReport, StepRelation};
pub use market::{
    AipReport, AipViolation, ArbitrageOpportunity, ArbitrageReport, BoundSide, Claim, MarketModel,
    MultiPeriodAipReport, NaReport, Strategy,
};
pub use norms::LpLimitReport;
pub use partition::Partition;
pub use rational::Rat;
pub use space::SampleSpace;
pub use superhedge::{SuperhedgeResult, SuperhedgeVerification};
pub use system::ConditionalSystem;
pub use vector::{band_component, LatticeVector};
