//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("sample space must have at least one outcome")]
    EmptySpace,

    #[error("weight of outcome {index} is {value}, weights must be strictly positive")]
    NonPositiveWeight { index: usize, value: String },

    #[error("weights sum to {sum}, expected exactly 1")]
    WeightSumNotOne { sum: String },

    #[error("vector has {got} entries, space has {expected} outcomes")]
    DimensionMismatch { got: usize, expected: usize },

    #[error("operands live on different sample spaces")]
    SpaceMismatch,

    #[error("partition atom {atom} is empty")]
    EmptyAtom { atom: usize },

    #[error("outcome {outcome} appears in more than one atom")]
    OverlappingAtoms { outcome: usize },

    #[error("outcome {outcome} is not covered by any atom")]
    UncoveredOutcome { outcome: usize },

    #[error("atom contains outcome {outcome}, space has only {size} outcomes")]
    AtomOutOfRange { outcome: usize, size: usize },

    #[error("a filtration needs at least one partition")]
    EmptyFiltration,

    #[error(
        "partition at time {later} does not refine time {earlier}: atom {atom:?} crosses atoms"
    )]
    NonRefining {
        earlier: usize,
        later: usize,
        atom: Vec<usize>,
    },

    #[error("vector at time {time} is not constant on the atoms of its partition")]
    NotAdapted { time: usize },

    #[error("process has {got} vectors, filtration has {expected} times")]
    ProcessLength { got: usize, expected: usize },

    #[error("price at time {time}, outcome {outcome} is negative")]
    NegativePrice { time: usize, outcome: usize },

    #[error("time {time} out of range, horizon is {horizon}")]
    TimeOutOfRange { time: usize, horizon: usize },

    #[error("strategy covers times {start}..{end}, expected {expected_start}..{expected_end}")]
    StrategyRange {
        start: usize,
        end: usize,
        expected_start: usize,
        expected_end: usize,
    },

    #[error("exponent p must be >= 1, got {p}")]
    ExponentBelowOne { p: String },

    #[error("p_max must be at least 2, got {p_max}")]
    GridTooShort { p_max: u32 },

    #[error("entry {index} is negative, a non-negative vector is required")]
    NegativeEntry { index: usize },

    #[error("a piecewise affine function needs at least one piece")]
    EmptyPieces,

    #[error(
        "immediate profit at time {time}, atom {atom:?}: superhedging minimax unbounded below"
    )]
    MinimaxUnbounded { time: usize, atom: Vec<usize> },

    #[error("transform is not a permutation: {detail}")]
    NotPermutation { detail: String },

    #[error("weights are not invariant under the transform: outcome {outcome} maps to {image}")]
    WeightsNotInvariant { outcome: usize, image: usize },
}
