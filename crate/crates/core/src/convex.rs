//! Convex functions as finite maxima of rational affine pieces.

use crate::error::{Error, Result};
use crate::rational::Rat;
use crate::vector::LatticeVector;

/// `φ(x) = max_i (a_i x + b_i)` for a non-empty list of affine pieces.
///
/// A maximum of affine functions is automatically convex, and every convex
/// function on the rationals is a monotone limit of such maxima, so this is
/// the exact class the conditional Jensen inequality is proved on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiecewiseAffineConvex {
    /// `(slope, intercept)` pairs.
    pieces: Vec<(Rat, Rat)>,
}

impl PiecewiseAffineConvex {
    pub fn new(pieces: Vec<(Rat, Rat)>) -> Result<Self> {
        if pieces.is_empty() {
            return Err(Error::EmptyPieces);
        }
        Ok(Self { pieces })
    }

    /// A single affine function `a x + b`.
    pub fn affine(slope: Rat, intercept: Rat) -> Self {
        Self {
            pieces: vec![(slope, intercept)],
        }
    }

    /// `|x| = x ∨ (−x)`.
    pub fn abs() -> Self {
        Self {
            pieces: vec![
                (Rat::from_integer(1.into()), Rat::from_integer(0.into())),
                (Rat::from_integer((-1).into()), Rat::from_integer(0.into())),
            ],
        }
    }

    pub fn pieces(&self) -> &[(Rat, Rat)] {
        &self.pieces
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        self.pieces
            .iter()
            .map(|(a, b)| a * x + b)
            .max()
            .expect("pieces are non-empty")
    }

    /// Pointwise application `ω ↦ φ(f(ω))`, exact.
    pub fn apply(&self, f: &LatticeVector) -> LatticeVector {
        LatticeVector::from_fn(f.space().clone(), |i| self.eval(f.value(i)))
    }
}
