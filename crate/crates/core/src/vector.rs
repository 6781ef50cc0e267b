//! Elements of the Riesz space: one rational value per outcome.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rat;
use crate::space::{same_space, SampleSpace};

/// Rational-valued vector over a [`SampleSpace`]; the lattice operations
/// are pointwise and the constant-one vector is the weak order unit.
///
/// Binary operations (`+`, `-`, `*`, [`sup`](Self::sup), ...) panic when the
/// operands live on different spaces; the fallible entry points of
/// [`ConditionalSystem`](crate::ConditionalSystem) report the mismatch as an
/// error instead.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeVector {
    space: Arc<SampleSpace>,
    values: Vec<Rat>,
}

impl LatticeVector {
    pub fn new(space: Arc<SampleSpace>, values: Vec<Rat>) -> Result<Self> {
        if values.len() != space.len() {
            return Err(Error::DimensionMismatch {
                got: values.len(),
                expected: space.len(),
            });
        }
        Ok(Self { space, values })
    }

    pub fn constant(space: Arc<SampleSpace>, value: Rat) -> Self {
        let values = vec![value; space.len()];
        Self { space, values }
    }

    /// The weak order unit `e`: the all-ones vector.
    pub fn unit(space: Arc<SampleSpace>) -> Self {
        Self::constant(space, Rat::one())
    }

    pub fn zero(space: Arc<SampleSpace>) -> Self {
        Self::constant(space, Rat::zero())
    }

    /// Indicator of a set of outcomes; a component of `e`.
    pub fn indicator(space: Arc<SampleSpace>, outcomes: &[usize]) -> Self {
        let mut v = Self::zero(space);
        for &i in outcomes {
            v.values[i] = Rat::one();
        }
        v
    }

    pub fn space(&self) -> &Arc<SampleSpace> {
        &self.space
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn value(&self, outcome: usize) -> &Rat {
        &self.values[outcome]
    }

    pub fn values(&self) -> &[Rat] {
        &self.values
    }

    pub(crate) fn from_fn(space: Arc<SampleSpace>, f: impl Fn(usize) -> Rat) -> Self {
        let values = (0..space.len()).map(f).collect();
        Self { space, values }
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(&Rat, &Rat) -> Rat) -> Self {
        assert!(
            same_space(&self.space, &rhs.space),
            "operands live on different sample spaces"
        );
        let values = self
            .values
            .iter()
            .zip(&rhs.values)
            .map(|(a, b)| f(a, b))
            .collect();
        Self {
            space: self.space.clone(),
            values,
        }
    }

    fn map(&self, f: impl Fn(&Rat) -> Rat) -> Self {
        Self {
            space: self.space.clone(),
            values: self.values.iter().map(&f).collect(),
        }
    }

    /// Pointwise supremum `self ∨ rhs`.
    pub fn sup(&self, rhs: &Self) -> Self {
        self.zip_with(rhs, |a, b| if a >= b { a.clone() } else { b.clone() })
    }

    /// Pointwise infimum `self ∧ rhs`.
    pub fn inf(&self, rhs: &Self) -> Self {
        self.zip_with(rhs, |a, b| if a <= b { a.clone() } else { b.clone() })
    }

    pub fn abs(&self) -> Self {
        self.map(|a| a.abs())
    }

    /// Positive part `f⁺ = f ∨ 0`.
    pub fn pos_part(&self) -> Self {
        self.map(|a| if a.is_positive() { a.clone() } else { Rat::zero() })
    }

    /// Negative part `f⁻ = (−f) ∨ 0`, so `f = f⁺ − f⁻`.
    pub fn neg_part(&self) -> Self {
        self.map(|a| if a.is_negative() { -a.clone() } else { Rat::zero() })
    }

    pub fn scale(&self, factor: &Rat) -> Self {
        self.map(|a| a * factor)
    }

    pub fn add_scalar(&self, shift: &Rat) -> Self {
        self.map(|a| a + shift)
    }

    /// Pointwise order `self ≤ rhs`.
    pub fn le(&self, rhs: &Self) -> bool {
        assert!(
            same_space(&self.space, &rhs.space),
            "operands live on different sample spaces"
        );
        self.values.iter().zip(&rhs.values).all(|(a, b)| a <= b)
    }

    pub fn ge(&self, rhs: &Self) -> bool {
        rhs.le(self)
    }

    pub fn is_nonneg(&self) -> bool {
        self.values.iter().all(|a| !a.is_negative())
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|a| a.is_zero())
    }

    /// Largest entry; the spaces here are never empty.
    pub fn max_value(&self) -> &Rat {
        self.values.iter().max().expect("non-empty space")
    }

    pub fn min_value(&self) -> &Rat {
        self.values.iter().min().expect("non-empty space")
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

impl Add for &LatticeVector {
    type Output = LatticeVector;
    fn add(self, rhs: Self) -> LatticeVector {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &LatticeVector {
    type Output = LatticeVector;
    fn sub(self, rhs: Self) -> LatticeVector {
        self.zip_with(rhs, |a, b| a - b)
    }
}

/// Pointwise product: the f-algebra multiplication of the finite model.
impl Mul for &LatticeVector {
    type Output = LatticeVector;
    fn mul(self, rhs: Self) -> LatticeVector {
        self.zip_with(rhs, |a, b| a * b)
    }
}

impl Neg for &LatticeVector {
    type Output = LatticeVector;
    fn neg(self) -> LatticeVector {
        self.map(|a| -a.clone())
    }
}

/// The band component of the unit carried by `h⁺`: the indicator `p` of
/// `{h > 0}`. It satisfies `p ∧ (e − p) = 0`, `p·h = h⁺` and
/// `(e − p)·h = −h⁻`.
pub fn band_component(h: &LatticeVector) -> LatticeVector {
    LatticeVector::from_fn(h.space().clone(), |i| {
        if h.value(i).is_positive() {
            Rat::one()
        } else {
            Rat::zero()
        }
    })
}
