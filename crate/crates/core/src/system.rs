//! The conditional Riesz triple `(E, e, F)` and its order operators.

use std::sync::Arc;

use num::Zero;

use crate::error::{Error, Result};
use crate::exec;
use crate::partition::Partition;
use crate::rational::Rat;
use crate::space::{same_space, SampleSpace};
use crate::vector::LatticeVector;

/// A sample space together with a partition: the finite realization of a
/// conditional expectation operator `F` with range `R(F)`, the vectors
/// constant on atoms.
///
/// Because all weights are strictly positive, the conditional supremum
/// `M_F` (least element of `R(F)` dominating `f`) is the atomwise maximum
/// and the conditional infimum `m_F` the atomwise minimum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionalSystem {
    space: Arc<SampleSpace>,
    partition: Partition,
    /// Total weight per atom, fixed at construction.
    atom_weights: Vec<Rat>,
}

impl ConditionalSystem {
    pub fn new(space: Arc<SampleSpace>, partition: Partition) -> Result<Self> {
        if partition.size() != space.len() {
            return Err(Error::DimensionMismatch {
                got: partition.size(),
                expected: space.len(),
            });
        }
        let atom_weights = partition
            .atoms()
            .iter()
            .map(|atom| space.weight_of(atom))
            .collect();
        Ok(Self {
            space,
            partition,
            atom_weights,
        })
    }

    /// System with the one-atom partition: plain expectation.
    pub fn trivial(space: Arc<SampleSpace>) -> Self {
        let partition = Partition::trivial(space.len());
        Self::new(space, partition).expect("trivial partition fits")
    }

    /// System with the singleton partition: `F` is the identity.
    pub fn finest(space: Arc<SampleSpace>) -> Self {
        let partition = Partition::singletons(space.len());
        Self::new(space, partition).expect("singleton partition fits")
    }

    pub fn space(&self) -> &Arc<SampleSpace> {
        &self.space
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub(crate) fn atom_weight(&self, atom: usize) -> &Rat {
        &self.atom_weights[atom]
    }

    pub(crate) fn check_vector(&self, f: &LatticeVector) -> Result<()> {
        if f.len() != self.space.len() {
            return Err(Error::DimensionMismatch {
                got: f.len(),
                expected: self.space.len(),
            });
        }
        if !same_space(f.space(), &self.space) {
            return Err(Error::SpaceMismatch);
        }
        Ok(())
    }

    /// True when `f` lies in `R(F)`, i.e. is constant on every atom.
    pub fn in_range(&self, f: &LatticeVector) -> Result<bool> {
        self.check_vector(f)?;
        Ok(self.partition.is_constant_on_atoms(f.values()))
    }

    /// Evaluates one rational per atom and broadcasts the results back to a
    /// full vector; this is the shared shape of `F`, `M_F` and `m_F`.
    fn per_atom(&self, per_atom: impl Fn(usize, &[usize]) -> Rat + Sync) -> LatticeVector {
        let atoms = self.partition.atoms();
        let atom_values = exec::map_range(atoms.len(), |a| per_atom(a, &atoms[a]));
        LatticeVector::from_fn(self.space.clone(), |outcome| {
            atom_values[self.partition.owner(outcome)].clone()
        })
    }

    /// Conditional expectation `F f`: the weighted average on every atom.
    pub fn expectation(&self, f: &LatticeVector) -> Result<LatticeVector> {
        self.check_vector(f)?;
        Ok(self.per_atom(|a, atom| {
            let total: Rat = atom
                .iter()
                .fold(Rat::zero(), |acc, &i| acc + self.space.weight(i) * f.value(i));
            total / &self.atom_weights[a]
        }))
    }

    /// Conditional supremum `M_F(f)`: the least vector of `R(F)` dominating
    /// `f`; atomwise maximum.
    pub fn cond_sup(&self, f: &LatticeVector) -> Result<LatticeVector> {
        self.check_vector(f)?;
        Ok(self.per_atom(|_, atom| {
            atom.iter()
                .map(|&i| f.value(i))
                .max()
                .expect("atoms are non-empty")
                .clone()
        }))
    }

    /// Conditional infimum `m_F(f)`: the greatest vector of `R(F)` dominated
    /// by `f`; atomwise minimum. Satisfies `m_F(−f) = −M_F(f)`.
    pub fn cond_inf(&self, f: &LatticeVector) -> Result<LatticeVector> {
        self.check_vector(f)?;
        Ok(self.per_atom(|_, atom| {
            atom.iter()
                .map(|&i| f.value(i))
                .min()
                .expect("atoms are non-empty")
                .clone()
        }))
    }

    /// Oscillation `δ(f) = M_F(f) − m_F(f)`; non-negative, and zero exactly
    /// on `R(F)`.
    pub fn delta(&self, f: &LatticeVector) -> Result<LatticeVector> {
        Ok(&self.cond_sup(f)? - &self.cond_inf(f)?)
    }

    /// Nearest element of `R(F)` in the conditional sup-norm together with
    /// the attained distance: the midpoint `(M_F(f)+m_F(f))/2` at distance
    /// `δ(f)/2`. No other element of `R(F)` comes closer on any atom.
    pub fn nearest_in_range(&self, f: &LatticeVector) -> Result<(LatticeVector, LatticeVector)> {
        let sup = self.cond_sup(f)?;
        let inf = self.cond_inf(f)?;
        let half = Rat::new(1.into(), 2.into());
        let nearest = (&sup + &inf).scale(&half);
        let distance = (&sup - &inf).scale(&half);
        Ok((nearest, distance))
    }
}
