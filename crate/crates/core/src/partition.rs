//! Partitions of the outcome set: the finite stand-in for sub-σ-algebras.

use crate::error::{Error, Result};
use crate::rational::Rat;

/// Partition of `0..size` into disjoint non-empty atoms.
///
/// A vector is measurable with respect to the partition exactly when it is
/// constant on every atom; those vectors form the range of the conditional
/// expectation attached to the partition. Atoms are stored sorted by their
/// smallest outcome, so all derived output is deterministically ordered.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    atoms: Vec<Vec<usize>>,
    /// `owner[ω]` is the index of the atom containing `ω`.
    owner: Vec<usize>,
}

impl Partition {
    pub fn new(size: usize, atoms: Vec<Vec<usize>>) -> Result<Self> {
        let mut owner = vec![usize::MAX; size];
        for (a, atom) in atoms.iter().enumerate() {
            if atom.is_empty() {
                return Err(Error::EmptyAtom { atom: a });
            }
            for &outcome in atom {
                if outcome >= size {
                    return Err(Error::AtomOutOfRange { outcome, size });
                }
                if owner[outcome] != usize::MAX {
                    return Err(Error::OverlappingAtoms { outcome });
                }
                owner[outcome] = a;
            }
        }
        if let Some(outcome) = owner.iter().position(|&o| o == usize::MAX) {
            return Err(Error::UncoveredOutcome { outcome });
        }
        let mut atoms: Vec<Vec<usize>> = atoms
            .into_iter()
            .map(|mut atom| {
                atom.sort_unstable();
                atom
            })
            .collect();
        atoms.sort_by_key(|atom| atom[0]);
        for (a, atom) in atoms.iter().enumerate() {
            for &outcome in atom {
                owner[outcome] = a;
            }
        }
        Ok(Self { atoms, owner })
    }

    /// The one-atom partition `{Ω}`; its conditional expectation is the
    /// plain expectation.
    pub fn trivial(size: usize) -> Self {
        Self::new(size, vec![(0..size).collect()]).expect("trivial partition is valid")
    }

    /// The partition into singletons; its conditional expectation is the
    /// identity.
    pub fn singletons(size: usize) -> Self {
        Self::new(size, (0..size).map(|i| vec![i]).collect()).expect("singletons are valid")
    }

    pub fn size(&self) -> usize {
        self.owner.len()
    }

    pub fn atom_count(&self) -> usize {
        self.atoms.len()
    }

    pub fn atoms(&self) -> &[Vec<usize>] {
        &self.atoms
    }

    pub fn atom(&self, index: usize) -> &[usize] {
        &self.atoms[index]
    }

    /// Index of the atom containing `outcome`.
    pub fn owner(&self, outcome: usize) -> usize {
        self.owner[outcome]
    }

    /// True when every atom of `self` is contained in an atom of `coarser`
    /// (equality counts as refinement).
    pub fn refines(&self, coarser: &Partition) -> bool {
        if self.size() != coarser.size() {
            return false;
        }
        self.atoms.iter().all(|atom| {
            let target = coarser.owner[atom[0]];
            atom.iter().all(|&outcome| coarser.owner[outcome] == target)
        })
    }

    /// First atom of `self` that crosses two atoms of `coarser`, if any.
    pub(crate) fn refinement_offender(&self, coarser: &Partition) -> Option<Vec<usize>> {
        self.atoms
            .iter()
            .find(|atom| {
                let target = coarser.owner[atom[0]];
                atom.iter().any(|&outcome| coarser.owner[outcome] != target)
            })
            .cloned()
    }

    /// True when `values` is constant on every atom.
    pub fn is_constant_on_atoms(&self, values: &[Rat]) -> bool {
        self.atoms.iter().all(|atom| {
            let first = &values[atom[0]];
            atom.iter().all(|&outcome| &values[outcome] == first)
        })
    }

    /// Renders an atom as `{i, j, ...}` for reports and error messages.
    pub fn atom_display(atom: &[usize]) -> String {
        let inner = atom
            .iter()
            .map(|i| i.to_string())
            .collect::<Vec<_>>()
            .join(",");
        format!("{{{inner}}}")
    }
}
