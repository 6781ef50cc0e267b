//! Filtrations as refining partitions and the processes adapted to them.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::space::{same_space, SampleSpace};
use crate::system::ConditionalSystem;
use crate::vector::LatticeVector;

/// Time-indexed conditional systems over one sample space, the partition at
/// time `t+1` refining the one at time `t`. This is the finite form of a
/// commuting family of conditional expectations.
#[derive(Debug, Clone)]
pub struct Filtration {
    space: Arc<SampleSpace>,
    systems: Vec<ConditionalSystem>,
    /// `children[t][a]` lists the atom indices at time `t+1` contained in
    /// atom `a` at time `t`; empty for the final time.
    children: Vec<Vec<Vec<usize>>>,
}

impl Filtration {
    pub fn new(space: Arc<SampleSpace>, partitions: Vec<Partition>) -> Result<Arc<Self>> {
        if partitions.is_empty() {
            return Err(Error::EmptyFiltration);
        }
        for window in partitions.windows(2) {
            let (coarse, fine) = (&window[0], &window[1]);
            if !fine.refines(coarse) {
                let atom = fine
                    .refinement_offender(coarse)
                    .expect("offender exists when refinement fails");
                // Report the offending consecutive pair by index.
                let earlier = partitions.iter().position(|p| p == coarse).unwrap_or(0);
                return Err(Error::NonRefining {
                    earlier,
                    later: earlier + 1,
                    atom,
                });
            }
        }
        let systems = partitions
            .into_iter()
            .map(|p| ConditionalSystem::new(space.clone(), p))
            .collect::<Result<Vec<_>>>()?;
        let children = (0..systems.len())
            .map(|t| {
                let here = systems[t].partition();
                let mut kids: Vec<Vec<usize>> = vec![Vec::new(); here.atom_count()];
                if t + 1 < systems.len() {
                    let next = systems[t + 1].partition();
                    for (b, atom) in next.atoms().iter().enumerate() {
                        kids[here.owner(atom[0])].push(b);
                    }
                }
                kids
            })
            .collect();
        Ok(Arc::new(Self {
            space,
            systems,
            children,
        }))
    }

    /// Horizon `T`: the final time index.
    pub fn horizon(&self) -> usize {
        self.systems.len() - 1
    }

    /// Number of time points `T + 1`.
    pub fn len(&self) -> usize {
        self.systems.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn space(&self) -> &Arc<SampleSpace> {
        &self.space
    }

    pub fn system(&self, time: usize) -> &ConditionalSystem {
        &self.systems[time]
    }

    pub fn partition(&self, time: usize) -> &Partition {
        self.systems[time].partition()
    }

    /// Atom indices at `time + 1` contained in `atom` at `time`.
    pub fn children(&self, time: usize, atom: usize) -> &[usize] {
        &self.children[time][atom]
    }
}

/// How `M_{F_n}(x_{n+1})` compares with `x_n` at one step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepRelation {
    /// Equality everywhere.
    Equal,
    /// `M_{F_n}(x_{n+1}) ≥ x_n` with strict inequality somewhere.
    Dominates,
    /// `M_{F_n}(x_{n+1}) ≤ x_n` with strict inequality somewhere.
    Dominated,
    /// Neither inequality holds uniformly.
    Mixed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MaxingaleClass {
    /// `M_{F_n}(x_{n+1}) = x_n` at every step.
    Maxingale,
    /// `M_{F_n}(x_{n+1}) ≥ x_n` at every step.
    SubMaxingale,
    /// `M_{F_n}(x_{n+1}) ≤ x_n` at every step.
    SuperMaxingale,
    /// Neither inequality holds uniformly.
    Neither,
}

#[derive(Debug, Clone)]
pub struct MaxingaleReport {
    pub steps: Vec<StepRelation>,
    pub class: MaxingaleClass,
}

/// Time-indexed vectors with `x_t` measurable at time `t`.
#[derive(Debug, Clone)]
pub struct AdaptedProcess {
    filtration: Arc<Filtration>,
    vectors: Vec<LatticeVector>,
}

impl AdaptedProcess {
    pub fn new(filtration: Arc<Filtration>, vectors: Vec<LatticeVector>) -> Result<Self> {
        if vectors.len() != filtration.len() {
            return Err(Error::ProcessLength {
                got: vectors.len(),
                expected: filtration.len(),
            });
        }
        for (time, v) in vectors.iter().enumerate() {
            if v.len() != filtration.space().len() || !same_space(v.space(), filtration.space()) {
                return Err(Error::DimensionMismatch {
                    got: v.len(),
                    expected: filtration.space().len(),
                });
            }
            if !filtration.partition(time).is_constant_on_atoms(v.values()) {
                return Err(Error::NotAdapted { time });
            }
        }
        Ok(Self {
            filtration,
            vectors,
        })
    }

    pub fn filtration(&self) -> &Arc<Filtration> {
        &self.filtration
    }

    pub fn at(&self, time: usize) -> &LatticeVector {
        &self.vectors[time]
    }

    pub fn vectors(&self) -> &[LatticeVector] {
        &self.vectors
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Compares `M_{F_n}(x_{n+1})` with `x_n` at every step and labels the
    /// process. A maxingale is exactly a process that is both a sub- and a
    /// super-maxingale.
    pub fn classify_maxingale(&self) -> MaxingaleReport {
        let steps: Vec<StepRelation> = (0..self.vectors.len().saturating_sub(1))
            .map(|n| {
                let projected = self
                    .filtration
                    .system(n)
                    .cond_sup(&self.vectors[n + 1])
                    .expect("process vectors share the filtration space");
                let ge = projected.ge(&self.vectors[n]);
                let le = projected.le(&self.vectors[n]);
                match (ge, le) {
                    (true, true) => StepRelation::Equal,
                    (true, false) => StepRelation::Dominates,
                    (false, true) => StepRelation::Dominated,
                    (false, false) => StepRelation::Mixed,
                }
            })
            .collect();
        let all_ge = steps
            .iter()
            .all(|s| matches!(s, StepRelation::Equal | StepRelation::Dominates));
        let all_le = steps
            .iter()
            .all(|s| matches!(s, StepRelation::Equal | StepRelation::Dominated));
        let class = match (all_ge, all_le) {
            (true, true) => MaxingaleClass::Maxingale,
            (true, false) => MaxingaleClass::SubMaxingale,
            (false, true) => MaxingaleClass::SuperMaxingale,
            (false, false) => MaxingaleClass::Neither,
        };
        MaxingaleReport { steps, class }
    }

    /// Running maximum `g_n = x_0 ∨ x_1 ∨ ... ∨ x_n`; adapted, and always a
    /// sub-maxingale.
    pub fn running_max(&self) -> AdaptedProcess {
        let mut vectors = Vec::with_capacity(self.vectors.len());
        let mut current = self.vectors[0].clone();
        vectors.push(current.clone());
        for v in &self.vectors[1..] {
            current = current.sup(v);
            vectors.push(current.clone());
        }
        AdaptedProcess::new(self.filtration.clone(), vectors)
            .expect("running maximum of an adapted process is adapted")
    }
}

/// The maxingale generated by a terminal vector: `x_n = M_{F_n}(f)`.
pub fn maxingale_from_terminal(
    f: &LatticeVector,
    filtration: &Arc<Filtration>,
) -> Result<AdaptedProcess> {
    let vectors = (0..filtration.len())
        .map(|t| filtration.system(t).cond_sup(f))
        .collect::<Result<Vec<_>>>()?;
    AdaptedProcess::new(filtration.clone(), vectors)
}
