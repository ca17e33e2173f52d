use crate::error::{Error, Result};
use crate::numerics::{kron, ComplexMatrix, HermitianOperator, UnitaryMatrix, STRUCTURE_TOL};
use crate::units;

use super::state::DensityMatrix;

/// One partition of the working substance and the bath it rethermalizes with.
#[derive(Clone, Debug, PartialEq)]
pub struct Partition {
    local_hamiltonian: HermitianOperator,
    temperature_mk: f64,
}

impl Partition {
    /// `local_hamiltonian` in μeV, `temperature_mk` in mK.
    pub fn new(local_hamiltonian: HermitianOperator, temperature_mk: f64) -> Result<Self> {
        if !(temperature_mk.is_finite() && temperature_mk > 0.0) {
            return Err(Error::InvalidPartition {
                reason: format!("temperature must be positive and finite, got {temperature_mk} mK"),
            });
        }
        if local_hamiltonian.dim() < 2 {
            return Err(Error::InvalidPartition {
                reason: format!(
                    "local dimension must be at least 2, got {}",
                    local_hamiltonian.dim()
                ),
            });
        }
        Ok(Self {
            local_hamiltonian,
            temperature_mk,
        })
    }

    pub fn local_hamiltonian(&self) -> &HermitianOperator {
        &self.local_hamiltonian
    }

    pub fn temperature_mk(&self) -> f64 {
        self.temperature_mk
    }

    /// Inverse thermal energy in 1/μeV.
    pub fn beta(&self) -> f64 {
        units::beta_per_uev(self.temperature_mk)
    }

    pub fn dim(&self) -> usize {
        self.local_hamiltonian.dim()
    }
}

/// The `N` working-substance partitions plus the memory bath temperature `T_0`.
#[derive(Clone, Debug, PartialEq)]
pub struct EngineSpec {
    partitions: Vec<Partition>,
    memory_temperature_mk: f64,
}

impl EngineSpec {
    pub fn new(partitions: Vec<Partition>, memory_temperature_mk: f64) -> Result<Self> {
        if partitions.is_empty() {
            return Err(Error::InvalidSpec {
                reason: "at least one partition is required".into(),
            });
        }
        if !(memory_temperature_mk.is_finite() && memory_temperature_mk > 0.0) {
            return Err(Error::InvalidSpec {
                reason: format!(
                    "memory temperature must be positive and finite, got {memory_temperature_mk} mK"
                ),
            });
        }
        Ok(Self {
            partitions,
            memory_temperature_mk,
        })
    }

    pub fn partitions(&self) -> &[Partition] {
        &self.partitions
    }

    pub fn num_partitions(&self) -> usize {
        self.partitions.len()
    }

    pub fn memory_temperature_mk(&self) -> f64 {
        self.memory_temperature_mk
    }

    pub fn memory_beta(&self) -> f64 {
        units::beta_per_uev(self.memory_temperature_mk)
    }

    /// Local dimensions `d_i`.
    pub fn dims(&self) -> Vec<usize> {
        self.partitions.iter().map(Partition::dim).collect()
    }

    /// Total dimension `d = Π d_i`.
    pub fn dim(&self) -> usize {
        self.partitions.iter().map(Partition::dim).product()
    }

    /// Inverse temperatures `(β_0, β_1, …, β_N)`, memory bath first.
    pub fn betas_with_memory(&self) -> Vec<f64> {
        std::iter::once(self.memory_beta())
            .chain(self.partitions.iter().map(Partition::beta))
            .collect()
    }

    /// Temperatures `(T_0, T_1, …, T_N)` in mK, memory bath first.
    pub fn temperatures_with_memory_mk(&self) -> Vec<f64> {
        std::iter::once(self.memory_temperature_mk)
            .chain(self.partitions.iter().map(Partition::temperature_mk))
            .collect()
    }

    /// `I ⊗ … ⊗ H_i ⊗ … ⊗ I` on the full space.
    pub fn embedded_hamiltonian(&self, index: usize) -> HermitianOperator {
        self.embed(index, self.partitions[index].local_hamiltonian().matrix())
    }

    /// Embeds a local operator on partition `index` into the full space.
    pub(crate) fn embed(&self, index: usize, local: &ComplexMatrix) -> HermitianOperator {
        let mut acc: Option<ComplexMatrix> = None;
        for (i, p) in self.partitions.iter().enumerate() {
            let factor = if i == index {
                local.clone()
            } else {
                ComplexMatrix::identity(p.dim())
            };
            acc = Some(match acc {
                None => factor,
                Some(m) => kron(&m, &factor),
            });
        }
        HermitianOperator::from_hermitian_part(&acc.expect("spec has at least one partition"))
    }
}

/// A complete family of orthogonal projectors on the working-substance space.
#[derive(Clone, Debug, PartialEq)]
pub struct MeasurementSet {
    projectors: Vec<HermitianOperator>,
    ranks: Vec<usize>,
}

impl MeasurementSet {
    /// Validates idempotence, mutual orthogonality and completeness to 1e-10.
    pub fn new(projectors: Vec<HermitianOperator>) -> Result<Self> {
        let Some(first) = projectors.first() else {
            return Err(Error::InvalidMeasurement {
                reason: "empty projector family".into(),
            });
        };
        let dim = first.dim();
        let mut sum = ComplexMatrix::zeros(dim);
        for (a, p) in projectors.iter().enumerate() {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: p.dim(),
                });
            }
            let pm = p.matrix();
            let defect = (pm * pm).max_abs_diff(pm);
            if defect > STRUCTURE_TOL {
                return Err(Error::InvalidMeasurement {
                    reason: format!("projector {a} is not idempotent (defect {defect:e})"),
                });
            }
            for (b, q) in projectors.iter().enumerate().skip(a + 1) {
                let overlap = (pm * q.matrix()).max_abs();
                if overlap > STRUCTURE_TOL {
                    return Err(Error::InvalidMeasurement {
                        reason: format!("projectors {a} and {b} overlap ({overlap:e})"),
                    });
                }
            }
            sum = &sum + pm;
        }
        let completeness = sum.max_abs_diff(&ComplexMatrix::identity(dim));
        if completeness > STRUCTURE_TOL {
            return Err(Error::InvalidMeasurement {
                reason: format!("projectors do not resolve the identity (defect {completeness:e})"),
            });
        }
        let ranks: Vec<usize> = projectors
            .iter()
            .map(|p| p.matrix().trace().re.round() as usize)
            .collect();
        if let Some(a) = ranks.iter().position(|&g| g == 0) {
            return Err(Error::InvalidMeasurement {
                reason: format!("projector {a} is zero"),
            });
        }
        Ok(Self { projectors, ranks })
    }

    /// Groups the columns of `basis` into consecutive blocks of the given ranks.
    pub fn from_basis_blocks(basis: &UnitaryMatrix, ranks: &[usize]) -> Result<Self> {
        let dim = basis.dim();
        let total: usize = ranks.iter().sum();
        if total != dim {
            return Err(Error::InvalidMeasurement {
                reason: format!("ranks sum to {total}, expected {dim}"),
            });
        }
        let mut projectors = Vec::with_capacity(ranks.len());
        let mut start = 0;
        for &rank in ranks {
            let mut p = ComplexMatrix::zeros(dim);
            for k in start..start + rank {
                let col = basis.matrix().column(k);
                p = &p + &ComplexMatrix::outer(&col, &col);
            }
            projectors.push(HermitianOperator::from_hermitian_part(&p));
            start += rank;
        }
        Self::new(projectors)
    }

    /// Rank-1 projectors onto each column of `basis`.
    pub fn fine_grained(basis: &UnitaryMatrix) -> Result<Self> {
        Self::from_basis_blocks(basis, &vec![1; basis.dim()])
    }

    pub fn projectors(&self) -> &[HermitianOperator] {
        &self.projectors
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// Number of outcomes `K`.
    pub fn len(&self) -> usize {
        self.projectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.projectors.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.projectors[0].dim()
    }

    pub fn is_fine_grained(&self) -> bool {
        self.ranks.iter().all(|&g| g == 1)
    }
}

/// One feedback unitary per measurement outcome.
#[derive(Clone, Debug, PartialEq)]
pub struct FeedbackPolicy {
    unitaries: Vec<UnitaryMatrix>,
}

impl FeedbackPolicy {
    pub fn new(unitaries: Vec<UnitaryMatrix>) -> Result<Self> {
        if unitaries.is_empty() {
            return Err(Error::InvalidParameter(
                "feedback policy needs at least one unitary".into(),
            ));
        }
        let dim = unitaries[0].dim();
        if let Some(u) = unitaries.iter().find(|u| u.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: u.dim(),
            });
        }
        Ok(Self { unitaries })
    }

    /// The same unitary for every outcome (no feedback).
    pub fn uniform(u: UnitaryMatrix, outcomes: usize) -> Self {
        Self {
            unitaries: vec![u; outcomes],
        }
    }

    pub fn identity(dim: usize, outcomes: usize) -> Self {
        Self::uniform(UnitaryMatrix::identity(dim), outcomes)
    }

    pub fn unitaries(&self) -> &[UnitaryMatrix] {
        &self.unitaries
    }

    pub fn len(&self) -> usize {
        self.unitaries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.unitaries.is_empty()
    }
}

/// Outcome probabilities and post-selected states of one projective measurement.
#[derive(Clone, Debug)]
pub struct MeasurementRecord {
    pub(crate) probabilities: Vec<f64>,
    pub(crate) post_states: Vec<Option<DensityMatrix>>,
}

impl MeasurementRecord {
    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    /// Post-measurement states; `None` where the outcome probability is below threshold.
    pub fn post_states(&self) -> &[Option<DensityMatrix>] {
        &self.post_states
    }

    pub fn len(&self) -> usize {
        self.probabilities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probabilities.is_empty()
    }

    pub fn dim(&self) -> Option<usize> {
        self.post_states
            .iter()
            .flatten()
            .map(DensityMatrix::dim)
            .next()
    }
}
