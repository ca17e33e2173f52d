use std::fmt;

use crate::error::{Error, Result};
use crate::numerics::{kron, spectral_apply, ComplexMatrix, HermitianOperator};

use super::model::{EngineSpec, FeedbackPolicy, MeasurementRecord, MeasurementSet};
use super::state::DensityMatrix;
use super::thermo::{
    carnot_bound, heats, landauer_efficiency, landauer_heat, q_in, shannon, von_neumann,
};

/// Outcomes less likely than this have no post-measurement state.
pub const OUTCOME_THRESHOLD: f64 = 1e-14;

const PROBABILITY_CLAMP: f64 = 1e-12;

/// `H = Σ_i I ⊗ … ⊗ H_i ⊗ … ⊗ I`.
pub fn total_hamiltonian(spec: &EngineSpec) -> HermitianOperator {
    let mut total = ComplexMatrix::zeros(spec.dim());
    for i in 0..spec.num_partitions() {
        total = &total + spec.embedded_hamiltonian(i).matrix();
    }
    HermitianOperator::from_hermitian_part(&total)
}

/// Product of local Gibbs states `⊗_i exp(-β_i H_i) / Z_i`.
pub fn gibbs_product_state(spec: &EngineSpec) -> Result<DensityMatrix> {
    let mut acc: Option<ComplexMatrix> = None;
    for partition in spec.partitions() {
        let h = partition.local_hamiltonian();
        let beta = partition.beta();
        let ground = crate::numerics::eig_hermitian(h)?.eigenvalues()[0];
        // shifted by the local ground energy so the exponent never overflows
        let weights = spectral_apply(|e| (-beta * (e - ground)).exp(), h)?;
        let z = weights.matrix().trace().re;
        let local = weights.matrix().scale_real(1.0 / z);
        acc = Some(match acc {
            None => local,
            Some(m) => kron(&m, &local),
        });
    }
    DensityMatrix::new(HermitianOperator::from_hermitian_part(
        &acc.expect("spec has at least one partition"),
    ))
}

/// Projective measurement: `q_α = Tr Π_α ρ Π_α`, `ρ_α = Π_α ρ Π_α / q_α`.
pub fn measure(rho: &DensityMatrix, m: &MeasurementSet) -> Result<MeasurementRecord> {
    if rho.dim() != m.dim() {
        return Err(Error::DimensionMismatch {
            expected: m.dim(),
            found: rho.dim(),
        });
    }
    let mut probabilities = Vec::with_capacity(m.len());
    let mut post_states = Vec::with_capacity(m.len());
    for projector in m.projectors() {
        let p = projector.matrix();
        let collapsed = &(p * rho.matrix()) * p;
        let mut q = collapsed.trace().re;
        if q < 0.0 {
            if q < -PROBABILITY_CLAMP {
                return Err(Error::InvalidDistribution {
                    reason: format!("negative outcome probability {q:e}"),
                });
            }
            q = 0.0;
        }
        probabilities.push(q);
        post_states.push(if q >= OUTCOME_THRESHOLD {
            Some(DensityMatrix::from_positive_operator(&collapsed)?)
        } else {
            None
        });
    }
    let total: f64 = probabilities.iter().sum();
    if (total - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidDistribution {
            reason: format!("outcome probabilities sum to {total}"),
        });
    }
    Ok(MeasurementRecord {
        probabilities,
        post_states,
    })
}

/// Non-post-selected feedback output `ρ' = Σ_α q_α U_α ρ_α U_α^dag`.
pub fn apply_feedback(
    record: &MeasurementRecord,
    policy: &FeedbackPolicy,
) -> Result<DensityMatrix> {
    if record.len() != policy.len() {
        return Err(Error::PolicyLength {
            expected: record.len(),
            found: policy.len(),
        });
    }
    let dim = policy.unitaries()[0].dim();
    let mut out = ComplexMatrix::zeros(dim);
    for ((q, state), u) in record
        .probabilities()
        .iter()
        .zip(record.post_states())
        .zip(policy.unitaries())
    {
        let Some(state) = state else { continue };
        if state.dim() != u.dim() {
            return Err(Error::DimensionMismatch {
                expected: state.dim(),
                found: u.dim(),
            });
        }
        out = &out + &state.matrix().conjugate_by(u.matrix()).scale_real(*q);
    }
    DensityMatrix::from_positive_operator(&out)
}

/// Per-partition energy change `ΔE_i = Tr[H_i (ρ' - ρ)]`.
pub fn energy_changes(
    spec: &EngineSpec,
    rho: &DensityMatrix,
    rho_prime: &DensityMatrix,
) -> Result<Vec<f64>> {
    for state in [rho, rho_prime] {
        if state.dim() != spec.dim() {
            return Err(Error::DimensionMismatch {
                expected: spec.dim(),
                found: state.dim(),
            });
        }
    }
    let diff = rho_prime.matrix() - rho.matrix();
    Ok((0..spec.num_partitions())
        .map(|i| spec.embedded_hamiltonian(i).expectation(&diff))
        .collect())
}

/// Whether the extended machine delivers net work.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regime {
    Engine,
    NonEngine,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::Engine => "engine",
            Regime::NonEngine => "non-engine",
        })
    }
}

/// Thermodynamic bookkeeping of one cycle. Energies in μeV, entropies in nats.
#[derive(Clone, Debug, PartialEq)]
pub struct CycleReport {
    /// `ΔE_i` for each working-substance partition.
    pub delta_e: Vec<f64>,
    /// `Q_i = -ΔE_i` ceded by each working-substance bath.
    pub heats: Vec<f64>,
    /// Shannon information of the outcome distribution.
    pub shannon_h: f64,
    /// Memory-bath heat at Landauer saturation, `Q_0 = -k_B T_0 h ≤ 0`.
    pub q0_landauer: f64,
    /// Feedback work `Tr H (ρ' - ρ)`.
    pub w_fc: f64,
    /// Memory work at Landauer saturation, `-Q_0`.
    pub w_m_landauer: f64,
    /// Work output `-(W_fc + W_m)`.
    pub w_out: f64,
    /// Heat intake `Σ_i max(Q_i, 0)`, memory bath excluded.
    pub q_in: f64,
    /// Von Neumann entropy change `S(ρ') - S(ρ)`.
    pub delta_vn: f64,
    pub eta_l: Option<f64>,
    pub eta_c: Option<f64>,
    pub regime: Regime,
}

impl CycleReport {
    /// `(Q_0, Q_1, …, Q_N)` with the memory bath first.
    pub fn heats_with_memory(&self) -> Vec<f64> {
        std::iter::once(self.q0_landauer)
            .chain(self.heats.iter().copied())
            .collect()
    }

    /// `W_out - Σ_{i=0..N} Q_i`; zero up to rounding.
    pub fn first_law_residual(&self) -> f64 {
        self.w_out - self.heats_with_memory().iter().sum::<f64>()
    }

    /// `Σ_{i=0..N} β_i Q_i` for the extended machine.
    pub fn extended_clausius_sum(&self, spec: &EngineSpec) -> f64 {
        spec.betas_with_memory()
            .iter()
            .zip(self.heats_with_memory())
            .map(|(b, q)| b * q)
            .sum()
    }

    /// `Σ_{i=1..N} β_i ΔE_i`.
    pub fn clausius_type_sum(&self, spec: &EngineSpec) -> f64 {
        spec.partitions()
            .iter()
            .zip(&self.delta_e)
            .map(|(p, e)| p.beta() * e)
            .sum()
    }
}

/// Every intermediate state of a cycle together with its report.
#[derive(Clone, Debug)]
pub struct CycleTrace {
    pub initial: DensityMatrix,
    pub record: MeasurementRecord,
    pub final_state: DensityMatrix,
    pub report: CycleReport,
}

/// Runs one cycle and keeps the intermediate states.
pub fn run_cycle(
    spec: &EngineSpec,
    m: &MeasurementSet,
    policy: &FeedbackPolicy,
) -> Result<CycleTrace> {
    if m.dim() != spec.dim() {
        return Err(Error::DimensionMismatch {
            expected: spec.dim(),
            found: m.dim(),
        });
    }
    let rho = gibbs_product_state(spec)?;
    let record = measure(&rho, m)?;
    let rho_prime = apply_feedback(&record, policy)?;
    let report = report_for(spec, &rho, &record, &rho_prime)?;
    Ok(CycleTrace {
        initial: rho,
        record,
        final_state: rho_prime,
        report,
    })
}

/// Composes preparation, measurement, feedback and the thermodynamic bookkeeping.
pub fn evaluate_cycle(
    spec: &EngineSpec,
    m: &MeasurementSet,
    policy: &FeedbackPolicy,
) -> Result<CycleReport> {
    run_cycle(spec, m, policy).map(|trace| trace.report)
}

pub(crate) fn report_for(
    spec: &EngineSpec,
    rho: &DensityMatrix,
    record: &MeasurementRecord,
    rho_prime: &DensityMatrix,
) -> Result<CycleReport> {
    let delta_e = energy_changes(spec, rho, rho_prime)?;
    let q = heats(&delta_e);
    let h = shannon(record.probabilities())?;
    let t0 = spec.memory_temperature_mk();
    let q0 = landauer_heat(h, t0);
    let w_fc = total_hamiltonian(spec).expectation(&(rho_prime.matrix() - rho.matrix()));
    let w_m = -q0;
    let w_out = -(w_fc + w_m);
    let delta_vn = von_neumann(rho_prime)? - von_neumann(rho)?;
    let heats_with_memory: Vec<f64> = std::iter::once(q0).chain(q.iter().copied()).collect();
    let eta_c = carnot_bound(&heats_with_memory, &spec.temperatures_with_memory_mk());
    Ok(CycleReport {
        q_in: q_in(&q),
        eta_l: landauer_efficiency(&q, h, t0),
        eta_c,
        regime: if w_out > 0.0 {
            Regime::Engine
        } else {
            Regime::NonEngine
        },
        delta_e,
        heats: q,
        shannon_h: h,
        q0_landauer: q0,
        w_fc,
        w_m_landauer: w_m,
        w_out,
        delta_vn,
    })
}
