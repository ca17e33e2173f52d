use rayon::prelude::*;

use crate::engine::{
    apply_feedback, gibbs_product_state, measure, report_for, shannon, total_hamiltonian,
    EngineSpec, FeedbackPolicy, MeasurementSet, ZERO_HEAT,
};
use crate::error::{Error, Result};
use crate::numerics::eig_hermitian;
use crate::units;

use super::haar::{haar_random_unitary, trial_rng};
use super::passive::max_work_policy;

/// Closed-form max Landauer efficiency of a fine-grained measurement:
/// `1 - k_B T_0 h[{q_k}] / Q̄_in` with `q_k = <f_k|ρ|f_k>` and
/// `Q̄_in = Tr H ρ - e_1` the energy released by sending ρ to the ground state.
pub fn fine_grain_closed_form(m: &MeasurementSet, spec: &EngineSpec) -> Result<f64> {
    if let Some((index, &rank)) = m.ranks().iter().enumerate().find(|(_, &g)| g != 1) {
        return Err(Error::NotFineGrained { index, rank });
    }
    if m.dim() != spec.dim() {
        return Err(Error::DimensionMismatch {
            expected: spec.dim(),
            found: m.dim(),
        });
    }
    let rho = gibbs_product_state(spec)?;
    let q: Vec<f64> = m
        .projectors()
        .iter()
        .map(|p| p.expectation(rho.matrix()).max(0.0))
        .collect();
    let h = shannon(&q)?;
    let intake = ground_state_intake(spec)?;
    if intake <= ZERO_HEAT {
        return Err(Error::DegenerateHeatIntake {
            quantity: "ground-state heat intake",
            value: intake,
        });
    }
    Ok(1.0 - units::thermal_energy_uev(spec.memory_temperature_mk()) * h / intake)
}

/// `Tr H ρ - e_1` for the product Gibbs state, summed partition by partition
/// over local excitation energies so every term is non-negative.
pub fn ground_state_intake(spec: &EngineSpec) -> Result<f64> {
    let mut total = 0.0;
    for partition in spec.partitions() {
        let levels = eig_hermitian(partition.local_hamiltonian())?;
        let ground = levels.eigenvalues()[0];
        let beta = partition.beta();
        let (mut z, mut excitation) = (0.0, 0.0);
        for &e in levels.eigenvalues() {
            let w = (-beta * (e - ground)).exp();
            z += w;
            excitation += w * (e - ground);
        }
        total += excitation / z;
    }
    Ok(total)
}

/// Best feedback policy found by [`search_max_landauer`].
#[derive(Clone, Debug)]
pub struct SearchResult {
    pub best_policy: FeedbackPolicy,
    /// Best Landauer efficiency; `None` if no candidate had a positive heat intake.
    pub best_eta_l: Option<f64>,
    pub best_w_out: f64,
    /// Landauer efficiency of the ergotropy (max-work) policy, the incumbent.
    pub max_work_eta_l: Option<f64>,
    pub trials: usize,
    pub seed: u64,
}

/// Random search over feedback unitaries for a fixed measurement.
///
/// Candidates are the max-work policy plus `trials` policies of independent
/// Haar unitaries per outcome. Trial `t` draws from [`trial_rng`]`(seed, t)`,
/// so the result does not depend on how trials are scheduled across threads.
pub fn search_max_landauer(
    m: &MeasurementSet,
    spec: &EngineSpec,
    trials: usize,
    seed: u64,
) -> Result<SearchResult> {
    let rho = gibbs_product_state(spec)?;
    let record = measure(&rho, m)?;
    let hamiltonian = total_hamiltonian(spec);

    let evaluate = |policy: &FeedbackPolicy| -> Result<(Option<f64>, f64)> {
        let rho_prime = apply_feedback(&record, policy)?;
        let report = report_for(spec, &rho, &record, &rho_prime)?;
        Ok((report.eta_l, report.w_out))
    };

    let incumbent = max_work_policy(&record, &hamiltonian)?;
    let (incumbent_eta, incumbent_w) = evaluate(&incumbent)?;

    let dim = spec.dim();
    let outcomes = m.len();
    let candidates: Vec<(FeedbackPolicy, Option<f64>, f64)> = (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(seed, t);
            let policy = FeedbackPolicy::new(
                (0..outcomes)
                    .map(|_| haar_random_unitary(dim, &mut rng))
                    .collect(),
            )?;
            let (eta, w) = evaluate(&policy)?;
            Ok((policy, eta, w))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut best = (incumbent, incumbent_eta, incumbent_w);
    for candidate in candidates {
        let better = match (candidate.1, best.1) {
            (Some(c), Some(b)) => c > b,
            (Some(_), None) => true,
            _ => false,
        };
        if better {
            best = candidate;
        }
    }
    Ok(SearchResult {
        best_policy: best.0,
        best_eta_l: best.1,
        best_w_out: best.2,
        max_work_eta_l: incumbent_eta,
        trials,
        seed,
    })
}
