use crate::engine::{DensityMatrix, FeedbackPolicy, MeasurementRecord};
use crate::error::{Error, Result};
use crate::numerics::{eig_hermitian, ComplexMatrix, HermitianOperator, UnitaryMatrix};

/// Ergotropy extraction from one state: the unitary, the energy it extracts
/// and the resulting passive state.
#[derive(Clone, Debug)]
pub struct PassiveTransform {
    pub unitary: UnitaryMatrix,
    /// `Tr H ρ - Tr H ρ_passive` in μeV; non-negative.
    pub extracted_energy: f64,
    pub passive_state: DensityMatrix,
}

/// Unitary mapping the eigenvectors of `rho`, sorted by decreasing population,
/// onto the eigenvectors of `hamiltonian`, sorted by increasing energy.
pub fn passive_unitary(
    rho: &DensityMatrix,
    hamiltonian: &HermitianOperator,
) -> Result<PassiveTransform> {
    if rho.dim() != hamiltonian.dim() {
        return Err(Error::DimensionMismatch {
            expected: hamiltonian.dim(),
            found: rho.dim(),
        });
    }
    let n = rho.dim();
    let populations = rho.spectrum()?;
    let energies = eig_hermitian(hamiltonian)?;

    // U = Σ_k |e_k><r_k| with r_k the k-th largest population eigenvector
    let mut u = ComplexMatrix::zeros(n);
    for k in 0..n {
        let e_k = energies.eigenvector(k);
        let r_k = populations.eigenvector(n - 1 - k);
        u = &u + &ComplexMatrix::outer(&e_k, &r_k);
    }
    let unitary = UnitaryMatrix::new(u)?;
    let passive_state = rho.evolve(&unitary);
    let extracted_energy = rho.energy(hamiltonian) - passive_state.energy(hamiltonian);
    Ok(PassiveTransform {
        unitary,
        extracted_energy,
        passive_state,
    })
}

/// Ergotropy extraction unitary for every recorded outcome; identity where the
/// outcome has no post-measurement state.
pub fn max_work_policy(
    record: &MeasurementRecord,
    hamiltonian: &HermitianOperator,
) -> Result<FeedbackPolicy> {
    let unitaries = record
        .post_states()
        .iter()
        .map(|state| match state {
            Some(rho) => passive_unitary(rho, hamiltonian).map(|t| t.unitary),
            None => Ok(UnitaryMatrix::identity(hamiltonian.dim())),
        })
        .collect::<Result<Vec<_>>>()?;
    FeedbackPolicy::new(unitaries)
}
