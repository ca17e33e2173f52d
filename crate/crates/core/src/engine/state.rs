use crate::error::{Error, Result};
use crate::numerics::{eig_hermitian, ComplexMatrix, HermitianOperator, Spectrum, UnitaryMatrix};

const TRACE_TOL: f64 = 1e-9;
const NEGATIVITY_TOL: f64 = 1e-10;

/// A unit-trace positive semidefinite Hermitian operator.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix(HermitianOperator);

impl DensityMatrix {
    /// Validates trace (to 1e-9) and positivity (eigenvalues ≥ -1e-10).
    pub fn new(op: HermitianOperator) -> Result<Self> {
        let trace = op.matrix().trace().re;
        if (trace - 1.0).abs() > TRACE_TOL {
            return Err(Error::InvalidDensityMatrix {
                reason: format!("trace {trace} differs from 1"),
            });
        }
        let spectrum = eig_hermitian(&op)?;
        let lowest = spectrum.eigenvalues()[0];
        if lowest < -NEGATIVITY_TOL {
            return Err(Error::InvalidDensityMatrix {
                reason: format!("negative eigenvalue {lowest:e}"),
            });
        }
        Ok(Self(op))
    }

    /// Builds a state from a positive operator known up to rounding, by
    /// symmetrizing, clipping any negative eigenvalues and renormalizing.
    pub fn from_positive_operator(m: &ComplexMatrix) -> Result<Self> {
        let op = HermitianOperator::from_hermitian_part(m);
        let trace = op.matrix().trace().re;
        if trace.is_nan() || trace <= 0.0 {
            return Err(Error::InvalidDensityMatrix {
                reason: format!("non-positive trace {trace:e}"),
            });
        }
        let op = HermitianOperator::from_hermitian_part(&op.matrix().scale_real(1.0 / trace));
        match Self::new(op.clone()) {
            Ok(state) => Ok(state),
            Err(Error::InvalidDensityMatrix { .. }) => {
                let spectrum = eig_hermitian(&op)?;
                let clipped: Vec<f64> =
                    spectrum.eigenvalues().iter().map(|&r| r.max(0.0)).collect();
                let total: f64 = clipped.iter().sum();
                let renormalized: Vec<f64> = clipped.iter().map(|r| r / total).collect();
                Self::new(HermitianOperator::from_hermitian_part(
                    &spectrum.reconstruct_with(&renormalized),
                ))
            }
            Err(e) => Err(e),
        }
    }

    /// |ψ><ψ| for a normalized vector.
    pub fn pure(psi: &[num_complex::Complex64]) -> Result<Self> {
        Self::new(HermitianOperator::from_hermitian_part(
            &ComplexMatrix::outer(psi, psi),
        ))
    }

    /// Diagonal state in the computational basis.
    pub fn from_populations(populations: &[f64]) -> Result<Self> {
        Self::new(HermitianOperator::from_diagonal(populations))
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self(HermitianOperator::from_diagonal(&vec![
            1.0 / dim as f64;
            dim
        ]))
    }

    #[inline]
    pub fn matrix(&self) -> &ComplexMatrix {
        self.0.matrix()
    }

    #[inline]
    pub fn operator(&self) -> &HermitianOperator {
        &self.0
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn spectrum(&self) -> Result<Spectrum> {
        eig_hermitian(&self.0)
    }

    /// U ρ U^dag.
    pub fn evolve(&self, u: &UnitaryMatrix) -> Self {
        Self(self.0.conjugate_by(u))
    }

    /// Tr(H ρ).
    pub fn energy(&self, hamiltonian: &HermitianOperator) -> f64 {
        hamiltonian.expectation(self.matrix())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_trace_and_negativity() {
        assert!(DensityMatrix::from_populations(&[0.5, 0.4]).is_err());
        assert!(DensityMatrix::from_populations(&[1.2, -0.2]).is_err());
        assert!(DensityMatrix::from_populations(&[0.7, 0.3]).is_ok());
    }

    #[test]
    fn positive_operator_is_cleaned() {
        let m = ComplexMatrix::from_diagonal(&[2.0, -1e-9, 1.0]);
        let rho = DensityMatrix::from_positive_operator(&m).unwrap();
        assert!((rho.matrix()[(0, 0)].re - 2.0 / 3.0).abs() < 1e-12);
        assert!(rho.matrix()[(1, 1)].re >= 0.0);
    }
}
