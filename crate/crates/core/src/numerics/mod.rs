//! Dense complex matrix substrate: products, adjoints, Kronecker composition,
//! Hermitian eigendecomposition and spectral function application.

mod eigen;
mod matrix;

pub use eigen::{eig_hermitian, spectral_apply, Spectrum};
pub use matrix::{
    kron, ComplexMatrix, HermitianOperator, UnitaryMatrix, RESIDUAL_TOL, STRUCTURE_TOL,
};

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn int_matrix(dim: usize) -> impl Strategy<Value = ComplexMatrix> {
        prop::collection::vec(-5i32..=5, dim * dim).prop_map(move |v| {
            let data: Vec<f64> = v.into_iter().map(f64::from).collect();
            ComplexMatrix::from_real(dim, &data).unwrap()
        })
    }

    proptest! {
        #[test]
        fn kron_is_associative(a in int_matrix(2), b in int_matrix(3), c in int_matrix(2)) {
            prop_assert_eq!(kron(&kron(&a, &b), &c), kron(&a, &kron(&b, &c)));
        }
    }
}
