//! Hermitian eigendecomposition by cyclic complex Jacobi rotations.
//!
//! Jacobi is slow for large matrices but every operator in this crate has
//! dimension at most 64, where it is accurate to a few ulps and fully
//! deterministic: the same input bits always produce the same rotations.

use num_complex::Complex64;

use super::matrix::{ComplexMatrix, HermitianOperator, UnitaryMatrix};
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 100;

/// Eigenvalues in ascending order with an aligned orthonormal eigenvector family.
#[derive(Clone, Debug)]
pub struct Spectrum {
    eigenvalues: Vec<f64>,
    /// Eigenvectors stored as columns.
    eigenvectors: ComplexMatrix,
}

impl Spectrum {
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Unitary whose k-th column is the eigenvector of the k-th eigenvalue.
    pub fn eigenvectors(&self) -> &ComplexMatrix {
        &self.eigenvectors
    }

    pub fn eigenvector(&self, k: usize) -> Vec<Complex64> {
        self.eigenvectors.column(k)
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// The eigenvector matrix as a unitary.
    pub fn basis(&self) -> UnitaryMatrix {
        UnitaryMatrix::new(self.eigenvectors.clone())
            .expect("eigenvectors produced by Jacobi rotations are orthonormal")
    }

    /// V diag(values) V^dag.
    pub fn reconstruct_with(&self, values: &[f64]) -> ComplexMatrix {
        assert_eq!(values.len(), self.dim(), "one value per eigenpair");
        let n = self.dim();
        let v = &self.eigenvectors;
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = Complex64::new(0.0, 0.0);
                for (k, &lambda) in values.iter().enumerate() {
                    acc += v[(i, k)] * v[(j, k)].conj() * lambda;
                }
                out[(i, j)] = acc;
            }
        }
        out
    }
}

/// Decomposes a Hermitian operator as `V diag(λ) V^dag` with ascending `λ`.
///
/// Within a degenerate cluster the eigenvectors are ordered by the index of
/// their first non-negligible coordinate, and each eigenvector is phased so
/// that this coordinate is real and positive.
pub fn eig_hermitian(a: &HermitianOperator) -> Result<Spectrum> {
    let n = a.dim();
    let mut m = a.matrix().hermitian_part();
    let mut v = ComplexMatrix::identity(n);

    let scale = frobenius(&m).max(f64::MIN_POSITIVE);
    let target = 4.0 * f64::EPSILON * scale;
    let mut converged = off_diagonal_norm(&m) <= target;
    let mut sweeps = 0;
    while !converged && sweeps < MAX_SWEEPS {
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut m, &mut v, p, q);
            }
        }
        converged = off_diagonal_norm(&m) <= target;
    }
    if !converged {
        return Err(Error::EigenNoConvergence {
            sweeps,
            residual: off_diagonal_norm(&m),
        });
    }

    let raw: Vec<f64> = (0..n).map(|i| m[(i, i)].re).collect();
    let mut columns: Vec<Vec<Complex64>> = (0..n).map(|k| normalize_phase(v.column(k))).collect();

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| raw[i].total_cmp(&raw[j]).then(i.cmp(&j)));

    // Reorder degenerate clusters by leading coordinate index. A cluster is a
    // run of values equal up to the rounding level of the decomposition, so
    // the values stay ascending after reassignment.
    let cluster_tol = 16.0 * f64::EPSILON * scale;
    let eigenvalues: Vec<f64> = order.iter().map(|&k| raw[k]).collect();
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && eigenvalues[end] - eigenvalues[end - 1] <= cluster_tol {
            end += 1;
        }
        if end - start > 1 {
            order[start..end].sort_by_key(|&k| (leading_index(&columns[k]), k));
        }
        start = end;
    }

    let sorted: Vec<Vec<Complex64>> = order
        .iter()
        .map(|&k| std::mem::take(&mut columns[k]))
        .collect();
    Ok(Spectrum {
        eigenvalues,
        eigenvectors: ComplexMatrix::from_columns(&sorted),
    })
}

/// Applies a real function to a Hermitian operator through its spectrum: `V diag(f(λ)) V^dag`.
pub fn spectral_apply<F>(f: F, a: &HermitianOperator) -> Result<HermitianOperator>
where
    F: Fn(f64) -> f64,
{
    let spectrum = eig_hermitian(a)?;
    let mut mapped = Vec::with_capacity(spectrum.dim());
    for &lambda in spectrum.eigenvalues() {
        let value = f(lambda);
        if !value.is_finite() {
            return Err(Error::SpectralFunctionUndefined { eigenvalue: lambda });
        }
        mapped.push(value);
    }
    Ok(HermitianOperator::from_hermitian_part(
        &spectrum.reconstruct_with(&mapped),
    ))
}

fn frobenius(m: &ComplexMatrix) -> f64 {
    m.as_slice()
        .iter()
        .map(|z| z.norm_sqr())
        .sum::<f64>()
        .sqrt()
}

fn off_diagonal_norm(m: &ComplexMatrix) -> f64 {
    let n = m.dim();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += m[(i, j)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// One Jacobi rotation annihilating the (p, q) entry of a Hermitian matrix.
///
/// The rotation is `J = D R` where `D` rephases coordinate `q` so that the
/// pivot becomes real, and `R` is the classical real symmetric rotation.
fn rotate(m: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = m[(p, q)];
    let b = apq.norm();
    if b == 0.0 {
        return;
    }
    let n = m.dim();
    let w = apq / b;
    let app = m[(p, p)].re;
    let aqq = m[(q, q)].re;
    let theta = (aqq - app) / (2.0 * b);
    let t = if theta.is_infinite() {
        0.5 / theta
    } else {
        let sign = if theta >= 0.0 { 1.0 } else { -1.0 };
        sign / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    let j_pp = Complex64::new(c, 0.0);
    let j_pq = Complex64::new(s, 0.0);
    let j_qp = -w.conj() * s;
    let j_qq = w.conj() * c;

    // m <- m J
    for k in 0..n {
        let mkp = m[(k, p)];
        let mkq = m[(k, q)];
        m[(k, p)] = mkp * j_pp + mkq * j_qp;
        m[(k, q)] = mkp * j_pq + mkq * j_qq;
    }
    // m <- J^dag m
    for k in 0..n {
        let mpk = m[(p, k)];
        let mqk = m[(q, k)];
        m[(p, k)] = j_pp.conj() * mpk + j_qp.conj() * mqk;
        m[(q, k)] = j_pq.conj() * mpk + j_qq.conj() * mqk;
    }
    m[(p, q)] = Complex64::new(0.0, 0.0);
    m[(q, p)] = Complex64::new(0.0, 0.0);
    m[(p, p)] = Complex64::new(m[(p, p)].re, 0.0);
    m[(q, q)] = Complex64::new(m[(q, q)].re, 0.0);

    // v <- v J
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * j_pp + vkq * j_qp;
        v[(k, q)] = vkp * j_pq + vkq * j_qq;
    }
}

const LEADING_TOL: f64 = 1e-12;

fn leading_index(col: &[Complex64]) -> usize {
    col.iter()
        .position(|z| z.norm() > LEADING_TOL)
        .unwrap_or(col.len())
}

fn normalize_phase(mut col: Vec<Complex64>) -> Vec<Complex64> {
    if let Some(k) = col.iter().position(|z| z.norm() > LEADING_TOL) {
        let phase = col[k].conj() / col[k].norm();
        for z in &mut col {
            *z *= phase;
        }
        col[k] = Complex64::new(col[k].re, 0.0);
    }
    col
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{RESIDUAL_TOL, STRUCTURE_TOL};
    use proptest::prelude::*;

    fn herm(dim: usize, re: &[f64], im: &[f64]) -> HermitianOperator {
        let mut m = ComplexMatrix::zeros(dim);
        let mut idx = 0;
        for i in 0..dim {
            m[(i, i)] = Complex64::new(re[idx], 0.0);
            idx += 1;
            for j in (i + 1)..dim {
                let z = Complex64::new(re[idx], im[idx]);
                m[(i, j)] = z;
                m[(j, i)] = z.conj();
                idx += 1;
            }
        }
        HermitianOperator::new(m).unwrap()
    }

    fn check_spectrum(a: &HermitianOperator, s: &Spectrum) {
        let scale = 1.0 + a.matrix().max_abs();
        let recon = s.reconstruct_with(s.eigenvalues());
        assert!(recon.max_abs_diff(a.matrix()) <= RESIDUAL_TOL * scale);
        assert!(s.eigenvalues().windows(2).all(|w| w[0] <= w[1]));
        assert!(s.eigenvectors().unitarity_defect() <= STRUCTURE_TOL);
        let trace: f64 = s.eigenvalues().iter().sum();
        let tr_a = a.matrix().trace().re;
        assert!((trace - tr_a).abs() <= 1e-9 * (1.0 + tr_a.abs()));
    }

    #[test]
    fn diagonal_input_is_sorted() {
        let a = HermitianOperator::from_diagonal(&[3.0, 1.0, 2.0]);
        let s = eig_hermitian(&a).unwrap();
        assert_eq!(s.eigenvalues(), &[1.0, 2.0, 3.0]);
        assert_eq!(s.eigenvector(0)[1], Complex64::new(1.0, 0.0));
    }

    #[test]
    fn pauli_x() {
        let a = HermitianOperator::new(ComplexMatrix::from_real(2, &[0.0, 1.0, 1.0, 0.0]).unwrap())
            .unwrap();
        let s = eig_hermitian(&a).unwrap();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert!((s.eigenvalues()[0] + 1.0).abs() < 1e-14);
        assert!((s.eigenvalues()[1] - 1.0).abs() < 1e-14);
        let minus = s.eigenvector(0);
        let plus = s.eigenvector(1);
        assert!((minus[0] - Complex64::new(r, 0.0)).norm() < 1e-14);
        assert!((minus[1] - Complex64::new(-r, 0.0)).norm() < 1e-14);
        assert!((plus[0] - Complex64::new(r, 0.0)).norm() < 1e-14);
        assert!((plus[1] - Complex64::new(r, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn tiny_distinct_eigenvalues_stay_ascending() {
        let a = HermitianOperator::from_diagonal(&[0.998, 1.5e-10, 2.6e-13, 0.0017]);
        let s = eig_hermitian(&a).unwrap();
        assert_eq!(s.eigenvalues(), &[2.6e-13, 1.5e-10, 0.0017, 0.998]);
        assert!((s.eigenvector(0)[2].re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn degenerate_cluster_uses_leading_index_order() {
        // energies of two equal-frequency qubits: |01> and |10> share eigenvalue 0
        let a = HermitianOperator::from_diagonal(&[-1.0, 0.0, 0.0, 1.0]);
        let s = eig_hermitian(&a).unwrap();
        assert_eq!(leading_index(&s.eigenvector(1)), 1);
        assert_eq!(leading_index(&s.eigenvector(2)), 2);
    }

    #[test]
    fn complex_entries() {
        // [[2, i], [-i, 2]] has eigenvalues 1 and 3
        let mut m = ComplexMatrix::identity(2).scale_real(2.0);
        m[(0, 1)] = Complex64::new(0.0, 1.0);
        m[(1, 0)] = Complex64::new(0.0, -1.0);
        let a = HermitianOperator::new(m).unwrap();
        let s = eig_hermitian(&a).unwrap();
        assert!((s.eigenvalues()[0] - 1.0).abs() < 1e-14);
        assert!((s.eigenvalues()[1] - 3.0).abs() < 1e-14);
        check_spectrum(&a, &s);
    }

    #[test]
    fn zero_matrix() {
        let a = HermitianOperator::from_diagonal(&[0.0; 4]);
        let s = eig_hermitian(&a).unwrap();
        assert_eq!(s.eigenvalues(), &[0.0; 4]);
    }

    #[test]
    fn exp_of_zero_and_of_logs() {
        let z = HermitianOperator::from_diagonal(&[0.0, 0.0]);
        let e = spectral_apply(f64::exp, &z).unwrap();
        assert!(e.matrix().max_abs_diff(&ComplexMatrix::identity(2)) < 1e-15);

        let l = HermitianOperator::from_diagonal(&[2f64.ln(), 3f64.ln()]);
        let e = spectral_apply(f64::exp, &l).unwrap();
        assert!(
            e.matrix()
                .max_abs_diff(&ComplexMatrix::from_diagonal(&[2.0, 3.0]))
                < 1e-14
        );
    }

    #[test]
    fn undefined_function_is_an_error() {
        let a = HermitianOperator::from_diagonal(&[0.0, 1.0]);
        assert!(matches!(
            spectral_apply(f64::ln, &a),
            Err(Error::SpectralFunctionUndefined { eigenvalue }) if eigenvalue == 0.0
        ));
    }

    fn entries(dim: usize) -> impl Strategy<Value = (Vec<f64>, Vec<f64>)> {
        let len = dim * (dim + 1) / 2;
        (
            prop::collection::vec(-10.0..10.0f64, len),
            prop::collection::vec(-10.0..10.0f64, len),
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn random_hermitian_reconstructs((re, im) in entries(8)) {
            let a = herm(8, &re, &im);
            let s = eig_hermitian(&a).unwrap();
            check_spectrum(&a, &s);
        }

        #[test]
        fn square_matches_matrix_product((re, im) in entries(5)) {
            let a = herm(5, &re, &im);
            let sq = spectral_apply(|x| x * x, &a).unwrap();
            let prod = a.matrix() * a.matrix();
            prop_assert!(sq.matrix().max_abs_diff(&prod) <= 1e-9 * (1.0 + prod.max_abs()));
        }

        #[test]
        fn identity_function_roundtrips((re, im) in entries(6)) {
            let a = herm(6, &re, &im);
            let same = spectral_apply(|x| x, &a).unwrap();
            prop_assert!(same.matrix().max_abs_diff(a.matrix()) <= 1e-9);
        }

        #[test]
        fn deterministic_for_identical_input((re, im) in entries(4)) {
            let a = herm(4, &re, &im);
            let s1 = eig_hermitian(&a).unwrap();
            let s2 = eig_hermitian(&a).unwrap();
            prop_assert_eq!(s1.eigenvalues(), s2.eigenvalues());
            prop_assert_eq!(s1.eigenvectors(), s2.eigenvectors());
        }
    }
}
