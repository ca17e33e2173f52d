use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::numerics::{ComplexMatrix, UnitaryMatrix};

/// Deterministic generator for trial `index` of a run seeded with `seed`.
///
/// ChaCha8 keyed by `seed` with the trial index as stream id, so every trial
/// has an independent stream regardless of evaluation order.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Haar-distributed `d × d` unitary.
///
/// Orthonormalizes a matrix of i.i.d. standard complex Gaussians column by
/// column (Gram-Schmidt, i.e. QR with a positive real diagonal in R).
pub fn haar_random_unitary<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> UnitaryMatrix {
    assert!(dim > 0, "dimension must be positive");
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    let mut columns: Vec<Vec<Complex64>> = Vec::with_capacity(dim);
    while columns.len() < dim {
        let mut v: Vec<Complex64> = (0..dim)
            .map(|_| {
                let re: f64 = rng.sample(StandardNormal);
                let im: f64 = rng.sample(StandardNormal);
                Complex64::new(re * scale, im * scale)
            })
            .collect();
        // two passes of modified Gram-Schmidt
        for _ in 0..2 {
            for q in &columns {
                let overlap: Complex64 = q.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (x, a) in v.iter_mut().zip(q) {
                    *x -= overlap * a;
                }
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-8 {
            // numerically dependent draw; redraw (probability zero in exact arithmetic)
            continue;
        }
        for x in &mut v {
            *x /= norm;
        }
        columns.push(v);
    }
    UnitaryMatrix::new(ComplexMatrix::from_columns(&columns))
        .expect("Gram-Schmidt output is orthonormal")
}
