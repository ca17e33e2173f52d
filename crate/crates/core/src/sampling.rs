//! Random engine configurations for property tests and the verification battery.

use num_complex::Complex64;
use rand::Rng;

use crate::engine::{EngineSpec, FeedbackPolicy, MeasurementSet, Partition};
use crate::ergotropy::haar_random_unitary;
use crate::error::Result;
use crate::numerics::{ComplexMatrix, HermitianOperator};

/// Temperature range of randomized baths, in mK.
pub const TEMPERATURE_RANGE_MK: (f64, f64) = (10.0, 1000.0);

/// Local level energies are drawn from `[0, LEVEL_SPREAD_UEV]` μeV.
pub const LEVEL_SPREAD_UEV: f64 = 60.0;

/// Log-uniform draw from `[lo, hi]`.
pub fn log_uniform<R: Rng + ?Sized>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    (rng.random_range(lo.ln()..=hi.ln())).exp()
}

/// Hermitian operator with Haar-random eigenbasis and eigenvalues uniform in `[0, spread]`.
pub fn random_hermitian<R: Rng + ?Sized>(
    dim: usize,
    spread: f64,
    rng: &mut R,
) -> HermitianOperator {
    let basis = haar_random_unitary(dim, rng);
    let levels: Vec<f64> = (0..dim).map(|_| rng.random_range(0.0..=spread)).collect();
    let diag = ComplexMatrix::from_diagonal(&levels);
    HermitianOperator::from_hermitian_part(&diag.conjugate_by(basis.matrix()))
}

/// Engine with the given local dimensions, random local Hamiltonians and
/// log-uniform bath and memory temperatures.
pub fn random_spec<R: Rng + ?Sized>(dims: &[usize], rng: &mut R) -> Result<EngineSpec> {
    let (lo, hi) = TEMPERATURE_RANGE_MK;
    let partitions = dims
        .iter()
        .map(|&d| {
            let h = random_hermitian(d, LEVEL_SPREAD_UEV, rng);
            Partition::new(h, log_uniform(rng, lo, hi))
        })
        .collect::<Result<Vec<_>>>()?;
    EngineSpec::new(partitions, log_uniform(rng, lo, hi))
}

/// Random composition of `total` into `parts` positive ranks.
pub fn random_ranks<R: Rng + ?Sized>(total: usize, parts: usize, rng: &mut R) -> Vec<usize> {
    assert!(parts >= 1 && parts <= total, "need 1 <= parts <= total");
    let mut cuts: Vec<usize> = rand::seq::index::sample(rng, total - 1, parts - 1)
        .into_iter()
        .map(|c| c + 1)
        .collect();
    cuts.sort_unstable();
    let mut ranks = Vec::with_capacity(parts);
    let mut prev = 0;
    for c in cuts.into_iter().chain(std::iter::once(total)) {
        ranks.push(c - prev);
        prev = c;
    }
    ranks
}

/// Projective measurement in a Haar-random basis with a random number of outcomes and mixed ranks.
pub fn random_measurement<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Result<MeasurementSet> {
    let basis = haar_random_unitary(dim, rng);
    let parts = rng.random_range(1..=dim);
    let ranks = random_ranks(dim, parts, rng);
    MeasurementSet::from_basis_blocks(&basis, &ranks)
}

/// Rank-1 measurement in a Haar-random basis.
pub fn random_fine_measurement<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Result<MeasurementSet> {
    MeasurementSet::fine_grained(&haar_random_unitary(dim, rng))
}

/// Independent Haar unitary for each of `outcomes` outcomes.
pub fn random_policy<R: Rng + ?Sized>(dim: usize, outcomes: usize, rng: &mut R) -> FeedbackPolicy {
    FeedbackPolicy::new(
        (0..outcomes)
            .map(|_| haar_random_unitary(dim, rng))
            .collect(),
    )
    .expect("non-empty policy of equal dimensions")
}

/// Random pure or mixed state: a Haar-rotated random probability vector.
pub fn random_state<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> crate::engine::DensityMatrix {
    let weights: Vec<f64> = (0..dim)
        .map(|_| -rng.random::<f64>().max(1e-300).ln())
        .collect();
    let total: f64 = weights.iter().sum();
    let basis = haar_random_unitary(dim, rng);
    let mut m = ComplexMatrix::zeros(dim);
    for (k, w) in weights.iter().enumerate() {
        let v: Vec<Complex64> = basis.matrix().column(k);
        m = &m + &ComplexMatrix::outer(&v, &v).scale_real(w / total);
    }
    crate::engine::DensityMatrix::from_positive_operator(&m).expect("convex mixture of pure states")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ergotropy::trial_rng;

    #[test]
    fn ranks_compose_total() {
        let mut rng = trial_rng(1, 0);
        for total in 1..=8 {
            for parts in 1..=total {
                let r = random_ranks(total, parts, &mut rng);
                assert_eq!(r.len(), parts);
                assert_eq!(r.iter().sum::<usize>(), total);
                assert!(r.iter().all(|&g| g >= 1));
            }
        }
    }

    #[test]
    fn random_measurements_are_valid() {
        let mut rng = trial_rng(2, 0);
        for _ in 0..100 {
            let m = random_measurement(6, &mut rng).unwrap();
            assert_eq!(m.ranks().iter().sum::<usize>(), 6);
        }
    }

    #[test]
    fn temperatures_in_range() {
        let mut rng = trial_rng(3, 0);
        for _ in 0..1000 {
            let t = log_uniform(&mut rng, 10.0, 1000.0);
            assert!((10.0..=1000.0).contains(&t));
        }
    }
}
