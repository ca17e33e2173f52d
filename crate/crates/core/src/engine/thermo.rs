//! Scalar thermodynamic bookkeeping: information measures, Landauer heat and efficiencies.

use crate::error::{Error, Result};
use crate::units;

use super::state::DensityMatrix;

/// Heats below this magnitude count as zero.
pub const ZERO_HEAT: f64 = 1e-14;

/// Eigenvalues in `[-ZERO_CLAMP, 0)` are treated as exact zeros.
const ZERO_CLAMP: f64 = 1e-12;

fn xlnx(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        x * x.ln()
    }
}

/// Shannon information `-Σ q ln q` in nats, with `0 ln 0 = 0`.
pub fn shannon(q: &[f64]) -> Result<f64> {
    if let Some(&bad) = q.iter().find(|&&x| !x.is_finite() || x < -ZERO_CLAMP) {
        return Err(Error::InvalidDistribution {
            reason: format!("entry {bad} is negative or not finite"),
        });
    }
    let total: f64 = q.iter().sum();
    if (total - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidDistribution {
            reason: format!("entries sum to {total}"),
        });
    }
    Ok(-q.iter().map(|&x| xlnx(x)).sum::<f64>())
}

/// Von Neumann entropy `-Tr ρ ln ρ` in nats; eigenvalues at or below zero contribute nothing.
pub fn von_neumann(rho: &DensityMatrix) -> Result<f64> {
    let spectrum = rho.spectrum()?;
    Ok(-spectrum.eigenvalues().iter().map(|&r| xlnx(r)).sum::<f64>())
}

/// Heat ceded by each bath, `Q_i = -ΔE_i`.
pub fn heats(delta_e: &[f64]) -> Vec<f64> {
    delta_e.iter().map(|&e| -e).collect()
}

/// Memory-bath heat at Landauer saturation, `-k_B T_0 h` in μeV.
pub fn landauer_heat(shannon_h: f64, memory_temperature_mk: f64) -> f64 {
    -units::thermal_energy_uev(memory_temperature_mk) * shannon_h
}

/// Heat intake `Σ_i max(Q_i, 0)` over the working-substance baths.
pub fn q_in(q: &[f64]) -> f64 {
    q.iter().map(|&x| x.max(0.0)).sum()
}

/// Landauer efficiency `(Σ Q_i - k_B T_0 h) / Q_in`; `None` when `Q_in` is negligible.
pub fn landauer_efficiency(q: &[f64], shannon_h: f64, memory_temperature_mk: f64) -> Option<f64> {
    let intake = q_in(q);
    if intake <= ZERO_HEAT {
        return None;
    }
    let total: f64 = q.iter().sum();
    Some(total / intake + landauer_heat(shannon_h, memory_temperature_mk) / intake)
}

/// Carnot bound `1 - T_min / T_max` over all baths, memory included.
///
/// `T_min` ranges over baths receiving heat (`Q_i < 0`), `T_max` over baths
/// giving heat (`Q_i > 0`); baths with `|Q_i| ≤ 1e-14` belong to neither set.
/// Returns `None` when either set is empty.
pub fn carnot_bound(heats_with_memory: &[f64], temperatures_mk: &[f64]) -> Option<f64> {
    assert_eq!(
        heats_with_memory.len(),
        temperatures_mk.len(),
        "one temperature per bath"
    );
    let mut t_min: Option<f64> = None;
    let mut t_max: Option<f64> = None;
    for (&q, &t) in heats_with_memory.iter().zip(temperatures_mk) {
        if q < -ZERO_HEAT {
            t_min = Some(t_min.map_or(t, |m| m.min(t)));
        } else if q > ZERO_HEAT {
            t_max = Some(t_max.map_or(t, |m| m.max(t)));
        }
    }
    Some(1.0 - t_min? / t_max?)
}
