//! Physical constants and unit conversions (CODATA values).

/// Boltzmann constant in μeV/K.
pub const BOLTZMANN_UEV_PER_K: f64 = 86.17333262;

/// Planck constant in μeV/GHz, so that `ħω = h·f`.
pub const PLANCK_UEV_PER_GHZ: f64 = 4.135667696;

/// Thermal energy `k_B T` in μeV for a temperature in mK.
pub fn thermal_energy_uev(temperature_mk: f64) -> f64 {
    BOLTZMANN_UEV_PER_K * temperature_mk * 1e-3
}

/// Inverse thermal energy `1/(k_B T)` in 1/μeV for a temperature in mK.
pub fn beta_per_uev(temperature_mk: f64) -> f64 {
    1.0 / thermal_energy_uev(temperature_mk)
}

/// Photon energy `h·f` in μeV for a frequency in GHz.
pub fn photon_energy_uev(frequency_ghz: f64) -> f64 {
    PLANCK_UEV_PER_GHZ * frequency_ghz
}
