//! The two-qubit example engine and its five measurement scenarios.
//!
//! All matrices are written in the computational basis `{|00>, |01>, |10>, |11>}`,
//! which is also the energy eigenbasis; `|0>` is the ground state of each qubit.

use std::fmt;
use std::str::FromStr;

use crate::engine::{EngineSpec, FeedbackPolicy, MeasurementRecord, MeasurementSet, Partition};
use crate::error::{Error, Result};
use crate::numerics::{ComplexMatrix, HermitianOperator, UnitaryMatrix};
use crate::units;

/// Physical parameters of the two-qubit engine.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwoQubitParams {
    pub f1_ghz: f64,
    pub f2_ghz: f64,
    pub t1_mk: f64,
    pub t2_mk: f64,
    pub t0_mk: f64,
}

impl Default for TwoQubitParams {
    fn default() -> Self {
        Self {
            f1_ghz: 5.0,
            f2_ghz: 5.0,
            t1_mk: 150.0,
            t2_mk: 150.0,
            t0_mk: 80.0,
        }
    }
}

impl TwoQubitParams {
    pub fn with_t1(self, t1_mk: f64) -> Self {
        Self { t1_mk, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, value) in [
            ("qubit 1 frequency", self.f1_ghz),
            ("qubit 2 frequency", self.f2_ghz),
            ("qubit 1 temperature", self.t1_mk),
            ("qubit 2 temperature", self.t2_mk),
            ("memory temperature", self.t0_mk),
        ] {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "{name} must be positive and finite, got {value}"
                )));
            }
        }
        Ok(())
    }
}

/// The five measurement scenarios of the two-qubit engine.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ScenarioId {
    /// Rank-1 projectors onto the energy eigenstates.
    EFine,
    /// Number of excitations: ranks (1, 2, 1).
    ECoarse,
    /// Rank-1 projectors onto the Bell states.
    BellFine,
    /// `Ψ+`, `Ψ-`, and the span of `Φ±`: ranks (1, 1, 2).
    BellCoarse,
    /// Like versus unlike qubit states: ranks (2, 2).
    ExtraCoarse,
}

impl ScenarioId {
    pub const ALL: [ScenarioId; 5] = [
        ScenarioId::EFine,
        ScenarioId::ECoarse,
        ScenarioId::BellFine,
        ScenarioId::BellCoarse,
        ScenarioId::ExtraCoarse,
    ];

    /// Stable public identifier.
    pub fn name(self) -> &'static str {
        match self {
            ScenarioId::EFine => "e-fine",
            ScenarioId::ECoarse => "e-coarse",
            ScenarioId::BellFine => "bell-fine",
            ScenarioId::BellCoarse => "bell-coarse",
            ScenarioId::ExtraCoarse => "extra-coarse",
        }
    }

    /// Number of measurement outcomes.
    pub fn outcomes(self) -> usize {
        match self {
            ScenarioId::EFine | ScenarioId::BellFine => 4,
            ScenarioId::ECoarse | ScenarioId::BellCoarse => 3,
            ScenarioId::ExtraCoarse => 2,
        }
    }
}

impl fmt::Display for ScenarioId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ScenarioId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ScenarioId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::UnknownScenario(s.to_string()))
    }
}

/// Two qubits with `H_i = (h f_i / 2) diag(-1, +1)` μeV and the memory at `T_0`.
pub fn two_qubit_spec(p: &TwoQubitParams) -> Result<EngineSpec> {
    p.validate()?;
    let qubit = |f_ghz: f64, t_mk: f64| {
        let half = units::photon_energy_uev(f_ghz) / 2.0;
        Partition::new(HermitianOperator::from_diagonal(&[-half, half]), t_mk)
    };
    EngineSpec::new(
        vec![qubit(p.f1_ghz, p.t1_mk)?, qubit(p.f2_ghz, p.t2_mk)?],
        p.t0_mk,
    )
}

/// Energy-basis populations `(q00, q01, q10, q11)` of the initial product Gibbs state.
pub fn closed_form_probabilities(p: &TwoQubitParams) -> [f64; 4] {
    let local = |f_ghz: f64, t_mk: f64| {
        let x = units::beta_per_uev(t_mk) * units::photon_energy_uev(f_ghz);
        let z = 2.0 * (x / 2.0).cosh();
        [(x / 2.0).exp() / z, (-x / 2.0).exp() / z]
    };
    let a = local(p.f1_ghz, p.t1_mk);
    let b = local(p.f2_ghz, p.t2_mk);
    [a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]]
}

fn basis_projector(k: usize) -> HermitianOperator {
    let mut diag = [0.0; 4];
    diag[k] = 1.0;
    HermitianOperator::from_diagonal(&diag)
}

/// Bell states `Φ+, Ψ+, Φ-, Ψ-` in that order.
fn bell_vectors() -> [[f64; 4]; 4] {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    [
        [r, 0.0, 0.0, r],
        [0.0, r, r, 0.0],
        [r, 0.0, 0.0, -r],
        [0.0, r, -r, 0.0],
    ]
}

fn real_projector(vectors: &[[f64; 4]]) -> HermitianOperator {
    let mut m = ComplexMatrix::zeros(4);
    for v in vectors {
        let col: Vec<_> = v
            .iter()
            .map(|&x| num_complex::Complex64::new(x, 0.0))
            .collect();
        m = &m + &ComplexMatrix::outer(&col, &col);
    }
    HermitianOperator::from_hermitian_part(&m)
}

fn sum_of(projectors: &[HermitianOperator]) -> HermitianOperator {
    let mut m = ComplexMatrix::zeros(4);
    for p in projectors {
        m = &m + p.matrix();
    }
    HermitianOperator::from_hermitian_part(&m)
}

/// Measurement projectors of a scenario, in outcome order.
pub fn projectors(id: ScenarioId) -> MeasurementSet {
    let e: Vec<HermitianOperator> = (0..4).map(basis_projector).collect();
    let b = bell_vectors();
    let bell: Vec<HermitianOperator> = b.iter().map(|v| real_projector(&[*v])).collect();
    let family = match id {
        ScenarioId::EFine => e,
        ScenarioId::ECoarse => vec![
            e[0].clone(),
            sum_of(&[e[1].clone(), e[2].clone()]),
            e[3].clone(),
        ],
        ScenarioId::BellFine => bell,
        ScenarioId::BellCoarse => vec![
            bell[1].clone(),
            bell[3].clone(),
            real_projector(&[b[0], b[2]]),
        ],
        ScenarioId::ExtraCoarse => vec![
            sum_of(&[e[0].clone(), e[3].clone()]),
            sum_of(&[e[1].clone(), e[2].clone()]),
        ],
    };
    MeasurementSet::new(family).expect("scenario projectors form a complete orthogonal family")
}

fn unitary(rows: [[f64; 4]; 4]) -> UnitaryMatrix {
    let flat: Vec<f64> = rows.iter().flatten().copied().collect();
    UnitaryMatrix::new(ComplexMatrix::from_real(4, &flat).expect("4x4 literal"))
        .expect("literal is unitary")
}

/// Swaps `|00>` with `|ab>`, fixing the other basis states.
fn energy_swap(index: usize) -> UnitaryMatrix {
    let mut perm = [0, 1, 2, 3];
    perm.swap(0, index);
    UnitaryMatrix::permutation(&perm).expect("transposition")
}

/// Rotates each Bell state onto a distinct energy eigenstate:
/// `Φ+ → |00>`, `Ψ+ → |01>`, `Φ- → |10>`, `Ψ- → |11>`.
fn bell_rotation() -> UnitaryMatrix {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    unitary([
        [r, 0.0, 0.0, r],
        [0.0, r, r, 0.0],
        [r, 0.0, 0.0, -r],
        [0.0, r, -r, 0.0],
    ])
}

/// Single-excitation feedback: sends the more populated of `|01>`, `|10>` to `|00>`.
fn single_excitation_unitary(q10_dominates: bool) -> UnitaryMatrix {
    if q10_dominates {
        unitary([
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
        ])
    } else {
        unitary([
            [0.0, 1.0, 0.0, 0.0],
            [0.0, 0.0, 1.0, 0.0],
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
        ])
    }
}

/// Swaps `|01>` and `|11>`, used on the `{|00>, |11>}` outcome.
fn like_states_unitary() -> UnitaryMatrix {
    unitary([
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
    ])
}

/// Fine Bell feedback for outcome `k`: rotate to an energy eigenstate, then swap it to `|00>`.
fn bell_feedback(k: usize) -> UnitaryMatrix {
    energy_swap(k).compose(&bell_rotation())
}

/// Whether `q10 ≥ q01` inside the single-excitation outcome `index`.
/// Ties and absent outcomes take the `q10 > q01` branch.
fn q10_dominates(record: &MeasurementRecord, index: usize) -> bool {
    match &record.post_states()[index] {
        Some(state) => state.matrix()[(2, 2)].re >= state.matrix()[(1, 1)].re,
        None => true,
    }
}

/// Hand-built max-work feedback policy of a scenario.
///
/// `record` must come from measuring with [`projectors`]`(id)`; the
/// single-excitation outcomes of `e-coarse` and `extra-coarse` pick their
/// unitary from the recorded populations.
pub fn scenario_policy(id: ScenarioId, record: &MeasurementRecord) -> Result<FeedbackPolicy> {
    if record.len() != id.outcomes() {
        return Err(Error::ScenarioMismatch {
            scenario: id.name().into(),
            reason: format!(
                "expected {} outcomes, record has {}",
                id.outcomes(),
                record.len()
            ),
        });
    }
    if let Some(dim) = record.dim() {
        if dim != 4 {
            return Err(Error::ScenarioMismatch {
                scenario: id.name().into(),
                reason: format!("expected two qubits (dimension 4), record has dimension {dim}"),
            });
        }
    }
    let unitaries = match id {
        ScenarioId::EFine => (0..4).map(energy_swap).collect(),
        ScenarioId::ECoarse => vec![
            energy_swap(0),
            single_excitation_unitary(q10_dominates(record, 1)),
            energy_swap(3),
        ],
        ScenarioId::BellFine => (0..4).map(bell_feedback).collect(),
        ScenarioId::BellCoarse => vec![bell_feedback(1), bell_feedback(3), like_states_unitary()],
        ScenarioId::ExtraCoarse => vec![
            like_states_unitary(),
            single_excitation_unitary(q10_dominates(record, 1)),
        ],
    };
    FeedbackPolicy::new(unitaries)
}
