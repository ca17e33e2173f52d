//! Feedback-controlled, multi-bath, two-stroke quantum heat engines with a
//! Maxwell-demon memory.
//!
//! A working substance of `N` partitions starts in a product of Gibbs states,
//! is measured projectively by a demon that records the outcome in a classical
//! memory held at temperature `T_0`, and receives an outcome-conditioned
//! feedback unitary. Each partition then rethermalizes with its own bath. The
//! crate computes the per-cycle heats, works, entropies and the Landauer and
//! Carnot efficiencies of the extended (working substance + memory) machine,
//! plus the ergotropy-based max-work feedback policies and the two-qubit
//! measurement scenarios used to illustrate them.
//!
//! Units: energies in μeV, temperatures in mK, frequencies in GHz, entropies in nats.

pub mod engine;
pub mod ergotropy;
pub mod error;
pub mod numerics;
pub mod sampling;
pub mod scenarios;
pub mod units;

pub use engine::{
    apply_feedback, carnot_bound, energy_changes, evaluate_cycle, gibbs_product_state, heats,
    landauer_efficiency, landauer_heat, measure, q_in, run_cycle, shannon, total_hamiltonian,
    von_neumann, CycleReport, CycleTrace, DensityMatrix, EngineSpec, FeedbackPolicy,
    MeasurementRecord, MeasurementSet, Partition, Regime,
};
pub use ergotropy::{
    fine_grain_closed_form, ground_state_intake, haar_random_unitary, max_work_policy,
    passive_unitary, search_max_landauer, trial_rng, PassiveTransform, SearchResult,
};
pub use error::{Error, Result};
pub use numerics::{
    eig_hermitian, kron, spectral_apply, ComplexMatrix, HermitianOperator, Spectrum, UnitaryMatrix,
};
pub use scenarios::{
    closed_form_probabilities, projectors, scenario_policy, two_qubit_spec, ScenarioId,
    TwoQubitParams,
};
