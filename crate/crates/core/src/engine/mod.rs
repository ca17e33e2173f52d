//! Thermodynamic data model and per-cycle bookkeeping of the feedback engine.
//!
//! A cycle runs: product Gibbs preparation, projective measurement, outcome
//! conditioned feedback, then ideal rethermalization. Heats are read off the
//! per-partition energy changes of the first stroke; the memory bath takes
//! the Landauer-saturated heat `-k_B T_0 h`.

mod cycle;
mod model;
mod state;
mod thermo;


pub(crate) use cycle::report_for;
pub use cycle::{
    apply_feedback, energy_changes, evaluate_cycle, gibbs_product_state, measure, run_cycle,
    total_hamiltonian, CycleReport, CycleTrace, Regime, OUTCOME_THRESHOLD,
};
pub use model::{EngineSpec, FeedbackPolicy, MeasurementRecord, MeasurementSet, Partition};
pub use state::DensityMatrix;
pub use thermo::{
    carnot_bound, heats, landauer_efficiency, landauer_heat, q_in, shannon, von_neumann, ZERO_HEAT,
};
