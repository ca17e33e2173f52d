//! Passive states, ergotropy-extraction (max-work) feedback policies, the
//! fine-grain closed-form efficiency and randomized search over feedback unitaries.

mod haar;
mod passive;
mod search;


pub use haar::{haar_random_unitary, trial_rng};
pub use passive::{max_work_policy, passive_unitary, PassiveTransform};
pub use search::{fine_grain_closed_form, ground_state_intake, search_max_landauer, SearchResult};
