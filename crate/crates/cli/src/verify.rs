//! Randomized battery of the cycle inequalities and the ergotropy properties.

use std::fmt;
use std::str::FromStr;

use qdemon_core::sampling::{
    random_fine_measurement, random_measurement, random_policy, random_spec,
};
use qdemon_core::units::thermal_energy_uev;
use qdemon_core::{
    eig_hermitian, evaluate_cycle, fine_grain_closed_form, ground_state_intake, max_work_policy,
    passive_unitary, run_cycle, shannon, total_hamiltonian, trial_rng, CycleReport, EngineSpec,
    FeedbackPolicy, MeasurementSet, Regime,
};
use rayon::prelude::*;

use crate::error::{CliError, Result};

/// A check fails when its excess exceeds this.
pub const TOLERANCE: f64 = 1e-9;

pub const MAX_DIM: usize = 16;

/// Local dimensions of the partitions, written `2x3` or `2x2x2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimsSignature(pub Vec<usize>);

impl DimsSignature {
    pub fn total(&self) -> usize {
        self.0.iter().product()
    }
}

impl FromStr for DimsSignature {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        let dims = s
            .split('x')
            .map(|part| {
                part.trim().parse::<usize>().map_err(|_| {
                    CliError::InvalidArgument(format!("bad dimension `{part}` in `{s}`"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        if let Some(d) = dims.iter().find(|&&d| d < 2) {
            return Err(CliError::InvalidArgument(format!(
                "partition dimension {d} in `{s}` is below 2"
            )));
        }
        let sig = DimsSignature(dims);
        if sig.total() > MAX_DIM {
            return Err(CliError::InvalidArgument(format!(
                "`{s}` has total dimension {} above {MAX_DIM}",
                sig.total()
            )));
        }
        Ok(sig)
    }
}

impl fmt::Display for DimsSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        f.write_str(&parts.join("x"))
    }
}

/// Parses a comma-separated signature list such as `2x2,2x3,2x2x2`.
pub fn parse_dims_list(s: &str) -> Result<Vec<DimsSignature>> {
    let list = s
        .split(',')
        .filter(|p| !p.trim().is_empty())
        .map(str::parse)
        .collect::<Result<Vec<_>>>()?;
    if list.is_empty() {
        return Err(CliError::InvalidArgument("empty --dims list".into()));
    }
    Ok(list)
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Instances per dimension signature.
    pub trials: usize,
    pub dims: Vec<DimsSignature>,
}

impl VerifyConfig {
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(CliError::InvalidArgument(
                "--trials must be at least 1".into(),
            ));
        }
        if self.dims.is_empty() {
            return Err(CliError::InvalidArgument("empty --dims list".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Invariant {
    ClausiusType,
    InformationBound,
    ExtendedClausius,
    FirstLaw,
    LandauerBelowCarnot,
    UnitalEntropyIncrease,
    ErgotropyNonNegative,
    Passivity,
    MaxWorkDominance,
    FineGrainIntake,
    FineGrainClosedForm,
    EnergyBasisOptimality,
    Bistochastic,
}

impl Invariant {
    pub const ALL: [Invariant; 13] = [
        Invariant::ClausiusType,
        Invariant::InformationBound,
        Invariant::ExtendedClausius,
        Invariant::FirstLaw,
        Invariant::LandauerBelowCarnot,
        Invariant::UnitalEntropyIncrease,
        Invariant::ErgotropyNonNegative,
        Invariant::Passivity,
        Invariant::MaxWorkDominance,
        Invariant::FineGrainIntake,
        Invariant::FineGrainClosedForm,
        Invariant::EnergyBasisOptimality,
        Invariant::Bistochastic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Invariant::ClausiusType => "clausius-type",
            Invariant::InformationBound => "information-bound",
            Invariant::ExtendedClausius => "extended-clausius",
            Invariant::FirstLaw => "first-law",
            Invariant::LandauerBelowCarnot => "landauer-below-carnot",
            Invariant::UnitalEntropyIncrease => "unital-entropy-increase",
            Invariant::ErgotropyNonNegative => "ergotropy-non-negative",
            Invariant::Passivity => "passivity",
            Invariant::MaxWorkDominance => "max-work-dominance",
            Invariant::FineGrainIntake => "fine-grain-intake",
            Invariant::FineGrainClosedForm => "fine-grain-closed-form",
            Invariant::EnergyBasisOptimality => "energy-basis-optimality",
            Invariant::Bistochastic => "bistochastic",
        }
    }
}

/// Trials, failures and the largest excess seen for one invariant.
/// The excess is how far a check went past its bound; negative means slack.
#[derive(Clone, Debug, PartialEq)]
pub struct Tally {
    pub invariant: Invariant,
    pub trials: usize,
    pub failures: usize,
    pub worst_excess: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifySummary {
    pub seed: u64,
    pub instances: usize,
    pub tallies: Vec<Tally>,
}

impl VerifySummary {
    pub fn failures(&self) -> usize {
        self.tallies.iter().map(|t| t.failures).sum()
    }

    pub fn tally(&self, invariant: Invariant) -> &Tally {
        self.tallies
            .iter()
            .find(|t| t.invariant == invariant)
            .expect("every invariant has a tally")
    }
}

impl fmt::Display for VerifySummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "seed {}: {} instances", self.seed, self.instances)?;
        writeln!(
            f,
            "{:<26}{:>8}{:>10}{:>14}",
            "invariant", "trials", "failures", "worst excess"
        )?;
        for t in &self.tallies {
            let worst = if t.trials == 0 {
                "-".to_string()
            } else {
                format!("{:.3e}", t.worst_excess)
            };
            writeln!(
                f,
                "{:<26}{:>8}{:>10}{:>14}",
                t.invariant.name(),
                t.trials,
                t.failures,
                worst
            )?;
        }
        write!(
            f,
            "{}: {} failures",
            if self.failures() == 0 { "PASS" } else { "FAIL" },
            self.failures()
        )
    }
}

type Check = (Invariant, f64);

fn cycle_checks(spec: &EngineSpec, r: &CycleReport, out: &mut Vec<Check>) {
    out.push((
        Invariant::ClausiusType,
        r.delta_vn - r.clausius_type_sum(spec),
    ));
    out.push((Invariant::InformationBound, -r.delta_vn - r.shannon_h));
    out.push((Invariant::ExtendedClausius, r.extended_clausius_sum(spec)));
    out.push((Invariant::FirstLaw, r.first_law_residual().abs()));
    if let (Some(eta_l), Some(eta_c), Regime::Engine) = (r.eta_l, r.eta_c, r.regime) {
        out.push((Invariant::LandauerBelowCarnot, eta_l - eta_c));
    }
}

fn instance(seed: u64, index: u64, dims: &DimsSignature) -> Result<Vec<Check>> {
    let mut rng = trial_rng(seed, index);
    let spec = random_spec(&dims.0, &mut rng)?;
    let d = spec.dim();
    let hamiltonian = total_hamiltonian(&spec);
    let mut checks = Vec::with_capacity(24);

    // coarse-grained measurement with a random policy and with the max-work policy
    let m = random_measurement(d, &mut rng)?;
    let policy = random_policy(d, m.len(), &mut rng);
    let trace = run_cycle(&spec, &m, &policy)?;
    cycle_checks(&spec, &trace.report, &mut checks);
    let best = max_work_policy(&trace.record, &hamiltonian)?;
    let best_report = evaluate_cycle(&spec, &m, &best)?;
    cycle_checks(&spec, &best_report, &mut checks);
    checks.push((
        Invariant::MaxWorkDominance,
        trace.report.w_out - best_report.w_out,
    ));

    for (state, u) in trace.record.post_states().iter().zip(policy.unitaries()) {
        let Some(state) = state else { continue };
        let passive = passive_unitary(state, &hamiltonian)?;
        checks.push((Invariant::ErgotropyNonNegative, -passive.extracted_energy));
        checks.push((
            Invariant::Passivity,
            passive.passive_state.energy(&hamiltonian) - state.evolve(u).energy(&hamiltonian),
        ));
    }

    let unital = FeedbackPolicy::uniform(policy.unitaries()[0].clone(), m.len());
    let unital_report = evaluate_cycle(&spec, &m, &unital)?;
    checks.push((Invariant::UnitalEntropyIncrease, -unital_report.delta_vn));

    // fine-grained measurement in a random basis
    let fine = random_fine_measurement(d, &mut rng)?;
    let fine_trace = run_cycle(&spec, &fine, &policy_for(&spec, &fine)?)?;
    let r = &fine_trace.report;
    let intake = ground_state_intake(&spec)?;
    let memory_cost = thermal_energy_uev(spec.memory_temperature_mk()) * r.shannon_h;
    checks.push((
        Invariant::FineGrainIntake,
        (r.q_in - intake)
            .abs()
            .max((r.w_out - (intake - memory_cost)).abs()),
    ));
    if r.regime == Regime::Engine {
        if let Some(eta) = r.eta_l {
            let closed = fine_grain_closed_form(&fine, &spec)?;
            checks.push((Invariant::FineGrainClosedForm, (eta - closed).abs()));
        }
    }

    let energy_basis = eig_hermitian(&hamiltonian)?.basis();
    let populations: Vec<f64> = (0..d)
        .map(|k| {
            fine_trace
                .initial
                .matrix()
                .conjugate_by(&energy_basis.matrix().adjoint())[(k, k)]
                .re
                .max(0.0)
        })
        .collect();
    let h_energy = shannon(&populations)?;
    checks.push((Invariant::EnergyBasisOptimality, h_energy - r.shannon_h));

    let fine_basis = fine_basis_matrix(&fine);
    let overlaps = &fine_basis.adjoint() * energy_basis.matrix();
    let mut defect: f64 = 0.0;
    for k in 0..d {
        let row: f64 = (0..d).map(|n| overlaps[(k, n)].norm_sqr()).sum();
        let col: f64 = (0..d).map(|n| overlaps[(n, k)].norm_sqr()).sum();
        defect = defect.max((row - 1.0).abs()).max((col - 1.0).abs());
    }
    checks.push((Invariant::Bistochastic, defect));
    Ok(checks)
}

fn policy_for(spec: &EngineSpec, m: &MeasurementSet) -> Result<FeedbackPolicy> {
    let rho = qdemon_core::gibbs_product_state(spec)?;
    let record = qdemon_core::measure(&rho, m)?;
    Ok(max_work_policy(&record, &total_hamiltonian(spec))?)
}

/// Columns are the unit vectors spanning each rank-1 projector.
fn fine_basis_matrix(m: &MeasurementSet) -> qdemon_core::ComplexMatrix {
    let columns: Vec<Vec<_>> = m
        .projectors()
        .iter()
        .map(|p| {
            let spectrum = eig_hermitian(p).expect("projectors are Hermitian");
            spectrum.eigenvector(m.dim() - 1)
        })
        .collect();
    qdemon_core::ComplexMatrix::from_columns(&columns)
}

/// Runs `trials` instances per signature. Instance `k` of signature `s` uses
/// stream `s · trials + k` of the seed, so the result is schedule independent.
pub fn run(config: &VerifyConfig) -> Result<VerifySummary> {
    config.validate()?;
    let jobs: Vec<(u64, &DimsSignature)> = config
        .dims
        .iter()
        .enumerate()
        .flat_map(|(s, dims)| {
            (0..config.trials).map(move |k| ((s * config.trials + k) as u64, dims))
        })
        .collect();
    let results = jobs
        .par_iter()
        .map(|&(index, dims)| instance(config.seed, index, dims))
        .collect::<Result<Vec<_>>>()?;

    let mut tallies: Vec<Tally> = Invariant::ALL
        .iter()
        .map(|&invariant| Tally {
            invariant,
            trials: 0,
            failures: 0,
            worst_excess: f64::NEG_INFINITY,
        })
        .collect();
    for (invariant, excess) in results.iter().flatten() {
        let t = tallies
            .iter_mut()
            .find(|t| t.invariant == *invariant)
            .expect("every invariant has a tally");
        t.trials += 1;
        if excess.is_nan() || *excess > TOLERANCE {
            t.failures += 1;
        }
        t.worst_excess = t.worst_excess.max(*excess);
    }
    Ok(VerifySummary {
        seed: config.seed,
        instances: jobs.len(),
        tallies,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_signatures() {
        let list = parse_dims_list("2x2,2x3,2x2x2").unwrap();
        assert_eq!(list[1], DimsSignature(vec![2, 3]));
        assert_eq!(list[2].to_string(), "2x2x2");
        assert!(parse_dims_list("2x1").is_err());
        assert!(parse_dims_list("4x5").is_err());
        assert!(parse_dims_list("2xa").is_err());
        assert!(parse_dims_list("").is_err());
        assert_eq!(parse_dims_list("4x4").unwrap()[0].total(), 16);
    }

    #[test]
    fn single_trial_covers_every_core_invariant() {
        let config = VerifyConfig {
            seed: 42,
            trials: 1,
            dims: vec![DimsSignature(vec![2, 2])],
        };
        let summary = run(&config).unwrap();
        assert_eq!(summary.instances, 1);
        for inv in [
            Invariant::ClausiusType,
            Invariant::FirstLaw,
            Invariant::Bistochastic,
        ] {
            assert!(summary.tally(inv).trials >= 1);
        }
        assert_eq!(summary.failures(), 0, "{summary}");
    }

    #[test]
    fn reproducible_summary() {
        let config = VerifyConfig {
            seed: 7,
            trials: 20,
            dims: parse_dims_list("2x2,2x3").unwrap(),
        };
        let a = run(&config).unwrap();
        let b = run(&config).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), b.to_string());
        assert_eq!(a.failures(), 0, "{a}");
    }
}
