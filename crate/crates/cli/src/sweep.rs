//! `T_1` sweeps of the two-qubit scenarios, rendered as CSV.

use std::fmt::Write as _;
use std::path::PathBuf;

use qdemon_core::{
    evaluate_cycle, gibbs_product_state, measure, projectors, scenario_policy, two_qubit_spec,
    CycleReport, ScenarioId, TwoQubitParams,
};
use rayon::prelude::*;

use crate::error::{CliError, Result};

pub const CSV_HEADER: &str = "scenario,T1_mK,W_out_ueV,Q0L_ueV,Q1_ueV,Q2_ueV,h_nats,eta_LW,eta_C";

#[derive(Clone, Debug)]
pub struct SweepConfig {
    /// Engine parameters; `t1_mk` is replaced by each grid point.
    pub params: TwoQubitParams,
    pub t1_min_mk: f64,
    pub t1_max_mk: f64,
    pub steps: usize,
    pub scenarios: Vec<ScenarioId>,
    pub output_path: PathBuf,
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(CliError::InvalidArgument(msg));
        if !(self.t1_min_mk.is_finite() && self.t1_min_mk > 0.0) {
            return bad(format!("--t1-min must be positive, got {}", self.t1_min_mk));
        }
        if !(self.t1_max_mk.is_finite() && self.t1_max_mk > self.t1_min_mk) {
            return bad(format!(
                "--t1-max ({}) must exceed --t1-min ({})",
                self.t1_max_mk, self.t1_min_mk
            ));
        }
        if self.steps < 2 {
            return bad(format!("--steps must be at least 2, got {}", self.steps));
        }
        if self.scenarios.is_empty() {
            return bad("no scenarios given".into());
        }
        Ok(())
    }

    /// Linear grid including both endpoints.
    pub fn grid(&self) -> Vec<f64> {
        let last = (self.steps - 1) as f64;
        (0..self.steps)
            .map(|k| {
                if k + 1 == self.steps {
                    self.t1_max_mk
                } else {
                    self.t1_min_mk + (self.t1_max_mk - self.t1_min_mk) * k as f64 / last
                }
            })
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct SweepRow {
    pub scenario: ScenarioId,
    pub t1_mk: f64,
    pub report: CycleReport,
}

/// One cycle of `scenario` under its own scenario feedback policy.
pub fn scenario_cycle(scenario: ScenarioId, params: &TwoQubitParams) -> Result<CycleReport> {
    let spec = two_qubit_spec(params)?;
    let m = projectors(scenario);
    let record = measure(&gibbs_product_state(&spec)?, &m)?;
    let policy = scenario_policy(scenario, &record)?;
    Ok(evaluate_cycle(&spec, &m, &policy)?)
}

/// Rows in scenario-major, ascending-`T_1` order. Grid points run in parallel.
pub fn compute(config: &SweepConfig) -> Result<Vec<SweepRow>> {
    config.validate()?;
    config.params.with_t1(config.t1_min_mk).validate()?;
    let grid = config.grid();
    let points: Vec<(ScenarioId, f64)> = config
        .scenarios
        .iter()
        .flat_map(|&s| grid.iter().map(move |&t| (s, t)))
        .collect();
    points
        .into_par_iter()
        .map(|(scenario, t1_mk)| {
            let report = scenario_cycle(scenario, &config.params.with_t1(t1_mk))?;
            Ok(SweepRow {
                scenario,
                t1_mk,
                report,
            })
        })
        .collect()
}

/// 12 significant digits in scientific notation; negative zero prints as zero.
pub fn format_number(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.11e}")
}

fn format_optional(x: Option<f64>) -> String {
    x.map(format_number).unwrap_or_default()
}

pub fn render_csv(rows: &[SweepRow]) -> String {
    let mut out = String::with_capacity(160 * (rows.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for row in rows {
        let r = &row.report;
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            row.scenario,
            format_number(row.t1_mk),
            format_number(r.w_out),
            format_number(r.q0_landauer),
            format_number(r.heats[0]),
            format_number(r.heats[1]),
            format_number(r.shannon_h),
            format_optional(r.eta_l),
            format_optional(r.eta_c),
        );
    }
    out
}

/// Computes the sweep and writes the CSV; returns the number of data rows.
pub fn run(config: &SweepConfig) -> Result<usize> {
    let rows = compute(config)?;
    std::fs::write(&config.output_path, render_csv(&rows)).map_err(|source| CliError::Write {
        path: config.output_path.clone(),
        source,
    })?;
    Ok(rows.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(steps: usize) -> SweepConfig {
        SweepConfig {
            params: TwoQubitParams::default(),
            t1_min_mk: 10.0,
            t1_max_mk: 500.0,
            steps,
            scenarios: ScenarioId::ALL.to_vec(),
            output_path: PathBuf::from("unused.csv"),
        }
    }

    #[test]
    fn grid_is_inclusive_and_linear() {
        let g = config(200).grid();
        assert_eq!(g.len(), 200);
        assert_eq!(g[0], 10.0);
        assert_eq!(g[199], 500.0);
        let step = 490.0 / 199.0;
        for w in g.windows(2) {
            assert!((w[1] - w[0] - step).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_bad_ranges() {
        let mut c = config(1);
        assert!(c.validate().is_err());
        c.steps = 5;
        c.t1_max_mk = 10.0;
        assert!(c.validate().is_err());
        c.t1_max_mk = 20.0;
        c.scenarios.clear();
        assert!(c.validate().is_err());
    }

    #[test]
    fn number_format() {
        assert_eq!(format_number(-0.0), "0.00000000000e0");
        assert_eq!(format_number(1.0), "1.00000000000e0");
        assert_eq!(format_number(-1234.5), "-1.23450000000e3");
        let parsed: f64 = format_number(std::f64::consts::PI).parse().unwrap();
        assert!((parsed - std::f64::consts::PI).abs() < 1e-11);
    }

    #[test]
    fn rows_are_scenario_major() {
        let rows = compute(&config(7)).unwrap();
        assert_eq!(rows.len(), 35);
        for (k, row) in rows.iter().enumerate() {
            assert_eq!(row.scenario, ScenarioId::ALL[k / 7]);
        }
        assert!(rows[..7].windows(2).all(|w| w[0].t1_mk < w[1].t1_mk));
    }

    #[test]
    fn csv_rows_close_the_first_law() {
        let csv = render_csv(&compute(&config(25)).unwrap());
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some(CSV_HEADER));
        let mut count = 0;
        for line in lines {
            let f: Vec<&str> = line.split(',').collect();
            assert_eq!(f.len(), 9);
            let num = |i: usize| f[i].parse::<f64>().unwrap();
            let residual = num(2) - (num(3) + num(4) + num(5));
            // 12 significant digits on values of order 10 μeV
            assert!(residual.abs() < 1e-9, "{line}");
            count += 1;
        }
        assert_eq!(count, 125);
    }
}
