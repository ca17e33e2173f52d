//! Human-readable single-cycle report.

use std::fmt::Write as _;

use qdemon_core::{CycleReport, ScenarioId, TwoQubitParams};

fn optional(x: Option<f64>) -> String {
    x.map(|v| format!("{v:.9}"))
        .unwrap_or_else(|| "undefined".into())
}

pub fn render(scenario: ScenarioId, params: &TwoQubitParams, r: &CycleReport) -> String {
    let mut out = String::new();
    let mut line = |label: &str, value: String, unit: &str| {
        let text = format!("{label:<14} {value:>18} {unit}");
        let _ = writeln!(out, "{}", text.trim_end());
    };
    line("scenario", scenario.to_string(), "");
    line("T1", format!("{:.3}", params.t1_mk), "mK");
    line("T2", format!("{:.3}", params.t2_mk), "mK");
    line("T0", format!("{:.3}", params.t0_mk), "mK");
    for (i, de) in r.delta_e.iter().enumerate() {
        line(&format!("delta_E{}", i + 1), format!("{de:.9}"), "ueV");
    }
    for (i, q) in r.heats.iter().enumerate() {
        line(&format!("Q{}", i + 1), format!("{q:.9}"), "ueV");
    }
    line("h", format!("{:.9}", r.shannon_h), "nats");
    line("Q0_landauer", format!("{:.9}", r.q0_landauer), "ueV");
    line("W_fc", format!("{:.9}", r.w_fc), "ueV");
    line("W_m_landauer", format!("{:.9}", r.w_m_landauer), "ueV");
    line("W_out", format!("{:.9}", r.w_out), "ueV");
    line("Q_in", format!("{:.9}", r.q_in), "ueV");
    line("delta_vn", format!("{:.9}", r.delta_vn), "nats");
    line("eta_L", optional(r.eta_l), "");
    line("eta_C", optional(r.eta_c), "");
    line("regime", r.regime.to_string(), "");
    out
}
