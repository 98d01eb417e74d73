//! JSON rendering of a synthesis run.
//!
//! Every float is rounded to 9 significant digits and nothing time-dependent
//! is included, so the same inputs always give byte-identical output.
//! Non-finite values become `null`.

use serde_json::{json, Map, Value};

use crate::synthesis::SynthesisReport;
use crate::table::round_sig;

pub const JSON_SIGNIFICANT_DIGITS: usize = 9;

/// Rounds every float inside `value` to 9 significant digits.
pub fn round_floats(value: Value) -> Value {
    match value {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().unwrap_or(f64::NAN);
            serde_json::Number::from_f64(round_sig(x, JSON_SIGNIFICANT_DIGITS))
                .map(Value::Number)
                .unwrap_or(Value::Null)
        }
        Value::Array(items) => Value::Array(items.into_iter().map(round_floats).collect()),
        Value::Object(map) => Value::Object(
            map.into_iter()
                .map(|(k, v)| (k, round_floats(v)))
                .collect::<Map<String, Value>>(),
        ),
        other => other,
    }
}

fn finite(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        Value::Null
    }
}

fn element_rows(elements: &[crate::array_model::ElementPlacement]) -> Value {
    Value::Array(
        elements
            .iter()
            .enumerate()
            .map(|(i, e)| {
                json!({
                    "index": i + 1,
                    "position_lambda": e.position,
                    "excitation": e.excitation,
                })
            })
            .collect(),
    )
}

/// Structured report: input echo, element table, metrics, solver
/// diagnostics and the L1/L2 sparsity contrast.
pub fn report_value(report: &SynthesisReport, target_label: &str) -> Value {
    let p = &report.params;
    let m = &report.metrics;
    let d = &report.diagnostics;
    let c = &report.contrast;
    let value = json!({
        "input": {
            "target": target_label,
            "reference_elements": report.n_uniform,
            "reference_half_elements": element_rows(report.reference.half_elements()),
            "x_max": p.x_max,
            "step": p.step,
            "samples": p.samples,
            "columns": report.columns,
            "epsilon": p.solver.epsilon,
            "max_iterations": p.solver.max_iterations,
            "convergence_tol": p.solver.convergence_tol,
            "penalty": p.solver.penalty,
            "seed": p.solver.seed,
            "method": p.solver.method,
            "threshold": p.extraction.threshold_rel,
            "merge_gap": p.extraction.merge_gap,
            "floor_db": p.floor_db,
        },
        "elements": {
            "physical_count": report.n_sparse,
            "has_center_element": report.sparse_array.has_center_element(),
            "half_elements": element_rows(report.sparse_array.half_elements()),
        },
        "metrics": {
            "n_uniform": report.n_uniform,
            "n_sparse": report.n_sparse,
            "reduction_percent": report.reduction_percent,
            "peak_sidelobe_db": finite(m.peak_sidelobe_db),
            "target_sidelobe_db": report.target_sidelobe_db.map(finite),
            "main_lobe_peak_u": m.main_lobe_peak_u,
            "rmse_db": m.rmse_db,
            "max_dev_db": m.max_dev_db,
            "extraction_max_dev_db": report.extraction_max_dev_db,
            "n_lobes": m.n_lobes,
        },
        "solver": {
            "method": d.method,
            "converged": d.converged,
            "iterations_used": d.iterations_used,
            "residual_norm": d.residual_norm,
            "relative_residual": d.relative_residual,
            "l1_norm": d.l1_norm,
            "multiplier": d.multiplier,
            "diagnostic": d.diagnostic,
        },
        "contrast": {
            "threshold_rel": c.threshold_rel,
            "l1_surviving": c.l1_surviving,
            "l2_surviving": c.l2_surviving,
            "ratio": finite(c.ratio),
        },
    });
    round_floats(value)
}

/// Pretty-printed [`report_value`] with a trailing newline.
pub fn report_json(report: &SynthesisReport, target_label: &str) -> String {
    let mut s = serde_json::to_string_pretty(&report_value(report, target_label))
        .expect("JSON values always serialize");
    s.push('\n');
    s
}
