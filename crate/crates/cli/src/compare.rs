//! Rendering of formula discrepancy and overlap reports.

use std::fmt::Write as _;

use qmg_core::formulas::{DiscrepancyReport, OverlapReport};
use serde::Serialize;

use crate::error::CliResult;
use crate::output::fmt_float;

pub const COMPARE_HEADER: &str = "formula,p,mu,gamma,formula_value,simulated_value,abs_diff";
pub const OVERLAP_HEADER: &str = "p,gamma,depolarizing,bit_phase_flip,abs_diff";

#[derive(Serialize)]
struct ComparePoint {
    p: f64,
    mu: f64,
    gamma: f64,
    formula_value: f64,
    simulated_value: f64,
    abs_diff: f64,
}

#[derive(Serialize)]
struct CompareJson {
    formula: String,
    gamma: f64,
    p_points: usize,
    mu_points: usize,
    tolerance: f64,
    max_diff: f64,
    verdict: &'static str,
    points: Vec<ComparePoint>,
}

pub fn compare_csv(r: &DiscrepancyReport) -> String {
    let mut out = String::new();
    out.push_str(COMPARE_HEADER);
    out.push('\n');
    for pt in &r.points {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.formula,
            fmt_float(pt.p),
            fmt_float(pt.mu),
            fmt_float(pt.gamma),
            fmt_float(pt.formula),
            fmt_float(pt.simulated),
            fmt_float(pt.abs_diff)
        );
    }
    out
}

pub fn compare_json(r: &DiscrepancyReport) -> CliResult<String> {
    let doc = CompareJson {
        formula: r.formula.to_string(),
        gamma: r.gamma,
        p_points: r.p_points,
        mu_points: r.mu_points,
        tolerance: r.tolerance,
        max_diff: r.max_diff,
        verdict: r.verdict.as_str(),
        points: r
            .points
            .iter()
            .map(|pt| ComparePoint {
                p: pt.p,
                mu: pt.mu,
                gamma: pt.gamma,
                formula_value: pt.formula,
                simulated_value: pt.simulated,
                abs_diff: pt.abs_diff,
            })
            .collect(),
    };
    Ok(serde_json::to_string_pretty(&doc)? + "\n")
}

/// One-line summary for stderr.
pub fn compare_summary(r: &DiscrepancyReport) -> String {
    let worst = r
        .points
        .iter()
        .max_by(|a, b| a.abs_diff.total_cmp(&b.abs_diff));
    let at = worst
        .map(|w| format!(" at p={} mu={}", w.p, w.mu))
        .unwrap_or_default();
    format!(
        "{}: max |formula - simulation| = {:.6e}{at}; tolerance {:.0e}; verdict {}",
        r.formula,
        r.max_diff,
        r.tolerance,
        r.verdict.as_str()
    )
}

#[derive(Serialize)]
struct OverlapJson {
    gamma: f64,
    mu: f64,
    max_diff: f64,
    points: Vec<OverlapRow>,
}

#[derive(Serialize)]
struct OverlapRow {
    p: f64,
    depolarizing: f64,
    bit_phase_flip: f64,
    abs_diff: f64,
}

pub fn overlap_csv(r: &OverlapReport) -> String {
    let mut out = String::from(OVERLAP_HEADER);
    out.push('\n');
    for pt in &r.points {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            fmt_float(pt.p),
            fmt_float(r.gamma),
            fmt_float(pt.depolarizing),
            fmt_float(pt.bit_phase_flip),
            fmt_float(pt.abs_diff)
        );
    }
    out
}

pub fn overlap_json(r: &OverlapReport) -> CliResult<String> {
    let doc = OverlapJson {
        gamma: r.gamma,
        mu: 1.0,
        max_diff: r.max_diff,
        points: r
            .points
            .iter()
            .map(|pt| OverlapRow {
                p: pt.p,
                depolarizing: pt.depolarizing,
                bit_phase_flip: pt.bit_phase_flip,
                abs_diff: pt.abs_diff,
            })
            .collect(),
    };
    Ok(serde_json::to_string_pretty(&doc)? + "\n")
}

#[cfg(test)]
mod tests {
    use super::*;
    use qmg_core::formulas::{compare, overlap_check, FormulaId};
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn compare_renderings() {
        let r = compare(FormulaId::PhaseFlip, 2, 2, FRAC_PI_2).unwrap();
        let csv = compare_csv(&r);
        assert_eq!(csv.lines().count(), 5);
        assert!(csv.starts_with(COMPARE_HEADER));
        let v: serde_json::Value = serde_json::from_str(&compare_json(&r).unwrap()).unwrap();
        assert_eq!(v["verdict"], "consistent");
        assert_eq!(v["points"].as_array().unwrap().len(), 4);
        assert!(compare_summary(&r).contains("verdict consistent"));
    }

    #[test]
    fn overlap_renderings() {
        let r = overlap_check(FRAC_PI_2, 3).unwrap();
        assert_eq!(overlap_csv(&r).lines().count(), 4);
        let v: serde_json::Value = serde_json::from_str(&overlap_json(&r).unwrap()).unwrap();
        assert_eq!(v["points"][0]["abs_diff"], 0.0);
    }
}
