//! Experiment reports and their JSON/CSV renderings.

use std::collections::BTreeMap;
use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::config::{ExperimentConfig, ExperimentKind};
use super::estimate::{Diagnostics, Direction, EstimateWithCI, Verdict};

/// Numeric table with named columns.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table { columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[i]).collect())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SideDiagnostics {
    pub lhs: Diagnostics,
    pub rhs: Diagnostics,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub experiment: ExperimentKind,
    pub config: ExperimentConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub direction: Option<Direction>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lhs: Option<EstimateWithCI>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rhs: Option<EstimateWithCI>,
    pub verdict: Verdict,
    pub diagnostics: SideDiagnostics,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub values: BTreeMap<String, serde_json::Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Table>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_s: Option<f64>,
}

impl ExperimentReport {
    pub fn new(config: &ExperimentConfig, verdict: Verdict) -> Self {
        ExperimentReport {
            experiment: config.experiment,
            config: config.clone(),
            direction: None,
            lhs: None,
            rhs: None,
            verdict,
            diagnostics: SideDiagnostics::default(),
            values: BTreeMap::new(),
            table: None,
            wall_time_s: None,
        }
    }

    pub fn value(&mut self, key: &str, v: impl Serialize) {
        self.values.insert(key.to_string(), serde_json::to_value(v).expect("serializable value"));
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    /// The table if present, otherwise one summary row.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        if let Some(t) = &self.table {
            out.push_str(&t.columns.join(","));
            out.push('\n');
            for r in &t.rows {
                let cells: Vec<String> = r.iter().map(|x| x.to_string()).collect();
                out.push_str(&cells.join(","));
                out.push('\n');
            }
            return out;
        }
        out.push_str("experiment,lhs_mean,lhs_stderr,lhs_ci_low,lhs_ci_high,rhs_mean,rhs_stderr,rhs_ci_low,rhs_ci_high,verdict\n");
        let cells = |e: &Option<EstimateWithCI>| match e {
            Some(e) => format!("{},{},{},{}", e.mean, e.stderr, e.ci_low, e.ci_high),
            None => ",,,".to_string(),
        };
        let verdict = serde_json::to_value(self.verdict).unwrap();
        let _ = writeln!(out, "{},{},{},{}", self.experiment.name(), cells(&self.lhs), cells(&self.rhs), verdict.as_str().unwrap());
        out
    }
}
