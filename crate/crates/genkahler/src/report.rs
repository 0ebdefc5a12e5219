//! Check reports: named residual-vs-threshold rows with provenance anchors,
//! JSON and CSV emission, and deterministic environment stamps.

use serde::{Deserialize, Serialize};

/// One verified identity: a residual measured against a threshold.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckRow {
    pub name: String,
    /// short quotation locating the identity in the source material
    pub anchor: String,
    pub residual: f64,
    pub threshold: f64,
    pub pass: bool,
    /// optional per-mode detail rows (mode, residual)
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub modes: Vec<ModeRow>,
    /// free-form details (dimensions, counts)
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModeRow {
    pub mode: [i64; 4],
    pub residual: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Report {
    pub scenario: String,
    pub tier: String,
    pub seed: u64,
    pub radius: i64,
    pub tolerance: f64,
    pub arithmetic: String,
    pub checks: Vec<CheckRow>,
    pub pass: bool,
}

impl Report {
    pub fn new(scenario: &str, tier: &str, seed: u64, radius: i64, tolerance: f64, exact: bool) -> Self {
        Report {
            scenario: scenario.to_string(),
            tier: tier.to_string(),
            seed,
            radius,
            tolerance,
            arithmetic: if exact { "rational".into() } else { "f64".into() },
            checks: Vec::new(),
            pass: true,
        }
    }

    pub fn push(&mut self, row: CheckRow) {
        self.pass &= row.pass;
        self.checks.push(row);
    }

    pub fn add_check(
        &mut self,
        name: &str,
        anchor: &str,
        residual: f64,
        threshold: f64,
    ) -> &mut CheckRow {
        self.push(CheckRow {
            name: name.to_string(),
            anchor: anchor.to_string(),
            residual,
            threshold,
            pass: residual <= threshold,
            modes: Vec::new(),
            notes: Vec::new(),
        });
        self.checks.last_mut().expect("just pushed")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One CSV row per (check, mode) pair; checks without per-mode detail
    /// emit a single row with an empty mode column.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("check,anchor,mode,residual,threshold,pass\n");
        for c in &self.checks {
            if c.modes.is_empty() {
                out.push_str(&format!(
                    "{},\"{}\",,{:e},{:e},{}\n",
                    c.name, c.anchor, c.residual, c.threshold, c.pass
                ));
            } else {
                for m in &c.modes {
                    out.push_str(&format!(
                        "{},\"{}\",{} {} {} {},{:e},{:e},{}\n",
                        c.name,
                        c.anchor,
                        m.mode[0],
                        m.mode[1],
                        m.mode[2],
                        m.mode[3],
                        m.residual,
                        c.threshold,
                        m.residual <= c.threshold
                    ));
                }
            }
        }
        out
    }

    /// Fixed-width table for terminal output.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "scenario {}  tier {}  seed {}  radius {}  tol {:.1e}  arithmetic {}\n",
            self.scenario, self.tier, self.seed, self.radius, self.tolerance, self.arithmetic
        ));
        out.push_str(&format!(
            "{:<34} {:>12} {:>10}  {}\n",
            "check", "residual", "threshold", "status"
        ));
        for c in &self.checks {
            out.push_str(&format!(
                "{:<34} {:>12.3e} {:>10.1e}  {}\n",
                c.name,
                c.residual,
                c.threshold,
                if c.pass { "pass" } else { "FAIL" }
            ));
        }
        out.push_str(&format!(
            "overall: {} ({} checks)\n",
            if self.pass { "pass" } else { "FAIL" },
            self.checks.len()
        ));
        out
    }
}

/// Renders a real matrix as CSV (used for Chevalley/Gram matrix exports).
pub fn matrix_csv(m: &nalgebra::DMatrix<f64>) -> String {
    let mut out = String::new();
    for r in 0..m.nrows() {
        let row: Vec<String> = (0..m.ncols()).map(|c| format!("{}", m[(r, c)])).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}
