//! Structured run reports for the command-line front end.
//!
//! Reports are assembled in a fixed order and rendered without timestamps,
//! so identical commands (and seeds) produce byte-identical bodies.

use serde::Serialize;

/// Exit codes used across the command-line interface.
pub mod exit_code {
    pub const SUCCESS: i32 = 0;
    /// Evaluation failed (chart breakdown, overflow).
    pub const EVALUATION: i32 = 1;
    /// A hard validation check failed.
    pub const VALIDATION: i32 = 2;
    /// Malformed input (file or arguments).
    pub const PARSE: i32 = 3;
}

/// One hard check: pass/fail with the measured residual.
#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckResult {
    pub fn new(name: &str, residual: f64, tolerance: f64) -> Self {
        CheckResult {
            name: name.to_string(),
            passed: residual <= tolerance,
            residual: Some(residual),
            tolerance: Some(tolerance),
            detail: None,
        }
    }

    pub fn with_detail(mut self, detail: String) -> Self {
        self.detail = Some(detail);
        self
    }
}

/// A value that disagrees with its published reference form. These are
/// warnings: the published expressions carry known typos, so mismatches
/// do not fail a run as long as the internal-consistency checks hold.
#[derive(Debug, Clone, Serialize)]
pub struct Discrepancy {
    pub entry: String,
    /// 1-based matrix indices.
    pub i: usize,
    pub j: usize,
    pub paper: f64,
    pub computed: f64,
    pub delta: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs_digest: String,
    pub checks: Vec<CheckResult>,
    pub discrepancies: Vec<Discrepancy>,
    /// Command-specific values (matrices, scan numbers, action value).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub payload: Option<serde_json::Value>,
    pub exit_status: i32,
}

impl RunReport {
    pub fn new(command: String, inputs: &[String]) -> Self {
        RunReport {
            command,
            inputs_digest: format!("{:016x}", fnv1a(inputs)),
            checks: Vec::new(),
            discrepancies: Vec::new(),
            payload: None,
            exit_status: exit_code::SUCCESS,
        }
    }

    pub fn push_check(&mut self, check: CheckResult) {
        if !check.passed {
            self.exit_status = exit_code::VALIDATION;
        }
        self.checks.push(check);
    }

    pub fn push_discrepancy(&mut self, d: Discrepancy) {
        self.discrepancies.push(d);
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// Human-readable body.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("command: {}\n", self.command));
        out.push_str(&format!("inputs:  {}\n", self.inputs_digest));
        for c in &self.checks {
            let status = if c.passed { "pass" } else { "FAIL" };
            let mut line = format!("  [{status}] {name}", name = c.name);
            if let Some(r) = c.residual {
                line.push_str(&format!("  residual {r:.3e}"));
            }
            if let Some(t) = c.tolerance {
                line.push_str(&format!(" (tol {t:.1e})"));
            }
            if let Some(d) = &c.detail {
                line.push_str(&format!("  {d}"));
            }
            out.push_str(&line);
            out.push('\n');
        }
        for d in &self.discrepancies {
            out.push_str(&format!(
                "  [warn] {entry} P({i},{j}): reference {paper:+.9e}, computed {computed:+.9e}, |delta| {delta:.3e}\n",
                entry = d.entry,
                i = d.i,
                j = d.j,
                paper = d.paper,
                computed = d.computed,
                delta = d.delta,
            ));
        }
        out.push_str(&format!("exit: {}\n", self.exit_status));
        out
    }

    /// Machine-readable body with the same content.
    pub fn render_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }
}

/// FNV-1a over the canonicalized inputs; enough to spot that two reports
/// came from different inputs.
fn fnv1a(parts: &[String]) -> u64 {
    let mut hash = 0xcbf29ce484222325u64;
    for part in parts {
        for b in part.as_bytes() {
            hash ^= *b as u64;
            hash = hash.wrapping_mul(0x100000001b3);
        }
        hash ^= 0x1e;
        hash = hash.wrapping_mul(0x100000001b3);
    }
    hash
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failing_check_sets_validation_exit() {
        let mut r = RunReport::new("test".into(), &["a".into()]);
        r.push_check(CheckResult::new("ok", 1e-14, 1e-12));
        assert_eq!(r.exit_status, exit_code::SUCCESS);
        r.push_check(CheckResult::new("bad", 1.0, 1e-12));
        assert_eq!(r.exit_status, exit_code::VALIDATION);
        assert!(!r.all_passed());
    }

    #[test]
    fn discrepancies_do_not_fail_the_run() {
        let mut r = RunReport::new("test".into(), &[]);
        r.push_discrepancy(Discrepancy {
            entry: "sb2_su2".into(),
            i: 1,
            j: 3,
            paper: -1.0,
            computed: 1.0,
            delta: 2.0,
        });
        assert_eq!(r.exit_status, exit_code::SUCCESS);
    }

    #[test]
    fn rendering_is_deterministic() {
        let build = || {
            let mut r = RunReport::new("scan --seed 7".into(), &["su2_sb2".into()]);
            r.push_check(CheckResult::new("jacobi", 3.2e-9, 1e-6));
            r
        };
        assert_eq!(build().render_text(), build().render_text());
        assert_eq!(build().render_json(), build().render_json());
    }

    #[test]
    fn digest_distinguishes_inputs() {
        let a = RunReport::new("x".into(), &["one".into()]);
        let b = RunReport::new("x".into(), &["two".into()]);
        assert_ne!(a.inputs_digest, b.inputs_digest);
    }
}
