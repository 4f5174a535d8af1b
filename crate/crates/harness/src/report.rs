//! Stage-by-stage verification reports.

use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StageStatus {
    Pass,
    Fail,
    /// Not run to completion because the node budget ran out.
    Skipped,
}

impl fmt::Display for StageStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StageStatus::Pass => "pass",
            StageStatus::Fail => "fail",
            StageStatus::Skipped => "skipped",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stage {
    pub name: String,
    pub status: StageStatus,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub instance: String,
    pub stages: Vec<Stage>,
    /// Serialized data for the first disagreement, if any.
    pub counterexample: Option<String>,
}

impl VerificationReport {
    pub fn new(instance: impl Into<String>) -> Self {
        VerificationReport {
            instance: instance.into(),
            stages: Vec::new(),
            counterexample: None,
        }
    }

    pub fn record(&mut self, name: &str, status: StageStatus, detail: impl Into<String>) {
        self.stages.push(Stage {
            name: name.to_string(),
            status,
            detail: detail.into(),
        });
    }

    /// Records a pass or a fail; the first failure's detail becomes the
    /// counterexample unless one is already set.
    pub fn check(&mut self, name: &str, ok: bool, detail: impl Into<String>) {
        let detail = detail.into();
        if !ok && self.counterexample.is_none() {
            self.counterexample = Some(format!("{name}: {detail}"));
        }
        self.record(name, if ok { StageStatus::Pass } else { StageStatus::Fail }, detail);
    }

    pub fn stage(&self, name: &str) -> Option<&Stage> {
        self.stages.iter().find(|s| s.name == name)
    }

    /// No stage failed. Skipped stages do not count against the report.
    pub fn passed(&self) -> bool {
        self.stages.iter().all(|s| s.status != StageStatus::Fail)
    }

    /// The same report keeping only the named stages. The counterexample
    /// survives only if one of the kept stages failed.
    pub fn restricted(&self, names: &[&str]) -> Self {
        let stages: Vec<Stage> = self.stages.iter().filter(|s| names.contains(&s.name.as_str())).cloned().collect();
        let failed = stages.iter().any(|s| s.status == StageStatus::Fail);
        VerificationReport {
            instance: self.instance.clone(),
            stages,
            counterexample: self.counterexample.clone().filter(|_| failed),
        }
    }

    pub fn to_text(&self) -> String {
        let width = self.stages.iter().map(|s| s.name.len()).max().unwrap_or(0);
        let mut out = format!("instance: {}\n", self.instance);
        for s in &self.stages {
            out.push_str(&format!("  {:<7} {:<width$}  {}\n", s.status.to_string(), s.name, s.detail));
        }
        if let Some(c) = &self.counterexample {
            out.push_str("  counterexample:\n");
            for line in c.lines() {
                out.push_str(&format!("    {line}\n"));
            }
        }
        out.push_str(&format!("  verdict: {}\n", if self.passed() { "pass" } else { "fail" }));
        out
    }

    /// One `key=value` per line; newlines inside values are escaped as `\n`.
    pub fn to_key_value(&self) -> String {
        let esc = |s: &str| s.replace('\\', "\\\\").replace('\n', "\\n");
        let mut out = format!("instance={}\n", esc(&self.instance));
        for s in &self.stages {
            out.push_str(&format!("stage.{}={}\n", s.name, s.status));
            out.push_str(&format!("stage.{}.detail={}\n", s.name, esc(&s.detail)));
        }
        if let Some(c) = &self.counterexample {
            out.push_str(&format!("counterexample={}\n", esc(c)));
        }
        out.push_str(&format!("verdict={}\n", if self.passed() { "pass" } else { "fail" }));
        out
    }
}
