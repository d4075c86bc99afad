//! Run reports for the reproduction scenarios.

use std::fmt::Write as _;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StepVerdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub description: String,
    pub verdict: StepVerdict,
    /// Human-readable summary of the certificate behind the verdict.
    pub certificate: String,
    /// Wall time in milliseconds; the only field that varies between runs.
    pub wall_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunReport {
    pub schema_version: u32,
    pub scenario: String,
    pub steps: Vec<Step>,
    pub overall: StepVerdict,
}

impl RunReport {
    pub fn new(scenario: impl Into<String>) -> Self {
        RunReport {
            schema_version: SCHEMA_VERSION,
            scenario: scenario.into(),
            steps: Vec::new(),
            overall: StepVerdict::Pass,
        }
    }

    pub fn push(&mut self, step: Step) {
        if step.verdict == StepVerdict::Fail {
            self.overall = StepVerdict::Fail;
        }
        self.steps.push(step);
    }

    /// Times `f` and records its outcome. An `Err` becomes a failed step
    /// whose certificate is the error message.
    pub fn run(&mut self, description: &str, f: impl FnOnce() -> Result<(bool, String)>) {
        let start = Instant::now();
        let (ok, certificate) = match f() {
            Ok(r) => r,
            Err(e) => (false, format!("error: {e}")),
        };
        self.push(Step {
            description: description.to_string(),
            verdict: if ok {
                StepVerdict::Pass
            } else {
                StepVerdict::Fail
            },
            certificate,
            wall_ms: start.elapsed().as_millis() as u64,
        });
    }

    pub fn passed(&self) -> bool {
        self.overall == StepVerdict::Pass
    }

    /// `overall` agrees with the steps.
    pub fn is_consistent(&self) -> bool {
        let all = self.steps.iter().all(|s| s.verdict == StepVerdict::Pass);
        all == (self.overall == StepVerdict::Pass)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let r: RunReport =
            serde_json::from_str(text).map_err(|e| Error::parse(e.line(), e.to_string()))?;
        if r.schema_version != SCHEMA_VERSION {
            return Err(Error::parse(
                1,
                format!("unsupported schema version {}", r.schema_version),
            ));
        }
        if !r.is_consistent() {
            return Err(Error::parse(1, "overall verdict disagrees with steps"));
        }
        Ok(r)
    }

    /// Plain-text rendering without timings, so it is stable across runs.
    pub fn to_text(&self) -> String {
        let mut s = format!("scenario {}\n", self.scenario);
        for st in &self.steps {
            let tag = match st.verdict {
                StepVerdict::Pass => "pass",
                StepVerdict::Fail => "FAIL",
            };
            let _ = writeln!(s, "[{tag}] {}: {}", st.description, st.certificate);
        }
        let _ = writeln!(
            s,
            "overall: {}",
            if self.passed() { "pass" } else { "FAIL" }
        );
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overall_tracks_steps() {
        let mut r = RunReport::new("demo");
        r.run("ok", || Ok((true, "fine".into())));
        assert!(r.passed());
        r.run("bad", || Err(Error::ZeroVector));
        assert!(!r.passed());
        assert!(r.is_consistent());
        assert!(r.steps[1].certificate.starts_with("error:"));
    }

    #[test]
    fn json_round_trip() {
        let mut r = RunReport::new("demo");
        r.run("ok", || Ok((true, "rank 2 of 3".into())));
        let text = r.to_json();
        let back = RunReport::from_json(&text).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.to_json(), text);

        let tampered = text.replace("\"overall\": \"pass\"", "\"overall\": \"fail\"");
        assert!(RunReport::from_json(&tampered).is_err());
    }

    #[test]
    fn text_has_no_timings() {
        let mut r = RunReport::new("demo");
        r.run("ok", || Ok((true, "x".into())));
        assert_eq!(r.to_text(), "scenario demo\n[pass] ok: x\noverall: pass\n");
    }
}
