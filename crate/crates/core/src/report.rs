use std::fmt;
use std::time::{Duration, Instant};

/// Outcome of one verification instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub suite: String,
    /// Instance parameters as ordered `(flag, value)` pairs.
    pub params: Vec<(String, String)>,
    pub passed: bool,
    /// First failing location and the two sides in canonical text.
    pub counterexample: Option<String>,
    pub elapsed: Duration,
}

impl VerifyReport {
    pub fn new(suite: &str, params: &[(&str, String)]) -> VerifyReport {
        VerifyReport {
            suite: suite.to_string(),
            params: params.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
            passed: true,
            counterexample: None,
            elapsed: Duration::ZERO,
        }
    }

    /// Records a failure; only the first counterexample is kept.
    pub fn fail(&mut self, what: impl Into<String>) {
        if self.passed {
            self.counterexample = Some(what.into());
        }
        self.passed = false;
    }

    /// Compares two displayable values and records a mismatch.
    pub fn expect_eq<T: PartialEq + fmt::Display>(&mut self, location: &str, lhs: &T, rhs: &T) -> bool {
        if lhs == rhs {
            return true;
        }
        self.fail(format!("{location}: lhs = {lhs}; rhs = {rhs}"));
        false
    }

    pub fn timed<F: FnOnce(&mut VerifyReport) -> crate::Result<()>>(mut self, f: F) -> crate::Result<VerifyReport> {
        let start = Instant::now();
        f(&mut self)?;
        self.elapsed = start.elapsed();
        Ok(self)
    }

    /// Shell command reproducing this instance with the `sqh` binary.
    pub fn reproducer(&self) -> String {
        let mut s = format!("sqh verify --suite {}", self.suite);
        for (k, v) in &self.params {
            s.push_str(&format!(" --{k} {v}"));
        }
        s
    }

    pub fn instance_key(&self) -> String {
        let parts: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        format!("{}[{}]", self.suite, parts.join(","))
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", if self.passed { "PASS" } else { "FAIL" }, self.instance_key())?;
        if let Some(c) = &self.counterexample {
            write!(f, "\n  {c}\n  reproduce: {}", self.reproducer())?;
        }
        Ok(())
    }
}
