//! The invariant suite: every property the toolkit promises, behind one
//! trait, registered by name, runnable in bulk (the CLI `check` command)
//! or individually (the acceptance tests). All randomness derives from
//! one caller seed, so a run is reproducible end to end.

pub mod checks;
pub mod oracles;

use serde::Serialize;

/// Configuration threaded through every check.
#[derive(Debug, Clone, Copy)]
pub struct SuiteConfig {
    pub seed: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { seed: 42 }
    }
}

impl SuiteConfig {
    /// Per-check seed: the caller seed mixed with the check name, so
    /// checks draw independent, reproducible streams.
    pub fn seed_for(&self, name: &str) -> u64 {
        let mut h = 0xcbf29ce484222325u64;
        for b in name.bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
        h ^ self.seed.wrapping_mul(0x9e3779b97f4a7c15)
    }
}

/// Result of one property check.
#[derive(Debug, Clone, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub cases: usize,
    /// Largest residual observed, paired with the tolerance it was held
    /// against (the pair with the worst residual/tolerance ratio).
    pub worst_residual: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub detail: String,
}

/// Residual meter: feed it (label, residual, tolerance) triples and it
/// keeps the worst ratio.
pub struct Meter {
    cases: usize,
    failures: usize,
    worst: Option<(f64, f64, f64, String)>,
}

impl Meter {
    pub fn new() -> Meter {
        Meter {
            cases: 0,
            failures: 0,
            worst: None,
        }
    }

    pub fn case(&mut self) {
        self.cases += 1;
    }

    /// Record a residual against its tolerance. A zero tolerance means
    /// the value must vanish exactly.
    pub fn check(&mut self, label: &str, residual: f64, tolerance: f64) {
        let ratio = if tolerance > 0.0 {
            residual / tolerance
        } else if residual == 0.0 {
            0.0
        } else {
            f64::INFINITY
        };
        if ratio > 1.0 {
            self.failures += 1;
        }
        let replace = match &self.worst {
            None => true,
            Some((r, _, _, _)) => ratio > *r,
        };
        if replace {
            self.worst = Some((ratio, residual, tolerance, label.to_string()));
        }
    }

    /// Boolean predicate as a 0/1 residual with zero tolerance.
    pub fn require(&mut self, label: &str, ok: bool) {
        self.check(label, if ok { 0.0 } else { 1.0 }, 0.0);
    }

    pub fn outcome(self, name: &str) -> CheckOutcome {
        let (ratio, residual, tolerance, label) = self
            .worst
            .unwrap_or((0.0, 0.0, 0.0, "no residuals recorded".into()));
        CheckOutcome {
            name: name.to_string(),
            cases: self.cases,
            worst_residual: residual,
            tolerance,
            passed: self.failures == 0 && ratio <= 1.0,
            detail: format!("worst: {label} (residual {residual:.3e}, tol {tolerance:.3e})"),
        }
    }
}

impl Default for Meter {
    fn default() -> Self {
        Meter::new()
    }
}

/// One registered property of the toolkit.
pub trait PropertyCheck: Send + Sync {
    fn name(&self) -> &'static str;
    fn run(&self, cfg: &SuiteConfig) -> crate::error::Result<CheckOutcome>;
}

/// All registered checks, acceptance properties first.
pub fn registry() -> Vec<Box<dyn PropertyCheck>> {
    checks::registry()
}

/// Run the full registry in order. A check that errors internally is
/// reported as a failed outcome rather than aborting the suite.
pub fn run_all(cfg: &SuiteConfig) -> Vec<CheckOutcome> {
    registry()
        .iter()
        .map(|check| match check.run(cfg) {
            Ok(outcome) => outcome,
            Err(e) => CheckOutcome {
                name: check.name().to_string(),
                cases: 0,
                worst_residual: f64::INFINITY,
                tolerance: 0.0,
                passed: false,
                detail: format!("errored: {e}"),
            },
        })
        .collect()
}
