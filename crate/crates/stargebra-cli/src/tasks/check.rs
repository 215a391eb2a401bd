use clap::{ArgMatches, Command};
use serde_json::json;
use stargebra::suite::{run_all, SuiteConfig};

use crate::task::{common_args, seed_of, Report, Task, TaskResult};

pub struct Check;

impl Task for Check {
    fn name(&self) -> &'static str {
        "check"
    }

    fn command(&self) -> Command {
        common_args(Command::new("check").about(
            "run the full invariant suite; reports per-property residual maxima and pass/fail counts",
        ))
    }

    fn run(&self, m: &ArgMatches) -> TaskResult {
        let cfg = SuiteConfig { seed: seed_of(m) };
        let outcomes = run_all(&cfg);
        let passed = outcomes.iter().filter(|o| o.passed).count();
        let failed = outcomes.len() - passed;

        let mut text = String::new();
        for o in &outcomes {
            text.push_str(&format!(
                "{} {:34} cases {:4}  worst residual {:.3e}  tol {:.3e}\n",
                if o.passed { "PASS" } else { "FAIL" },
                o.name,
                o.cases,
                o.worst_residual,
                o.tolerance
            ));
        }
        text.push_str(&format!("{passed} passed, {failed} failed\n"));

        let out = json!({
            "seed": cfg.seed,
            "properties": outcomes,
            "passed": passed,
            "failed": failed,
        });
        let mut report = Report::new(out, text);
        if failed > 0 {
            report.exit = 3;
        }
        Ok(report)
    }
}
