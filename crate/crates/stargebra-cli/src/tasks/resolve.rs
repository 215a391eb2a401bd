use clap::{Arg, ArgMatches, Command};
use serde_json::json;
use stargebra::io::{complex_to_json, matrix_from_json, vector_from_json, JsonMatrix, JsonVector};
use stargebra::measures::{pi_p, resolve_normal, vector_measure};

use crate::task::{common_args, parse_json, seed_of, tol_of, Report, Task, TaskResult};

pub struct Resolve;

impl Task for Resolve {
    fn name(&self) -> &'static str {
        "resolve"
    }

    fn command(&self) -> Command {
        common_args(
            Command::new("resolve")
                .about("spectral resolution of a normal matrix: points, projection ranks, reconstruction error")
                .arg(
                    Arg::new("matrix")
                        .long("matrix")
                        .value_name("FILE")
                        .required(true)
                        .help("JSON normal matrix"),
                )
                .arg(
                    Arg::new("vector")
                        .long("vector")
                        .value_name("FILE")
                        .help("JSON vector; adds its spectral measure ⟨P(·)x, x⟩"),
                ),
        )
    }

    fn run(&self, m: &ArgMatches) -> TaskResult {
        let rows: JsonMatrix = parse_json(m.get_one::<String>("matrix").unwrap())?;
        let b = matrix_from_json(&rows)?;
        let res = resolve_normal(&b, tol_of(m), seed_of(m))?;
        let recon = pi_p(&res, |z| z)?;
        let err = (recon - &b).norm();
        let points: Vec<_> = res.points().iter().map(|z| complex_to_json(*z)).collect();
        let ranks = res.ranks();
        let mut out = json!({
            "points": points,
            "ranks": ranks,
            "reconstruction_error": err,
        });
        let mut text = String::from("points (rank):\n");
        for (z, r) in res.points().iter().zip(&ranks) {
            text.push_str(&format!("  {:+.12e} {:+.12e}i  ({r})\n", z.re, z.im));
        }
        text.push_str(&format!("reconstruction error {err:.3e}\n"));
        if let Some(path) = m.get_one::<String>("vector") {
            let entries: JsonVector = parse_json(path)?;
            let x = vector_from_json(&entries)?;
            let vm = vector_measure(&res, &x)?;
            out["vector_measure"] = json!(vm.weights());
            text.push_str("vector measure:");
            for w in vm.weights() {
                text.push_str(&format!(" {w:.12e}"));
            }
            text.push('\n');
        }
        Ok(Report::new(out, text))
    }
}
