use clap::{Arg, ArgMatches, Command};
use serde_json::json;
use stargebra::algebra::build_algebra;
use stargebra::io::{matrix_to_json, vector_to_json, AlgebraSpec, FunctionalSpec};
use stargebra::states::{classify_state, gns, variation};

use crate::task::{common_args, parse_json, tol_of, Report, Task, TaskResult};

pub struct Gns;

impl Task for Gns {
    fn name(&self) -> &'static str {
        "gns"
    }

    fn command(&self) -> Command {
        common_args(
            Command::new("gns")
                .about("GNS representation of a positive functional: quotient, representation matrices, cyclic vector, purity")
                .arg(
                    Arg::new("algebra")
                        .long("algebra")
                        .value_name("FILE")
                        .required(true)
                        .help("algebra spec {\"ambient_dim\": n, \"generators\": [...]}"),
                )
                .arg(
                    Arg::new("functional")
                        .long("functional")
                        .value_name("FILE")
                        .required(true)
                        .help("functional spec {\"F\": [[[re,im],...]]} with φ(a) = tr(F·a)"),
                ),
        )
    }

    fn run(&self, m: &ArgMatches) -> TaskResult {
        let tol = tol_of(m);
        let spec: AlgebraSpec = parse_json(m.get_one::<String>("algebra").unwrap())?;
        let algebra = build_algebra(&spec.generators()?, spec.ambient_dim, tol)?;
        let fspec: FunctionalSpec = parse_json(m.get_one::<String>("functional").unwrap())?;
        let phi = fspec.build()?;

        let result = gns(&phi, &algebra, tol)?;
        let v = variation(&phi, &algebra)?;
        let report = classify_state(&phi, &algebra, tol)?;

        let rep_json: Vec<_> = result.rep.iter().map(matrix_to_json).collect();
        let out = json!({
            "quotient_dim": result.quotient_dim,
            "rep": rep_json,
            "cyclic_vector": vector_to_json(&result.cyclic_vector),
            "variation": v,
            "is_state": report.is_state,
            "is_pure": report.is_pure,
            "commutant_dim": report.commutant_dim,
        });
        let text = format!(
            "quotient dimension {}\nvariation {v:.12e}\nstate: {}\npure: {} (commutant dimension {})\n",
            result.quotient_dim, report.is_state, report.is_pure, report.commutant_dim
        );
        Ok(Report::new(out, text))
    }
}
