use clap::{Arg, ArgMatches, Command};
use serde_json::json;
use stargebra::algebra::build_algebra;
use stargebra::commutant::{bicommutant, commutant, is_maximal_commutative, wstar};
use stargebra::io::{matrix_from_json, JsonMatrix};

use crate::task::{common_args, parse_json, tol_of, Report, Task, TaskResult};

pub struct Commutant;

impl Task for Commutant {
    fn name(&self) -> &'static str {
        "commutant"
    }

    fn command(&self) -> Command {
        common_args(
            Command::new("commutant")
                .about("dimensions of S′, S″, W*(S) and the maximal-commutativity verdict")
                .arg(
                    Arg::new("matrices")
                        .long("matrices")
                        .value_name("FILE")
                        .required(true)
                        .help("JSON array of square matrices"),
                ),
        )
    }

    fn run(&self, m: &ArgMatches) -> TaskResult {
        let raw: Vec<JsonMatrix> = parse_json(m.get_one::<String>("matrices").unwrap())?;
        let mats: Vec<_> = raw
            .iter()
            .map(matrix_from_json)
            .collect::<Result<Vec<_>, _>>()?;
        let n = mats
            .first()
            .map(|a| a.nrows())
            .ok_or_else(|| crate::task::CliError::Usage("matrix list is empty".into()))?;
        let prime = commutant(&mats, n)?;
        let double = bicommutant(&mats, n)?;
        let w = wstar(&mats, n)?;
        // Maximal commutativity is a question about the generated
        // algebra (the commutant only ever sees that algebra anyway);
        // the verdict is null when it is not commutative.
        let algebra = build_algebra(&mats, n, tol_of(m))?;
        let maximal: Option<bool> = if algebra.is_commutative() {
            Some(is_maximal_commutative(&algebra)?)
        } else {
            None
        };
        let out = json!({
            "ambient_dim": n,
            "commutant_dim": prime.dim(),
            "bicommutant_dim": double.dim(),
            "wstar_dim": w.dim(),
            "maximal_commutative": maximal,
        });
        let text = format!(
            "S′ dimension {}\nS″ dimension {}\nW*(S) dimension {}\nmaximal commutative: {}\n",
            prime.dim(),
            double.dim(),
            w.dim(),
            match maximal {
                Some(true) => "yes",
                Some(false) => "no",
                None => "not commutative",
            }
        );
        Ok(Report::new(out, text))
    }
}
