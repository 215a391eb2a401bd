use clap::{Arg, ArgMatches, Command};
use serde_json::json;
use stargebra::evolution::{ivp_residual, Propagator, SelfAdjointModel};
use stargebra::io::{matrix_from_json, vector_from_json, vector_to_json, JsonMatrix, JsonVector};

use crate::task::{common_args, parse_json, tol_of, CliError, Report, Task, TaskResult};

pub struct Evolve;

const IVP_STEP: f64 = 1e-4;

impl Task for Evolve {
    fn name(&self) -> &'static str {
        "evolve"
    }

    fn command(&self) -> Command {
        common_args(
            Command::new("evolve")
                .about("one-parameter unitary group U_t = exp(−ita): state table with norm deviation and generator residual")
                .arg(
                    Arg::new("a")
                        .long("a")
                        .value_name("FILE")
                        .required(true)
                        .help("JSON Hermitian matrix (the generator)"),
                )
                .arg(
                    Arg::new("x")
                        .long("x")
                        .value_name("FILE")
                        .required(true)
                        .help("JSON initial vector"),
                )
                .arg(
                    Arg::new("times")
                        .long("times")
                        .value_name("START:END:STEP")
                        .required(true)
                        .help("time grid, e.g. 0:10:0.1"),
                ),
        )
    }

    fn run(&self, m: &ArgMatches) -> TaskResult {
        let rows: JsonMatrix = parse_json(m.get_one::<String>("a").unwrap())?;
        let a = SelfAdjointModel::new(matrix_from_json(&rows)?, tol_of(m))?;
        let entries: JsonVector = parse_json(m.get_one::<String>("x").unwrap())?;
        let x = vector_from_json(&entries)?;
        let times = parse_times(m.get_one::<String>("times").unwrap())?;

        let prop = Propagator::new(&a)?;
        let norm0 = x.norm();
        let mut table = Vec::new();
        let mut text = String::from("t  components  norm_deviation  ivp_residual\n");
        for t in times {
            let y = prop.apply(t, &x)?;
            let deviation = (y.norm() - norm0).abs();
            let residual = ivp_residual(&a, &x, t, IVP_STEP)?;
            text.push_str(&format!("{t:.6}  "));
            for z in y.iter() {
                text.push_str(&format!("{:+.6e}{:+.6e}i ", z.re, z.im));
            }
            text.push_str(&format!(" {deviation:.3e}  {residual:.3e}\n"));
            table.push(json!({
                "t": t,
                "state": vector_to_json(&y),
                "norm_deviation": deviation,
                "ivp_residual": residual,
            }));
        }
        Ok(Report::new(json!({ "ivp_step": IVP_STEP, "rows": table }), text))
    }
}

fn parse_times(spec: &str) -> Result<Vec<f64>, CliError> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(CliError::Usage(format!(
            "--times expects START:END:STEP, got {spec}"
        )));
    }
    let parse = |s: &str| {
        s.parse::<f64>()
            .map_err(|_| CliError::Usage(format!("not a number in --times: {s}")))
    };
    let (start, end, step) = (parse(parts[0])?, parse(parts[1])?, parse(parts[2])?);
    if step <= 0.0 || end < start {
        return Err(CliError::Usage(
            "--times needs END ≥ START and STEP > 0".into(),
        ));
    }
    let count = ((end - start) / step).floor() as usize + 1;
    Ok((0..count).map(|i| start + step * i as f64).collect())
}
