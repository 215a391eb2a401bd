use clap::{Arg, ArgMatches, Command};
use num_complex::Complex64;
use serde_json::json;
use stargebra::io::{matrix_from_json, matrix_to_json, JsonMatrix, RationalSpec};
use stargebra::spectral;

use crate::task::{common_args, parse_json, seed_of, tol_of, CliError, Report, Task, TaskResult};

pub struct Calculus;

const NAMED: &[&str] = &[
    "exp",
    "cos",
    "sin",
    "log",
    "sqrt-series",
    "positive-sqrt",
    "abs",
    "polar",
    "orth",
    "reflection-split",
    "cayley",
];

impl Task for Calculus {
    fn name(&self) -> &'static str {
        "calculus"
    }

    fn command(&self) -> Command {
        common_args(
            Command::new("calculus")
                .about("rational and continuous functional calculus, square roots, polar and orthogonal decompositions")
                .arg(
                    Arg::new("matrix")
                        .long("matrix")
                        .value_name("FILE")
                        .required(true)
                        .help("JSON matrix to apply the function to"),
                )
                .arg(
                    Arg::new("rational")
                        .long("rational")
                        .value_name("FILE")
                        .help("rational function {\"num\": [[re,im],...], \"den\": [...]}, ascending degree"),
                )
                .arg(
                    Arg::new("apply")
                        .long("apply")
                        .value_name("NAME")
                        .value_parser(NAMED.to_vec())
                        .help("named operation"),
                )
                .arg(
                    Arg::new("mu")
                        .long("mu")
                        .value_name("FLOAT")
                        .value_parser(clap::value_parser!(f64))
                        .help("Cayley parameter (required for --apply cayley; must exceed the spectral radius)"),
                ),
        )
    }

    fn run(&self, m: &ArgMatches) -> TaskResult {
        let rows: JsonMatrix = parse_json(m.get_one::<String>("matrix").unwrap())?;
        let a = matrix_from_json(&rows)?;
        let tol = tol_of(m);
        let seed = seed_of(m);

        if let Some(path) = m.get_one::<String>("rational") {
            let spec: RationalSpec = parse_json(path)?;
            let r = spec.build()?;
            let out = spectral::rational_apply(&a, &r, tol)?;
            return Ok(single("rational", &out));
        }

        let Some(name) = m.get_one::<String>("apply") else {
            return Err(CliError::Usage(
                "calculus needs either --rational FILE or --apply NAME".into(),
            ));
        };
        match name.as_str() {
            "exp" => Ok(single("exp", &spectral::functional_calculus(&a, |z| z.exp(), tol, seed)?)),
            "cos" => Ok(single("cos", &spectral::functional_calculus(&a, |z| z.cos(), tol, seed)?)),
            "sin" => Ok(single("sin", &spectral::functional_calculus(&a, |z| z.sin(), tol, seed)?)),
            "log" => Ok(single(
                "log",
                &spectral::functional_calculus(
                    &a,
                    |z| {
                        if z == Complex64::ZERO {
                            Complex64::new(f64::NAN, 0.0)
                        } else {
                            z.ln()
                        }
                    },
                    tol,
                    seed,
                )?,
            )),
            "sqrt-series" => Ok(single("sqrt_series", &spectral::sqrt_series(&a)?)),
            "positive-sqrt" => Ok(single("positive_sqrt", &spectral::positive_sqrt(&a, tol)?)),
            "abs" => Ok(single("abs", &spectral::abs_value(&a, tol)?)),
            "polar" => {
                let (u, p) = spectral::polar_factorize(&a, tol)?;
                Ok(pair("u", &u, "p", &p))
            }
            "orth" => {
                let (plus, minus) = spectral::orth_decompose(&a, tol)?;
                Ok(pair("plus", &plus, "minus", &minus))
            }
            "reflection-split" => {
                let (p, q) = spectral::reflection_split(&a, tol)?;
                Ok(pair("p", &p, "q", &q))
            }
            "cayley" => {
                let mu = m.get_one::<f64>("mu").copied().ok_or_else(|| {
                    CliError::Usage("--apply cayley requires --mu FLOAT".into())
                })?;
                Ok(single("cayley", &spectral::cayley_bounded(&a, mu, tol)?))
            }
            other => Err(CliError::Usage(format!("unknown operation {other}"))),
        }
    }
}

fn single(label: &str, m: &stargebra::CMat) -> Report {
    let json = json!({ label: matrix_to_json(m) });
    Report::new(json, format_matrix(label, m))
}

fn pair(l1: &str, m1: &stargebra::CMat, l2: &str, m2: &stargebra::CMat) -> Report {
    let json = json!({ l1: matrix_to_json(m1), l2: matrix_to_json(m2) });
    let text = format!("{}{}", format_matrix(l1, m1), format_matrix(l2, m2));
    Report::new(json, text)
}

fn format_matrix(label: &str, m: &stargebra::CMat) -> String {
    let mut s = format!("{label}:\n");
    for i in 0..m.nrows() {
        s.push_str("  ");
        for j in 0..m.ncols() {
            let z = m[(i, j)];
            s.push_str(&format!("{:+.6e}{:+.6e}i  ", z.re, z.im));
        }
        s.push('\n');
    }
    s
}
