use clap::{Arg, ArgMatches, Command};
use serde_json::json;
use stargebra::io::{matrix_from_json, vector_to_json, JsonMatrix};
use stargebra::spectral;

use crate::task::{common_args, parse_json, tol_of, Report, Task, TaskResult};

pub struct Spectrum;

impl Task for Spectrum {
    fn name(&self) -> &'static str {
        "spectrum"
    }

    fn command(&self) -> Command {
        common_args(
            Command::new("spectrum")
                .about("eigenvalues, spectral radius, and the Pták function of a matrix")
                .arg(
                    Arg::new("matrix")
                        .long("matrix")
                        .value_name("FILE")
                        .required(true)
                        .help("JSON matrix, row-major [re,im] pairs"),
                )
                .arg(
                    Arg::new("k")
                        .long("k")
                        .value_name("INT")
                        .value_parser(clap::value_parser!(u32))
                        .help("also report |a^(2^k)|^(1/2^k) at this squaring depth"),
                ),
        )
    }

    fn run(&self, m: &ArgMatches) -> TaskResult {
        let rows: JsonMatrix = parse_json(m.get_one::<String>("matrix").unwrap())?;
        let a = matrix_from_json(&rows)?;
        let tol = tol_of(m);
        let sp = spectral::spectrum(&a, tol)?;
        let ptak = spectral::ptak(&a)?;
        let radius = sp.radius();
        let eig_json = vector_to_json(&stargebra::cmat::CVec::from_vec(sp.eigenvalues.clone()));

        let mut out = json!({
            "eigenvalues": eig_json,
            "spectral_radius": radius,
            "ptak": ptak,
        });
        let mut text = String::new();
        text.push_str("eigenvalues:\n");
        for z in &sp.eigenvalues {
            text.push_str(&format!("  {:+.12e} {:+.12e}i\n", z.re, z.im));
        }
        text.push_str(&format!("spectral radius: {radius:.12e}\n"));
        text.push_str(&format!("ptak (operator norm): {ptak:.12e}\n"));
        if let Some(k) = m.get_one::<u32>("k") {
            let limit = spectral::spectral_radius_limit(&a, *k)?;
            out["radius_limit"] = json!({ "k": k, "value": limit });
            text.push_str(&format!("radius limit at k={k}: {limit:.12e}\n"));
        }
        Ok(Report::new(out, text))
    }
}
