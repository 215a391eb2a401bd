use clap::{Arg, ArgMatches, Command};
use serde_json::json;
use stargebra::algebra::{build_algebra, group_ring};
use stargebra::gelfand::{characters, gelfand_transform};
use stargebra::io::{matrix_from_json, vector_to_json, AlgebraSpec, GroupSpec, JsonMatrix};

use crate::task::{common_args, parse_json, seed_of, tol_of, CliError, Report, Task, TaskResult};

pub struct Gelfand;

impl Task for Gelfand {
    fn name(&self) -> &'static str {
        "gelfand"
    }

    fn command(&self) -> Command {
        common_args(
            Command::new("gelfand")
                .about("characters and Gelfand transforms of a commutative *-algebra")
                .arg(
                    Arg::new("algebra")
                        .long("algebra")
                        .value_name("FILE")
                        .help("algebra spec {\"ambient_dim\": n, \"generators\": [...]}"),
                )
                .arg(
                    Arg::new("group")
                        .long("group")
                        .value_name("FILE")
                        .help("group spec {\"group\": {\"cyclic\": N}} or {\"group\": {\"table\": [[...]]}}"),
                )
                .arg(
                    Arg::new("element")
                        .long("element")
                        .value_name("FILE")
                        .help("JSON matrix in the algebra; its Gelfand transform is emitted"),
                ),
        )
    }

    fn run(&self, m: &ArgMatches) -> TaskResult {
        let tol = tol_of(m);
        let seed = seed_of(m);
        let algebra = match (m.get_one::<String>("algebra"), m.get_one::<String>("group")) {
            (Some(path), None) => {
                let spec: AlgebraSpec = parse_json(path)?;
                build_algebra(&spec.generators()?, spec.ambient_dim, tol)?
            }
            (None, Some(path)) => {
                let spec: GroupSpec = parse_json(path)?;
                group_ring(&spec.build()?, tol)?.0
            }
            _ => {
                return Err(CliError::Usage(
                    "gelfand needs exactly one of --algebra FILE or --group FILE".into(),
                ))
            }
        };
        let chars = characters(&algebra, seed)?;
        let char_json: Vec<_> = chars
            .value_vectors()
            .iter()
            .map(vector_to_json)
            .collect();
        let mut out = json!({
            "algebra_dimension": algebra.dim(),
            "character_count": chars.len(),
            "characters": char_json,
        });
        let mut text = format!(
            "algebra dimension {}\ncharacters ({}):\n",
            algebra.dim(),
            chars.len()
        );
        for (t, v) in chars.value_vectors().iter().enumerate() {
            text.push_str(&format!("  τ{t}:"));
            for z in v.iter() {
                text.push_str(&format!(" {:+.6e}{:+.6e}i", z.re, z.im));
            }
            text.push('\n');
        }
        if let Some(path) = m.get_one::<String>("element") {
            let rows: JsonMatrix = parse_json(path)?;
            let elem = matrix_from_json(&rows)?;
            let coords = algebra.coords(&elem)?;
            let hat = gelfand_transform(&coords, &chars)?;
            out["transform"] = json!(vector_to_json(&hat));
            text.push_str("transform:");
            for z in hat.iter() {
                text.push_str(&format!(" {:+.6e}{:+.6e}i", z.re, z.im));
            }
            text.push('\n');
        }
        Ok(Report::new(out, text))
    }
}
