use clap::{Arg, ArgMatches, Command};
use serde_json::json;
use stargebra::io::{matrix_from_json, vector_to_json, JsonMatrix};
use stargebra::states::decompose_cyclic;

use crate::task::{common_args, parse_json, seed_of, tol_of, Report, Task, TaskResult};

pub struct Decompose;

impl Task for Decompose {
    fn name(&self) -> &'static str {
        "decompose"
    }

    fn command(&self) -> Command {
        common_args(
            Command::new("decompose")
                .about("split a non-degenerate *-representation into orthogonal cyclic pieces")
                .arg(
                    Arg::new("rep")
                        .long("rep")
                        .value_name("FILE")
                        .required(true)
                        .help("JSON array of representation matrices"),
                ),
        )
    }

    fn run(&self, m: &ArgMatches) -> TaskResult {
        let raw: Vec<JsonMatrix> = parse_json(m.get_one::<String>("rep").unwrap())?;
        let rep: Vec<_> = raw
            .iter()
            .map(matrix_from_json)
            .collect::<Result<_, _>>()?;
        let pieces = decompose_cyclic(&rep, tol_of(m), seed_of(m))?;
        let piece_json: Vec<_> = pieces
            .iter()
            .map(|p| {
                json!({
                    "dimension": p.basis.len(),
                    "cyclic_vector": vector_to_json(&p.cyclic_vector),
                    "basis": p.basis.iter().map(vector_to_json).collect::<Vec<_>>(),
                })
            })
            .collect();
        let out = json!({
            "pieces": piece_json,
            "count": pieces.len(),
        });
        let mut text = format!("{} cyclic pieces\n", pieces.len());
        for (i, p) in pieces.iter().enumerate() {
            text.push_str(&format!("  piece {i}: dimension {}\n", p.basis.len()));
        }
        Ok(Report::new(out, text))
    }
}
