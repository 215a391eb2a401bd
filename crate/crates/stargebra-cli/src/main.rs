//! stargebra: batch computations over finite-dimensional matrix
//! *-algebras. Subcommands are registered tasks dispatched by name; see
//! `stargebra --help`.

mod task;
mod tasks;

use clap::Command;
use task::wants_json;

fn main() {
    let registry = tasks::registry();
    let mut root = Command::new("stargebra")
        .about("spectral theory of finite-dimensional matrix *-algebras as checkable computation")
        .subcommand_required(true)
        .arg_required_else_help(true);
    for t in &registry {
        root = root.subcommand(t.command());
    }
    let matches = match root.try_get_matches() {
        Ok(m) => m,
        Err(e) => {
            // Help and version are successful exits; anything else is a
            // parse error.
            if e.use_stderr() {
                eprintln!("{e}");
                std::process::exit(1);
            }
            print!("{e}");
            std::process::exit(0);
        }
    };
    let (name, sub) = matches.subcommand().expect("subcommand required");
    let registered = registry
        .iter()
        .find(|t| t.name() == name)
        .expect("every subcommand is registered");
    match registered.run(sub) {
        Ok(report) => {
            if wants_json(sub) {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&report.json).expect("serializable report")
                );
            } else {
                print!("{}", report.text);
            }
            std::process::exit(report.exit);
        }
        Err(err) => {
            eprintln!("error: {err}");
            std::process::exit(err.exit_code());
        }
    }
}
