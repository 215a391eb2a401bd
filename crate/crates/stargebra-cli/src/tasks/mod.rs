mod calculus;
mod check;
mod commutant;
mod decompose;
mod evolve;
mod gelfand;
mod gns;
mod resolve;
mod spectrum;

use crate::task::Task;

/// All subcommands, dispatched by name at runtime.
pub fn registry() -> Vec<Box<dyn Task>> {
    vec![
        Box::new(spectrum::Spectrum),
        Box::new(calculus::Calculus),
        Box::new(gelfand::Gelfand),
        Box::new(gns::Gns),
        Box::new(decompose::Decompose),
        Box::new(commutant::Commutant),
        Box::new(resolve::Resolve),
        Box::new(evolve::Evolve),
        Box::new(check::Check),
    ]
}
