//! Command-line front end: scenario files, report rendering and the
//! subcommand implementations behind the `orthomod` binary.

pub mod cli;
pub mod commands;
pub mod demo;
pub mod report;
pub mod scenario_file;

pub use cli::{BilogicCommand, Cli, Command, FieldArg, GlobalOpts};
pub use commands::DomainError;
pub use report::Report;

/// Dispatches one parsed command line.
pub fn run(cli: &Cli) -> Result<Report, DomainError> {
    let g = &cli.global;
    match &cli.command {
        Command::Parse { formula } => commands::cmd_parse(formula),
        Command::Eval { scenario, formula } => commands::cmd_eval(scenario, formula, g),
        Command::Member { scenario, state, formulas } => commands::cmd_member(scenario, state, formulas, g),
        Command::Laws { scenario, random, field } => match (scenario, random) {
            (_, Some(r)) => commands::cmd_laws_random(r[0], r[1], r[2], *field, g),
            (Some(path), None) => commands::cmd_laws_scenario(path, g),
            (None, None) => unreachable!("clap requires a scenario or --random"),
        },
        Command::Bilogic { op } => commands::cmd_bilogic(op, g),
        Command::Demo => demo::run_demo(),
    }
}
