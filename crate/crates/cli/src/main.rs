mod args;
mod commands;
mod input;

use std::fs;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command, RuleAction, SpaceAction};
use input::{CliError, CliResult};

fn run(cli: &Cli) -> CliResult<commands::Output> {
    match &cli.command {
        Command::Space { action } => match action {
            SpaceAction::Info(s) => commands::space_info(s),
            SpaceAction::Enumerate(s) => commands::space_enumerate(s),
        },
        Command::Rule { action } => match action {
            RuleAction::Eval {
                space,
                rule,
                profile,
            } => commands::rule_eval(space, rule, profile),
            RuleAction::Table { space, rule, n } => commands::rule_table(space, rule, *n),
        },
        Command::Check(a) => commands::check_cmd(a),
        Command::Verify { which } => commands::verify(which),
        Command::Kemeny(a) => commands::kemeny(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match run(&cli) {
        Ok(out) => out,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let body = if cli.json {
        serde_json::to_string_pretty(&out.json).expect("values serialize") + "\n"
    } else {
        out.text
    };
    match &cli.out {
        Some(path) => {
            if let Err(source) = fs::write(path, body) {
                let e = CliError::Io {
                    path: path.display().to_string(),
                    source,
                };
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
        }
        None => print!("{body}"),
    }
    ExitCode::from(out.code)
}
