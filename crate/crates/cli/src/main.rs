use std::process::ExitCode;

use conekit::args::help_text;
use conekit::{catalog_json, catalog_text, parse_args, run, Command};

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    if argv.len() == 1 {
        print!("{}", help_text());
        return ExitCode::SUCCESS;
    }
    let result = parse_args(&argv).and_then(|cmd| match cmd {
        Command::Help(text) => {
            print!("{text}");
            Ok(0)
        }
        Command::List { json } => {
            print!("{}", if json { catalog_json() } else { catalog_text() });
            Ok(0)
        }
        Command::Run(scenario) => {
            let summary = run(&scenario)?;
            for c in &summary.checks {
                let tag = if c.passed { "PASS" } else { "FAIL" };
                println!("[{tag}] {} max_violation={:e} tol={:e} {}", c.name, c.max_violation, c.tol, c.detail);
            }
            println!("{} -> {}", summary.scenario, scenario.output_dir().display());
            Ok(summary.exit_code())
        }
    });
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("conekit: {e}");
            ExitCode::from(1)
        }
    }
}
