//! Command-line parsing: `conekit [run] <kind> [--config FILE] [--seed N] [--out DIR] [--key value ...]`
//! and `conekit list [--json]`.

use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;

use clap::{CommandFactory, FromArgMatches, Parser, Subcommand};
use serde_json::Value;

use crate::error::{CliError, CliResult};
use crate::output::default_output_root;
use crate::params::{flag_value, Params};
use crate::scenario::{catalog_text, Kind, Scenario};

pub const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Parser)]
#[command(name = "conekit", version, about = "Scenario runner for conic pairs, multipliers and orbit graphs")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Debug, Subcommand)]
enum Sub {
    /// Print the scenario catalog.
    List {
        /// Machine-readable catalog.
        #[arg(long)]
        json: bool,
    },
    /// Run one scenario.
    Run {
        /// Scenario kind (see `conekit list`).
        kind: String,
        /// JSON object of parameters; may also hold `seed` and `out`.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        /// Output root; files go to `<out>/<kind>/`. Defaults to $CONEKIT_OUT or ./conekit-out.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Parameter overrides as `--key value` or `--key=value`.
        #[arg(trailing_var_arg = true, allow_hyphen_values = true)]
        overrides: Vec<String>,
    },
}

#[derive(Debug, Clone)]
pub enum Command {
    List { json: bool },
    /// `--help` or `--version` output.
    Help(String),
    Run(Scenario),
}

/// Help text, including the catalog with CSV columns.
pub fn help_text() -> String {
    command().render_long_help().to_string()
}

fn command() -> clap::Command {
    let catalog = catalog_text();
    Cli::command()
        .after_long_help(catalog.clone())
        .mut_subcommand("run", |c| c.after_long_help(catalog))
}

fn split_overrides(raw: &[String]) -> CliResult<Vec<(String, String)>> {
    let mut out = Vec::new();
    let mut it = raw.iter();
    while let Some(arg) = it.next() {
        let key = arg
            .strip_prefix("--")
            .ok_or_else(|| CliError::Usage(format!("expected `--key value`, got `{arg}`")))?;
        match key.split_once('=') {
            Some((k, v)) => out.push((k.to_string(), v.to_string())),
            None => {
                let v = it.next().ok_or_else(|| CliError::Usage(format!("`--{key}` needs a value")))?;
                out.push((key.to_string(), v.clone()));
            }
        }
    }
    Ok(out)
}

fn parse_seed(field: &str, v: &Value) -> CliResult<u64> {
    match v {
        Value::Number(n) => n.as_u64(),
        Value::String(s) => s.parse().ok(),
        _ => None,
    }
    .ok_or_else(|| CliError::config(field, "seed must be a nonnegative integer"))
}

/// Parses a full argument vector (including the program name). A leading
/// scenario kind is accepted without `run`.
pub fn parse_args<I, S>(args: I) -> CliResult<Command>
where
    I: IntoIterator<Item = S>,
    S: Into<OsString>,
{
    let mut argv: Vec<OsString> = args.into_iter().map(Into::into).collect();
    if let Some(first) = argv.get(1).and_then(|a| a.to_str()) {
        if first.parse::<Kind>().is_ok() {
            argv.insert(1, "run".into());
        }
    }
    let matches = match command().try_get_matches_from(argv) {
        Ok(m) => m,
        Err(e) if matches!(e.kind(), clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion) => {
            return Ok(Command::Help(e.render().to_string()))
        }
        Err(e) => return Err(CliError::Usage(e.render().to_string())),
    };
    let cli = Cli::from_arg_matches(&matches).map_err(|e| CliError::Usage(e.to_string()))?;
    match cli.command {
        Sub::List { json } => Ok(Command::List { json }),
        Sub::Run {
            kind,
            config,
            seed,
            out,
            overrides,
        } => {
            let kind: Kind = kind.parse()?;
            let mut params = Params::default();
            let (mut seed_v, mut out_v) = (None, None);
            if let Some(path) = &config {
                let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
                let value: Value =
                    serde_json::from_str(&text).map_err(|e| CliError::config("config", format!("{}: {e}", path.display())))?;
                let Value::Object(mut map) = value else {
                    return Err(CliError::config("config", "must be a JSON object"));
                };
                if let Some(v) = map.remove("seed") {
                    seed_v = Some(parse_seed("seed", &v)?);
                }
                if let Some(v) = map.remove("out") {
                    let s = v.as_str().ok_or_else(|| CliError::config("out", "must be a string"))?;
                    out_v = Some(PathBuf::from(s));
                }
                params = Params::new(map);
            }
            seed_v = seed.or(seed_v);
            out_v = out.or(out_v);
            for (k, v) in split_overrides(&overrides)? {
                match k.as_str() {
                    "seed" => seed_v = Some(parse_seed("seed", &Value::String(v))?),
                    "out" => out_v = Some(PathBuf::from(v)),
                    "config" => return Err(CliError::Usage("`--config` must precede parameter overrides".into())),
                    _ => params.set(k, flag_value(&v)),
                }
            }
            let scenario = Scenario::new(
                kind,
                params,
                seed_v.unwrap_or(DEFAULT_SEED),
                out_v.unwrap_or_else(default_output_root),
            );
            scenario.validate()?;
            Ok(Command::Run(scenario))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> Scenario {
        match parse_args(std::iter::once("conekit").chain(args.iter().copied())).unwrap() {
            Command::Run(s) => s,
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn kind_without_run_and_overrides() {
        let s = run(&["example81", "--N", "32", "--seed=7", "--sequence", "inverse-square"]);
        assert_eq!(s.kind, Kind::Example81);
        assert_eq!(s.seed, 7);
        assert_eq!(s.params.usize("N", 0).unwrap(), 32);
        assert_eq!(s.params.string("sequence", "").unwrap(), "inverse-square");
        let s = run(&["run", "sl2-fixed", "--seed", "3", "--a", "2", "--out", "/tmp/x"]);
        assert_eq!((s.seed, s.output.clone()), (3, PathBuf::from("/tmp/x")));
        assert_eq!(s.params.f64("a", 0.0).unwrap(), 2.0);
    }

    #[test]
    fn list_and_errors() {
        assert!(matches!(parse_args(["conekit", "list", "--json"]).unwrap(), Command::List { json: true }));
        assert!(matches!(parse_args(["conekit", "run", "nope"]), Err(CliError::Usage(_))));
        assert!(matches!(parse_args(["conekit", "example81", "--N"]), Err(CliError::Usage(_))));
        match parse_args(["conekit", "example81", "--bogus", "1"]) {
            Err(CliError::Config { field, .. }) => assert_eq!(field, "bogus"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn help_lists_csv_columns() {
        let h = help_text();
        assert!(h.contains("node,f,expected") && h.contains("theta,sigma"));
        match parse_args(["conekit", "--help"]).unwrap() {
            Command::Help(text) => assert!(text.contains("radon_nikodym.csv")),
            other => panic!("{other:?}"),
        }
    }
}
