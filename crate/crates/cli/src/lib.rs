//! Command-line scenarios for conic pairs, measure lifts, multiplier
//! triviality on orbit graphs and `SL₂(R)` on the projective line.

pub mod args;
pub mod error;
pub mod output;
pub mod params;
pub mod run;
pub mod scenario;
mod scenarios;

pub use args::{parse_args, Command};
pub use error::{CliError, CliResult};
pub use run::{run, CheckSummary, Summary};
pub use scenario::{catalog_json, catalog_text, list_scenarios, Kind, Scenario};
