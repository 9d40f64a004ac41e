mod example81;
mod pairs;
mod projective;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::CliResult;
use crate::run::ScenarioResult;
use crate::scenario::{Kind, Scenario};

pub(crate) fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub(crate) fn execute(scenario: &Scenario) -> CliResult<ScenarioResult> {
    let (p, seed) = (&scenario.params, scenario.seed);
    match scenario.kind {
        Kind::VerifyPair => pairs::verify_pair(p, seed),
        Kind::Example31 => pairs::example31(p, seed),
        Kind::Example81 => example81::example81(p),
        Kind::Coset => example81::coset(p, seed),
        Kind::Sl2Fixed => projective::fixed(p),
        Kind::Sl2Concentration => projective::concentration(p),
        Kind::Vsigma => projective::vsigma(p, seed),
    }
}
