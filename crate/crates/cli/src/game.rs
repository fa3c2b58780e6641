use std::io::Write;

use clap::Args;
use drbgkit::games::{run_lemmas, Adversary, EvalSettings, HybridParams, Lemma};
use drbgkit::prob::DEFAULT_ENUMERATION_CAP;

use crate::{usage, CliError, Outcome};

#[derive(Debug, Clone, Args)]
pub struct GameArgs {
    /// Lemma name, or `all`.
    #[arg(long, default_value = "all")]
    pub lemma: String,
    #[arg(long, default_value_t = 2)]
    pub eta: usize,
    #[arg(long, default_value_t = 2)]
    pub num_calls: usize,
    #[arg(long, default_value_t = 2)]
    pub blocks_per_call: usize,
    /// One of constant-true, constant-false, first-bit, collision.
    #[arg(long, default_value = "collision")]
    pub adversary: String,
    /// Monte Carlo trials per probability when a game is too large to enumerate.
    #[arg(long, default_value_t = 10_000)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Enumeration budget in expanded branches.
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
    pub cap: u64,
    /// Sample even when exact enumeration would fit.
    #[arg(long)]
    pub monte_carlo: bool,
}

pub(crate) fn parse_lemmas(name: &str) -> Result<Vec<Lemma>, CliError> {
    if name == "all" {
        return Ok(Lemma::ALL.to_vec());
    }
    name.parse::<Lemma>().map(|l| vec![l]).map_err(usage)
}

pub fn cmd_game(a: &GameArgs, out: &mut dyn Write) -> Outcome {
    let lemmas = parse_lemmas(&a.lemma)?;
    let adversary = Adversary::by_name(&a.adversary).map_err(usage)?;
    let params =
        HybridParams::small(a.eta, a.num_calls, a.blocks_per_call, adversary).map_err(usage)?;
    let settings = EvalSettings {
        cap: a.cap,
        trials: a.trials.max(drbgkit::prob::MIN_TRIALS),
        seed: a.seed,
        force_monte_carlo: a.monte_carlo,
    };
    let reports = run_lemmas(&params, &lemmas, &settings);
    for r in &reports {
        writeln!(out, "{}", r.record())?;
    }
    let passed = reports.iter().filter(|r| r.verdict).count();
    let exact = reports.iter().all(|r| r.exact);
    writeln!(
        out,
        "summary checks={} passed={} failed={} mode={}",
        reports.len(),
        passed,
        reports.len() - passed,
        if exact { "exact" } else { "monte-carlo" }
    )?;
    Ok(passed == reports.len())
}
