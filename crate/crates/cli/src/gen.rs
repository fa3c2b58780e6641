use std::io::Write;

use clap::Args;
use drbgkit::drbg::{DrbgConfig, DrbgError, DrbgState, GenerateRequest, DEFAULT_RESEED_INTERVAL};
use drbgkit::encoding::{from_hex, to_hex};
use drbgkit::entropy::{EntropyError, EntropyStream};

use crate::{usage, CliError, Outcome};

#[derive(Debug, Clone, Args)]
pub struct GenArgs {
    /// Entropy input, hex.
    #[arg(long, required_unless_present = "system")]
    pub entropy: Option<String>,
    #[arg(long, default_value = "")]
    pub nonce: String,
    #[arg(long, default_value = "")]
    pub personalization: String,
    /// Additional input passed to every generate call, hex.
    #[arg(long, default_value = "")]
    pub additional_input: String,
    /// Octets per call.
    #[arg(long, default_value_t = 32)]
    pub out_len: usize,
    /// Number of generate calls.
    #[arg(long, default_value_t = 1)]
    pub calls: usize,
    #[arg(long)]
    pub prediction_resistance: bool,
    #[arg(long, default_value_t = DEFAULT_RESEED_INTERVAL)]
    pub reseed_interval: u64,
    /// Entropy consumed by automatic reseeds, hex, read front to back.
    #[arg(long, default_value = "")]
    pub reseed_entropy: String,
    /// Seed and reseed from the operating system instead.
    #[arg(long, conflicts_with_all = ["entropy", "reseed_entropy"])]
    pub system: bool,
}

fn hex_arg(name: &str, s: &str) -> Result<Vec<u8>, CliError> {
    from_hex(s).map_err(|e| usage(format!("--{name}: {e}")))
}

fn drbg_error(e: DrbgError) -> CliError {
    match e {
        DrbgError::ReseedRequired { .. } => CliError::ReseedRequired(e.to_string()),
        DrbgError::Entropy(EntropyError::Exhausted { .. }) => {
            CliError::ReseedRequired(format!("reseed needed but no entropy left: {e}"))
        }
        other => usage(other),
    }
}

pub fn cmd_gen(a: &GenArgs, out: &mut dyn Write) -> Outcome {
    let config = DrbgConfig {
        prediction_resistance: a.prediction_resistance,
        reseed_interval: a.reseed_interval,
        ..DrbgConfig::default()
    };
    let mut stream = if a.system {
        EntropyStream::system()
    } else {
        EntropyStream::deterministic(hex_arg("reseed-entropy", &a.reseed_entropy)?)
    };
    let (entropy, nonce) = if a.system {
        let mut sys = EntropyStream::system();
        let e = sys.take(config.entropy_len).map_err(usage)?;
        let n = sys.take(config.entropy_len / 2).map_err(usage)?;
        (e, n)
    } else {
        let e = hex_arg("entropy", a.entropy.as_deref().unwrap_or_default())?;
        (e, hex_arg("nonce", &a.nonce)?)
    };
    let personalization = hex_arg("personalization", &a.personalization)?;
    let additional = hex_arg("additional-input", &a.additional_input)?;

    let mut drbg =
        DrbgState::instantiate(&entropy, &nonce, &personalization, config).map_err(drbg_error)?;
    let req = GenerateRequest::new(a.out_len).with_additional_input(additional);
    for _ in 0..a.calls {
        let bytes = drbg
            .generate_with_entropy(&mut stream, &req)
            .map_err(drbg_error)?;
        writeln!(out, "{}", to_hex(&bytes))?;
    }
    Ok(true)
}
