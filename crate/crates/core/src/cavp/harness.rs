use rayon::prelude::*;

use super::{CavpCase, CavpError, CavpFile, CavpGroup, DeclaredLens};
use crate::drbg::{DrbgConfig, DrbgState, GenerateRequest, Limits};
use crate::entropy::EntropyStream;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CaseOutcome {
    Pass,
    /// Output differs; `first_divergence` is the first differing octet
    /// offset (or the shorter length when one is a prefix of the other).
    Fail {
        first_divergence: usize,
    },
    /// The DRBG rejected the inputs.
    Error(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseResult {
    pub count: u32,
    pub outcome: CaseOutcome,
    /// Output of the second generate call.
    pub actual: Vec<u8>,
}

impl CaseResult {
    pub fn passed(&self) -> bool {
        self.outcome == CaseOutcome::Pass
    }
}

/// Replays one case: instantiate, optional reseed, two generate calls with
/// the first output discarded, then an exact comparison.
pub fn run_case(group: &CavpGroup, case: &CavpCase) -> Result<CaseResult, CavpError> {
    if !group.is_supported() {
        return Err(CavpError::UnsupportedMechanism(group.mechanism.clone()));
    }
    let (outcome, actual) = match replay(group, case) {
        Ok(actual) => {
            let outcome = match first_divergence(&actual, &case.returned_bits) {
                None => CaseOutcome::Pass,
                Some(first_divergence) => CaseOutcome::Fail { first_divergence },
            };
            (outcome, actual)
        }
        Err(e) => (CaseOutcome::Error(e.to_string()), Vec::new()),
    };
    Ok(CaseResult {
        count: case.count,
        outcome,
        actual,
    })
}

fn replay(group: &CavpGroup, case: &CavpCase) -> Result<Vec<u8>, crate::drbg::DrbgError> {
    let out_len = group.lens.returned_bits / 8;
    let config = DrbgConfig {
        entropy_len: case
            .entropy_pr
            .first()
            .map_or(case.entropy_input.len(), Vec::len),
        prediction_resistance: group.prediction_resistance,
        limits: Limits {
            max_output_len: out_len.max(Limits::default().max_output_len),
            ..Limits::default()
        },
        ..DrbgConfig::default()
    };
    let mut drbg = DrbgState::instantiate(
        &case.entropy_input,
        &case.nonce,
        &case.personalization,
        config,
    )?;
    if let Some(r) = &case.reseed {
        drbg.reseed(&r.entropy_input, &r.additional_input)?;
    }
    let mut stream = EntropyStream::deterministic(case.entropy_pr.concat());
    let mut last = Vec::new();
    for add in &case.additional_inputs {
        let req = GenerateRequest::new(out_len).with_additional_input(add.clone());
        last = drbg.generate_with_entropy(&mut stream, &req)?;
    }
    Ok(last)
}

fn first_divergence(actual: &[u8], expected: &[u8]) -> Option<usize> {
    actual
        .iter()
        .zip(expected)
        .position(|(a, b)| a != b)
        .or_else(|| (actual.len() != expected.len()).then(|| actual.len().min(expected.len())))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupSummary {
    pub index: usize,
    pub mechanism: String,
    pub prediction_resistance: bool,
    pub lens: DeclaredLens,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    /// Per-case results in file order; empty for skipped groups.
    pub results: Vec<CaseResult>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Summary {
    pub groups: Vec<GroupSummary>,
}

impl Summary {
    pub fn passed(&self) -> usize {
        self.groups.iter().map(|g| g.passed).sum()
    }

    pub fn failed(&self) -> usize {
        self.groups.iter().map(|g| g.failed).sum()
    }

    pub fn skipped(&self) -> usize {
        self.groups.iter().map(|g| g.skipped).sum()
    }

    /// One-line human summary.
    pub fn headline(&self) -> String {
        format!(
            "{} passed, {} failed, {} skipped",
            self.passed(),
            self.failed(),
            self.skipped()
        )
    }

    /// Machine-readable records, one per executed case.
    pub fn report_lines(&self) -> Vec<String> {
        let mut lines = Vec::new();
        for g in &self.groups {
            for r in &g.results {
                let (verdict, divergence) = match &r.outcome {
                    CaseOutcome::Pass => ("pass", "-".to_string()),
                    CaseOutcome::Fail { first_divergence } => {
                        ("fail", first_divergence.to_string())
                    }
                    CaseOutcome::Error(_) => ("error", "-".to_string()),
                };
                lines.push(format!(
                    "group={} mechanism={} pr={} entropy_len={} nonce_len={} pers_len={} add_len={} returned_bits_len={} count={} result={} divergence={}",
                    g.index,
                    g.mechanism,
                    g.prediction_resistance,
                    g.lens.entropy_input,
                    g.lens.nonce,
                    g.lens.personalization,
                    g.lens.additional_input,
                    g.lens.returned_bits,
                    r.count,
                    verdict,
                    divergence
                ));
            }
        }
        lines
    }
}

/// Runs every supported group; other mechanisms are counted as skipped.
pub fn run_file(file: &CavpFile) -> Summary {
    run_file_filtered(file, None)
}

/// As [`run_file`], additionally skipping groups whose mechanism differs
/// from `mechanism` when one is given.
pub fn run_file_filtered(file: &CavpFile, mechanism: Option<&str>) -> Summary {
    let groups = file
        .groups
        .iter()
        .enumerate()
        .map(|(index, group)| {
            let selected = group.is_supported() && mechanism.is_none_or(|m| m == group.mechanism);
            let results: Vec<CaseResult> = if selected {
                group
                    .cases
                    .par_iter()
                    .map(|case| run_case(group, case).expect("mechanism checked above"))
                    .collect()
            } else {
                Vec::new()
            };
            let passed = results.iter().filter(|r| r.passed()).count();
            GroupSummary {
                index,
                mechanism: group.mechanism.clone(),
                prediction_resistance: group.prediction_resistance,
                lens: group.lens,
                passed,
                failed: results.len() - passed,
                skipped: if selected { 0 } else { group.cases.len() },
                results,
            }
        })
        .collect();
    Summary { groups }
}
