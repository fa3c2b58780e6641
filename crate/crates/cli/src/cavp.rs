use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::Args;
use drbgkit::cavp::{parse, run_file_filtered};

use crate::{usage, Outcome};

#[derive(Debug, Clone, Args)]
pub struct CavpArgs {
    /// Response file (`.rsp`).
    pub path: PathBuf,
    /// Only run groups with this mechanism tag, e.g. `SHA-256`.
    #[arg(long)]
    pub mechanism: Option<String>,
    /// Write one record per case here (`-` for stdout).
    #[arg(long)]
    pub report: Option<PathBuf>,
}

/// Passes when at least one case ran and none failed.
pub fn cmd_cavp(a: &CavpArgs, out: &mut dyn Write) -> Outcome {
    let text =
        fs::read_to_string(&a.path).map_err(|e| usage(format!("{}: {e}", a.path.display())))?;
    let file = parse(&text).map_err(|e| usage(format!("{}: {e}", a.path.display())))?;

    let start = Instant::now();
    let summary = run_file_filtered(&file, a.mechanism.as_deref());
    let elapsed = start.elapsed();

    if let Some(path) = &a.report {
        let mut lines = summary.report_lines().join("\n");
        lines.push('\n');
        if path.as_os_str() == "-" {
            out.write_all(lines.as_bytes())?;
        } else {
            fs::write(path, lines)?;
        }
    }
    writeln!(out, "{}", summary.headline())?;
    writeln!(
        out,
        "cases={} passed={} failed={} skipped={} elapsed_ms={:.3}",
        file.case_count(),
        summary.passed(),
        summary.failed(),
        summary.skipped(),
        elapsed.as_secs_f64() * 1e3
    )?;
    Ok(summary.failed() == 0 && summary.passed() > 0)
}
