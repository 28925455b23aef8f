//! Acceptance criteria A1 to A10, one line each.
//!
//! Runs without the libtest harness so the verdict lines always reach the
//! output. Exits nonzero when any criterion fails.

use std::process::ExitCode;

use hsph::verify::{run_suite, Suite, SuiteOptions};

fn main() -> ExitCode {
    let budget = std::env::var("HS_BUDGET").ok().and_then(|v| v.parse().ok());
    let opts = SuiteOptions { n: None, budget };
    let mut failed = Vec::new();
    for suite in Suite::ALL {
        let line = match run_suite(suite, &opts) {
            Ok(report) => {
                if !report.passed() {
                    failed.push(suite.criterion());
                }
                let mut line = format!("{} in {:.1}s", report.summary(), report.wall.as_secs_f64());
                for note in &report.notes {
                    line.push_str(&format!("\n    note: {note}"));
                }
                for f in &report.failures {
                    line.push_str(&format!("\n    failed: {}", f.case));
                }
                line
            }
            Err(e) => {
                failed.push(suite.criterion());
                format!("{} {} FAIL (error: {e})", suite.criterion(), suite)
            }
        };
        println!("{line}");
    }
    if failed.is_empty() {
        println!("acceptance: all criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failing criteria {}", failed.join(", "));
        ExitCode::FAILURE
    }
}
