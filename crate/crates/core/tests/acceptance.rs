//! Runs every acceptance check and prints one PASS/FAIL line each.
//! Built without the libtest harness so the lines are never captured.

use std::process::ExitCode;

use qv_core::acceptance::run_all;

fn main() -> ExitCode {
    let results = run_all(0);
    for r in &results {
        println!(
            "{} {:>2} {} ({} ms, bound {} ms): {}",
            if r.passed { "PASS" } else { "FAIL" },
            r.id,
            r.name,
            r.elapsed_ms,
            r.bound_ms,
            r.detail
        );
    }
    let failed: Vec<u32> = results.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        eprintln!("failed criteria: {failed:?}");
        ExitCode::FAILURE
    }
}
