//! Runs every acceptance criterion at full scale and prints one line each.

use std::io::Write;

use artin_tower::selftest::{self, Options, Profile};

#[test]
fn acceptance() {
    // Serial by default so the per-criterion timings are not skewed by contention.
    let parallel = std::env::var("ACCEPTANCE_PARALLEL").is_ok();
    let opts = Options { parallel, ..Options::new(Profile::Full) };
    let report = selftest::run(&opts);
    // Written to the raw handle so the summary survives output capture.
    let mut out = std::io::stdout().lock();
    writeln!(out).unwrap();
    let mut failed = Vec::new();
    for r in &report.results {
        let status = if r.passed && r.within_budget() { "PASS" } else { "FAIL" };
        writeln!(
            out,
            "[{status}] criterion {:>2}: {} ({} checks, {} ms, budget {} ms)",
            r.id, r.name, r.checks, r.millis, r.budget_millis
        )
        .unwrap();
        for f in &r.failures {
            writeln!(out, "         {f}").unwrap();
        }
        if status == "FAIL" {
            failed.push(r.id);
        }
    }
    drop(out);
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
