use std::process::ExitCode;

use glinf_oracle::harness::{render_rows, run_criterion, CriterionReport, HarnessConfig, REPEATED_BOX};

/// Criterion 2 may only fail on inclusion pairs with a repeated box of γ in J.
fn expected_failure(r: &CriterionReport) -> bool {
    r.criterion == 2
        && r.failures().count() > 0
        && r.failures().all(|row| {
            row.configuration.contains(" case ")
                && row.exact.contains(REPEATED_BOX)
                && !row.exact.contains("unexplained")
        })
}

fn main() -> ExitCode {
    let only: Option<u8> = std::env::var("ACCEPTANCE_ONLY").ok().and_then(|s| s.parse().ok());
    let workers = std::env::var("ACCEPTANCE_WORKERS").ok().and_then(|s| s.parse().ok()).unwrap_or(4);
    let cfg = HarnessConfig { workers, ..Default::default() };
    let mut unexpected = Vec::new();
    for k in (1..=8u8).filter(|k| only.is_none_or(|o| o == *k)) {
        let r = run_criterion(k, &cfg);
        println!("{}", r.summary_line());
        for n in &r.notes {
            println!("    {n}");
        }
        if r.passed() {
            continue;
        }
        let bad: Vec<_> = r.failures().take(40).cloned().collect();
        print!("{}", render_rows(&bad));
        if expected_failure(&r) {
            println!("    criterion {k}: failures are the documented repeated-box counterexamples");
        } else {
            unexpected.push(k);
        }
    }
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("unexpected failures in criteria {unexpected:?}");
        ExitCode::FAILURE
    }
}
