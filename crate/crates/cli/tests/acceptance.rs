//! The acceptance gate: every verification check at the full level, one
//! printed pass/fail line per check, all required to be green.

use trispin_cli::checks::{run_all, VerifyLevel, VerifyOptions};

#[test]
fn acceptance_suite() {
    let opts = VerifyOptions {
        level: VerifyLevel::Full,
        seed: 1234,
        tamper_mu: 0.0,
    };
    let results = run_all(&opts).expect("the suite itself must not error");

    println!();
    for r in &results {
        println!("{}", r.report_line());
    }
    println!();

    assert_eq!(results.len(), 8, "all eight checks must run");
    let failed: Vec<&str> = results.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    assert!(failed.is_empty(), "failed acceptance checks: {failed:?}");
}

#[test]
fn tampering_is_detected() {
    // a 1e-3 shift of the decoherence factor must break channel agreement
    let opts = VerifyOptions {
        level: VerifyLevel::Fast,
        seed: 1234,
        tamper_mu: 1e-3,
    };
    let channel = trispin_cli::checks::channel_correctness(&opts).expect("check runs");
    assert!(
        !channel.passed,
        "tampered channel check unexpectedly passed"
    );
    assert!(
        channel.deviation > 1e-4,
        "tampering barely moved the needle"
    );
}
