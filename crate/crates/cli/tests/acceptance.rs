//! Runs the nine acceptance criteria and prints one line per criterion.
//!
//! Criterion 4 is expected to fail: the plain bound 2·θ̂ˢ is exceeded
//! whenever the first omitted coefficient has magnitude above 2. The test
//! pins that failure to exactly this cause.

use std::io::Write;

use dasym_cli::acceptance::{residual_checks, run_all, CriterionResult};
use dasym_cli::RunConfig;
use dasym_core::Rational;

fn emit(results: &[CriterionResult]) {
    // written past the harness capture so the lines show in plain `cargo test`
    let mut out = std::io::stdout().lock();
    for r in results {
        let _ = writeln!(out, "{}", r.line());
    }
}

#[test]
fn acceptance_suite() {
    let config = RunConfig::default();
    let results = run_all(&config);
    emit(&results);
    assert_eq!(results.iter().map(|r| r.id).collect::<Vec<_>>(), (1..=9).collect::<Vec<_>>());
    for r in &results {
        if r.id != 4 {
            assert!(r.pass, "{}", r.line());
        }
    }
    let c4 = &results[3];
    assert!(!c4.pass, "criterion 4 passes now: {}", c4.line());
}

#[test]
fn residual_failures_are_explained_by_the_first_omitted_coefficient() {
    let checks = residual_checks(&RunConfig::default());
    assert!(checks.len() >= 14);
    let two = Rational::integer(2);
    for c in &checks {
        let v = c.validation.as_ref().unwrap_or_else(|e| panic!("{}: {e}", c.series));
        assert!(v.term_pass, "{} exceeds 2|c|b^s", c.series);
        if !v.pass {
            let coeff = v.first_omitted_coeff.as_ref().expect("an omitted term was found").abs();
            assert!(coeff >= two, "{} fails with |c| = {coeff}", c.series);
        }
    }
    assert!(checks.iter().any(|c| c.validation.as_ref().unwrap().pass));
}
