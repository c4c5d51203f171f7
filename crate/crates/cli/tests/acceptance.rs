//! Acceptance run: one line per criterion, each backed by a named suite.
//!
//! The homomorphic-image closure property is stated for regular cardinals
//! and does not hold for a finite bound on hypotheses, so criterion 4 fails
//! on a fixed two-point counterexample. The test asserts that it is the only
//! failing criterion.

use std::collections::BTreeSet;
use std::io::Write;

use quantalg_cli::generators::DEFAULT_SEED;
use quantalg_cli::report::Report;
use quantalg_cli::suites;

const CRITERIA: [(u8, &str); 9] = [
    (1, "deduction-soundness"),
    (2, "derivation-tightness"),
    (3, "homomorphism-witnesses"),
    (4, "closure-lemmas"),
    (5, "canonical-model"),
    (6, "functor-roundtrip"),
    (7, "reduced-products"),
    (8, "horn-transfer"),
    (9, "congruence-embedding"),
];

fn summary(r: &Report) -> String {
    let failing: Vec<&str> = r
        .checks
        .iter()
        .filter(|c| c.counts && !c.passed)
        .map(|c| c.name.as_str())
        .collect();
    let counted = r.checks.iter().filter(|c| c.counts).count();
    if failing.is_empty() {
        format!("{counted} checks passed")
    } else {
        let witness = r.witnesses.first().map(String::as_str).unwrap_or("");
        format!(
            "{} of {counted} checks failed: {} ({witness})",
            failing.len(),
            failing.join(", ")
        )
    }
}

/// Writes past the test harness's output capture so the criterion lines
/// show up in a plain `cargo test` run.
fn line(text: String) {
    let mut out = std::io::stdout().lock();
    writeln!(out, "{text}").unwrap();
    out.flush().unwrap();
}

#[test]
fn acceptance() {
    let mut failed = BTreeSet::new();
    for (n, name) in CRITERIA {
        let r = suites::run(name, DEFAULT_SEED).expect("suite exists");
        let passed = r.passed();
        line(format!(
            "criterion {n}: {} -- {name}: {}",
            if passed { "pass" } else { "FAIL" },
            summary(&r)
        ));
        if !passed {
            failed.insert(n);
        }
    }

    let first = suites::run_all(DEFAULT_SEED);
    let second = suites::run_all(DEFAULT_SEED);
    let same = first.to_text() == second.to_text() && first.to_json() == second.to_json();
    line(format!(
        "criterion 10: {} -- {} suites, {} bytes of text and {} bytes of JSON per run",
        if same { "pass" } else { "FAIL" },
        CRITERIA.len(),
        first.to_text().len(),
        first.to_json().len()
    ));
    if !same {
        failed.insert(10);
    }

    assert_eq!(
        failed,
        BTreeSet::from([4]),
        "only the homomorphic-image criterion is expected to fail"
    );
}

#[test]
fn determinism_is_seed_sensitive() {
    let a = suites::run("closure-lemmas", 1).unwrap();
    let b = suites::run("closure-lemmas", 2).unwrap();
    assert_ne!(a.to_text(), b.to_text());
    assert_eq!(
        a.to_text(),
        suites::run("closure-lemmas", 1).unwrap().to_text()
    );
}
