//! Runs the full self-check suite, one line per check, and fails if
//! any check fails. `cargo test --test acceptance -- --nocapture`
//! shows the lines as they complete.

use repetilab::verify::{run, Level};

#[test]
fn acceptance() {
    let reports = run(Level::Full, 0);
    assert_eq!(reports.len(), 9);
    let mut failures = Vec::new();
    for r in &reports {
        let status = if r.pass { "pass" } else { "FAIL" };
        println!("{} {status} ({:.2}s) {} :: {}", r.id, r.seconds, r.title, r.detail);
        if !r.pass {
            failures.push(format!("{}: {}", r.id, r.detail));
        }
    }
    assert!(failures.is_empty(), "failed checks:\n{}", failures.join("\n"));
}
