//! End-to-end verification matrix: one line per criterion, every
//! tolerance pinned. Run with `cargo test --test acceptance -- --nocapture`
//! to see the full scoreboard.

use xi_moment_lab::context::PrecisionContext;
use xi_moment_lab::report::run_all;

#[test]
fn acceptance_matrix() {
    let ctx = PrecisionContext::default();
    let outcomes = run_all(&ctx, None).expect("matrix evaluates");
    assert_eq!(outcomes.len(), 12);
    let mut failures = 0;
    for outcome in &outcomes {
        println!("{}", outcome.line());
        if !outcome.passed {
            failures += 1;
        }
    }
    assert_eq!(failures, 0, "{failures} criteria failed");
}
