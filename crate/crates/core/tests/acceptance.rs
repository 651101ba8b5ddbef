//! Runs every acceptance criterion with a fixed seed and prints one line each.

use abel_lab::acceptance::{run_suite, Suite};

#[test]
fn acceptance_criteria() {
    let seed = std::env::var("ABEL_LAB_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(2024);
    let outcomes = run_suite(Suite::All, seed);
    for o in &outcomes {
        println!("{o}");
        for d in &o.details {
            println!("       {d}");
        }
    }
    let failed: Vec<&str> = outcomes.iter().filter(|o| !o.passed).map(|o| o.id).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
