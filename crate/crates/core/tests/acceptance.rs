//! Runs the fourteen acceptance criteria and prints one line per criterion.
//!
//! Exits non-zero when a criterion fails that is not listed in
//! `selftest::KNOWN_FAILURES`; those are printed as FAIL but do not stop
//! the build.

use orbichar::selftest::{criteria, unexpected_failures, DEFAULT_SEED, KNOWN_FAILURES};

fn main() {
    let outcomes = criteria(DEFAULT_SEED);
    for o in &outcomes {
        println!("{o}");
    }
    let passed = outcomes.iter().filter(|o| o.ok()).count();
    println!("{passed}/{} criteria passed", outcomes.len());
    let unexpected = unexpected_failures(&outcomes);
    if unexpected.is_empty() {
        let known: Vec<String> = outcomes
            .iter()
            .filter(|o| !o.ok() && KNOWN_FAILURES.contains(&o.id))
            .map(|o| o.id.to_string())
            .collect();
        if !known.is_empty() {
            println!("known failures: {}", known.join(", "));
        }
    } else {
        let ids: Vec<String> = unexpected.iter().map(|o| o.id.to_string()).collect();
        eprintln!("unexpected failures: {}", ids.join(", "));
        std::process::exit(1);
    }
}
