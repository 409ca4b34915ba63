//! Runs the shipped fixture pairs, or a JSON Lines file of them.
//!
//! cargo run --example fixtures -- [file.jsonl]

use vgit::fixtures::{parse_fixtures, run_fixtures, shipped_fixtures};
use vgit::Rational;

fn main() {
    let fixtures = match std::env::args().nth(1) {
        Some(path) => parse_fixtures(&std::fs::read_to_string(path).unwrap()).expect("fixture file"),
        None => shipped_fixtures(),
    };
    let sample: Vec<Rational> = ["1/10", "1/2", "9/10"].iter().map(|s| s.parse().unwrap()).collect();
    let outcomes = run_fixtures(&fixtures, &sample).unwrap();
    for o in &outcomes {
        let verdicts: Vec<String> = o.verdicts.iter().map(|v| v.to_string()).collect();
        println!(
            "{:<6} mu = {:<10} vanishes {:<5} {}  {}",
            o.name,
            o.mu_line,
            o.mu_vanishes,
            verdicts.join(","),
            if o.passed { "pass" } else { "fail" }
        );
    }
    let passed = outcomes.iter().filter(|o| o.passed).count();
    println!("{passed}/{} passed", outcomes.len());
}
