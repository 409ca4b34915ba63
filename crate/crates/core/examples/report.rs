//! Regenerates every artifact and compares it with the golden text.
//!
//! cargo run --example report -- [golden_dir]

use std::path::PathBuf;

use vgit::onepsgen::generate_fundamental_set;
use vgit::report::{regenerate, Status};

fn main() {
    let dir = std::env::args().nth(1).map(PathBuf::from);
    let fs = generate_fundamental_set(3, 3).unwrap();
    let artifacts = regenerate(&fs, dir.as_deref()).unwrap();
    for a in &artifacts {
        println!("{:<16} {:?}", a.name, a.status);
        if let Some(diff) = a.diff() {
            print!("{diff}");
        }
    }
    let matched = artifacts.iter().filter(|a| a.status == Status::Match).count();
    println!("{matched}/{} artifacts match", artifacts.len());
}
