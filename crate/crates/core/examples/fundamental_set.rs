//! Generates the fundamental set for cubic surfaces and compares it with the
//! labelled reference list.
//!
//! cargo run --example fundamental_set -- [degree] [dim]

use vgit::onepsgen::generate_fundamental_set;
use vgit::reference::reference_lambdas;

fn main() {
    let args: Vec<i64> = std::env::args().skip(1).map(|a| a.parse().expect("integer")).collect();
    let (d, n) = (args.first().copied().unwrap_or(3), args.get(1).copied().unwrap_or(3));
    let fs = generate_fundamental_set(d, n).expect("valid (d,n)");
    println!("{} members for (d,n) = ({d},{n})", fs.len());
    for m in fs.members() {
        println!("{:>4}  {}", m.label.as_deref().unwrap_or("-"), m.lambda);
    }
    if let Some(reference) = reference_lambdas(d as u32, n as u32) {
        let diff = fs.reference_diff(&reference);
        println!(
            "reference: {}/{} contained, {} additional",
            reference.len() - diff.missing.len(),
            reference.len(),
            diff.extra.len()
        );
    }
}
