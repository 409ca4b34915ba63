//! Maximal destabilizing sets, either at one `t` or as the full table.
//!
//! cargo run --example maximal_sets -- [t]

use vgit::onepsgen::generate_fundamental_set;
use vgit::report::{join_monomials, maximal_sets_text};
use vgit::stability::Atlas;
use vgit::Rational;

fn main() {
    let fs = generate_fundamental_set(3, 3).unwrap();
    let atlas = Atlas::new(&fs).unwrap();
    match std::env::args().nth(1) {
        None => print!("{}", maximal_sets_text(&atlas)),
        Some(t) => {
            let t: Rational = t.parse().expect("rational t");
            for c in atlas.maximal_configurations(&t).expect("t in (0,1)") {
                println!("{} x{}", c.name(), c.pivot);
                println!("  V+ = {}", join_monomials(&c.v_plus));
                println!("  B+ = {}", join_monomials(&c.b_plus));
            }
        }
    }
}
