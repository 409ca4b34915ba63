//! Closed strictly semistable orbits: the rows present at one `t`, then the
//! table over the whole interval.
//!
//! cargo run --example boundary -- [t]

use vgit::boundary::{boundary_table, semistable_boundary};
use vgit::onepsgen::generate_fundamental_set;
use vgit::report::{boundary_text, join_monomials};
use vgit::stability::Atlas;
use vgit::Rational;

fn main() {
    let t: Rational = std::env::args().nth(1).unwrap_or("5/9".into()).parse().expect("rational t");
    let fs = generate_fundamental_set(3, 3).unwrap();
    let atlas = Atlas::new(&fs).unwrap();
    println!("at t = {t}:");
    for row in semistable_boundary(&atlas, &t).expect("t in (0,1)") {
        println!(
            "  {} x{}  V0 = {}  B0 = {}",
            row.name(),
            row.pivot,
            join_monomials(&row.v_zero),
            join_monomials(&row.b_zero)
        );
    }
    println!("over (0,1):");
    print!("{}", boundary_text(&boundary_table(&atlas).unwrap()));
}
