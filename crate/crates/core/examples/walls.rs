//! Walls and chambers of the stability parameter for cubic surfaces.
//!
//! cargo run --example walls

use vgit::onepsgen::generate_fundamental_set;
use vgit::stability::Atlas;
use vgit::walls::decompose;

fn main() {
    let fs = generate_fundamental_set(3, 3).unwrap();
    let atlas = Atlas::new(&fs).unwrap();
    println!("{} candidate walls", atlas.candidates().len());
    let dec = decompose(&atlas).unwrap();
    let walls: Vec<String> = dec.walls.iter().map(|w| w.to_string()).collect();
    println!("walls: {}", walls.join(" < "));
    for (c, p) in dec.chambers.iter().zip(&dec.probes) {
        println!("chamber ({}, {})  probe {p}", c.lo, c.hi);
    }
}
