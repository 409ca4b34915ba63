//! Walls attached to singularity types through their weights.
//!
//! cargo run --example ade_walls

use vgit::ade::{versality_bound_check, wall_map, SingularityType};

fn main() {
    for e in wall_map() {
        let weights: Vec<String> = e.weights.iter().map(|w| w.to_string()).collect();
        let milnor = e.milnor.map_or("inf".to_string(), |m| m.to_string());
        println!(
            "{:<4} weights ({})  sum {}  wall {}  milnor {milnor}",
            e.singularity.to_string(),
            weights.join(", "),
            e.weight_sum,
            e.wall
        );
    }
    let three_a2 = [SingularityType::a(2).unwrap(); 3];
    let five_a2 = [SingularityType::a(2).unwrap(); 5];
    println!("3A2 within the bound: {}", versality_bound_check(&three_a2).unwrap());
    println!("5A2 within the bound: {}", versality_bound_check(&five_a2).unwrap());
}
