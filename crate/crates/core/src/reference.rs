//! Shipped reference data for cubic surfaces in `P^3`: the named critical
//! one-parameter subgroups, the `C^*`-invariant fixture pairs and the golden
//! regression tables.

use serde::{Deserialize, Serialize};

use crate::lattice::OneParameterSubgroup;

/// A one-parameter subgroup with a display label such as `λ4` or `λ̄4`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedLambda {
    pub label: String,
    pub lambda: OneParameterSubgroup,
}

const CUBIC_SURFACE_LAMBDAS: [[i64; 4]; 10] = [
    [1, 0, 0, -1],
    [2, 0, -1, -1],
    [5, 1, -3, -3],
    [13, 1, -3, -11],
    [3, 1, -1, -3],
    [9, 1, -3, -7],
    [5, 5, -3, -7],
    [1, 1, 1, -3],
    [5, 1, 1, -7],
    [1, 1, -1, -1],
];

pub fn plain_label(k: usize) -> String {
    format!("λ{k}")
}

pub fn dual_label(k: usize) -> String {
    format!("λ̄{k}")
}

/// `λ1, λ̄1, λ2, λ̄2, ...`, skipping the dual of a self-dual entry.
/// This order doubles as the preference order among members that produce
/// identical destabilizing sets.
pub fn cubic_surface_lambdas() -> Vec<NamedLambda> {
    let mut out = Vec::new();
    for (idx, w) in CUBIC_SURFACE_LAMBDAS.iter().enumerate() {
        let k = idx + 1;
        let lambda = OneParameterSubgroup::from_i64(w).expect("valid reference weights");
        let dual = lambda.dual();
        let self_dual = dual == lambda;
        out.push(NamedLambda {
            label: plain_label(k),
            lambda,
        });
        if !self_dual {
            out.push(NamedLambda {
                label: dual_label(k),
                lambda: dual,
            });
        }
    }
    out
}

/// Built-in reference set for `(d, n)`, when one ships.
pub fn reference_lambdas(d: u32, n: u32) -> Option<Vec<NamedLambda>> {
    (d == 3 && n == 3).then(cubic_surface_lambdas)
}

/// Table of `C^*`-invariant pairs, one JSON document per line.
pub const FIXTURES_JSONL: &str = include_str!("../data/fixtures.jsonl");

pub const GOLDEN_FUNDAMENTAL_SET: &str = include_str!("../golden/fundamental_set.txt");
pub const GOLDEN_WALLS: &str = include_str!("../golden/walls.txt");
pub const GOLDEN_MAXIMAL_SETS: &str = include_str!("../golden/maximal_sets.txt");
pub const GOLDEN_BOUNDARY: &str = include_str!("../golden/boundary.txt");
pub const GOLDEN_WALL_MAP: &str = include_str!("../golden/wall_map.txt");
