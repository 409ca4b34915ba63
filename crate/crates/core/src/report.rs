//! Canonical text serializations of the regenerated tables and their
//! comparison with the shipped golden files.
//!
//! Row lines have the form `label | x_i | interval | monomials | divisor`,
//! with monomials in canonical order separated by single spaces.

use std::fs;
use std::path::Path;

use serde::Serialize;
use similar::TextDiff;

use crate::ade::wall_map;
use crate::boundary::{boundary_table, BoundaryRow};
use crate::lattice::Monomial;
use crate::onepsgen::FundamentalSet;
use crate::reference::{
    reference_lambdas, GOLDEN_BOUNDARY, GOLDEN_FUNDAMENTAL_SET, GOLDEN_MAXIMAL_SETS,
    GOLDEN_WALLS, GOLDEN_WALL_MAP,
};
use crate::stability::{Atlas, DestabilizingConfiguration, StabilityError};
use crate::walls::{decompose, WallChamberDecomposition};

pub fn join_monomials(ms: &[Monomial]) -> String {
    ms.iter().map(Monomial::to_string).collect::<Vec<_>>().join(" ")
}

fn with_newline(lines: Vec<String>) -> String {
    lines.into_iter().map(|l| l + "\n").collect()
}

/// Labeled members in order, `label weights`; unlabeled members are
/// summarized by count since they carry no reference.
pub fn fundamental_set_text(fs: &FundamentalSet) -> String {
    let mut lines: Vec<String> = fs
        .members()
        .iter()
        .filter_map(|m| m.label.as_ref().map(|l| format!("{l} {}", m.lambda)))
        .collect();
    if lines.is_empty() {
        lines = fs.lambdas().map(|l| l.to_string()).collect();
    }
    with_newline(lines)
}

pub fn walls_text(dec: &WallChamberDecomposition) -> String {
    with_newline(dec.walls.iter().map(|w| w.to_string()).collect())
}

pub fn maximal_row(c: &DestabilizingConfiguration) -> String {
    format!(
        "{} | x{} | {} | {} | {}",
        c.name(),
        c.pivot,
        c.t_interval,
        join_monomials(&c.v_plus),
        join_monomials(&c.b_plus)
    )
}

pub fn boundary_row(r: &BoundaryRow) -> String {
    let c = &r.configuration;
    format!(
        "{} | x{} | {} | {} | {}",
        c.name(),
        c.pivot,
        r.t_interval,
        join_monomials(&c.v_zero),
        join_monomials(&c.b_zero)
    )
}

pub fn maximal_sets_text(atlas: &Atlas) -> String {
    with_newline(atlas.table().iter().map(maximal_row).collect())
}

pub fn boundary_text(rows: &[BoundaryRow]) -> String {
    with_newline(rows.iter().map(boundary_row).collect())
}

pub fn wall_map_text() -> String {
    with_newline(
        wall_map()
            .iter()
            .map(|e| format!("{} | {}", e.singularity, e.wall))
            .collect(),
    )
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Match,
    Mismatch,
    NoReference,
}

#[derive(Debug, Clone, Serialize)]
pub struct Artifact {
    pub name: &'static str,
    pub file: &'static str,
    pub text: String,
    #[serde(skip)]
    pub golden: Option<String>,
    pub status: Status,
}

impl Artifact {
    /// Unified diff from the golden text to the regenerated text.
    pub fn diff(&self) -> Option<String> {
        let golden = self.golden.as_ref()?;
        if *golden == self.text {
            return None;
        }
        Some(
            TextDiff::from_lines(golden.as_str(), self.text.as_str())
                .unified_diff()
                .header(&format!("golden/{}", self.file), "regenerated")
                .to_string(),
        )
    }
}

const ARTIFACTS: [(&str, &str, &str); 5] = [
    ("fundamental set", "fundamental_set.txt", GOLDEN_FUNDAMENTAL_SET),
    ("walls", "walls.txt", GOLDEN_WALLS),
    ("maximal sets", "maximal_sets.txt", GOLDEN_MAXIMAL_SETS),
    ("boundary", "boundary.txt", GOLDEN_BOUNDARY),
    ("wall map", "wall_map.txt", GOLDEN_WALL_MAP),
];

/// Regenerates every artifact. Golden text comes from `golden_dir` when
/// given, else from the copies built into the crate; only the cubic-surface
/// case has references.
pub fn regenerate(
    fs: &FundamentalSet,
    golden_dir: Option<&Path>,
) -> Result<Vec<Artifact>, StabilityError> {
    let atlas = Atlas::new(fs)?;
    let dec = decompose(&atlas)?;
    let has_reference = reference_lambdas(fs.degree, fs.dim).is_some();
    let texts = [
        Some(fundamental_set_text(fs)),
        Some(walls_text(&dec)),
        Some(maximal_sets_text(&atlas)),
        Some(boundary_text(&boundary_table(&atlas)?)),
        has_reference.then(wall_map_text),
    ];
    let mut out = Vec::new();
    for ((name, file, embedded), text) in ARTIFACTS.iter().zip(texts) {
        let Some(text) = text else { continue };
        let golden = has_reference.then(|| match golden_dir {
            Some(dir) => fs::read_to_string(dir.join(file)).unwrap_or_default(),
            None => embedded.to_string(),
        });
        let status = match &golden {
            None => Status::NoReference,
            Some(g) if *g == text => Status::Match,
            Some(_) => Status::Mismatch,
        };
        out.push(Artifact {
            name,
            file,
            text,
            golden,
            status,
        });
    }
    Ok(out)
}
