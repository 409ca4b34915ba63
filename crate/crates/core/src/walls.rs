//! Candidate walls, wall confirmation by exact probes, and the chamber
//! decomposition of `[0,1]`.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::boundary::semistable_boundary;
use crate::lattice::{enumerate_monomials, pairing, LatticeError};
use crate::onepsgen::FundamentalSet;
use crate::rational::Rational;
use crate::stability::{Atlas, StabilityError};

/// `{0, 1}` together with every `t = -<v,λ>/<x_i,λ>` in `[0,1]`.
pub fn candidate_walls(fundamental: &FundamentalSet) -> Result<Vec<Rational>, LatticeError> {
    let monomials = enumerate_monomials(fundamental.degree as i64, fundamental.dim as i64)?;
    let mut out: BTreeSet<Rational> = [Rational::zero(), Rational::one()].into();
    for l in fundamental.lambdas() {
        for v in &monomials {
            let p = Rational::integer(pairing(v, l)?);
            for r in l.weights() {
                if r.sign() == num_bigint::Sign::NoSign {
                    continue;
                }
                let t = -(&p / Rational::integer(r.clone()));
                if t.in_unit_interval() {
                    out.insert(t);
                }
            }
        }
    }
    Ok(out.into_iter().collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chamber {
    pub lo: Rational,
    pub hi: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WallChamberDecomposition {
    pub walls: Vec<Rational>,
    pub chambers: Vec<Chamber>,
    pub probes: Vec<Rational>,
}

impl WallChamberDecomposition {
    pub fn from_walls(walls: Vec<Rational>) -> Self {
        let chambers = walls
            .windows(2)
            .map(|w| Chamber {
                lo: w[0].clone(),
                hi: w[1].clone(),
            })
            .collect::<Vec<_>>();
        let probes = chambers.iter().map(|c| c.lo.midpoint(&c.hi)).collect();
        WallChamberDecomposition {
            walls,
            chambers,
            probes,
        }
    }

    pub fn interior_walls(&self) -> &[Rational] {
        &self.walls[1..self.walls.len() - 1]
    }
}

/// Canonical text of the maximal destabilizing sets and the semistable
/// boundary at `t`. Member labels are left out so that ties between
/// members producing identical sets cannot register as changes.
pub fn signature_text(atlas: &Atlas, t: &Rational) -> Result<String, StabilityError> {
    let mut lines = BTreeSet::new();
    for c in atlas.maximal_configurations(t)? {
        let v: Vec<String> = c.v_plus.iter().map(|m| m.to_string()).collect();
        lines.insert(format!("max x{} {}", c.pivot, v.join(" ")));
    }
    for c in semistable_boundary(atlas, t)? {
        let v: Vec<String> = c.v_zero.iter().map(|m| m.to_string()).collect();
        let b: Vec<String> = c.b_zero.iter().map(|m| m.to_string()).collect();
        lines.insert(format!("zero {} | {}", v.join(" "), b.join(" ")));
    }
    Ok(lines.into_iter().collect::<Vec<_>>().join("\n"))
}

/// Hex SHA-256 of [`signature_text`].
pub fn wall_signature(atlas: &Atlas, t: &Rational) -> Result<String, StabilityError> {
    let text = signature_text(atlas, t)?;
    Ok(hex::encode(Sha256::digest(text.as_bytes())))
}

/// Half the smallest gap between consecutive candidates.
pub fn probe_offset(candidates: &[Rational]) -> Rational {
    candidates
        .windows(2)
        .map(|w| &w[1] - &w[0])
        .min()
        .map(|g| g / Rational::integer(2))
        .unwrap_or_else(|| Rational::ratio(1, 2))
}

/// Keeps an interior candidate when its signature differs from one of the
/// signatures just below or just above it. 0 and 1 are always walls.
pub fn confirm_walls(
    candidates: &[Rational],
    atlas: &Atlas,
) -> Result<WallChamberDecomposition, StabilityError> {
    let eps = probe_offset(candidates);
    let interior: Vec<&Rational> = candidates.iter().filter(|c| c.in_open_unit_interval()).collect();
    let kept: Vec<Option<Rational>> = interior
        .par_iter()
        .map(|c| -> Result<Option<Rational>, StabilityError> {
            let here = wall_signature(atlas, c)?;
            let below = wall_signature(atlas, &(*c - &eps))?;
            let above = wall_signature(atlas, &(*c + &eps))?;
            Ok((here != below || here != above).then(|| (*c).clone()))
        })
        .collect::<Result<_, _>>()?;
    let mut walls = vec![Rational::zero()];
    walls.extend(kept.into_iter().flatten());
    walls.push(Rational::one());
    Ok(WallChamberDecomposition::from_walls(walls))
}

/// Candidates and confirmed walls for a fundamental set.
pub fn decompose(atlas: &Atlas) -> Result<WallChamberDecomposition, StabilityError> {
    confirm_walls(atlas.candidates(), atlas)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::onepsgen::generate_fundamental_set;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn atlas() -> Atlas {
        Atlas::new(&generate_fundamental_set(3, 3).unwrap()).unwrap()
    }

    #[test]
    fn candidates_contain_known_walls() {
        let fs = generate_fundamental_set(3, 3).unwrap();
        let c = candidate_walls(&fs).unwrap();
        for w in ["0", "1/5", "1/3", "3/7", "5/9", "9/13", "1"] {
            assert!(c.contains(&q(w)), "{w}");
        }
        assert!(c.windows(2).all(|w| w[0] < w[1]));
        assert!(c.len() > 7);
    }

    #[test]
    fn confirmed_walls() {
        let a = atlas();
        let dec = decompose(&a).unwrap();
        let shown: Vec<String> = dec.walls.iter().map(|w| w.to_string()).collect();
        assert_eq!(shown, ["0", "1/5", "1/3", "3/7", "5/9", "9/13", "1"]);
        let probes: Vec<String> = dec.probes.iter().map(|w| w.to_string()).collect();
        assert_eq!(probes, ["1/10", "4/15", "8/21", "31/63", "73/117", "11/13"]);
        assert_eq!(dec.chambers.len(), 6);
        assert!(dec.walls.iter().all(|w| a.candidates().contains(w)));
    }

    #[test]
    fn signatures() {
        let a = atlas();
        let s = |t: &str| wall_signature(&a, &q(t)).unwrap();
        assert_eq!(s("1/10"), s("3/20"));
        assert_ne!(s("1/5"), s("1/10"));
        assert_eq!(s("1/2"), s("31/63"));
        assert_eq!(s("1/2").len(), 64);
    }
}
