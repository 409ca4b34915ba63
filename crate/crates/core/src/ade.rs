//! Semi-quasi-homogeneous weights of simple surface singularities and the
//! map `Wall(T) = 4/w(T) - 3`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AdeError {
    #[error("A_k needs k >= 1 (got {0})")]
    BadA(u32),
    #[error("D_k needs k >= 4 (got {0})")]
    BadD(u32),
    #[error("only E6 is supported (got E{0})")]
    BadE(u32),
    #[error("only the simple elliptic Ẽ6 is supported (got Ẽ{0})")]
    BadEllipticE(u32),
    #[error("{0} has no finite Milnor number in this table")]
    InfiniteMilnor(SingularityType),
    #[error("unrecognized singularity type {0:?}")]
    Unrecognized(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    D,
    E,
    #[serde(rename = "Ẽ")]
    EllipticE,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SingularityType {
    family: Family,
    index: u32,
}

impl SingularityType {
    pub fn new(family: Family, index: u32) -> Result<Self, AdeError> {
        match family {
            Family::A if index < 1 => Err(AdeError::BadA(index)),
            Family::D if index < 4 => Err(AdeError::BadD(index)),
            Family::E if index != 6 => Err(AdeError::BadE(index)),
            Family::EllipticE if index != 6 => Err(AdeError::BadEllipticE(index)),
            _ => Ok(SingularityType { family, index }),
        }
    }

    pub fn a(k: u32) -> Result<Self, AdeError> {
        Self::new(Family::A, k)
    }

    pub fn d(k: u32) -> Result<Self, AdeError> {
        Self::new(Family::D, k)
    }

    pub fn e6() -> Self {
        SingularityType {
            family: Family::E,
            index: 6,
        }
    }

    pub fn elliptic_e6() -> Self {
        SingularityType {
            family: Family::EllipticE,
            index: 6,
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn index(&self) -> u32 {
        self.index
    }

    /// `μ(A_k) = μ(D_k) = k`, `μ(E_6) = 6`; `None` for `Ẽ_6`.
    pub fn milnor(&self) -> Option<u32> {
        match self.family {
            Family::EllipticE => None,
            _ => Some(self.index),
        }
    }
}

impl fmt::Display for SingularityType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letter = match self.family {
            Family::A => "A",
            Family::D => "D",
            Family::E => "E",
            Family::EllipticE => "Ẽ",
        };
        write!(f, "{letter}{}", self.index)
    }
}

impl FromStr for SingularityType {
    type Err = AdeError;

    /// Accepts `A3`, `A_3`, `D5`, `E6`, `Ẽ6` and `~E6`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || AdeError::Unrecognized(s.to_string());
        let t = s.trim();
        let (family, rest) = if let Some(r) = t.strip_prefix("Ẽ").or_else(|| t.strip_prefix("~E")) {
            (Family::EllipticE, r)
        } else if let Some(r) = t.strip_prefix('A') {
            (Family::A, r)
        } else if let Some(r) = t.strip_prefix('D') {
            (Family::D, r)
        } else if let Some(r) = t.strip_prefix('E') {
            (Family::E, r)
        } else {
            return Err(bad());
        };
        let index: u32 = rest.trim_start_matches('_').parse().map_err(|_| bad())?;
        SingularityType::new(family, index)
    }
}

impl Serialize for SingularityType {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for SingularityType {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        String::deserialize(deserializer)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

/// Weights in three local variables.
pub fn weights_of(t: &SingularityType) -> Vec<Rational> {
    let k = t.index as i64;
    let half = Rational::ratio(1, 2);
    match t.family {
        Family::A => vec![half.clone(), half, Rational::ratio(1, k + 1)],
        Family::D => vec![half, Rational::ratio(k - 2, 2 * (k - 1)), Rational::ratio(1, k - 1)],
        Family::E => vec![half, Rational::ratio(1, 3), Rational::ratio(1, 4)],
        Family::EllipticE => vec![Rational::ratio(1, 3); 3],
    }
}

/// `w(T)`, the sum of the weights.
pub fn weight_sum(t: &SingularityType) -> Rational {
    weights_of(t).into_iter().sum()
}

pub fn wall_of(t: &SingularityType) -> Rational {
    Rational::integer(4) / weight_sum(t) - Rational::integer(3)
}

/// Whether `Σ μ(T_i) <= 9`.
pub fn versality_bound_check(types: &[SingularityType]) -> Result<bool, AdeError> {
    let mut total = 0;
    for t in types {
        total += t.milnor().ok_or(AdeError::InfiniteMilnor(*t))?;
    }
    Ok(total <= 9)
}

/// The singularity types whose walls are the cubic-surface walls, in wall order.
pub fn cubic_surface_wall_types() -> Vec<SingularityType> {
    vec![
        SingularityType::a(2).unwrap(),
        SingularityType::a(3).unwrap(),
        SingularityType::a(4).unwrap(),
        SingularityType::a(5).unwrap(),
        SingularityType::d(4).unwrap(),
        SingularityType::d(5).unwrap(),
        SingularityType::e6(),
        SingularityType::elliptic_e6(),
    ]
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WallMapEntry {
    pub singularity: SingularityType,
    pub weights: Vec<Rational>,
    pub weight_sum: Rational,
    pub wall: Rational,
    pub milnor: Option<u32>,
}

pub fn wall_map() -> Vec<WallMapEntry> {
    cubic_surface_wall_types()
        .into_iter()
        .map(|t| WallMapEntry {
            singularity: t,
            weights: weights_of(&t),
            weight_sum: weight_sum(&t),
            wall: wall_of(&t),
            milnor: t.milnor(),
        })
        .collect()
}
