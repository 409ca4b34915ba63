//! The `C^*`-invariant pairs shipped as fixtures, one JSON document per line,
//! and the checks run against each of them.

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::boundary::{torus_stability_verdict, Verdict};
use crate::lattice::{pairing, OneParameterSubgroup};
use crate::polyio::{parse_form, support_pair, ParseError};
use crate::rational::Rational;
use crate::reference::FIXTURES_JSONL;
use crate::stability::{mu, StabilityError, SupportPair};

#[derive(Debug, thiserror::Error)]
pub enum FixtureError {
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },
    #[error("fixture {name}: {source}")]
    Parse { name: String, source: ParseError },
    #[error("fixture {name}: {source}")]
    Domain { name: String, source: StabilityError },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FixtureWall {
    All,
    At(Rational),
}

impl fmt::Display for FixtureWall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FixtureWall::All => f.write_str("all"),
            FixtureWall::At(t) => write!(f, "{t}"),
        }
    }
}

impl Serialize for FixtureWall {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FixtureWall {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        if s == "all" {
            Ok(FixtureWall::All)
        } else {
            s.parse().map(FixtureWall::At).map_err(serde::de::Error::custom)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixturePair {
    pub name: String,
    pub surface: String,
    pub divisor: String,
    pub lambda: OneParameterSubgroup,
    pub wall: FixtureWall,
}

impl FixturePair {
    pub fn supports(&self, n: i64) -> Result<SupportPair, FixtureError> {
        let parse = |text: &str, degree| {
            parse_form(text, n, Some(degree)).map_err(|source| FixtureError::Parse {
                name: self.name.clone(),
                source,
            })
        };
        let f = parse(&self.surface, 3)?;
        let h = parse(&self.divisor, 1)?;
        support_pair(&f, &h).map_err(|source| FixtureError::Domain {
            name: self.name.clone(),
            source,
        })
    }
}

pub fn parse_fixtures(text: &str) -> Result<Vec<FixturePair>, FixtureError> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            serde_json::from_str(l).map_err(|e| FixtureError::Format {
                line: i + 1,
                message: e.to_string(),
            })
        })
        .collect()
}

pub fn shipped_fixtures() -> Vec<FixturePair> {
    parse_fixtures(FIXTURES_JSONL).expect("shipped fixtures parse")
}

/// `μ_t = constant + slope·t` for a fixed subgroup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MuLine {
    pub constant: BigInt,
    pub slope: BigInt,
}

impl MuLine {
    pub fn of(pair: &SupportPair, lambda: &OneParameterSubgroup) -> Result<MuLine, StabilityError> {
        let min = |ms: &[crate::lattice::Monomial]| -> Result<BigInt, StabilityError> {
            let mut values = Vec::with_capacity(ms.len());
            for m in ms {
                values.push(pairing(m, lambda)?);
            }
            Ok(values.into_iter().min().expect("non-empty support"))
        };
        Ok(MuLine {
            constant: min(pair.surface())?,
            slope: min(pair.divisor())?,
        })
    }

    pub fn at(&self, t: &Rational) -> Rational {
        Rational::integer(self.constant.clone()) + t * Rational::integer(self.slope.clone())
    }

    /// The `t` where the line vanishes, when it is a single point.
    pub fn root(&self) -> Option<Rational> {
        use num_traits::Zero;
        (!self.slope.is_zero()).then(|| {
            -(Rational::integer(self.constant.clone()) / Rational::integer(self.slope.clone()))
        })
    }
}

impl fmt::Display for MuLine {
    /// `9 - 13t`, `3t`, `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use num_traits::{Signed, Zero};
        let c = &self.constant;
        let s = &self.slope;
        match (c.is_zero(), s.is_zero()) {
            (_, true) => write!(f, "{c}"),
            (true, false) => write!(f, "{s}t"),
            (false, false) => {
                let sign = if s.is_negative() { '-' } else { '+' };
                write!(f, "{c} {sign} {}t", s.abs())
            }
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FixtureOutcome {
    pub name: String,
    pub wall: FixtureWall,
    pub mu_line: String,
    /// `t` values at which the verdict was checked.
    pub checked: Vec<Rational>,
    pub mu_vanishes: bool,
    pub verdicts: Vec<Verdict>,
    pub passed: bool,
}

/// For each row: `μ_t(pair, λ) = 0` at the wall (identically for `all`) and
/// a strictly semistable torus verdict there. `sample` supplies the `t`
/// values used for `all` rows.
pub fn run_fixtures(
    fixtures: &[FixturePair],
    sample: &[Rational],
) -> Result<Vec<FixtureOutcome>, FixtureError> {
    let mut out = Vec::new();
    for fx in fixtures {
        let pair = fx.supports(3)?;
        let domain = |source| FixtureError::Domain {
            name: fx.name.clone(),
            source,
        };
        let line = MuLine::of(&pair, &fx.lambda).map_err(domain)?;
        let checked: Vec<Rational> = match &fx.wall {
            FixtureWall::All => sample.to_vec(),
            FixtureWall::At(t) => vec![t.clone()],
        };
        let mut mu_vanishes = match &fx.wall {
            FixtureWall::All => line.to_string() == "0",
            FixtureWall::At(t) => line.root().as_ref() == Some(t),
        };
        let mut verdicts = Vec::new();
        for t in &checked {
            mu_vanishes &= mu(&pair, &fx.lambda, t).map_err(domain)?.is_zero();
            verdicts.push(torus_stability_verdict(&pair, t).map_err(domain)?.verdict);
        }
        let passed = mu_vanishes && verdicts.iter().all(|v| *v == Verdict::StrictlySemistable);
        out.push(FixtureOutcome {
            name: fx.name.clone(),
            wall: fx.wall.clone(),
            mu_line: line.to_string(),
            checked,
            mu_vanishes,
            verdicts,
            passed,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_rows() {
        let fx = shipped_fixtures();
        assert_eq!(fx.len(), 7);
        let lines: Vec<String> = fx
            .iter()
            .map(|f| MuLine::of(&f.supports(3).unwrap(), &f.lambda).unwrap().to_string())
            .collect();
        assert_eq!(
            lines,
            ["0", "1 - 5t", "1 - 3t", "3 - 7t", "3 - 7t", "5 - 9t", "9 - 13t"]
        );
    }

    #[test]
    fn all_pass() {
        let sample: Vec<Rational> = ["1/10", "1/5", "1/2", "9/13", "9/10"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect();
        for o in run_fixtures(&shipped_fixtures(), &sample).unwrap() {
            assert!(o.passed, "{o:?}");
        }
    }

    #[test]
    fn bad_lines_are_reported() {
        let err = parse_fixtures("\n{\"name\": 3}\n").unwrap_err();
        assert!(matches!(err, FixtureError::Format { line: 2, .. }));
    }
}
