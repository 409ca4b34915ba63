//! Monomial lattice: exponent vectors, normalized one-parameter subgroups and
//! the integer pairing between them.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    #[error("degree and dimension must be positive (got d={degree}, n={dim})")]
    InvalidParameters { degree: i64, dim: i64 },
    #[error("dimension mismatch: expected {expected} coordinates, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("weights {0} are not non-increasing after normalization")]
    NotNonIncreasing(String),
    #[error("weights {0} do not sum to zero")]
    NotTraceZero(String),
    #[error("weight vector is zero")]
    ZeroWeights,
}

/// Exponent vector of a monomial in `x_0, ..., x_n`.
///
/// `Ord` is the canonical listing order: graded-lexicographic with
/// `x_0 > x_1 > ... > x_n`, largest first. So `x_0^3 < x_0^2 x_1` here,
/// because `x_0^3` is listed before `x_0^2 x_1`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial {
    exponents: Vec<u32>,
}

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial { exponents }
    }

    /// The coordinate monomial `x_i` in `n + 1` variables.
    pub fn variable(i: usize, coordinates: usize) -> Self {
        let mut exponents = vec![0; coordinates];
        exponents[i] = 1;
        Monomial { exponents }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn degree(&self) -> u32 {
        self.exponents.iter().sum()
    }

    pub fn coordinates(&self) -> usize {
        self.exponents.len()
    }

    /// Flip the coordinate order: `x_i -> x_{n-i}`.
    pub fn reversed(&self) -> Monomial {
        Monomial {
            exponents: self.exponents.iter().rev().copied().collect(),
        }
    }

    /// Apply a coordinate permutation: exponent of `x_i` moves to `x_{perm[i]}`.
    pub fn permuted(&self, perm: &[usize]) -> Monomial {
        let mut exponents = vec![0; self.exponents.len()];
        for (i, &e) in self.exponents.iter().enumerate() {
            exponents[perm[i]] = e;
        }
        Monomial { exponents }
    }

    /// Index of the single variable when this is a degree-one monomial.
    pub fn variable_index(&self) -> Option<usize> {
        if self.degree() != 1 {
            return None;
        }
        self.exponents.iter().position(|&e| e == 1)
    }

    pub fn times(&self, other: &Monomial) -> Monomial {
        Monomial {
            exponents: self
                .exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .degree()
            .cmp(&self.degree())
            .then_with(|| other.exponents.cmp(&self.exponents))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    /// `x0^2x3`; the constant monomial prints as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for (i, &e) in self.exponents.iter().enumerate() {
            match e {
                0 => continue,
                1 => write!(f, "x{i}")?,
                _ => write!(f, "x{i}^{e}")?,
            }
            any = true;
        }
        if !any {
            write!(f, "1")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// All monomials of degree `d` in `n + 1` variables, in canonical order.
pub fn enumerate_monomials(d: i64, n: i64) -> Result<Vec<Monomial>, LatticeError> {
    if d <= 0 || n <= 0 {
        return Err(LatticeError::InvalidParameters { degree: d, dim: n });
    }
    let (d, vars) = (d as u32, n as usize + 1);
    let mut out = Vec::new();
    let mut current = vec![0u32; vars];
    fill(&mut out, &mut current, 0, d);
    Ok(out)
}

fn fill(out: &mut Vec<Monomial>, current: &mut Vec<u32>, slot: usize, remaining: u32) {
    if slot + 1 == current.len() {
        current[slot] = remaining;
        out.push(Monomial::new(current.clone()));
        return;
    }
    for e in (0..=remaining).rev() {
        current[slot] = e;
        fill(out, current, slot + 1, remaining - e);
    }
    current[slot] = 0;
}

/// Normalized one-parameter subgroup `Diag(r_0, ..., r_n)`: non-increasing,
/// trace zero, primitive.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OneParameterSubgroup {
    weights: Vec<BigInt>,
}

impl OneParameterSubgroup {
    /// Normalizes by the gcd and fixes the sign so that `r_0 >= r_n`, then
    /// checks the remaining invariants.
    pub fn new(weights: Vec<BigInt>) -> Result<Self, LatticeError> {
        let mut weights = weights;
        let g = weights.iter().fold(BigInt::zero(), |g, w| g.gcd(w));
        if g.is_zero() {
            return Err(LatticeError::ZeroWeights);
        }
        for w in weights.iter_mut() {
            *w = &*w / &g;
        }
        if weights.first() < weights.last() {
            for w in weights.iter_mut() {
                *w = -&*w;
            }
        }
        let shown = format_weights(&weights);
        if weights.windows(2).any(|p| p[0] < p[1]) {
            return Err(LatticeError::NotNonIncreasing(shown));
        }
        if !weights.iter().sum::<BigInt>().is_zero() {
            return Err(LatticeError::NotTraceZero(shown));
        }
        Ok(OneParameterSubgroup { weights })
    }

    pub fn from_i64(weights: &[i64]) -> Result<Self, LatticeError> {
        Self::new(weights.iter().map(|&w| BigInt::from(w)).collect())
    }

    pub fn weights(&self) -> &[BigInt] {
        &self.weights
    }

    pub fn coordinates(&self) -> usize {
        self.weights.len()
    }

    /// `Diag(-r_n, ..., -r_0)`.
    pub fn dual(&self) -> OneParameterSubgroup {
        OneParameterSubgroup {
            weights: self.weights.iter().rev().map(|w| -w).collect(),
        }
    }

    pub fn is_self_dual(&self) -> bool {
        self.dual() == *self
    }

    /// `<x_i, lambda> = r_i`.
    pub fn weight(&self, i: usize) -> &BigInt {
        &self.weights[i]
    }

    pub fn max_abs_weight(&self) -> BigInt {
        self.weights.iter().map(|w| w.abs()).max().unwrap_or_default()
    }
}

fn format_weights(weights: &[BigInt]) -> String {
    let parts: Vec<String> = weights.iter().map(|w| w.to_string()).collect();
    format!("({})", parts.join(","))
}

impl fmt::Display for OneParameterSubgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_weights(&self.weights))
    }
}

impl fmt::Debug for OneParameterSubgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for OneParameterSubgroup {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serialize_int_vec(&self.weights, serializer)
    }
}

impl<'de> Deserialize<'de> for OneParameterSubgroup {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let weights = deserialize_int_vec(deserializer)?;
        OneParameterSubgroup::new(weights).map_err(serde::de::Error::custom)
    }
}

/// Integers go out as JSON numbers while they fit in an `i64`, as strings beyond.
pub(crate) fn serialize_int_vec<S: Serializer>(
    values: &[BigInt],
    serializer: S,
) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = serializer.serialize_seq(Some(values.len()))?;
    for v in values {
        match v.to_i64() {
            Some(small) => seq.serialize_element(&small)?,
            None => seq.serialize_element(&v.to_string())?,
        }
    }
    seq.end()
}

pub(crate) fn deserialize_int_vec<'de, D: Deserializer<'de>>(
    deserializer: D,
) -> Result<Vec<BigInt>, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum IntOrString {
        Int(i64),
        Str(String),
    }
    let raw = Vec::<IntOrString>::deserialize(deserializer)?;
    raw.into_iter()
        .map(|v| match v {
            IntOrString::Int(i) => Ok(BigInt::from(i)),
            IntOrString::Str(s) => s.parse().map_err(serde::de::Error::custom),
        })
        .collect()
}

/// `sum_i e_i r_i` for an arbitrary integer functional.
pub fn pair_with(v: &Monomial, weights: &[BigInt]) -> Result<BigInt, LatticeError> {
    if v.coordinates() != weights.len() {
        return Err(LatticeError::DimensionMismatch {
            expected: weights.len(),
            found: v.coordinates(),
        });
    }
    Ok(v
        .exponents()
        .iter()
        .zip(weights)
        .filter(|(e, _)| **e != 0)
        .map(|(&e, w)| w * e)
        .sum())
}

/// The natural pairing `<v, lambda>`.
pub fn pairing(v: &Monomial, lambda: &OneParameterSubgroup) -> Result<BigInt, LatticeError> {
    pair_with(v, lambda.weights())
}

pub fn dual(lambda: &OneParameterSubgroup) -> OneParameterSubgroup {
    lambda.dual()
}
