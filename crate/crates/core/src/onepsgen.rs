//! The finite set of normalized one-parameter subgroups that suffices for
//! every `t`-stability test, reconstructed as the rays of a hyperplane
//! arrangement inside the Weyl chamber `r_0 >= ... >= r_n`, `sum r_i = 0`.
//!
//! The generated set over-approximates the minimal one; downstream
//! maximality filtering discards the surplus.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::lattice::{enumerate_monomials, LatticeError, Monomial, OneParameterSubgroup};
use crate::linalg::{int_row, nullspace, primitive_integer, rank};
use crate::rational::Rational;
use crate::reference::{reference_lambdas, NamedLambda};

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");
pub const CACHE_DIR_ENV: &str = "VGIT_CACHE_DIR";

#[derive(Debug, thiserror::Error)]
pub enum FundamentalSetError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("fundamental set is not closed under duality: {0} has no dual")]
    NotDualClosed(String),
    #[error("duplicate member {0}")]
    Duplicate(String),
    #[error("member {0} has {1} coordinates, expected {2}")]
    WrongDimension(String, usize, usize),
    #[error("cache document is for (d={0}, n={1}, version {2})")]
    CacheMismatch(u32, u32, String),
    #[error("cache i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("cache format: {0}")]
    Format(#[from] serde_json::Error),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Member {
    pub lambda: OneParameterSubgroup,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl Member {
    pub fn name(&self) -> String {
        self.label.clone().unwrap_or_else(|| self.lambda.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub degree: u32,
    pub dim: u32,
    pub engine_version: String,
    pub hyperplanes: usize,
    pub subsets_examined: u64,
}

/// Canonically sorted, dual-closed set of normalized one-parameter subgroups.
///
/// Members carrying a reference label come first, in reference order; the
/// rest follow by increasing `max |r_i|`, then decreasing weights.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FundamentalSet {
    pub degree: u32,
    pub dim: u32,
    members: Vec<Member>,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReferenceDiff {
    /// Reference entries absent from the generated set.
    pub missing: Vec<NamedLambda>,
    /// Generated members absent from the reference.
    pub extra: Vec<OneParameterSubgroup>,
}

impl ReferenceDiff {
    pub fn is_exact(&self) -> bool {
        self.missing.is_empty() && self.extra.is_empty()
    }
}

impl FundamentalSet {
    /// Builds a set from explicit members, closing under duality and sorting.
    pub fn from_lambdas(
        degree: u32,
        dim: u32,
        lambdas: impl IntoIterator<Item = OneParameterSubgroup>,
        provenance: Provenance,
    ) -> Self {
        let mut set: BTreeSet<OneParameterSubgroup> = BTreeSet::new();
        for l in lambdas {
            set.insert(l.dual());
            set.insert(l);
        }
        let mut fs = FundamentalSet {
            degree,
            dim,
            members: set
                .into_iter()
                .map(|lambda| Member { lambda, label: None })
                .collect(),
            provenance,
        };
        if let Some(reference) = reference_lambdas(degree, dim) {
            fs.apply_labels(&reference);
        } else {
            fs.sort();
        }
        fs
    }

    pub fn members(&self) -> &[Member] {
        &self.members
    }

    pub fn lambdas(&self) -> impl Iterator<Item = &OneParameterSubgroup> {
        self.members.iter().map(|m| &m.lambda)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, lambda: &OneParameterSubgroup) -> bool {
        self.members.iter().any(|m| &m.lambda == lambda)
    }

    pub fn label_of(&self, lambda: &OneParameterSubgroup) -> Option<&str> {
        self.members
            .iter()
            .find(|m| &m.lambda == lambda)
            .and_then(|m| m.label.as_deref())
    }

    /// Display name: the label when present, else the weight vector.
    pub fn name_of(&self, lambda: &OneParameterSubgroup) -> String {
        self.label_of(lambda)
            .map(str::to_string)
            .unwrap_or_else(|| lambda.to_string())
    }

    /// Relabels members found in `reference` and re-sorts.
    pub fn apply_labels(&mut self, reference: &[NamedLambda]) {
        for m in self.members.iter_mut() {
            m.label = reference
                .iter()
                .find(|r| r.lambda == m.lambda)
                .map(|r| r.label.clone());
        }
        let rank_of = |m: &Member| {
            reference
                .iter()
                .position(|r| r.lambda == m.lambda)
                .unwrap_or(usize::MAX)
        };
        self.members.sort_by(|a, b| {
            rank_of(a)
                .cmp(&rank_of(b))
                .then_with(|| unlabeled_order(&a.lambda, &b.lambda))
        });
    }

    fn sort(&mut self) {
        self.members
            .sort_by(|a, b| unlabeled_order(&a.lambda, &b.lambda));
    }

    pub fn reference_diff(&self, reference: &[NamedLambda]) -> ReferenceDiff {
        ReferenceDiff {
            missing: reference
                .iter()
                .filter(|r| !self.contains(&r.lambda))
                .cloned()
                .collect(),
            extra: self
                .lambdas()
                .filter(|l| !reference.iter().any(|r| &r.lambda == *l))
                .cloned()
                .collect(),
        }
    }

    /// Checks the structural invariants: dimension, duplicates, dual closure.
    pub fn verify(&self) -> Result<(), FundamentalSetError> {
        let coords = self.dim as usize + 1;
        let mut seen = BTreeSet::new();
        for m in &self.members {
            if m.lambda.coordinates() != coords {
                return Err(FundamentalSetError::WrongDimension(
                    m.lambda.to_string(),
                    m.lambda.coordinates(),
                    coords,
                ));
            }
            if !seen.insert(m.lambda.clone()) {
                return Err(FundamentalSetError::Duplicate(m.lambda.to_string()));
            }
        }
        for m in &self.members {
            if !seen.contains(&m.lambda.dual()) {
                return Err(FundamentalSetError::NotDualClosed(m.lambda.to_string()));
            }
        }
        Ok(())
    }
}

fn unlabeled_order(a: &OneParameterSubgroup, b: &OneParameterSubgroup) -> std::cmp::Ordering {
    a.max_abs_weight()
        .cmp(&b.max_abs_weight())
        .then_with(|| b.weights().cmp(a.weights()))
}

/// Primitive normals `v - v'` for distinct `v, v'` of the same degree, with
/// the first non-zero entry positive.
fn hyperplane_normals(groups: &[Vec<Monomial>]) -> Vec<Vec<BigInt>> {
    let mut out = BTreeSet::new();
    for group in groups {
        for (i, a) in group.iter().enumerate() {
            for b in &group[i + 1..] {
                let diff: Vec<BigInt> = a
                    .exponents()
                    .iter()
                    .zip(b.exponents())
                    .map(|(&x, &y)| BigInt::from(x as i64 - y as i64))
                    .collect();
                out.insert(normalize_normal(diff));
            }
        }
    }
    out.into_iter().collect()
}

fn normalize_normal(v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    let mut v: Vec<BigInt> = v.into_iter().map(|x| x / &g).collect();
    if v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        v.iter_mut().for_each(|x| *x = -&*x);
    }
    v
}

/// The line cut out by `rows` together with `sum r_i = 0`, if one-dimensional.
fn solution_line(rows: &[&Vec<BigInt>], coords: usize) -> Option<Vec<BigInt>> {
    let mut m: Vec<Vec<Rational>> = rows.iter().map(|r| int_row(r)).collect();
    m.push(vec![Rational::one(); coords]);
    if rank(&m, coords) != coords - 1 {
        return None;
    }
    let kernel = nullspace(&m, coords);
    debug_assert_eq!(kernel.len(), 1);
    Some(primitive_integer(&kernel[0]))
}

fn in_weyl_chamber(v: &[BigInt]) -> bool {
    v.windows(2).all(|p| p[0] >= p[1])
}

/// Ray generators of the arrangement inside the chamber, with the number of
/// subsets examined.
fn arrangement_rays_counted(
    d: i64,
    n: i64,
) -> Result<(BTreeSet<OneParameterSubgroup>, usize, u64), LatticeError> {
    let surface = enumerate_monomials(d, n)?;
    let linear = enumerate_monomials(1, n)?;
    let normals = hyperplane_normals(&[surface, linear]);
    let coords = n as usize + 1;
    let k = n as usize - 1;

    let line_to_ray = |line: Vec<BigInt>| -> Option<OneParameterSubgroup> {
        let neg: Vec<BigInt> = line.iter().map(|x| -x).collect();
        [line, neg]
            .into_iter()
            .find(|v| in_weyl_chamber(v))
            .and_then(|v| OneParameterSubgroup::new(v).ok())
    };

    if k == 0 {
        let rays: BTreeSet<_> = solution_line(&[], coords)
            .and_then(line_to_ray)
            .into_iter()
            .collect();
        return Ok((rays, normals.len(), 1));
    }

    let per_first: Vec<(BTreeSet<OneParameterSubgroup>, u64)> = (0..normals.len())
        .into_par_iter()
        .map(|first| {
            let mut found = BTreeSet::new();
            let mut examined = 0u64;
            let mut chosen = vec![first];
            for_each_combination(first + 1, normals.len(), k - 1, &mut chosen, &mut |idx| {
                examined += 1;
                let rows: Vec<&Vec<BigInt>> = idx.iter().map(|&i| &normals[i]).collect();
                if let Some(ray) = solution_line(&rows, coords).and_then(line_to_ray) {
                    found.insert(ray);
                }
            });
            (found, examined)
        })
        .collect();

    let mut rays = BTreeSet::new();
    let mut examined = 0;
    for (set, count) in per_first {
        rays.extend(set);
        examined += count;
    }
    Ok((rays, normals.len(), examined))
}

fn for_each_combination(
    start: usize,
    end: usize,
    remaining: usize,
    chosen: &mut Vec<usize>,
    f: &mut impl FnMut(&[usize]),
) {
    if remaining == 0 {
        f(chosen);
        return;
    }
    for i in start..end {
        if end - i < remaining {
            break;
        }
        chosen.push(i);
        for_each_combination(i + 1, end, remaining - 1, chosen, f);
        chosen.pop();
    }
}

/// Primitive generators of all arrangement rays in the chamber, sorted.
pub fn arrangement_rays(d: i64, n: i64) -> Result<Vec<OneParameterSubgroup>, LatticeError> {
    Ok(arrangement_rays_counted(d, n)?.0.into_iter().collect())
}

pub fn generate_fundamental_set(d: i64, n: i64) -> Result<FundamentalSet, LatticeError> {
    let (rays, hyperplanes, subsets_examined) = arrangement_rays_counted(d, n)?;
    let provenance = Provenance {
        degree: d as u32,
        dim: n as u32,
        engine_version: ENGINE_VERSION.to_string(),
        hyperplanes,
        subsets_examined,
    };
    Ok(FundamentalSet::from_lambdas(d as u32, n as u32, rays, provenance))
}

pub fn cache_file(dir: &Path, d: u32, n: u32) -> PathBuf {
    dir.join(format!("fundamental-set-d{d}-n{n}-v{ENGINE_VERSION}.json"))
}

/// Cache directory from `VGIT_CACHE_DIR`, falling back to `~/.cache/vgit`.
pub fn default_cache_dir() -> Option<PathBuf> {
    if let Some(dir) = std::env::var_os(CACHE_DIR_ENV) {
        return Some(PathBuf::from(dir));
    }
    std::env::var_os("HOME").map(|home| PathBuf::from(home).join(".cache").join("vgit"))
}

fn read_cached(path: &Path, d: u32, n: u32) -> Result<FundamentalSet, FundamentalSetError> {
    let text = fs::read_to_string(path)?;
    let fs_: FundamentalSet = serde_json::from_str(&text)?;
    if fs_.degree != d || fs_.dim != n || fs_.provenance.engine_version != ENGINE_VERSION {
        return Err(FundamentalSetError::CacheMismatch(
            fs_.degree,
            fs_.dim,
            fs_.provenance.engine_version.clone(),
        ));
    }
    fs_.verify()?;
    Ok(fs_)
}

/// Loads the set from the cache when a valid document exists, otherwise
/// generates it and writes the cache. Cache write failures are ignored.
pub fn load_or_generate(
    d: i64,
    n: i64,
    cache_dir: Option<&Path>,
) -> Result<FundamentalSet, FundamentalSetError> {
    if d <= 0 || n <= 0 {
        return Err(LatticeError::InvalidParameters { degree: d, dim: n }.into());
    }
    if let Some(dir) = cache_dir {
        let path = cache_file(dir, d as u32, n as u32);
        if let Ok(cached) = read_cached(&path, d as u32, n as u32) {
            return Ok(cached);
        }
        let generated = generate_fundamental_set(d, n)?;
        if fs::create_dir_all(dir).is_ok() {
            if let Ok(text) = serde_json::to_string_pretty(&generated) {
                let _ = fs::write(&path, text);
            }
        }
        return Ok(generated);
    }
    Ok(generate_fundamental_set(d, n)?)
}
