//! The Hilbert–Mumford function, destabilizing sets `N⊕_t(λ, x_i)` and their
//! maximal elements, and frame-fixed non-stability certificates.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::lattice::{enumerate_monomials, pairing, LatticeError, Monomial, OneParameterSubgroup};
use crate::onepsgen::FundamentalSet;
use crate::rational::Rational;
use crate::walls::candidate_walls;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StabilityError {
    #[error("surface support is empty")]
    EmptySurface,
    #[error("divisor support is empty")]
    EmptyDivisor,
    #[error("surface monomials do not share one degree")]
    MixedDegree,
    #[error("divisor monomial {0} is not linear")]
    NotLinear(String),
    #[error("t = {0} lies outside [0,1]")]
    OutsideClosedInterval(Rational),
    #[error("t = {0} lies outside (0,1)")]
    OutsideOpenInterval(Rational),
    #[error("pivot x{pivot} does not exist with {coordinates} coordinates")]
    PivotOutOfRange { pivot: usize, coordinates: usize },
    #[error("fundamental set is for (d={0}, n={1})")]
    WrongFundamentalSet(u32, u32),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

pub(crate) fn require_closed(t: &Rational) -> Result<(), StabilityError> {
    if t.in_unit_interval() {
        Ok(())
    } else {
        Err(StabilityError::OutsideClosedInterval(t.clone()))
    }
}

pub(crate) fn require_open(t: &Rational) -> Result<(), StabilityError> {
    if t.in_open_unit_interval() {
        Ok(())
    } else {
        Err(StabilityError::OutsideOpenInterval(t.clone()))
    }
}

/// Monomial supports `(𝒮, 𝒟)` of the equations `(F, H)` of a pair.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SupportPair {
    surface: Vec<Monomial>,
    divisor: Vec<Monomial>,
}

impl SupportPair {
    /// Sorts and dedupes both supports.
    pub fn new(
        surface: impl IntoIterator<Item = Monomial>,
        divisor: impl IntoIterator<Item = Monomial>,
    ) -> Result<Self, StabilityError> {
        let mut surface: Vec<Monomial> = surface.into_iter().collect();
        let mut divisor: Vec<Monomial> = divisor.into_iter().collect();
        surface.sort();
        surface.dedup();
        divisor.sort();
        divisor.dedup();
        let first = surface.first().ok_or(StabilityError::EmptySurface)?;
        if divisor.is_empty() {
            return Err(StabilityError::EmptyDivisor);
        }
        let coords = first.coordinates();
        if surface.iter().any(|v| v.degree() != first.degree()) {
            return Err(StabilityError::MixedDegree);
        }
        for m in surface.iter().chain(&divisor) {
            if m.coordinates() != coords {
                return Err(LatticeError::DimensionMismatch {
                    expected: coords,
                    found: m.coordinates(),
                }
                .into());
            }
        }
        if let Some(b) = divisor.iter().find(|b| b.degree() != 1) {
            return Err(StabilityError::NotLinear(b.to_string()));
        }
        Ok(SupportPair { surface, divisor })
    }

    pub fn surface(&self) -> &[Monomial] {
        &self.surface
    }

    pub fn divisor(&self) -> &[Monomial] {
        &self.divisor
    }

    pub fn degree(&self) -> u32 {
        self.surface[0].degree()
    }

    pub fn coordinates(&self) -> usize {
        self.surface[0].coordinates()
    }

    /// Moves the exponent of `x_i` to `x_{perm[i]}` in every monomial.
    pub fn permuted(&self, perm: &[usize]) -> SupportPair {
        SupportPair::new(
            self.surface.iter().map(|v| v.permuted(perm)),
            self.divisor.iter().map(|v| v.permuted(perm)),
        )
        .expect("permutation preserves validity")
    }

    pub fn reversed(&self) -> SupportPair {
        SupportPair::new(
            self.surface.iter().map(Monomial::reversed),
            self.divisor.iter().map(Monomial::reversed),
        )
        .expect("reversal preserves validity")
    }
}

fn min_pairing(ms: &[Monomial], lambda: &OneParameterSubgroup) -> Result<BigInt, LatticeError> {
    let mut best: Option<BigInt> = None;
    for m in ms {
        let p = pairing(m, lambda)?;
        if best.as_ref().is_none_or(|b| p < *b) {
            best = Some(p);
        }
    }
    Ok(best.expect("supports are non-empty"))
}

/// `μ_t = min_𝒮 <v,λ> + t · min_𝒟 <x_i,λ>`.
pub fn mu(
    pair: &SupportPair,
    lambda: &OneParameterSubgroup,
    t: &Rational,
) -> Result<Rational, StabilityError> {
    require_closed(t)?;
    let s = min_pairing(&pair.surface, lambda)?;
    let b = min_pairing(&pair.divisor, lambda)?;
    Ok(Rational::integer(s) + t * Rational::integer(b))
}

/// An interval of `t` values with explicit endpoint closure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TInterval {
    pub lo: Rational,
    pub lo_closed: bool,
    pub hi: Rational,
    pub hi_closed: bool,
}

impl TInterval {
    pub fn point(t: Rational) -> Self {
        TInterval {
            lo: t.clone(),
            lo_closed: true,
            hi: t,
            hi_closed: true,
        }
    }

    pub fn open_unit() -> Self {
        TInterval {
            lo: Rational::zero(),
            lo_closed: false,
            hi: Rational::one(),
            hi_closed: false,
        }
    }

    pub fn contains(&self, t: &Rational) -> bool {
        let above = match t.cmp(&self.lo) {
            Ordering::Greater => true,
            Ordering::Equal => self.lo_closed,
            Ordering::Less => false,
        };
        let below = match t.cmp(&self.hi) {
            Ordering::Less => true,
            Ordering::Equal => self.hi_closed,
            Ordering::Greater => false,
        };
        above && below
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi && self.lo_closed && self.hi_closed
    }
}

impl fmt::Display for TInterval {
    /// `[1/3,3/7)`, or just `3/7` for a single point.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_point() {
            return write!(f, "{}", self.lo);
        }
        write!(
            f,
            "{}{},{}{}",
            if self.lo_closed { '[' } else { '(' },
            self.lo,
            self.hi,
            if self.hi_closed { ']' } else { ')' }
        )
    }
}

/// `N⊕_t(λ, x_i) = (V⊕, B⊕)` with the `t` range over which it is reported.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DestabilizingConfiguration {
    pub lambda: OneParameterSubgroup,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub pivot: usize,
    pub v_plus: Vec<Monomial>,
    pub b_plus: Vec<Monomial>,
    pub t_interval: TInterval,
    /// Other members of the fundamental set producing identical sets.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub equivalent: Vec<OneParameterSubgroup>,
}

impl DestabilizingConfiguration {
    pub fn name(&self) -> String {
        self.label.clone().unwrap_or_else(|| self.lambda.to_string())
    }

    /// Whether the pair's supports fit inside `(V⊕, B⊕)`.
    pub fn contains(&self, pair: &SupportPair) -> bool {
        pair.surface().iter().all(|v| self.v_plus.binary_search(v).is_ok())
            && pair.divisor().iter().all(|b| self.b_plus.contains(b))
    }
}

pub(crate) fn b_plus(pivot: usize, coords: usize) -> Vec<Monomial> {
    (0..=pivot).map(|k| Monomial::variable(k, coords)).collect()
}

/// `{v : <v,λ> + t <x_i,λ> >= 0}` with the maximal interval around `t`
/// inside `(0,1)` on which that set stays constant.
pub fn compute_configuration(
    d: i64,
    lambda: &OneParameterSubgroup,
    pivot: usize,
    t: &Rational,
) -> Result<DestabilizingConfiguration, StabilityError> {
    require_closed(t)?;
    let coords = lambda.coordinates();
    if pivot >= coords {
        return Err(StabilityError::PivotOutOfRange {
            pivot,
            coordinates: coords,
        });
    }
    let monomials = enumerate_monomials(d, coords as i64 - 1)?;
    let ri = Rational::integer(lambda.weight(pivot).clone());
    let mut v_plus = Vec::new();
    let mut crossings = Vec::new();
    for v in &monomials {
        let p = Rational::integer(pairing(v, lambda)?);
        if !(&p + &(t * &ri)).is_negative() {
            v_plus.push(v.clone());
        }
        if !ri.is_zero() {
            crossings.push(-(&p / &ri));
        }
    }
    let t_interval = constancy_interval(t, &ri, &crossings);
    Ok(DestabilizingConfiguration {
        lambda: lambda.clone(),
        label: None,
        pivot,
        v_plus,
        b_plus: b_plus(pivot, coords),
        t_interval,
        equivalent: Vec::new(),
    })
}

/// For weight `r_i < 0` a monomial belongs for `t <= c_v`, so the upper end
/// is closed; for `r_i > 0` it belongs for `t >= c_v`, closing the lower end.
fn constancy_interval(t: &Rational, ri: &Rational, crossings: &[Rational]) -> TInterval {
    let mut out = TInterval::open_unit();
    let inside = |c: &&Rational| c.in_open_unit_interval();
    if ri.is_negative() {
        if let Some(hi) = crossings.iter().filter(inside).filter(|c| *c >= t).min() {
            out.hi = hi.clone();
            out.hi_closed = true;
        }
        if let Some(lo) = crossings.iter().filter(inside).filter(|c| *c < t).max() {
            out.lo = lo.clone();
        }
    } else if ri.is_positive() {
        if let Some(lo) = crossings.iter().filter(inside).filter(|c| *c <= t).max() {
            out.lo = lo.clone();
            out.lo_closed = true;
        }
        if let Some(hi) = crossings.iter().filter(inside).filter(|c| *c > t).min() {
            out.hi = hi.clone();
        }
    }
    out
}

/// Fixed-width bitset over an indexed monomial list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct MonoSet {
    words: Vec<u64>,
}

impl MonoSet {
    fn empty(len: usize) -> Self {
        MonoSet {
            words: vec![0; len.div_ceil(64)],
        }
    }

    fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub(crate) fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    fn is_empty(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    fn is_subset(&self, other: &MonoSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub(crate) fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.words.len() * 64).filter(|&i| self.contains(i))
    }
}

/// One maximal configuration at a sweep point: the chosen member of the
/// fundamental set and every other member producing the same sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Rep {
    pub(crate) member: usize,
    pub(crate) pivot: usize,
    pub(crate) v: MonoSet,
    pub(crate) tied: Vec<usize>,
}

/// Maximal destabilizing data at every candidate wall in `(0,1)` and at
/// the midpoint of every gap between candidates.
///
/// When several members produce identical maximal sets, the one chosen at
/// the previous sweep point is kept while it stays tied; otherwise the
/// earliest in fundamental-set order wins.
#[derive(Debug, Clone)]
pub struct Atlas {
    fundamental: FundamentalSet,
    monomials: Vec<Monomial>,
    pairings: Vec<Vec<BigInt>>,
    candidates: Vec<Rational>,
    grid: Vec<Rational>,
    on_candidate: Vec<bool>,
    states: Vec<Vec<Rep>>,
}

impl Atlas {
    pub fn new(fundamental: &FundamentalSet) -> Result<Atlas, StabilityError> {
        let (d, n) = (fundamental.degree as i64, fundamental.dim as i64);
        let monomials = enumerate_monomials(d, n)?;
        let pairings: Vec<Vec<BigInt>> = fundamental
            .lambdas()
            .map(|l| monomials.iter().map(|v| pairing(v, l)).collect())
            .collect::<Result<_, _>>()?;
        let candidates = candidate_walls(fundamental)?;
        let mut grid = Vec::new();
        let mut on_candidate = Vec::new();
        for w in candidates.windows(2) {
            if w[0].is_positive() {
                grid.push(w[0].clone());
                on_candidate.push(true);
            }
            grid.push(w[0].midpoint(&w[1]));
            on_candidate.push(false);
        }
        let mut atlas = Atlas {
            fundamental: fundamental.clone(),
            monomials,
            pairings,
            candidates,
            grid,
            on_candidate,
            states: Vec::new(),
        };
        let groups: Vec<Vec<(usize, MonoSet, Vec<usize>)>> = atlas
            .grid
            .par_iter()
            .map(|t| atlas.maximal_groups(t))
            .collect();
        let mut previous: BTreeMap<(usize, MonoSet), usize> = BTreeMap::new();
        for point in groups {
            let mut reps = Vec::with_capacity(point.len());
            let mut current = BTreeMap::new();
            for (pivot, v, members) in point {
                let key = (pivot, v);
                let member = previous
                    .get(&key)
                    .copied()
                    .filter(|m| members.contains(m))
                    .unwrap_or(members[0]);
                current.insert(key.clone(), member);
                reps.push(Rep {
                    member,
                    pivot: key.0,
                    v: key.1,
                    tied: members.into_iter().filter(|&m| m != member).collect(),
                });
            }
            reps.sort_by(|a, b| (a.member, a.pivot, &a.v).cmp(&(b.member, b.pivot, &b.v)));
            atlas.states.push(reps);
            previous = current;
        }
        Ok(atlas)
    }

    fn v_plus_set(&self, member: usize, pivot: usize, t: &Rational) -> MonoSet {
        let ri = Rational::integer(self.fundamental.members()[member].lambda.weight(pivot).clone());
        let shift = t * &ri;
        let mut set = MonoSet::empty(self.monomials.len());
        for (k, p) in self.pairings[member].iter().enumerate() {
            if !(Rational::integer(p.clone()) + &shift).is_negative() {
                set.insert(k);
            }
        }
        set
    }

    /// Distinct maximal `(pivot, V)` keys at `t`, each with the members that
    /// realize it in fundamental-set order.
    fn maximal_groups(&self, t: &Rational) -> Vec<(usize, MonoSet, Vec<usize>)> {
        let coords = self.fundamental.dim as usize + 1;
        let mut groups: BTreeMap<(usize, MonoSet), Vec<usize>> = BTreeMap::new();
        for member in 0..self.fundamental.len() {
            for pivot in 0..coords {
                let v = self.v_plus_set(member, pivot, t);
                if !v.is_empty() {
                    groups.entry((pivot, v)).or_default().push(member);
                }
            }
        }
        let keys: Vec<&(usize, MonoSet)> = groups.keys().collect();
        let maximal: Vec<(usize, MonoSet)> = keys
            .iter()
            .filter(|(p, v)| {
                !keys
                    .iter()
                    .any(|(q, w)| (p, v) != (q, w) && p <= q && v.is_subset(w))
            })
            .map(|k| (*k).clone())
            .collect();
        maximal
            .into_iter()
            .map(|key| {
                let members = groups.remove(&key).expect("key present");
                (key.0, key.1, members)
            })
            .collect()
    }

    pub fn fundamental_set(&self) -> &FundamentalSet {
        &self.fundamental
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    /// Raw candidate walls, including 0 and 1.
    pub fn candidates(&self) -> &[Rational] {
        &self.candidates
    }

    /// Sweep points: every interior candidate and every gap midpoint.
    pub fn grid(&self) -> &[Rational] {
        &self.grid
    }

    pub fn is_candidate_point(&self, k: usize) -> bool {
        self.on_candidate[k]
    }

    pub(crate) fn reps(&self, k: usize) -> &[Rep] {
        &self.states[k]
    }

    /// Sweep index whose data holds at `t`: the candidate itself, or the
    /// midpoint of the gap containing `t`.
    pub fn locate(&self, t: &Rational) -> Result<usize, StabilityError> {
        require_open(t)?;
        match self.candidates.binary_search(t) {
            Ok(j) => Ok(2 * j - 1),
            Err(j) => Ok(2 * (j - 1)),
        }
    }

    /// Interval covered by sweep indices `a..=b`.
    pub(crate) fn span(&self, a: usize, b: usize) -> TInterval {
        let (lo, lo_closed) = if self.on_candidate[a] {
            (self.grid[a].clone(), true)
        } else {
            (self.candidates[a / 2].clone(), false)
        };
        let (hi, hi_closed) = if self.on_candidate[b] {
            (self.grid[b].clone(), true)
        } else {
            (self.candidates[b / 2 + 1].clone(), false)
        };
        TInterval {
            lo,
            lo_closed,
            hi,
            hi_closed,
        }
    }

    fn same_rep(&self, k: usize, r: &Rep) -> bool {
        self.states[k]
            .iter()
            .any(|s| s.member == r.member && s.pivot == r.pivot && s.v == r.v)
    }

    /// Maximal run of sweep points around `k` where `r` stays the chosen
    /// representative with the same set.
    fn run(&self, k: usize, r: &Rep) -> (usize, usize) {
        let mut a = k;
        while a > 0 && self.same_rep(a - 1, r) {
            a -= 1;
        }
        let mut b = k;
        while b + 1 < self.grid.len() && self.same_rep(b + 1, r) {
            b += 1;
        }
        (a, b)
    }

    fn materialize(&self, r: &Rep, interval: TInterval) -> DestabilizingConfiguration {
        let coords = self.fundamental.dim as usize + 1;
        let m = &self.fundamental.members()[r.member];
        DestabilizingConfiguration {
            lambda: m.lambda.clone(),
            label: m.label.clone(),
            pivot: r.pivot,
            v_plus: r.v.iter().map(|i| self.monomials[i].clone()).collect(),
            b_plus: b_plus(r.pivot, coords),
            t_interval: interval,
            equivalent: r
                .tied
                .iter()
                .map(|&i| self.fundamental.members()[i].lambda.clone())
                .collect(),
        }
    }

    /// Maximal configurations at `t`, each reported with the interval over
    /// which it remains the chosen maximal representative.
    pub fn maximal_configurations(
        &self,
        t: &Rational,
    ) -> Result<Vec<DestabilizingConfiguration>, StabilityError> {
        let k = self.locate(t)?;
        Ok(self.states[k]
            .iter()
            .map(|r| {
                let (a, b) = self.run(k, r);
                self.materialize(r, self.span(a, b))
            })
            .collect())
    }

    /// Every distinct maximal configuration over `(0,1)`, sorted by
    /// fundamental-set order, pivot and interval start.
    pub fn table(&self) -> Vec<DestabilizingConfiguration> {
        let mut seen: Vec<(usize, usize, usize, usize)> = Vec::new();
        let mut rows: Vec<(usize, DestabilizingConfiguration, usize)> = Vec::new();
        for k in 0..self.grid.len() {
            for r in &self.states[k] {
                let (a, b) = self.run(k, r);
                if seen.contains(&(r.member, r.pivot, a, b)) {
                    continue;
                }
                seen.push((r.member, r.pivot, a, b));
                rows.push((r.member, self.materialize(r, self.span(a, b)), a));
            }
        }
        rows.sort_by_key(|x| (x.0, x.1.pivot, x.2));
        rows.into_iter().map(|(_, c, _)| c).collect()
    }
}

/// Maximal configurations at `t` through a cached sweep of the set.
pub fn maximal_configurations(
    fundamental: &FundamentalSet,
    t: &Rational,
) -> Result<Vec<DestabilizingConfiguration>, StabilityError> {
    Atlas::new(fundamental)?.maximal_configurations(t)
}

/// Distinct maximal `(V⊕, pivot)` data at `t` by direct pairwise
/// comparison of all configurations, without the sweep.
pub fn maximal_sets_brute_force(
    fundamental: &FundamentalSet,
    t: &Rational,
) -> Result<Vec<(Vec<Monomial>, usize)>, StabilityError> {
    require_open(t)?;
    let d = fundamental.degree as i64;
    let mut all: Vec<(Vec<Monomial>, usize)> = Vec::new();
    for l in fundamental.lambdas() {
        for pivot in 0..l.coordinates() {
            let c = compute_configuration(d, l, pivot, t)?;
            if !c.v_plus.is_empty() {
                all.push((c.v_plus, pivot));
            }
        }
    }
    let subset = |a: &[Monomial], b: &[Monomial]| a.iter().all(|v| b.binary_search(v).is_ok());
    let mut out: Vec<(Vec<Monomial>, usize)> = all
        .iter()
        .filter(|(v, p)| {
            !all.iter()
                .any(|(w, q)| (v, p) != (w, q) && p <= q && subset(v, w))
        })
        .cloned()
        .collect();
    out.sort_by(|a, b| (a.1, &a.0).cmp(&(b.1, &b.0)));
    out.dedup();
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NonStableVerdict {
    Unstable,
    NotStable,
}

impl fmt::Display for NonStableVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NonStableVerdict::Unstable => "unstable",
            NonStableVerdict::NotStable => "not-stable",
        })
    }
}

/// A member of the fundamental set with `μ_t >= 0` in a given frame.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonStableCertificate {
    pub lambda: OneParameterSubgroup,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub pivot: usize,
    pub mu: Rational,
    pub verdict: NonStableVerdict,
    /// Coordinate permutation applied to the pair before testing.
    pub frame: Vec<usize>,
}

/// All permutations of `0..coords` in lexicographic order, identity first.
pub fn coordinate_permutations(coords: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..coords).collect();
    loop {
        out.push(current.clone());
        let Some(i) = (0..coords.saturating_sub(1)).rev().find(|&i| current[i] < current[i + 1])
        else {
            return out;
        };
        let j = (i + 1..coords).rev().find(|&j| current[j] > current[i]).unwrap();
        current.swap(i, j);
        current[i + 1..].reverse();
    }
}

/// The member maximizing `μ_t` in the identity frame, if that maximum is
/// non-negative. Ties go to the earliest member.
pub fn nonstable_certificate(
    pair: &SupportPair,
    fundamental: &FundamentalSet,
    t: &Rational,
) -> Result<Option<NonStableCertificate>, StabilityError> {
    let identity: Vec<usize> = (0..pair.coordinates()).collect();
    nonstable_certificate_in_frames(pair, fundamental, t, &[identity])
}

/// Best certificate over the given frames: largest `μ_t`, earliest frame on ties.
pub fn nonstable_certificate_in_frames(
    pair: &SupportPair,
    fundamental: &FundamentalSet,
    t: &Rational,
    frames: &[Vec<usize>],
) -> Result<Option<NonStableCertificate>, StabilityError> {
    require_open(t)?;
    if pair.coordinates() != fundamental.dim as usize + 1 || pair.degree() != fundamental.degree {
        return Err(StabilityError::WrongFundamentalSet(
            fundamental.degree,
            fundamental.dim,
        ));
    }
    let mut best: Option<(Rational, usize, usize, usize)> = None;
    for (f, perm) in frames.iter().enumerate() {
        let moved = pair.permuted(perm);
        let pivot = moved
            .divisor()
            .iter()
            .filter_map(Monomial::variable_index)
            .max()
            .expect("divisor is linear and non-empty");
        for (m, l) in fundamental.lambdas().enumerate() {
            let value = mu(&moved, l, t)?;
            if best.as_ref().is_none_or(|b| value > b.0) {
                best = Some((value, f, m, pivot));
            }
        }
    }
    Ok(best.and_then(|(value, f, m, pivot)| {
        let verdict = match value.signum() {
            Ordering::Greater => NonStableVerdict::Unstable,
            Ordering::Equal => NonStableVerdict::NotStable,
            Ordering::Less => return None,
        };
        let member = &fundamental.members()[m];
        Some(NonStableCertificate {
            lambda: member.lambda.clone(),
            label: member.label.clone(),
            pivot,
            mu: value,
            verdict,
            frame: frames[f].clone(),
        })
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::onepsgen::generate_fundamental_set;

    fn mono(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    fn lam(w: &[i64]) -> OneParameterSubgroup {
        OneParameterSubgroup::from_i64(w).unwrap()
    }

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn x(i: usize) -> Monomial {
        Monomial::variable(i, 4)
    }

    fn names(c: &DestabilizingConfiguration) -> Vec<String> {
        c.v_plus.iter().map(|v| v.to_string()).collect()
    }

    #[test]
    fn mu_on_the_non_reduced_divisor_shape() {
        let mut surface: Vec<Monomial> = enumerate_monomials(3, 3)
            .unwrap()
            .into_iter()
            .filter(|v| v.exponents()[0] >= 1)
            .collect();
        surface.extend([mono(&[0, 3, 0, 0]), mono(&[0, 2, 1, 0]), mono(&[0, 2, 0, 1])]);
        let pair = SupportPair::new(surface, [x(0)]).unwrap();
        let l3 = lam(&[5, 1, -3, -3]);
        for t in ["0", "1/5", "1/2", "1"] {
            let t = q(t);
            assert_eq!(mu(&pair, &l3, &t).unwrap(), Rational::integer(-1) + Rational::integer(5) * &t);
        }
        assert!(mu(&pair, &l3, &q("3/2")).is_err());
    }

    #[test]
    fn mu_vanishes_on_three_a2_pair() {
        let pair = SupportPair::new([mono(&[1, 1, 0, 1]), mono(&[0, 0, 3, 0])], [x(2)]).unwrap();
        for t in ["0", "1/3", "1"] {
            assert!(mu(&pair, &lam(&[1, 1, 0, -2]), &q(t)).unwrap().is_zero());
        }
    }

    #[test]
    fn support_pair_validation() {
        assert_eq!(SupportPair::new([], [x(0)]), Err(StabilityError::EmptySurface));
        assert_eq!(
            SupportPair::new([mono(&[3, 0, 0, 0])], []),
            Err(StabilityError::EmptyDivisor)
        );
        assert_eq!(
            SupportPair::new([mono(&[3, 0, 0, 0]), mono(&[2, 0, 0, 0])], [x(0)]),
            Err(StabilityError::MixedDegree)
        );
        assert!(matches!(
            SupportPair::new([mono(&[3, 0, 0, 0])], [mono(&[2, 0, 0, 0])]),
            Err(StabilityError::NotLinear(_))
        ));
    }

    #[test]
    fn configuration_examples() {
        let c = compute_configuration(3, &lam(&[5, 1, 1, -7]), 3, &q("1/3")).unwrap();
        assert_eq!(
            names(&c),
            ["x0^3", "x0^2x1", "x0^2x2", "x0^2x3", "x0x1^2", "x0x1x2", "x0x2^2", "x1^3", "x1^2x2", "x1x2^2", "x2^3"]
        );
        assert_eq!(c.t_interval.to_string(), "(0,3/7]");

        let c = compute_configuration(3, &lam(&[1, 0, 0, -1]), 2, &q("1/2")).unwrap();
        assert_eq!(
            names(&c),
            ["x0^3", "x0^2x1", "x0^2x2", "x0^2x3", "x0x1^2", "x0x1x2", "x0x1x3", "x0x2^2", "x0x2x3", "x1^3", "x1^2x2", "x1x2^2", "x2^3"]
        );
        assert_eq!(c.b_plus, vec![x(0), x(1), x(2)]);
        assert_eq!(c.t_interval.to_string(), "(0,1)");

        let c = compute_configuration(3, &lam(&[1, 1, 1, -3]), 3, &q("1/2")).unwrap();
        assert_eq!(c.v_plus.len(), 10);
        assert!(c.v_plus.iter().all(|v| v.exponents()[3] == 0));
    }

    #[test]
    fn configuration_rejects_bad_input() {
        let l = lam(&[1, 0, 0, -1]);
        assert!(matches!(
            compute_configuration(3, &l, 4, &q("1/2")),
            Err(StabilityError::PivotOutOfRange { .. })
        ));
        assert!(compute_configuration(3, &l, 0, &q("-1/2")).is_err());
    }

    #[test]
    fn intervals_display() {
        let i = TInterval {
            lo: q("1/3"),
            lo_closed: true,
            hi: q("3/7"),
            hi_closed: false,
        };
        assert_eq!(i.to_string(), "[1/3,3/7)");
        assert!(i.contains(&q("1/3")) && !i.contains(&q("3/7")));
        assert_eq!(TInterval::point(q("5/9")).to_string(), "5/9");
    }

    #[test]
    fn maximal_at_first_chamber() {
        let fs = generate_fundamental_set(3, 3).unwrap();
        let atlas = Atlas::new(&fs).unwrap();
        let got: Vec<(String, usize)> = atlas
            .maximal_configurations(&q("1/10"))
            .unwrap()
            .iter()
            .map(|c| (c.name(), c.pivot))
            .collect();
        let want: Vec<(String, usize)> = [("λ1", 2), ("λ2", 1), ("λ̄2", 2), ("λ̄3", 3), ("λ̄8", 3), ("λ9", 3)]
            .iter()
            .map(|(a, b)| (a.to_string(), *b))
            .collect();
        assert_eq!(got, want);
    }

    #[test]
    fn lambda_bar_six_at_one_half() {
        let fs = generate_fundamental_set(3, 3).unwrap();
        let atlas = Atlas::new(&fs).unwrap();
        let all = atlas.maximal_configurations(&q("1/2")).unwrap();
        let c = all.iter().find(|c| c.name() == "λ̄6" && c.pivot == 3).unwrap();
        assert_eq!(
            names(c),
            ["x0^3", "x0^2x1", "x0^2x2", "x0^2x3", "x0x1^2", "x0x1x2", "x0x2^2", "x1^3", "x1^2x2"]
        );
        assert_eq!(c.t_interval.to_string(), "(3/7,5/9]");
    }

    #[test]
    fn sweep_agrees_with_brute_force() {
        let fs = generate_fundamental_set(3, 3).unwrap();
        let atlas = Atlas::new(&fs).unwrap();
        for t in ["1/10", "1/5", "1/3", "3/7", "1/2", "5/9", "9/13", "4/5"] {
            let t = q(t);
            let mut swept: Vec<(Vec<Monomial>, usize)> = atlas
                .maximal_configurations(&t)
                .unwrap()
                .into_iter()
                .map(|c| (c.v_plus, c.pivot))
                .collect();
            swept.sort_by(|a, b| (a.1, &a.0).cmp(&(b.1, &b.0)));
            assert_eq!(swept, maximal_sets_brute_force(&fs, &t).unwrap(), "t = {t}");
        }
    }

    #[test]
    fn locate_maps_into_grid() {
        let fs = generate_fundamental_set(3, 3).unwrap();
        let atlas = Atlas::new(&fs).unwrap();
        let k = atlas.locate(&q("3/7")).unwrap();
        assert_eq!(atlas.grid()[k], q("3/7"));
        assert!(atlas.is_candidate_point(k));
        let k = atlas.locate(&q("1/1000")).unwrap();
        assert!(!atlas.is_candidate_point(k));
        assert!(atlas.locate(&q("0")).is_err());
        assert!(atlas.locate(&q("1")).is_err());
    }

    #[test]
    fn certificates_for_non_reduced_divisor() {
        let fs = generate_fundamental_set(3, 3).unwrap();
        let mut surface: Vec<Monomial> = enumerate_monomials(3, 3)
            .unwrap()
            .into_iter()
            .filter(|v| v.exponents()[0] >= 1)
            .collect();
        surface.extend([mono(&[0, 3, 0, 0]), mono(&[0, 2, 1, 0]), mono(&[0, 2, 0, 1])]);
        let pair = SupportPair::new(surface, [x(0)]).unwrap();
        let c = nonstable_certificate(&pair, &fs, &q("1/4")).unwrap().unwrap();
        assert_eq!(c.label.as_deref(), Some("λ3"));
        assert_eq!(c.pivot, 0);
        assert_eq!(c.verdict, NonStableVerdict::Unstable);
        assert_eq!(c.mu, q("1/4"));
    }

    #[test]
    fn fermat_has_no_certificate() {
        let fs = generate_fundamental_set(3, 3).unwrap();
        let surface = (0..4).map(|i| {
            let mut e = vec![0; 4];
            e[i] = 3;
            Monomial::new(e)
        });
        let pair = SupportPair::new(surface, (0..4).map(x)).unwrap();
        for t in ["1/10", "1/2", "9/10"] {
            assert_eq!(nonstable_certificate(&pair, &fs, &q(t)).unwrap(), None);
            for l in fs.lambdas() {
                let expected = (Rational::integer(3) + q(t)) * Rational::integer(l.weight(3).clone());
                assert_eq!(mu(&pair, l, &q(t)).unwrap(), expected);
            }
        }
    }

    #[test]
    fn three_a2_is_not_stable() {
        let fs = generate_fundamental_set(3, 3).unwrap();
        let pair = SupportPair::new([mono(&[1, 1, 0, 1]), mono(&[0, 0, 3, 0])], [x(2)]).unwrap();
        let c = nonstable_certificate(&pair, &fs, &q("1/2")).unwrap().unwrap();
        assert_eq!(c.verdict, NonStableVerdict::NotStable);
        assert!(c.mu.is_zero());
        assert_eq!(c.pivot, 2);
    }

    #[test]
    fn permutations_are_complete() {
        let perms = coordinate_permutations(4);
        assert_eq!(perms.len(), 24);
        assert_eq!(perms[0], vec![0, 1, 2, 3]);
        assert_eq!(perms[23], vec![3, 2, 1, 0]);
    }

    #[test]
    fn frames_never_lose_certificates() {
        let fs = generate_fundamental_set(3, 3).unwrap();
        // x3 appears in the divisor, so the identity frame sees weight r_3
        let pair = SupportPair::new([mono(&[0, 0, 0, 3]), mono(&[0, 0, 1, 2])], [x(3)]).unwrap();
        let t = q("1/2");
        let identity = nonstable_certificate(&pair, &fs, &t).unwrap();
        let all = nonstable_certificate_in_frames(&pair, &fs, &t, &coordinate_permutations(4))
            .unwrap()
            .unwrap();
        assert!(identity.is_none());
        assert_eq!(all.verdict, NonStableVerdict::Unstable);
    }
}
