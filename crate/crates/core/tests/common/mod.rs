//! Oracles and generators shared by the integration suites. Everything
//! here recomputes from exponent vectors directly instead of calling the
//! engine's own pairing or hull code.

#![allow(dead_code)]

pub mod props;

use std::sync::OnceLock;

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use vgit::boundary::{Certificate, StabilityVerdict, Verdict};
use vgit::onepsgen::{generate_fundamental_set, FundamentalSet};
use vgit::stability::{coordinate_permutations, Atlas, SupportPair};
use vgit::{Monomial, OneParameterSubgroup, Rational};

pub fn q(s: &str) -> Rational {
    s.parse().unwrap()
}

pub fn cubic_surfaces() -> &'static FundamentalSet {
    static FS: OnceLock<FundamentalSet> = OnceLock::new();
    FS.get_or_init(|| generate_fundamental_set(3, 3).unwrap())
}

pub fn cubic_atlas() -> &'static Atlas {
    static ATLAS: OnceLock<Atlas> = OnceLock::new();
    ATLAS.get_or_init(|| Atlas::new(cubic_surfaces()).unwrap())
}

pub fn walls_33() -> Vec<Rational> {
    ["0", "1/5", "1/3", "3/7", "5/9", "9/13", "1"].iter().map(|s| q(s)).collect()
}

pub fn probes_33() -> Vec<Rational> {
    ["1/10", "4/15", "8/21", "31/63", "73/117", "11/13"].iter().map(|s| q(s)).collect()
}

/// Degree-`d` exponent vectors in `coords` variables, any order.
pub fn exponent_vectors(d: u32, coords: usize) -> Vec<Vec<u32>> {
    if coords == 1 {
        return vec![vec![d]];
    }
    let mut out = Vec::new();
    for first in 0..=d {
        for mut rest in exponent_vectors(d - first, coords - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

pub fn dot(e: &[u32], w: &[BigInt]) -> BigInt {
    e.iter().zip(w).map(|(&a, b)| BigInt::from(a) * b).sum()
}

/// `min_𝒮 <s,w> + t · min_𝒟 <b,w>` from raw exponent vectors.
pub fn oracle_mu(pair: &SupportPair, w: &[BigInt], t: &Rational) -> Rational {
    let min = |ms: &[Monomial]| ms.iter().map(|m| dot(m.exponents(), w)).min().unwrap();
    Rational::integer(min(pair.surface())) + t * Rational::integer(min(pair.divisor()))
}

/// Largest `μ_t` over the fundamental set in every coordinate frame.
pub fn oracle_max_mu(pair: &SupportPair, fs: &FundamentalSet, t: &Rational) -> Rational {
    let n = pair.coordinates();
    let mut best: Option<Rational> = None;
    for perm in coordinate_permutations(n) {
        let moved = pair.permuted(&perm);
        for l in fs.lambdas() {
            let v = oracle_mu(&moved, l.weights(), t);
            if best.as_ref().is_none_or(|b| &v > b) {
                best = Some(v);
            }
        }
    }
    best.unwrap()
}

/// Verdict predicted by the fundamental set taken in all frames.
pub fn oracle_verdict(pair: &SupportPair, fs: &FundamentalSet, t: &Rational) -> Verdict {
    let m = oracle_max_mu(pair, fs, t);
    if m.is_positive() {
        Verdict::Unstable
    } else if m.is_zero() {
        Verdict::StrictlySemistable
    } else {
        Verdict::Stable
    }
}

/// Re-checks a verdict's certificate without the engine's verifier:
/// functionals by direct pairing, hull terms by reconstructing the centroid.
pub fn oracle_certificate_ok(v: &StabilityVerdict, pair: &SupportPair, t: &Rational) -> bool {
    let n = pair.coordinates();
    let level = (Rational::integer(pair.degree() as i64) + t.clone())
        / Rational::integer(n as i64);
    match (&v.certificate, v.verdict) {
        (Certificate::SeparatingFunctional(f), Verdict::Unstable) => {
            let trace: BigInt = f.weights.iter().sum();
            trace == BigInt::from(0)
                && oracle_mu(pair, &f.weights, t) == f.mu
                && f.mu.is_positive()
        }
        (Certificate::HullMembership(h), Verdict::Stable | Verdict::StrictlySemistable) => {
            let in_support = h.terms.iter().all(|term| {
                pair.surface().contains(&term.surface) && pair.divisor().contains(&term.divisor)
            });
            let total: Rational = h.terms.iter().map(|x| x.coefficient.clone()).sum();
            let mut point = vec![Rational::zero(); n];
            for term in &h.terms {
                for (i, p) in point.iter_mut().enumerate() {
                    let coord = Rational::integer(term.surface.exponents()[i] as i64)
                        + t * Rational::integer(term.divisor.exponents()[i] as i64);
                    *p = &*p + &(&term.coefficient * &coord);
                }
            }
            let positive = h.terms.iter().all(|x| x.coefficient.is_positive());
            let supporting_ok = match (&h.supporting, v.verdict) {
                (Some(f), Verdict::StrictlySemistable) => {
                    oracle_mu(pair, &f.weights, t).is_zero() && f.mu.is_zero()
                }
                (None, Verdict::Stable) => true,
                (None, Verdict::StrictlySemistable) => true,
                _ => false,
            };
            in_support
                && positive
                && total == Rational::one()
                && point.iter().all(|c| *c == level)
                && supporting_ok
        }
        _ => false,
    }
}

pub fn random_lambda(rng: &mut ChaCha8Rng, coords: usize, bound: i64) -> OneParameterSubgroup {
    loop {
        let mut w: Vec<i64> = (0..coords - 1).map(|_| rng.gen_range(-bound..=bound)).collect();
        let s: i64 = w.iter().sum();
        w.push(-s);
        w.sort_unstable_by(|a, b| b.cmp(a));
        if w.iter().any(|&x| x != 0) {
            return OneParameterSubgroup::from_i64(&w).unwrap();
        }
    }
}

/// Random supports of a cubic surface and a hyperplane. Small surface
/// supports are favoured so every verdict occurs.
pub fn random_pair(rng: &mut ChaCha8Rng, d: u32, coords: usize) -> SupportPair {
    let mut all = exponent_vectors(d, coords);
    all.shuffle(rng);
    let size = match rng.gen_range(0..4) {
        0 => rng.gen_range(1..=3),
        1 => rng.gen_range(3..=6),
        2 => rng.gen_range(6..=10),
        _ => rng.gen_range(1..=all.len()),
    };
    let surface: Vec<Monomial> = all[..size].iter().cloned().map(Monomial::new).collect();
    let mut vars: Vec<usize> = (0..coords).collect();
    vars.shuffle(rng);
    let k = rng.gen_range(1..=coords);
    let divisor: Vec<Monomial> = vars[..k].iter().map(|&i| Monomial::variable(i, coords)).collect();
    SupportPair::new(surface, divisor).unwrap()
}

/// A rational strictly inside `(lo, hi)`.
pub fn random_between(rng: &mut ChaCha8Rng, lo: &Rational, hi: &Rational) -> Rational {
    let m: i64 = rng.gen_range(2..=500);
    let k: i64 = rng.gen_range(1..m);
    lo + &((hi - lo) * Rational::ratio(k, m))
}

pub fn random_open_unit(rng: &mut ChaCha8Rng) -> Rational {
    random_between(rng, &Rational::zero(), &Rational::one())
}
