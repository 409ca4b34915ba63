//! Property checks shared by the proptest suite and the acceptance runner.

use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use vgit::boundary::compute_n0;
use vgit::lattice::pairing;
use vgit::stability::{maximal_sets_brute_force, Atlas};
use vgit::{Monomial, OneParameterSubgroup, Rational};

use super::{cubic_atlas, cubic_surfaces, dot, exponent_vectors};

pub fn lambda_strategy(coords: usize) -> impl Strategy<Value = OneParameterSubgroup> {
    prop::collection::vec(-13i64..=13, coords - 1).prop_filter_map("zero weights", |mut w| {
        let s: i64 = w.iter().sum();
        w.push(-s);
        w.sort_unstable_by(|a, b| b.cmp(a));
        w.iter()
            .any(|&x| x != 0)
            .then(|| OneParameterSubgroup::from_i64(&w).unwrap())
    })
}

/// Rationals strictly inside `(0,1)`.
pub fn open_unit_strategy() -> impl Strategy<Value = Rational> {
    (2i64..=600, 1i64..600).prop_filter_map("outside (0,1)", |(m, k)| {
        (k < m).then(|| Rational::ratio(k, m))
    })
}

pub fn monomial_strategy(d: u32, coords: usize) -> impl Strategy<Value = Monomial> {
    prop::sample::select(exponent_vectors(d, coords)).prop_map(Monomial::new)
}

/// Two points strictly inside one gap between consecutive candidate walls.
pub fn same_gap_strategy() -> impl Strategy<Value = (Rational, Rational)> {
    let gaps = cubic_atlas().candidates().len() - 1;
    (0..gaps, 2i64..=400, 1i64..400, 1i64..400).prop_filter_map(
        "outside the gap",
        |(j, m, a, b)| {
            let c = cubic_atlas().candidates();
            (a < m && b < m).then(|| {
                let width = &c[j + 1] - &c[j];
                (
                    &c[j] + &(&width * &Rational::ratio(a, m)),
                    &c[j] + &(&width * &Rational::ratio(b, m)),
                )
            })
        },
    )
}

fn reverse_weights(l: &OneParameterSubgroup) -> Vec<num_bigint::BigInt> {
    l.weights().iter().rev().map(|w| -w).collect()
}

/// `<reverse(v), dual(λ)> = -<v, λ>`, with the dual also checked against
/// its definition and as an involution.
pub fn pairing_duality(v: &Monomial, l: &OneParameterSubgroup) -> Result<(), TestCaseError> {
    let dual = l.dual();
    let expected = reverse_weights(l);
    prop_assert_eq!(dual.weights(), expected.as_slice());
    prop_assert_eq!(&dual.dual(), l);
    let lhs = pairing(&v.reversed(), &dual).unwrap();
    prop_assert_eq!(lhs, -dot(v.exponents(), l.weights()));
    Ok(())
}

/// `reverse(V0(λ, x_i)) = V0(dual λ, x_{n-i})`.
pub fn v0_reversal(
    d: i64,
    l: &OneParameterSubgroup,
    pivot: usize,
    t: &Rational,
) -> Result<(), TestCaseError> {
    let n = l.coordinates() - 1;
    let a = compute_n0(d, l, pivot, t).unwrap();
    let b = compute_n0(d, &l.dual(), n - pivot, t).unwrap();
    let mut reversed: Vec<Monomial> = a.v_zero.iter().map(Monomial::reversed).collect();
    reversed.sort();
    prop_assert_eq!(reversed, b.v_zero);
    Ok(())
}

fn data_at(atlas: &Atlas, t: &Rational) -> Vec<(Vec<Monomial>, usize)> {
    let mut out: Vec<(Vec<Monomial>, usize)> = atlas
        .maximal_configurations(t)
        .unwrap()
        .into_iter()
        .map(|c| (c.v_plus, c.pivot))
        .collect();
    out.sort_by(|a, b| (a.1, &a.0).cmp(&(b.1, &b.0)));
    out.dedup();
    out
}

/// Maximal sets agree at two points of one gap, both by the sweep and by
/// direct pairwise comparison.
pub fn chamber_constancy(t1: &Rational, t2: &Rational) -> Result<(), TestCaseError> {
    let fs = cubic_surfaces();
    let brute1 = maximal_sets_brute_force(fs, t1).unwrap();
    let brute2 = maximal_sets_brute_force(fs, t2).unwrap();
    prop_assert_eq!(&brute1, &brute2);
    prop_assert_eq!(&data_at(cubic_atlas(), t1), &brute1);
    Ok(())
}
