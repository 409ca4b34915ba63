mod common;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::props::*;
use common::*;
use vgit::boundary::{boundary_table, compute_n0, semistable_boundary, torus_stability_verdict};
use vgit::lattice::{enumerate_monomials, pairing};
use vgit::onepsgen::{generate_fundamental_set, FundamentalSet};
use vgit::polyio::{parse_form, support_pair, HomogeneousForm};
use vgit::stability::{
    compute_configuration, coordinate_permutations, maximal_sets_brute_force,
    nonstable_certificate_in_frames, Atlas,
};
use vgit::walls::decompose;
use vgit::{Monomial, Rational};

fn binomial(n: u64, k: u64) -> u64 {
    (1..=k).fold(1, |acc, i| acc * (n + 1 - i) / i)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn pairing_is_dual_under_reversal(v in monomial_strategy(3, 4), l in lambda_strategy(4)) {
        pairing_duality(&v, &l)?;
    }

    #[test]
    fn equality_loci_reverse_under_duality(
        l in lambda_strategy(4), i in 0usize..4, t in open_unit_strategy()
    ) {
        v0_reversal(3, &l, i, &t)?;
    }

    #[test]
    fn equality_loci_are_semi_invariant(
        l in lambda_strategy(4), i in 0usize..4, t in open_unit_strategy()
    ) {
        let n0 = compute_n0(3, &l, i, &t).unwrap();
        let values: Vec<_> = n0.v_zero.iter().map(|v| pairing(v, &l).unwrap()).collect();
        prop_assert!(values.windows(2).all(|w| w[0] == w[1]));
    }

    #[test]
    fn destabilizing_sets_are_monotone_in_t(
        l in lambda_strategy(4), i in 0usize..4,
        a in open_unit_strategy(), b in open_unit_strategy()
    ) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let small = compute_configuration(3, &l, i, &lo).unwrap().v_plus;
        let large = compute_configuration(3, &l, i, &hi).unwrap().v_plus;
        let subset = |x: &[Monomial], y: &[Monomial]| x.iter().all(|v| y.contains(v));
        let r = l.weight(i);
        if *r <= 0.into() {
            prop_assert!(subset(&large, &small));
        }
        if *r >= 0.into() {
            prop_assert!(subset(&small, &large));
        }
    }

    #[test]
    fn monomial_enumeration(d in 1i64..=5, n in 1i64..=4) {
        let ms = enumerate_monomials(d, n).unwrap();
        prop_assert_eq!(ms.len() as u64, binomial((d + n) as u64, n as u64));
        prop_assert!(ms.windows(2).all(|w| w[0] < w[1]));
        for m in &ms {
            prop_assert!(ms.binary_search(&m.reversed()).is_ok());
        }
    }

    #[test]
    fn boundary_is_closed_under_duality(t in open_unit_strategy()) {
        let rows = semistable_boundary(cubic_atlas(), &t).unwrap();
        for r in &rows {
            let mut reversed: Vec<Monomial> = r.v_zero.iter().map(Monomial::reversed).collect();
            reversed.sort();
            let dual = r.lambda.dual();
            prop_assert!(
                rows.iter().any(|s| s.lambda == dual && s.v_zero == reversed
                    && dual.weight(s.pivot) == dual.weight(3 - r.pivot)),
                "{} x{} has no dual row at {}", r.name(), r.pivot, t
            );
            let values: Vec<_> = r.v_zero.iter().map(|v| pairing(v, &r.lambda).unwrap()).collect();
            prop_assert!(values.windows(2).all(|w| w[0] == w[1]));
        }
    }

    #[test]
    fn verdict_appears_in_the_fundamental_set_across_frames(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pair = random_pair(&mut rng, 3, 4);
        let t = random_open_unit(&mut rng);
        let v = torus_stability_verdict(&pair, &t).unwrap();
        prop_assert_eq!(v.verdict, oracle_verdict(&pair, cubic_surfaces(), &t));
        prop_assert!(v.verify(&pair, &t));
        prop_assert!(oracle_certificate_ok(&v, &pair, &t));
    }

    #[test]
    fn more_frames_only_raise_the_certificate(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pair = random_pair(&mut rng, 3, 4);
        let t = random_open_unit(&mut rng);
        let fs = cubic_surfaces();
        let identity = vec![vec![0, 1, 2, 3]];
        let one = nonstable_certificate_in_frames(&pair, fs, &t, &identity).unwrap();
        let all = nonstable_certificate_in_frames(&pair, fs, &t, &coordinate_permutations(4))
            .unwrap();
        match (one, all) {
            (Some(a), Some(b)) => prop_assert!(b.mu >= a.mu),
            (Some(_), None) => prop_assert!(false, "certificate lost by adding frames"),
            _ => {}
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn maximal_sets_are_constant_on_gaps((a, b) in same_gap_strategy()) {
        chamber_constancy(&a, &b)?;
    }

    #[test]
    fn parse_round_trips(
        terms in prop::collection::vec(
            (monomial_strategy(3, 4), -20i64..=20, 1i64..=9), 1..8
        )
    ) {
        let form = HomogeneousForm::from_terms(
            4,
            terms.into_iter().map(|(m, p, q)| (m, Rational::ratio(p, q))),
            Some(3),
        );
        if let Ok(form) = form {
            let text = form.to_string();
            let again = parse_form(&text, 3, Some(3)).unwrap();
            prop_assert_eq!(again.terms(), form.terms(), "{}", text);
        }
    }

    #[test]
    fn coefficients_do_not_change_verdicts(
        terms in prop::collection::btree_set(monomial_strategy(3, 4), 1..8),
        divisor in prop::collection::btree_set(0usize..4, 1..4),
        scale in prop::collection::vec((1i64..=50, 1i64..=7, any::<bool>()), 16),
        t in open_unit_strategy()
    ) {
        let form = |k: usize| {
            let f = HomogeneousForm::from_terms(
                4,
                terms.iter().enumerate().map(|(j, m)| {
                    let (p, q, neg) = scale[(j + k) % scale.len()];
                    let c = Rational::ratio(if neg { -p } else { p }, q);
                    (m.clone(), if k == 0 { Rational::one() } else { c })
                }),
                Some(3),
            ).unwrap();
            let h = HomogeneousForm::from_terms(
                4,
                divisor.iter().enumerate().map(|(j, &i)| {
                    let (p, q, _) = scale[(j + 2 * k) % scale.len()];
                    (Monomial::variable(i, 4), if k == 0 { Rational::one() } else { Rational::ratio(p, q) })
                }),
                Some(1),
            ).unwrap();
            (f, h)
        };
        let (f0, h0) = form(0);
        let base = support_pair(&f0, &h0).unwrap();
        let verdict = torus_stability_verdict(&base, &t).unwrap();
        for k in 1..4 {
            let (f, h) = form(k);
            let pair = support_pair(&f, &h).unwrap();
            prop_assert_eq!(&pair, &base);
            prop_assert_eq!(torus_stability_verdict(&pair, &t).unwrap(), verdict.clone());
        }
    }
}

#[test]
fn boundary_table_rows_pair_with_their_duals() {
    let rows = boundary_table(cubic_atlas()).unwrap();
    for r in &rows {
        let c = &r.configuration;
        let mut reversed: Vec<Monomial> = c.v_zero.iter().map(Monomial::reversed).collect();
        reversed.sort();
        let dual = c.lambda.dual();
        // pivots of equal weight give one configuration, listed once
        assert!(
            rows.iter().any(|s| s.configuration.lambda == dual
                && dual.weight(s.configuration.pivot) == dual.weight(3 - c.pivot)
                && s.configuration.v_zero == reversed
                && s.t_interval == r.t_interval),
            "{} x{}",
            c.name(),
            c.pivot
        );
    }
}

#[test]
fn walls_are_where_the_boundary_grows() {
    let atlas = cubic_atlas();
    let dec = decompose(atlas).unwrap();
    let names = |t: &Rational| -> Vec<(String, usize)> {
        semistable_boundary(atlas, t)
            .unwrap()
            .iter()
            .map(|c| (c.lambda.to_string(), c.pivot))
            .collect()
    };
    for (j, w) in dec.interior_walls().iter().enumerate() {
        let at = names(w);
        for probe in [&dec.probes[j], &dec.probes[j + 1]] {
            let near = names(probe);
            assert!(near.iter().all(|r| at.contains(r)), "{w} vs {probe}");
            assert!(at.len() > near.len(), "{w} vs {probe}");
        }
    }
    for c in atlas.candidates() {
        if c.in_open_unit_interval() && !dec.walls.contains(c) {
            let k = dec.walls.partition_point(|w| w < c);
            assert_eq!(names(c), names(&dec.probes[k - 1]), "candidate {c}");
        }
    }
}

#[test]
fn extra_rays_leave_the_decomposition_unchanged() {
    let base = cubic_surfaces();
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for _ in 0..4 {
        let extra: Vec<_> = (0..3).map(|_| random_lambda(&mut rng, 4, 9)).collect();
        let enlarged = FundamentalSet::from_lambdas(
            3,
            3,
            base.lambdas().cloned().chain(extra.iter().cloned()),
            base.provenance.clone(),
        );
        let atlas = Atlas::new(&enlarged).unwrap();
        assert_eq!(decompose(&atlas).unwrap().walls, walls_33(), "{extra:?}");
        for t in probes_33() {
            assert_eq!(
                maximal_sets_brute_force(&enlarged, &t).unwrap(),
                maximal_sets_brute_force(base, &t).unwrap(),
                "{extra:?} at {t}"
            );
        }
    }
}

#[test]
fn fundamental_set_is_independent_of_input_order() {
    let base = cubic_surfaces();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut lambdas: Vec<_> = base.lambdas().cloned().collect();
    for _ in 0..5 {
        lambdas.shuffle(&mut rng);
        let again = FundamentalSet::from_lambdas(3, 3, lambdas.clone(), base.provenance.clone());
        assert_eq!(again.members(), base.members());
    }
    let single = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap()
        .install(|| generate_fundamental_set(3, 3).unwrap());
    assert_eq!(single.members(), base.members());
}

#[test]
fn small_cases_agree_with_brute_force() {
    for (d, n) in [(2, 1), (3, 1), (2, 2), (4, 1), (3, 2)] {
        let fs = generate_fundamental_set(d, n).unwrap();
        let atlas = Atlas::new(&fs).unwrap();
        for t in atlas.grid() {
            if !t.in_open_unit_interval() {
                continue;
            }
            let mut sweep: Vec<(Vec<Monomial>, usize)> = atlas
                .maximal_configurations(t)
                .unwrap()
                .into_iter()
                .map(|c| (c.v_plus, c.pivot))
                .collect();
            sweep.sort_by(|a, b| (a.1, &a.0).cmp(&(b.1, &b.0)));
            sweep.dedup();
            assert_eq!(sweep, maximal_sets_brute_force(&fs, t).unwrap(), "(d,n)=({d},{n}) t={t}");
        }
        decompose(&atlas).unwrap();
    }
}
