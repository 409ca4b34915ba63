//! Closed-orbit configurations `N0_t(λ, x_i)`, the exact centroid criterion
//! with re-verifiable certificates, and the strictly semistable boundary.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::lattice::{
    deserialize_int_vec, enumerate_monomials, pair_with, pairing, serialize_int_vec, Monomial,
    OneParameterSubgroup,
};
use crate::linalg::{nullspace, primitive_integer, rank};
use crate::lp::{Bound, Outcome, Problem, Relation, Variable};
use crate::rational::Rational;
use crate::stability::{require_open, Atlas, StabilityError, SupportPair, TInterval};

/// `N0_t(λ, x_i) = (V0, B0)`: the equality locus of `N⊕_t(λ, x_i)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedOrbitConfiguration {
    pub lambda: OneParameterSubgroup,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub pivot: usize,
    pub v_zero: Vec<Monomial>,
    pub b_zero: Vec<Monomial>,
    pub t: Rational,
}

impl ClosedOrbitConfiguration {
    pub fn name(&self) -> String {
        self.label.clone().unwrap_or_else(|| self.lambda.to_string())
    }

    /// The generic pair with full support `V0` and the pivot as divisor.
    pub fn generic_pair(&self) -> Option<SupportPair> {
        let coords = self.lambda.coordinates();
        SupportPair::new(
            self.v_zero.iter().cloned(),
            [Monomial::variable(self.pivot, coords)],
        )
        .ok()
    }
}

pub fn compute_n0(
    d: i64,
    lambda: &OneParameterSubgroup,
    pivot: usize,
    t: &Rational,
) -> Result<ClosedOrbitConfiguration, StabilityError> {
    require_open(t)?;
    let coords = lambda.coordinates();
    if pivot >= coords {
        return Err(StabilityError::PivotOutOfRange {
            pivot,
            coordinates: coords,
        });
    }
    let ri = lambda.weight(pivot);
    let target = -(t * Rational::integer(ri.clone()));
    let mut v_zero = Vec::new();
    if target.is_integer() {
        for v in enumerate_monomials(d, coords as i64 - 1)? {
            if Rational::integer(pairing(&v, lambda)?) == target {
                v_zero.push(v);
            }
        }
    }
    let b_zero = (0..=pivot)
        .filter(|&k| lambda.weight(k) == ri)
        .map(|k| Monomial::variable(k, coords))
        .collect();
    Ok(ClosedOrbitConfiguration {
        lambda: lambda.clone(),
        label: None,
        pivot,
        v_zero,
        b_zero,
        t: t.clone(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Stable,
    StrictlySemistable,
    Unstable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Stable => "stable",
            Verdict::StrictlySemistable => "strictly-semistable",
            Verdict::Unstable => "unstable",
        })
    }
}

/// An integer functional `w` with `Σ w_i = 0` and its value `μ_t(pair, w)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctionalCertificate {
    #[serde(
        serialize_with = "serialize_int_vec",
        deserialize_with = "deserialize_int_vec"
    )]
    pub weights: Vec<BigInt>,
    pub mu: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HullTerm {
    pub surface: Monomial,
    pub divisor: Monomial,
    pub coefficient: Rational,
}

/// Convex coefficients expressing the centroid through points `s + t·b`.
/// Strictly semistable verdicts also carry a functional with `μ_t = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HullCertificate {
    pub terms: Vec<HullTerm>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub supporting: Option<FunctionalCertificate>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", content = "data", rename_all = "kebab-case")]
pub enum Certificate {
    HullMembership(HullCertificate),
    SeparatingFunctional(FunctionalCertificate),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilityVerdict {
    pub verdict: Verdict,
    pub certificate: Certificate,
}

/// `((d+t)/(n+1), ..., (d+t)/(n+1))`.
pub fn centroid(d: u32, coords: usize, t: &Rational) -> Vec<Rational> {
    let c = (Rational::integer(d as i64) + t) / Rational::integer(coords as i64);
    vec![c; coords]
}

fn point(s: &Monomial, b: &Monomial, t: &Rational) -> Vec<Rational> {
    s.exponents()
        .iter()
        .zip(b.exponents())
        .map(|(&x, &y)| Rational::integer(x as i64) + t * Rational::integer(y as i64))
        .collect()
}

fn mu_of(pair: &SupportPair, w: &[BigInt], t: &Rational) -> Rational {
    let min = |ms: &[Monomial]| {
        ms.iter()
            .map(|m| pair_with(m, w).expect("dimensions agree"))
            .min()
            .expect("non-empty support")
    };
    Rational::integer(min(pair.surface())) + t * Rational::integer(min(pair.divisor()))
}

fn functional(pair: &SupportPair, w: Vec<BigInt>, t: &Rational) -> FunctionalCertificate {
    let mu = mu_of(pair, &w, t);
    FunctionalCertificate { weights: w, mu }
}

fn pairs_of(pair: &SupportPair) -> Vec<(&Monomial, &Monomial)> {
    pair.surface()
        .iter()
        .flat_map(|s| pair.divisor().iter().map(move |b| (s, b)))
        .collect()
}

/// Maximum of `μ_t(pair, w)` over trace-zero `w` with `|w_i| <= 1`, and the
/// maximizer cleared to a primitive integer vector when the maximum is positive.
pub fn separating_functional(
    pair: &SupportPair,
    t: &Rational,
) -> Result<Option<FunctionalCertificate>, StabilityError> {
    require_open(t)?;
    let coords = pair.coordinates();
    let mut lp = Problem::new();
    let w: Vec<Variable> = (0..coords)
        .map(|_| lp.add_var(Rational::zero(), Bound::Free))
        .collect();
    let ms = lp.add_var(Rational::one(), Bound::Free);
    let mb = lp.add_var(t.clone(), Bound::Free);
    let row = |m: &Monomial, bound: Variable| {
        let mut coeffs: Vec<(Variable, Rational)> = m
            .exponents()
            .iter()
            .zip(&w)
            .map(|(&e, &v)| (v, Rational::integer(e as i64)))
            .collect();
        coeffs.push((bound, -Rational::one()));
        coeffs
    };
    for s in pair.surface() {
        lp.add_constraint(row(s, ms), Relation::Ge, Rational::zero());
    }
    for b in pair.divisor() {
        lp.add_constraint(row(b, mb), Relation::Ge, Rational::zero());
    }
    lp.add_constraint(w.iter().map(|&v| (v, Rational::one())), Relation::Eq, Rational::zero());
    for &v in &w {
        lp.add_constraint([(v, Rational::one())], Relation::Le, Rational::one());
        lp.add_constraint([(v, Rational::one())], Relation::Ge, -Rational::one());
    }
    match lp.solve() {
        Outcome::Optimal(sol) if sol.objective().is_positive() => {
            let values: Vec<Rational> = w.iter().map(|&v| sol.value(v).clone()).collect();
            Ok(Some(functional(pair, primitive_integer(&values), t)))
        }
        _ => Ok(None),
    }
}

/// A non-zero trace-zero integer functional with `μ_t = 0`, assuming the
/// centroid lies in the hull.
fn supporting_functional(pair: &SupportPair, t: &Rational) -> Option<FunctionalCertificate> {
    let coords = pair.coordinates();
    let points: Vec<Vec<Rational>> = pairs_of(pair).iter().map(|(s, b)| point(s, b, t)).collect();
    let mut lp = Problem::new();
    let total: Vec<Rational> = (0..coords)
        .map(|i| points.iter().map(|p| p[i].clone()).sum())
        .collect();
    let w: Vec<Variable> = total
        .iter()
        .map(|c| lp.add_var(c.clone(), Bound::Free))
        .collect();
    for p in &points {
        lp.add_constraint(
            w.iter().zip(p).map(|(&v, x)| (v, x.clone())),
            Relation::Ge,
            Rational::zero(),
        );
    }
    lp.add_constraint(w.iter().map(|&v| (v, Rational::one())), Relation::Eq, Rational::zero());
    for &v in &w {
        lp.add_constraint([(v, Rational::one())], Relation::Le, Rational::one());
        lp.add_constraint([(v, Rational::one())], Relation::Ge, -Rational::one());
    }
    if let Outcome::Optimal(sol) = lp.solve() {
        if sol.objective().is_positive() {
            let values: Vec<Rational> = w.iter().map(|&v| sol.value(v).clone()).collect();
            return Some(functional(pair, primitive_integer(&values), t));
        }
    }
    let mut rows: Vec<Vec<Rational>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(&points[0]).map(|(a, b)| a - b).collect())
        .collect();
    rows.push(vec![Rational::one(); coords]);
    nullspace(&rows, coords)
        .first()
        .map(|k| functional(pair, primitive_integer(k), t))
}

/// Torus verdict in the given frame by the centroid criterion on the
/// Minkowski sum `Conv(𝒮) + t·Conv(𝒟)`.
pub fn torus_stability_verdict(
    pair: &SupportPair,
    t: &Rational,
) -> Result<StabilityVerdict, StabilityError> {
    require_open(t)?;
    let coords = pair.coordinates();
    let c = centroid(pair.degree(), coords, t);
    let terms = pairs_of(pair);
    let points: Vec<Vec<Rational>> = terms.iter().map(|(s, b)| point(s, b, t)).collect();
    let m = points.len();

    // γ_j = δ + γ'_j; maximizing δ finds a strictly positive representation
    // whenever the centroid lies in the relative interior.
    let mut lp = Problem::new();
    let delta = lp.add_var(Rational::one(), Bound::NonNegative);
    let gamma: Vec<Variable> = (0..m)
        .map(|_| lp.add_var(Rational::zero(), Bound::NonNegative))
        .collect();
    for (i, ci) in c.iter().enumerate() {
        let sum_i: Rational = points.iter().map(|p| p[i].clone()).sum();
        let mut coeffs = vec![(delta, sum_i)];
        coeffs.extend(gamma.iter().zip(&points).map(|(&g, p)| (g, p[i].clone())));
        lp.add_constraint(coeffs, Relation::Eq, ci.clone());
    }
    let mut coeffs = vec![(delta, Rational::integer(m as i64))];
    coeffs.extend(gamma.iter().map(|&g| (g, Rational::one())));
    lp.add_constraint(coeffs, Relation::Eq, Rational::one());

    let sol = match lp.solve() {
        Outcome::Optimal(sol) => sol,
        Outcome::Infeasible => {
            let cert = separating_functional(pair, t)?
                .expect("a centroid outside the hull is separated by a trace-zero functional");
            return Ok(StabilityVerdict {
                verdict: Verdict::Unstable,
                certificate: Certificate::SeparatingFunctional(cert),
            });
        }
        Outcome::Unbounded => unreachable!("δ is bounded by the normalization row"),
    };
    let d = sol.value(delta).clone();
    let hull_terms: Vec<HullTerm> = terms
        .iter()
        .zip(&gamma)
        .map(|((s, b), &g)| HullTerm {
            surface: (*s).clone(),
            divisor: (*b).clone(),
            coefficient: &d + sol.value(g),
        })
        .filter(|h| !h.coefficient.is_zero())
        .collect();
    let differences: Vec<Vec<Rational>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(&points[0]).map(|(a, b)| a - b).collect())
        .collect();
    let full_rank = rank(&differences, coords) == coords - 1;
    if d.is_positive() && full_rank {
        return Ok(StabilityVerdict {
            verdict: Verdict::Stable,
            certificate: Certificate::HullMembership(HullCertificate {
                terms: hull_terms,
                supporting: None,
            }),
        });
    }
    Ok(StabilityVerdict {
        verdict: Verdict::StrictlySemistable,
        certificate: Certificate::HullMembership(HullCertificate {
            terms: hull_terms,
            supporting: supporting_functional(pair, t),
        }),
    })
}

impl StabilityVerdict {
    /// Re-checks the certificate by exact arithmetic against the pair.
    pub fn verify(&self, pair: &SupportPair, t: &Rational) -> bool {
        let coords = pair.coordinates();
        match (&self.certificate, self.verdict) {
            (Certificate::SeparatingFunctional(f), Verdict::Unstable) => {
                verify_functional(pair, f, t) && f.mu.is_positive()
            }
            (Certificate::HullMembership(h), Verdict::Stable | Verdict::StrictlySemistable) => {
                let c = centroid(pair.degree(), coords, t);
                let mut acc = vec![Rational::zero(); coords];
                let mut total = Rational::zero();
                for term in &h.terms {
                    if term.coefficient.is_negative()
                        || pair.surface().binary_search(&term.surface).is_err()
                        || !pair.divisor().contains(&term.divisor)
                    {
                        return false;
                    }
                    let p = point(&term.surface, &term.divisor, t);
                    for (a, x) in acc.iter_mut().zip(&p) {
                        *a = &*a + &(&term.coefficient * x);
                    }
                    total = total + &term.coefficient;
                }
                let reconstructs = acc == c && total == Rational::one();
                let supporting_ok = match (&h.supporting, self.verdict) {
                    (Some(f), Verdict::StrictlySemistable) => {
                        verify_functional(pair, f, t) && f.mu.is_zero()
                    }
                    (None, Verdict::StrictlySemistable) => false,
                    (Some(_), _) => false,
                    (None, _) => true,
                };
                reconstructs && supporting_ok
            }
            _ => false,
        }
    }
}

fn verify_functional(pair: &SupportPair, f: &FunctionalCertificate, t: &Rational) -> bool {
    f.weights.len() == pair.coordinates()
        && f.weights.iter().sum::<BigInt>().is_zero()
        && f.weights.iter().any(|w| !w.is_zero())
        && mu_of(pair, &f.weights, t) == f.mu
}

/// Rows of `N0_t` for each maximal representative at `t` whose generic pair
/// is strictly semistable.
pub fn semistable_boundary(
    atlas: &Atlas,
    t: &Rational,
) -> Result<Vec<ClosedOrbitConfiguration>, StabilityError> {
    let k = atlas.locate(t)?;
    let d = atlas.fundamental_set().degree as i64;
    let mut out = Vec::new();
    for r in atlas.reps(k) {
        let member = &atlas.fundamental_set().members()[r.member];
        let mut n0 = compute_n0(d, &member.lambda, r.pivot, t)?;
        n0.label = member.label.clone();
        let Some(generic) = n0.generic_pair() else {
            continue;
        };
        if torus_stability_verdict(&generic, t)?.verdict == Verdict::StrictlySemistable {
            out.push(n0);
        }
    }
    Ok(out)
}

/// A boundary row together with the `t` range on which it appears.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryRow {
    pub configuration: ClosedOrbitConfiguration,
    pub t_interval: TInterval,
}

/// Every boundary row over `(0,1)`, merged over contiguous sweep points and
/// sorted by fundamental-set order, pivot and interval start.
pub fn boundary_table(atlas: &Atlas) -> Result<Vec<BoundaryRow>, StabilityError> {
    type Key = (usize, usize, Vec<Monomial>);
    let mut presence: BTreeMap<Key, (Vec<usize>, ClosedOrbitConfiguration)> = BTreeMap::new();
    for (k, t) in atlas.grid().iter().enumerate() {
        for row in semistable_boundary(atlas, t)? {
            let member = atlas
                .fundamental_set()
                .members()
                .iter()
                .position(|m| m.lambda == row.lambda)
                .expect("row comes from the set");
            presence
                .entry((member, row.pivot, row.v_zero.clone()))
                .or_insert_with(|| (Vec::new(), row))
                .0
                .push(k);
        }
    }
    let mut rows = Vec::new();
    for ((member, pivot, _), (indices, config)) in presence {
        let mut start = 0;
        while start < indices.len() {
            let mut end = start;
            while end + 1 < indices.len() && indices[end + 1] == indices[end] + 1 {
                end += 1;
            }
            let interval = atlas.span(indices[start], indices[end]);
            rows.push((member, pivot, indices[start], interval, config.clone()));
            start = end + 1;
        }
    }
    rows.sort_by_key(|a| (a.0, a.1, a.2));
    Ok(rows
        .into_iter()
        .map(|(_, _, _, t_interval, mut configuration)| {
            if t_interval.is_point() {
                configuration.t = t_interval.lo.clone();
            }
            BoundaryRow {
                configuration,
                t_interval,
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::onepsgen::generate_fundamental_set;

    fn lam(w: &[i64]) -> OneParameterSubgroup {
        OneParameterSubgroup::from_i64(w).unwrap()
    }

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn mono(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    fn x(i: usize) -> Monomial {
        Monomial::variable(i, 4)
    }

    fn shown(ms: &[Monomial]) -> Vec<String> {
        ms.iter().map(|m| m.to_string()).collect()
    }

    #[test]
    fn n0_examples() {
        let c = compute_n0(3, &lam(&[9, 1, -3, -7]), 3, &q("3/7")).unwrap();
        assert_eq!(shown(&c.v_zero), ["x0x1x3", "x0x2^2", "x1^3"]);
        assert_eq!(c.b_zero, vec![x(3)]);

        let c = compute_n0(3, &lam(&[1, 0, 0, -1]), 2, &q("2/7")).unwrap();
        assert_eq!(
            shown(&c.v_zero),
            ["x0x1x3", "x0x2x3", "x1^3", "x1^2x2", "x1x2^2", "x2^3"]
        );
        assert_eq!(c.b_zero, vec![x(1), x(2)]);

        let c = compute_n0(3, &lam(&[3, 1, -1, -3]), 0, &q("1/3")).unwrap();
        assert_eq!(shown(&c.v_zero), ["x0x2x3", "x1^2x3", "x1x2^2"]);
        assert_eq!(c.b_zero, vec![x(0)]);

        let c = compute_n0(3, &lam(&[3, 1, -1, -3]), 0, &q("1/2")).unwrap();
        assert!(c.v_zero.is_empty());
    }

    #[test]
    fn three_a2_segment_certificate() {
        let pair = SupportPair::new([mono(&[1, 1, 0, 1]), mono(&[0, 0, 3, 0])], [x(2)]).unwrap();
        let t = q("1/2");
        let v = torus_stability_verdict(&pair, &t).unwrap();
        assert_eq!(v.verdict, Verdict::StrictlySemistable);
        assert!(v.verify(&pair, &t));
        let Certificate::HullMembership(h) = &v.certificate else { panic!() };
        let alpha = (Rational::integer(3) + &t) / Rational::integer(4);
        let first = h.terms.iter().find(|h| h.surface == mono(&[1, 1, 0, 1])).unwrap();
        assert_eq!(first.coefficient, alpha);
        assert!(h.supporting.as_ref().unwrap().mu.is_zero());
    }

    #[test]
    fn generic_pair_is_stable() {
        let pair = SupportPair::new(enumerate_monomials(3, 3).unwrap(), (0..4).map(x)).unwrap();
        let v = torus_stability_verdict(&pair, &q("1/2")).unwrap();
        assert_eq!(v.verdict, Verdict::Stable);
        assert!(v.verify(&pair, &q("1/2")));
    }

    #[test]
    fn lambda_two_row_is_strictly_semistable() {
        let pair = SupportPair::new(
            [mono(&[0, 3, 0, 0]), mono(&[1, 0, 2, 0]), mono(&[1, 0, 1, 1]), mono(&[1, 0, 0, 2])],
            [x(1)],
        )
        .unwrap();
        for t in ["1/10", "1/3", "9/13", "99/100"] {
            let v = torus_stability_verdict(&pair, &q(t)).unwrap();
            assert_eq!(v.verdict, Verdict::StrictlySemistable, "t = {t}");
            assert!(v.verify(&pair, &q(t)));
        }
    }

    #[test]
    fn unstable_pairs_are_separated() {
        let pair = SupportPair::new([mono(&[3, 0, 0, 0]), mono(&[2, 1, 0, 0])], [x(0)]).unwrap();
        let v = torus_stability_verdict(&pair, &q("1/2")).unwrap();
        assert_eq!(v.verdict, Verdict::Unstable);
        assert!(v.verify(&pair, &q("1/2")));
        let Certificate::SeparatingFunctional(f) = &v.certificate else { panic!() };
        assert!(f.mu.is_positive());
    }

    #[test]
    fn tampered_certificates_fail() {
        let pair = SupportPair::new([mono(&[1, 1, 0, 1]), mono(&[0, 0, 3, 0])], [x(2)]).unwrap();
        let t = q("1/2");
        let mut v = torus_stability_verdict(&pair, &t).unwrap();
        if let Certificate::HullMembership(h) = &mut v.certificate {
            h.terms[0].coefficient = &h.terms[0].coefficient + Rational::ratio(1, 100);
        }
        assert!(!v.verify(&pair, &t));
    }

    #[test]
    fn verdict_json_shape() {
        let pair = SupportPair::new([mono(&[3, 0, 0, 0])], [x(0)]).unwrap();
        let v = torus_stability_verdict(&pair, &q("1/2")).unwrap();
        let json = serde_json::to_value(&v).unwrap();
        assert_eq!(json["verdict"], "unstable");
        assert_eq!(json["certificate"]["type"], "separating-functional");
        assert!(json["certificate"]["data"]["mu"].is_string());
    }

    #[test]
    fn boundary_at_three_sevenths() {
        let fs = generate_fundamental_set(3, 3).unwrap();
        let atlas = Atlas::new(&fs).unwrap();
        let rows: Vec<(String, usize)> = semistable_boundary(&atlas, &q("3/7"))
            .unwrap()
            .iter()
            .map(|r| (r.name(), r.pivot))
            .collect();
        let want: Vec<(String, usize)> = [
            ("λ1", 2),
            ("λ2", 1),
            ("λ̄2", 2),
            ("λ6", 3),
            ("λ̄6", 0),
            ("λ9", 3),
            ("λ̄9", 0),
        ]
        .iter()
        .map(|(a, b)| (a.to_string(), *b))
        .collect();
        assert_eq!(rows, want);
    }

    #[test]
    fn boundary_in_a_chamber() {
        let fs = generate_fundamental_set(3, 3).unwrap();
        let atlas = Atlas::new(&fs).unwrap();
        let rows = semistable_boundary(&atlas, &q("1/10")).unwrap();
        let names: Vec<String> = rows.iter().map(|r| r.name()).collect();
        assert_eq!(names, ["λ1", "λ2", "λ̄2"]);
        let rows = semistable_boundary(&atlas, &q("9/13")).unwrap();
        let names: Vec<String> = rows.iter().map(|r| r.name()).collect();
        assert_eq!(names, ["λ1", "λ2", "λ̄2", "λ4", "λ̄4"]);
    }
}
