//! Exact two-phase simplex over the rationals with Bland's rule.
//!
//! Problems are small (tens of rows and columns), so a dense tableau is fine.

use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    Free,
    NonNegative,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Debug, Clone)]
struct Constraint {
    coeffs: Vec<(usize, Rational)>,
    relation: Relation,
    rhs: Rational,
}

/// A linear program `maximize c . x` over rational variables.
#[derive(Debug, Clone, Default)]
pub struct Problem {
    objective: Vec<Rational>,
    bounds: Vec<Bound>,
    constraints: Vec<Constraint>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Variable(pub usize);

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Optimal(Solution),
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    values: Vec<Rational>,
    objective: Rational,
}

impl Solution {
    pub fn value(&self, v: Variable) -> &Rational {
        &self.values[v.0]
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn objective(&self) -> &Rational {
        &self.objective
    }
}

impl Problem {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_var(&mut self, objective: Rational, bound: Bound) -> Variable {
        self.objective.push(objective);
        self.bounds.push(bound);
        Variable(self.objective.len() - 1)
    }

    pub fn add_constraint(
        &mut self,
        coeffs: impl IntoIterator<Item = (Variable, Rational)>,
        relation: Relation,
        rhs: Rational,
    ) {
        let coeffs = coeffs
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(v, c)| (v.0, c))
            .collect();
        self.constraints.push(Constraint {
            coeffs,
            relation,
            rhs,
        });
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn solve(&self) -> Outcome {
        // Column layout: one column per non-negative variable, two per free
        // variable (x = x+ - x-), then one slack per inequality, then one
        // artificial per row.
        let mut col_of: Vec<(usize, Option<usize>)> = Vec::with_capacity(self.num_vars());
        let mut ncols = 0;
        for b in &self.bounds {
            match b {
                Bound::NonNegative => {
                    col_of.push((ncols, None));
                    ncols += 1;
                }
                Bound::Free => {
                    col_of.push((ncols, Some(ncols + 1)));
                    ncols += 2;
                }
            }
        }
        let structural = ncols;
        let slack_count = self
            .constraints
            .iter()
            .filter(|c| c.relation != Relation::Eq)
            .count();
        let m = self.constraints.len();
        let art_start = structural + slack_count;
        let total = art_start + m;

        let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(m);
        let mut rhs: Vec<Rational> = Vec::with_capacity(m);
        let mut slack = structural;
        for c in &self.constraints {
            let mut row = vec![Rational::zero(); total];
            for (v, a) in &c.coeffs {
                let (p, n) = col_of[*v];
                row[p] = &row[p] + a;
                if let Some(n) = n {
                    row[n] = &row[n] - a;
                }
            }
            match c.relation {
                Relation::Le => {
                    row[slack] = Rational::one();
                    slack += 1;
                }
                Relation::Ge => {
                    row[slack] = -Rational::one();
                    slack += 1;
                }
                Relation::Eq => {}
            }
            let mut b = c.rhs.clone();
            if b.is_negative() {
                row.iter_mut().for_each(|x| *x = -&*x);
                b = -b;
            }
            rows.push(row);
            rhs.push(b);
        }
        for (i, row) in rows.iter_mut().enumerate() {
            row[art_start + i] = Rational::one();
        }
        let mut t = Tableau {
            rows,
            rhs,
            basis: (art_start..total).collect(),
            allowed: total,
        };

        // Phase 1: minimize the sum of artificials.
        let mut phase1 = vec![Rational::zero(); total];
        for c in phase1.iter_mut().skip(art_start) {
            *c = -Rational::one();
        }
        t.run(&phase1);
        if !t.objective_value(&phase1).is_zero() {
            return Outcome::Infeasible;
        }
        t.drive_out_artificials(art_start);
        t.allowed = art_start;

        let mut cost = vec![Rational::zero(); total];
        for (v, c) in self.objective.iter().enumerate() {
            let (p, n) = col_of[v];
            cost[p] = c.clone();
            if let Some(n) = n {
                cost[n] = -c;
            }
        }
        if !t.run(&cost) {
            return Outcome::Unbounded;
        }

        let mut x = vec![Rational::zero(); total];
        for (r, &b) in t.basis.iter().enumerate() {
            x[b] = t.rhs[r].clone();
        }
        let values: Vec<Rational> = col_of
            .iter()
            .map(|&(p, n)| match n {
                Some(n) => &x[p] - &x[n],
                None => x[p].clone(),
            })
            .collect();
        let objective = values
            .iter()
            .zip(&self.objective)
            .map(|(a, b)| a * b)
            .sum();
        Outcome::Optimal(Solution { values, objective })
    }
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    /// Columns at or beyond this index may not enter the basis.
    allowed: usize,
}

impl Tableau {
    fn objective_value(&self, cost: &[Rational]) -> Rational {
        self.basis
            .iter()
            .zip(&self.rhs)
            .map(|(&b, v)| &cost[b] * v)
            .sum()
    }

    fn reduced_cost(&self, cost: &[Rational], j: usize) -> Rational {
        let mut r = cost[j].clone();
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            if !row[j].is_zero() && !cost[b].is_zero() {
                r = r - &cost[b] * &row[j];
            }
        }
        r
    }

    fn pivot(&mut self, r: usize, j: usize) {
        let inv = Rational::one() / &self.rows[r][j];
        for x in self.rows[r].iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        self.rhs[r] = &self.rhs[r] * &inv;
        let prow = self.rows[r].clone();
        let prhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][j].is_zero() {
                continue;
            }
            let f = self.rows[i][j].clone();
            for (x, p) in self.rows[i].iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *x = &*x - &(&f * p);
                }
            }
            self.rhs[i] = &self.rhs[i] - &(&f * &prhs);
        }
        self.basis[r] = j;
    }

    /// Maximizes `cost`; returns false when unbounded.
    fn run(&mut self, cost: &[Rational]) -> bool {
        loop {
            let entering = (0..self.allowed)
                .filter(|j| !self.basis.contains(j))
                .find(|&j| self.reduced_cost(cost, j).is_positive());
            let Some(j) = entering else {
                return true;
            };
            let mut best: Option<(usize, Rational)> = None;
            for r in 0..self.rows.len() {
                let a = &self.rows[r][j];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[r] / a;
                let better = match &best {
                    None => true,
                    Some((br, bv)) => {
                        ratio < *bv || (ratio == *bv && self.basis[r] < self.basis[*br])
                    }
                };
                if better {
                    best = Some((r, ratio));
                }
            }
            let Some((r, _)) = best else {
                return false;
            };
            self.pivot(r, j);
        }
    }

    /// Pivots remaining zero-level artificials out of the basis and drops
    /// rows that turn out to be redundant.
    fn drive_out_artificials(&mut self, art_start: usize) {
        let mut r = 0;
        while r < self.rows.len() {
            if self.basis[r] >= art_start {
                match (0..art_start).find(|&j| !self.rows[r][j].is_zero()) {
                    Some(j) => self.pivot(r, j),
                    None => {
                        self.rows.remove(r);
                        self.rhs.remove(r);
                        self.basis.remove(r);
                        continue;
                    }
                }
            }
            r += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64) -> Rational {
        Rational::integer(a)
    }

    #[test]
    fn small_maximization() {
        // max 3x + 2y, x + y <= 4, x + 3y <= 6, x <= 3
        let mut p = Problem::new();
        let x = p.add_var(q(3), Bound::NonNegative);
        let y = p.add_var(q(2), Bound::NonNegative);
        p.add_constraint([(x, q(1)), (y, q(1))], Relation::Le, q(4));
        p.add_constraint([(x, q(1)), (y, q(3))], Relation::Le, q(6));
        p.add_constraint([(x, q(1))], Relation::Le, q(3));
        let Outcome::Optimal(s) = p.solve() else { panic!() };
        assert_eq!(s.objective(), &q(11));
        assert_eq!(s.value(x), &q(3));
        assert_eq!(s.value(y), &q(1));
    }

    #[test]
    fn free_variables_and_equalities() {
        // max -z, z >= x - 2, z >= 2 - x, x = 1/2 (so z = 3/2)
        let mut p = Problem::new();
        let x = p.add_var(q(0), Bound::Free);
        let z = p.add_var(q(-1), Bound::Free);
        p.add_constraint([(z, q(1)), (x, q(-1))], Relation::Ge, q(-2));
        p.add_constraint([(z, q(1)), (x, q(1))], Relation::Ge, q(2));
        p.add_constraint([(x, q(2))], Relation::Eq, q(1));
        let Outcome::Optimal(s) = p.solve() else { panic!() };
        assert_eq!(s.value(z), &Rational::ratio(3, 2));
    }

    #[test]
    fn infeasible_and_unbounded() {
        let mut p = Problem::new();
        let x = p.add_var(q(1), Bound::NonNegative);
        p.add_constraint([(x, q(1))], Relation::Le, q(-1));
        assert_eq!(p.solve(), Outcome::Infeasible);

        let mut p = Problem::new();
        let x = p.add_var(q(1), Bound::Free);
        p.add_constraint([(x, q(1))], Relation::Ge, q(0));
        assert_eq!(p.solve(), Outcome::Unbounded);
    }

    #[test]
    fn redundant_equalities() {
        let mut p = Problem::new();
        let x = p.add_var(q(1), Bound::NonNegative);
        let y = p.add_var(q(1), Bound::NonNegative);
        p.add_constraint([(x, q(1)), (y, q(1))], Relation::Eq, q(2));
        p.add_constraint([(x, q(2)), (y, q(2))], Relation::Eq, q(4));
        let Outcome::Optimal(s) = p.solve() else { panic!() };
        assert_eq!(s.objective(), &q(2));
    }

    #[test]
    fn degenerate_cycling_example() {
        // Beale's example, which cycles under the textbook largest-coefficient rule.
        let mut p = Problem::new();
        let x1 = p.add_var(Rational::ratio(3, 4), Bound::NonNegative);
        let x2 = p.add_var(q(-150), Bound::NonNegative);
        let x3 = p.add_var(Rational::ratio(1, 50), Bound::NonNegative);
        let x4 = p.add_var(q(-6), Bound::NonNegative);
        p.add_constraint(
            [(x1, Rational::ratio(1, 4)), (x2, q(-60)), (x3, Rational::ratio(-1, 25)), (x4, q(9))],
            Relation::Le,
            q(0),
        );
        p.add_constraint(
            [(x1, Rational::ratio(1, 2)), (x2, q(-90)), (x3, Rational::ratio(-1, 50)), (x4, q(3))],
            Relation::Le,
            q(0),
        );
        p.add_constraint([(x3, q(1))], Relation::Le, q(1));
        let Outcome::Optimal(s) = p.solve() else { panic!() };
        assert_eq!(s.objective(), &Rational::ratio(1, 20));
    }
}
