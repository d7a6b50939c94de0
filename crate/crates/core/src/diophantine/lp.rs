//! Exact two-phase simplex over the rationals with Bland's rule.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpResult {
    Infeasible,
    Unbounded,
    Optimal {
        value: Rational,
        point: Vec<Rational>,
    },
}

fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    /// Reduced costs; the last entry holds the objective value.
    cost: Vec<Rational>,
}

impl Tableau {
    fn width(&self) -> usize {
        self.cost.len() - 1
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for x in self.rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = self.rows[r].clone();
        for (k, row) in self.rows.iter_mut().enumerate() {
            if k != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    if !p.is_zero() {
                        *x -= &f * p;
                    }
                }
            }
        }
        if !self.cost[c].is_zero() {
            let f = self.cost[c].clone();
            for (x, p) in self.cost.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Maximises over columns `< allowed`; false if unbounded.
    fn run(&mut self, allowed: usize) -> bool {
        let rhs = self.width();
        loop {
            let Some(c) = (0..allowed).find(|&j| self.cost[j].is_negative()) else {
                return true;
            };
            let mut best: Option<(usize, Rational)> = None;
            for (r, row) in self.rows.iter().enumerate() {
                if row[c].is_positive() {
                    let ratio = &row[rhs] / &row[c];
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
            }
            match best {
                Some((r, _)) => self.pivot(r, c),
                None => return false,
            }
        }
    }
}

/// Maximises `objective·z` subject to `matrix·z = rhs`, `z ≥ 0`.
pub fn maximize_standard(
    matrix: &[Vec<Rational>],
    rhs: &[Rational],
    objective: &[Rational],
) -> LpResult {
    let m = matrix.len();
    let n = objective.len();
    let width = n + m;
    let mut rows = Vec::with_capacity(m);
    for (r, row) in matrix.iter().enumerate() {
        let flip = rhs[r].is_negative();
        let mut t: Vec<Rational> = row
            .iter()
            .map(|x| if flip { -x.clone() } else { x.clone() })
            .collect();
        t.extend((0..m).map(|k| {
            if k == r {
                Rational::one()
            } else {
                Rational::zero()
            }
        }));
        t.push(if flip {
            -rhs[r].clone()
        } else {
            rhs[r].clone()
        });
        rows.push(t);
    }
    // phase one: maximise minus the sum of the artificial variables
    let mut cost = vec![Rational::zero(); width + 1];
    for row in &rows {
        for (c, x) in cost.iter_mut().zip(row).take(n) {
            *c -= x;
        }
        cost[width] -= &row[width];
    }
    let mut t = Tableau {
        rows,
        basis: (n..width).collect(),
        cost,
    };
    t.run(width);
    if t.cost[width].is_negative() {
        return LpResult::Infeasible;
    }
    // drive artificial variables out of the basis, dropping redundant rows
    let mut r = 0;
    while r < t.rows.len() {
        if t.basis[r] >= n {
            match (0..n).find(|&c| !t.rows[r][c].is_zero()) {
                Some(c) => t.pivot(r, c),
                None => {
                    t.rows.remove(r);
                    t.basis.remove(r);
                    continue;
                }
            }
        }
        r += 1;
    }
    let mut cost: Vec<Rational> = (0..=width)
        .map(|j| {
            if j < n {
                -objective[j].clone()
            } else {
                Rational::zero()
            }
        })
        .collect();
    for (row, &b) in t.rows.iter().zip(&t.basis) {
        if !cost[b].is_zero() {
            let f = cost[b].clone();
            for (x, p) in cost.iter_mut().zip(row) {
                *x -= &f * p;
            }
        }
    }
    t.cost = cost;
    if !t.run(n) {
        return LpResult::Unbounded;
    }
    let mut point = vec![Rational::zero(); n];
    for (row, &b) in t.rows.iter().zip(&t.basis) {
        point[b] = row[width].clone();
    }
    LpResult::Optimal {
        value: t.cost[width].clone(),
        point,
    }
}

/// Maximises `objective·z` subject to `matrix·z = rhs` and
/// `lower ≤ z ≤ upper`.
pub fn maximize(
    matrix: &[Vec<i64>],
    rhs: &[i64],
    lower: &[i64],
    upper: &[Option<i64>],
    objective: &[i64],
) -> LpResult {
    let n = objective.len();
    if (0..n).any(|j| upper[j].is_some_and(|u| u < lower[j])) {
        return LpResult::Infeasible;
    }
    let capped: Vec<usize> = (0..n).filter(|&j| upper[j].is_some()).collect();
    let cols = n + capped.len();
    let mut a = Vec::new();
    let mut b = Vec::new();
    for (row, &r) in matrix.iter().zip(rhs) {
        let shift: i128 = row
            .iter()
            .zip(lower)
            .map(|(&x, &l)| x as i128 * l as i128)
            .sum();
        let mut t: Vec<Rational> = row.iter().map(|&x| q(x)).collect();
        t.resize(cols, Rational::zero());
        a.push(t);
        b.push(Rational::from_integer(BigInt::from(r as i128 - shift)));
    }
    for (k, &j) in capped.iter().enumerate() {
        let mut t = vec![Rational::zero(); cols];
        t[j] = Rational::one();
        t[n + k] = Rational::one();
        a.push(t);
        b.push(q(upper[j].unwrap() - lower[j]));
    }
    let mut obj: Vec<Rational> = objective.iter().map(|&c| q(c)).collect();
    obj.resize(cols, Rational::zero());
    match maximize_standard(&a, &b, &obj) {
        LpResult::Optimal { value, point } => {
            let offset: i128 = objective
                .iter()
                .zip(lower)
                .map(|(&c, &l)| c as i128 * l as i128)
                .sum();
            let point: Vec<Rational> = (0..n).map(|j| &point[j] + q(lower[j])).collect();
            LpResult::Optimal {
                value: value + Rational::from_integer(BigInt::from(offset)),
                point,
            }
        }
        other => other,
    }
}
