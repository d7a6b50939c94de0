//! Linear systems over the naturals: Hilbert bases by Contejean–Devie
//! completion, and the boundedness queries the perfectness test needs.

use std::collections::HashSet;

use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};

pub mod lp;

use lp::{maximize, LpResult, Rational};

/// matrix · z = rhs with z ∈ ℕ^n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NatLinearSystem {
    pub matrix: Vec<Vec<i64>>,
    pub rhs: Vec<i64>,
    pub var_names: Vec<String>,
}

impl NatLinearSystem {
    pub fn new(num_vars: usize) -> Self {
        NatLinearSystem {
            matrix: Vec::new(),
            rhs: Vec::new(),
            var_names: (0..num_vars).map(|i| format!("z{}", i + 1)).collect(),
        }
    }

    pub fn with_names(var_names: Vec<String>) -> Self {
        NatLinearSystem {
            matrix: Vec::new(),
            rhs: Vec::new(),
            var_names,
        }
    }

    pub fn num_vars(&self) -> usize {
        self.var_names.len()
    }

    pub fn add_var(&mut self, name: impl Into<String>) -> usize {
        self.var_names.push(name.into());
        for row in &mut self.matrix {
            row.push(0);
        }
        self.var_names.len() - 1
    }

    /// Adds Σ coef·z = rhs from sparse (variable, coefficient) pairs.
    pub fn add_equation(&mut self, terms: &[(usize, i64)], rhs: i64) {
        let mut row = vec![0i64; self.num_vars()];
        for &(v, c) in terms {
            row[v] += c;
        }
        self.matrix.push(row);
        self.rhs.push(rhs);
    }

    pub fn is_solution(&self, z: &[u64]) -> bool {
        z.len() == self.num_vars()
            && self.matrix.iter().zip(&self.rhs).all(|(row, &b)| {
                row.iter()
                    .zip(z)
                    .map(|(&a, &x)| a as i128 * x as i128)
                    .sum::<i128>()
                    == b as i128
            })
    }

    /// Parses rows of the form `1 -1 2 | 3`, one equation per line.
    pub fn parse(text: &str) -> Result<Self> {
        let mut matrix = Vec::new();
        let mut rhs = Vec::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let syntax = |msg: &str| Error::Syntax {
                line: n + 1,
                msg: msg.to_string(),
            };
            let (lhs, r) = line.split_once('|').ok_or_else(|| syntax("missing `|`"))?;
            let row = lhs
                .split_whitespace()
                .map(|t| t.parse::<i64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| syntax("bad coefficient"))?;
            let b = r
                .trim()
                .parse::<i64>()
                .map_err(|_| syntax("bad right-hand side"))?;
            if let Some(first) = matrix.first() {
                let first: &Vec<i64> = first;
                if first.len() != row.len() {
                    return Err(syntax("rows have different lengths"));
                }
            }
            matrix.push(row);
            rhs.push(b);
        }
        let n = matrix.first().map_or(0, |r| r.len());
        Ok(NatLinearSystem {
            matrix,
            rhs,
            var_names: (0..n).map(|i| format!("z{}", i + 1)).collect(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct HilbertBasis {
    /// Minimal non-zero solutions of matrix·z = 0.
    pub hom: Vec<Vec<u64>>,
    /// Minimal solutions of matrix·z = rhs.
    pub part: Vec<Vec<u64>>,
}

pub const DEFAULT_NODE_BUDGET: usize = 2_000_000;

fn dominates(big: &[u64], small: &[u64]) -> bool {
    big.iter().zip(small).all(|(a, b)| a >= b)
}

/// Hilbert basis of the system.
///
/// The inhomogeneous part is obtained by homogenising with an extra
/// variable carrying the column −rhs, kept at most 1 during the search.
/// The completion grows vectors one unit at a time in the direction that
/// moves their image towards zero (⟨A·v, A·e_j⟩ < 0), pruning vectors
/// above a solution already found. Exceeding `node_budget` generated
/// vectors is an error.
pub fn hilbert(sys: &NatLinearSystem, node_budget: usize) -> Result<HilbertBasis> {
    let n = sys.num_vars();
    let m = sys.matrix.len();
    let width = n + 1;
    let col = |j: usize| -> Vec<i64> {
        (0..m)
            .map(|r| if j < n { sys.matrix[r][j] } else { -sys.rhs[r] })
            .collect()
    };
    let cols: Vec<Vec<i64>> = (0..width).map(col).collect();
    let mut basis: Vec<Vec<u64>> = Vec::new();
    let mut frontier: Vec<(Vec<u64>, Vec<i64>)> = (0..width)
        .map(|j| {
            let mut v = vec![0u64; width];
            v[j] = 1;
            (v, cols[j].clone())
        })
        .collect();
    let mut generated = frontier.len();
    while !frontier.is_empty() {
        let mut pending = Vec::new();
        for (v, image) in frontier {
            if image.iter().all(|&x| x == 0) {
                basis.push(v);
            } else {
                pending.push((v, image));
            }
        }
        let mut seen: HashSet<Vec<u64>> = HashSet::new();
        let mut next = Vec::new();
        for (v, image) in &pending {
            for j in 0..width {
                if j == n && v[n] >= 1 {
                    continue;
                }
                let mut dot: i128 = 0;
                for r in 0..m {
                    dot += image[r] as i128 * cols[j][r] as i128;
                }
                if dot >= 0 {
                    continue;
                }
                let mut w = v.clone();
                w[j] += 1;
                if basis.iter().any(|b| dominates(&w, b)) || seen.contains(&w) {
                    continue;
                }
                let mut img = Vec::with_capacity(m);
                for r in 0..m {
                    img.push(
                        image[r]
                            .checked_add(cols[j][r])
                            .ok_or(Error::Overflow("hilbert"))?,
                    );
                }
                seen.insert(w.clone());
                next.push((w, img));
            }
        }
        generated += next.len();
        if generated > node_budget {
            return Err(Error::BudgetExceeded(format!(
                "Hilbert basis search generated more than {node_budget} vectors"
            )));
        }
        next.sort();
        frontier = next;
    }
    let mut hom = Vec::new();
    let mut part = Vec::new();
    for mut v in basis {
        let z0 = v.pop().unwrap();
        if z0 == 0 {
            hom.push(v);
        } else {
            part.push(v);
        }
    }
    hom.sort();
    part.sort();
    Ok(HilbertBasis { hom, part })
}

pub fn feasible(basis: &HilbertBasis) -> Option<Vec<u64>> {
    basis.part.first().cloned()
}

pub fn coord_unbounded(basis: &HilbertBasis, i: usize) -> bool {
    basis.hom.iter().any(|h| h[i] > 0)
}

/// Maximum of coordinate `i` over all solutions; it is attained on the
/// inhomogeneous part since every homogeneous element vanishes there.
pub fn coord_max(basis: &HilbertBasis, i: usize) -> Result<u64> {
    if basis.part.is_empty() {
        return Err(Error::Precondition("system is infeasible".into()));
    }
    if coord_unbounded(basis, i) {
        return Err(Error::Precondition(format!("coordinate {i} is unbounded")));
    }
    Ok(basis.part.iter().map(|p| p[i]).max().unwrap())
}

/// A solution with every listed coordinate ≥ 1, or `None` when one of
/// them is forced to 0 or the system is infeasible.
pub fn positive_support_solution(basis: &HilbertBasis, coords: &[usize]) -> Option<Vec<u64>> {
    let uncovered: Vec<usize> = coords
        .iter()
        .copied()
        .filter(|&i| !coord_unbounded(basis, i))
        .collect();
    let base = basis
        .part
        .iter()
        .find(|p| uncovered.iter().all(|&i| p[i] > 0))?;
    let mut sol = base.clone();
    for &i in coords {
        if sol[i] == 0 {
            let h = basis.hom.iter().find(|h| h[i] > 0)?;
            for (s, x) in sol.iter_mut().zip(h) {
                *s += x;
            }
        }
    }
    Some(sol)
}

/// Original variable = offset + (reduced variable, if any).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Affine {
    pub offset: i64,
    pub var: Option<usize>,
}

/// A system with fixed and difference-linked variables substituted away.
#[derive(Clone, Debug)]
pub struct ReducedSystem {
    pub system: NatLinearSystem,
    /// One entry per original variable.
    pub map: Vec<Affine>,
    /// Set when substitution already exhibits a contradiction.
    pub infeasible: bool,
}

impl ReducedSystem {
    /// Lifts a solution of the reduced system back to the original one.
    pub fn lift(&self, z: &[u64]) -> Vec<u64> {
        self.map
            .iter()
            .map(|a| (a.offset + a.var.map_or(0, |v| z[v] as i64)) as u64)
            .collect()
    }

    /// Lifts a homogeneous solution (offsets dropped).
    pub fn lift_hom(&self, h: &[u64]) -> Vec<u64> {
        self.map.iter().map(|a| a.var.map_or(0, |v| h[v])).collect()
    }
}

/// Substitutes away equations k·z = c and z_p − z_q = c.
///
/// For a difference equation the variable with the larger value is
/// rewritten as the other plus |c|, which keeps non-negativity equivalent.
pub fn reduce_system(sys: &NatLinearSystem) -> ReducedSystem {
    let n = sys.num_vars();
    let mut map: Vec<Affine> = (0..n)
        .map(|i| Affine {
            offset: 0,
            var: Some(i),
        })
        .collect();
    let mut alive: Vec<bool> = vec![true; sys.matrix.len()];
    let mut infeasible = false;
    // equation r in terms of current variables (sparse), with rhs
    let express = |r: usize, map: &[Affine]| -> (Vec<(usize, i64)>, i64) {
        let mut coeffs: std::collections::BTreeMap<usize, i64> = Default::default();
        let mut rhs = sys.rhs[r];
        for (j, &a) in sys.matrix[r].iter().enumerate() {
            if a == 0 {
                continue;
            }
            rhs -= a * map[j].offset;
            if let Some(v) = map[j].var {
                *coeffs.entry(v).or_default() += a;
            }
        }
        (coeffs.into_iter().filter(|&(_, c)| c != 0).collect(), rhs)
    };
    let substitute = |map: &mut [Affine], from: usize, to: Affine| {
        for a in map.iter_mut() {
            if a.var == Some(from) {
                a.offset += to.offset;
                a.var = to.var;
            }
        }
    };
    let mut changed = true;
    while changed && !infeasible {
        changed = false;
        #[allow(clippy::needless_range_loop)]
        for r in 0..sys.matrix.len() {
            if !alive[r] {
                continue;
            }
            let (terms, rhs) = express(r, &map);
            match terms.as_slice() {
                [] => {
                    alive[r] = false;
                    changed = true;
                    if rhs != 0 {
                        infeasible = true;
                    }
                }
                [(v, k)] => {
                    alive[r] = false;
                    changed = true;
                    if rhs % k != 0 || rhs / k < 0 {
                        infeasible = true;
                    } else {
                        substitute(
                            &mut map,
                            *v,
                            Affine {
                                offset: rhs / k,
                                var: None,
                            },
                        );
                    }
                }
                [(p, a), (q, b)] if a.abs() == 1 && *b == -a => {
                    // a·(z_p − z_q) = rhs
                    let c = rhs * a;
                    alive[r] = false;
                    changed = true;
                    if c >= 0 {
                        substitute(
                            &mut map,
                            *p,
                            Affine {
                                offset: c,
                                var: Some(*q),
                            },
                        );
                    } else {
                        substitute(
                            &mut map,
                            *q,
                            Affine {
                                offset: -c,
                                var: Some(*p),
                            },
                        );
                    }
                }
                _ => {}
            }
            if infeasible {
                break;
            }
        }
    }
    // renumber surviving variables
    let mut used: Vec<usize> = map.iter().filter_map(|a| a.var).collect();
    used.sort();
    used.dedup();
    let index = |v: usize| used.binary_search(&v).unwrap();
    let mut reduced =
        NatLinearSystem::with_names(used.iter().map(|&v| sys.var_names[v].clone()).collect());
    if infeasible {
        reduced.add_equation(&[], 1);
    } else {
        for r in (0..sys.matrix.len()).filter(|&r| alive[r]) {
            let (terms, rhs) = express(r, &map);
            let terms: Vec<(usize, i64)> = terms.iter().map(|&(v, c)| (index(v), c)).collect();
            reduced.add_equation(&terms, rhs);
        }
    }
    for a in &mut map {
        a.var = a.var.map(index);
    }
    ReducedSystem {
        system: reduced,
        map,
        infeasible,
    }
}

/// Basis of a system together with its reduction, answering the queries
/// on original coordinates.
#[derive(Clone, Debug)]
pub struct SolvedSystem {
    pub reduced: ReducedSystem,
    pub basis: HilbertBasis,
}

impl SolvedSystem {
    pub fn solve(sys: &NatLinearSystem, node_budget: usize) -> Result<Self> {
        let reduced = reduce_system(sys);
        let basis = if reduced.infeasible {
            HilbertBasis::default()
        } else {
            hilbert(&reduced.system, node_budget)?
        };
        Ok(SolvedSystem { reduced, basis })
    }

    pub fn feasible(&self) -> Option<Vec<u64>> {
        feasible(&self.basis).map(|z| self.reduced.lift(&z))
    }

    pub fn unbounded(&self, i: usize) -> bool {
        self.reduced.map[i]
            .var
            .is_some_and(|v| coord_unbounded(&self.basis, v))
    }

    pub fn max(&self, i: usize) -> Result<u64> {
        let a = self.reduced.map[i];
        match a.var {
            None if self.basis.part.is_empty() => {
                Err(Error::Precondition("system is infeasible".into()))
            }
            None => Ok(a.offset as u64),
            Some(v) => Ok((a.offset + coord_max(&self.basis, v)? as i64) as u64),
        }
    }

    /// Homogeneous solutions lifted to original coordinates.
    pub fn hom(&self) -> Vec<Vec<u64>> {
        self.basis
            .hom
            .iter()
            .map(|h| self.reduced.lift_hom(h))
            .collect()
    }

    pub fn part(&self) -> Vec<Vec<u64>> {
        self.basis
            .part
            .iter()
            .map(|p| self.reduced.lift(p))
            .collect()
    }

    pub fn positive_support_solution(&self, coords: &[usize]) -> Option<Vec<u64>> {
        let mut red = Vec::new();
        for &i in coords {
            match self.reduced.map[i] {
                Affine {
                    var: Some(v),
                    offset,
                } if offset <= 0 => red.push(v),
                Affine { var: Some(_), .. } => {}
                Affine { var: None, offset } if offset > 0 => {}
                Affine { var: None, .. } => return None,
            }
        }
        positive_support_solution(&self.basis, &red).map(|z| self.reduced.lift(&z))
    }
}

/// Vertices visited by one branch-and-bound search.
pub const DEFAULT_BRANCH_BUDGET: usize = 20_000;

fn to_i64(x: &Rational) -> Result<i64> {
    x.to_integer()
        .to_i64()
        .ok_or(Error::Overflow("branch and bound"))
}

/// Whether `matrix·z = rhs` has a solution in ℤ^n, ignoring signs.
///
/// Unimodular column operations bring the matrix to echelon form; the
/// triangular system is then solved with divisibility checks.
pub fn integer_solvable(sys: &NatLinearSystem) -> bool {
    use num_bigint::BigInt;
    use num_traits::{Signed, Zero};
    let n = sys.num_vars();
    let mut m: Vec<Vec<BigInt>> = sys
        .matrix
        .iter()
        .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut y: Vec<BigInt> = Vec::new();
    let mut pivot = 0;
    for r in 0..m.len() {
        loop {
            let nonzero: Vec<usize> = (pivot..n).filter(|&c| !m[r][c].is_zero()).collect();
            if nonzero.len() <= 1 {
                if let Some(&c) = nonzero.first() {
                    for row in m.iter_mut() {
                        row.swap(pivot, c);
                    }
                }
                break;
            }
            let c = *nonzero.iter().min_by_key(|&&c| m[r][c].abs()).unwrap();
            for row in m.iter_mut() {
                row.swap(pivot, c);
            }
            for &j in &nonzero {
                let j = if j == c {
                    pivot
                } else if j == pivot {
                    c
                } else {
                    j
                };
                if j == pivot {
                    continue;
                }
                let q = m[r][j].div_floor(&m[r][pivot]);
                for row in m.iter_mut() {
                    let t = &q * &row[pivot];
                    row[j] -= t;
                }
            }
        }
        let residual: BigInt =
            BigInt::from(sys.rhs[r]) - (0..pivot).map(|c| &m[r][c] * &y[c]).sum::<BigInt>();
        if pivot < n && !m[r][pivot].is_zero() {
            let (q, rem) = residual.div_rem(&m[r][pivot]);
            if !rem.is_zero() {
                return false;
            }
            y.push(q);
            pivot += 1;
        } else if !residual.is_zero() {
            return false;
        }
    }
    true
}

/// Integer solutions by branch and bound on exact relaxations: the best
/// value of `objective` (feasibility when `None`) and a point reaching it.
/// `Ok(None)` means no integer solution; an unbounded objective is an
/// error.
pub fn integer_optimum(
    sys: &NatLinearSystem,
    lower: &[i64],
    objective: Option<usize>,
    budget: usize,
) -> Result<Option<(i64, Vec<u64>)>> {
    let n = sys.num_vars();
    let obj: Vec<i64> = (0..n).map(|j| i64::from(objective == Some(j))).collect();
    let mut stack: Vec<(Vec<i64>, Vec<Option<i64>>)> = vec![(lower.to_vec(), vec![None; n])];
    let mut best: Option<(i64, Vec<u64>)> = None;
    let mut visited = 0;
    while let Some((lo, hi)) = stack.pop() {
        visited += 1;
        if visited > budget {
            return Err(Error::BudgetExceeded(format!(
                "branch and bound visited more than {budget} nodes"
            )));
        }
        let (value, point) = match maximize(&sys.matrix, &sys.rhs, &lo, &hi, &obj) {
            LpResult::Infeasible => continue,
            LpResult::Unbounded => {
                return Err(Error::Precondition("objective is unbounded".into()))
            }
            LpResult::Optimal { value, point } => (value, point),
        };
        let ceiling = to_i64(&value.floor())?;
        if best.as_ref().is_some_and(|(b, _)| ceiling <= *b) {
            continue;
        }
        match point.iter().position(|x| !x.is_integer()) {
            None => {
                let z = point
                    .iter()
                    .map(|x| to_i64(x).map(|v| v as u64))
                    .collect::<Result<Vec<_>>>()?;
                best = Some((ceiling, z));
                if objective.is_none() {
                    break;
                }
            }
            Some(j) => {
                let f = to_i64(&point[j].floor())?;
                let mut up = (lo.clone(), hi.clone());
                up.0[j] = f + 1;
                let mut down = (lo, hi);
                down.1[j] = Some(f);
                // explore the rounded-down branch first
                stack.push(up);
                stack.push(down);
            }
        }
    }
    Ok(best)
}

/// A non-negative rational solution of `matrix·h = 0` with `h_v ≥ 1` for
/// every listed `v`, scaled to integers.
pub fn cone_point(sys: &NatLinearSystem, coords: &[usize]) -> Option<Vec<u64>> {
    let n = sys.num_vars();
    let mut lower = vec![0i64; n];
    for &v in coords {
        lower[v] = 1;
    }
    let zeros = vec![0i64; sys.rhs.len()];
    match maximize(&sys.matrix, &zeros, &lower, &vec![None; n], &vec![0; n]) {
        LpResult::Optimal { point, .. } => {
            let lcm = point
                .iter()
                .fold(num_bigint::BigInt::one(), |acc, x| acc.lcm(x.denom()));
            point
                .iter()
                .map(|x| (x.numer() * (&lcm / x.denom())).to_u64())
                .collect()
        }
        _ => None,
    }
}

/// Feasibility and boundedness queries on a system, answered on its
/// reduction with exact linear programming: a coordinate is unbounded
/// over the integer solutions of a feasible system iff the cone of
/// homogeneous rational solutions contains a point positive on it.
#[derive(Clone, Debug)]
pub struct LinearQueries {
    pub reduced: ReducedSystem,
    base: Option<Vec<u64>>,
    budget: usize,
    basis: Option<HilbertBasis>,
}

impl LinearQueries {
    pub fn new(sys: &NatLinearSystem, budget: usize) -> Result<Self> {
        let reduced = reduce_system(sys);
        let mut basis = None;
        let base = if reduced.infeasible || !integer_solvable(&reduced.system) {
            None
        } else {
            let lower = vec![0; reduced.system.num_vars()];
            match integer_optimum(&reduced.system, &lower, None, budget) {
                Ok(found) => found.map(|(_, z)| z),
                // branch and bound can wander on thin polytopes; the
                // complete basis settles them when it stays small
                Err(Error::BudgetExceeded(_)) => {
                    let b = hilbert(&reduced.system, DEFAULT_NODE_BUDGET)?;
                    let found = feasible(&b);
                    basis = Some(b);
                    found
                }
                Err(e) => return Err(e),
            }
        };
        Ok(LinearQueries {
            reduced,
            base,
            budget,
            basis,
        })
    }

    /// Some solution of the original system.
    pub fn feasible(&self) -> Option<Vec<u64>> {
        self.base.as_ref().map(|z| self.reduced.lift(z))
    }

    pub fn unbounded(&self, i: usize) -> bool {
        self.base.is_some()
            && self.reduced.map[i]
                .var
                .is_some_and(|v| cone_point(&self.reduced.system, &[v]).is_some())
    }

    /// Exact maximum of a bounded coordinate.
    pub fn max(&self, i: usize) -> Result<u64> {
        if self.base.is_none() {
            return Err(Error::Precondition("system is infeasible".into()));
        }
        let a = self.reduced.map[i];
        let Some(v) = a.var else {
            return Ok(a.offset as u64);
        };
        if let Some(b) = &self.basis {
            return Ok(a.offset as u64 + coord_max(b, v)?);
        }
        let lower = vec![0; self.reduced.system.num_vars()];
        let value = match integer_optimum(&self.reduced.system, &lower, Some(v), self.budget) {
            Ok(found) => found.expect("feasible system has an optimum").0 as u64,
            Err(Error::BudgetExceeded(_)) => {
                coord_max(&hilbert(&self.reduced.system, DEFAULT_NODE_BUDGET)?, v)?
            }
            Err(e) => return Err(e),
        };
        Ok(a.offset as u64 + value)
    }

    /// A homogeneous solution, in original coordinates, positive on every
    /// listed coordinate.
    pub fn period(&self, coords: &[usize]) -> Option<Vec<u64>> {
        let mut vars = Vec::new();
        for &i in coords {
            vars.push(self.reduced.map[i].var?);
        }
        vars.sort();
        vars.dedup();
        cone_point(&self.reduced.system, &vars).map(|h| self.reduced.lift_hom(&h))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(rows: &[&[i64]], rhs: &[i64]) -> NatLinearSystem {
        let mut s = NatLinearSystem::new(rows[0].len());
        for (row, &b) in rows.iter().zip(rhs) {
            let terms: Vec<_> = row.iter().copied().enumerate().collect();
            s.add_equation(&terms, b);
        }
        s
    }

    #[test]
    fn hilbert_examples() {
        let b = hilbert(&sys(&[&[1, -1]], &[0]), DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(b.hom, vec![vec![1, 1]]);
        assert_eq!(b.part, vec![vec![0, 0]]);
        let b = hilbert(&sys(&[&[1, 1]], &[2]), DEFAULT_NODE_BUDGET).unwrap();
        assert!(b.hom.is_empty());
        assert_eq!(b.part, vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
    }

    #[test]
    fn feasibility_examples() {
        let b = hilbert(&sys(&[&[1, -1]], &[1]), DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(feasible(&b), Some(vec![1, 0]));
        let b = hilbert(&sys(&[&[2]], &[1]), DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(feasible(&b), None);
        assert!(coord_max(&b, 0).is_err());
    }

    #[test]
    fn boundedness_queries() {
        let b = hilbert(&sys(&[&[1, -1]], &[0]), DEFAULT_NODE_BUDGET).unwrap();
        assert!(coord_unbounded(&b, 0));
        assert_eq!(positive_support_solution(&b, &[0, 1]), Some(vec![1, 1]));
        let b = hilbert(&sys(&[&[1, 1]], &[2]), DEFAULT_NODE_BUDGET).unwrap();
        assert!(!coord_unbounded(&b, 0));
        assert_eq!(coord_max(&b, 0).unwrap(), 2);
        assert_eq!(positive_support_solution(&b, &[0, 1]), Some(vec![1, 1]));
        let b = hilbert(&sys(&[&[1]], &[0]), DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(positive_support_solution(&b, &[0]), None);
    }

    #[test]
    fn budget_is_enforced() {
        let s = sys(&[&[7, -11, 13, -17]], &[0]);
        assert!(matches!(hilbert(&s, 10), Err(Error::BudgetExceeded(_))));
    }

    #[test]
    fn reduction_substitutes_fixed_and_linked_variables() {
        // z0 = 3, z1 - z0 = 2, z1 + z2 - z3 = 0
        let s = sys(&[&[1, 0, 0, 0], &[-1, 1, 0, 0], &[0, 1, 1, -1]], &[3, 2, 0]);
        let r = reduce_system(&s);
        assert!(!r.infeasible);
        assert_eq!(
            r.map[0],
            Affine {
                offset: 3,
                var: None
            }
        );
        assert_eq!(
            r.map[1],
            Affine {
                offset: 5,
                var: None
            }
        );
        let solved = SolvedSystem::solve(&s, DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(solved.feasible(), Some(vec![3, 5, 0, 5]));
        assert!(solved.unbounded(2) && solved.unbounded(3));
        assert_eq!(solved.max(1).unwrap(), 5);
        let bad = sys(&[&[1, 0], &[1, 0]], &[1, 2]);
        assert!(reduce_system(&bad).infeasible);
        let neg = sys(&[&[1, -1], &[0, 1]], &[-2, 1]);
        assert!(SolvedSystem::solve(&neg, 100).unwrap().feasible().is_none());
    }

    #[test]
    fn parses_text_systems() {
        let s = NatLinearSystem::parse("1 -1 | 0\n# comment\n2 1 | 4\n").unwrap();
        assert_eq!(s.matrix, vec![vec![1, -1], vec![2, 1]]);
        assert_eq!(s.rhs, vec![0, 4]);
        assert!(NatLinearSystem::parse("1 2\n").is_err());
    }

    #[test]
    fn linear_queries_match_the_basis() {
        let s = sys(&[&[1, 1]], &[2]);
        let q = LinearQueries::new(&s, DEFAULT_BRANCH_BUDGET).unwrap();
        assert!(!q.unbounded(0));
        assert_eq!(q.max(0).unwrap(), 2);
        let s = sys(&[&[1, -1]], &[1]);
        let q = LinearQueries::new(&s, DEFAULT_BRANCH_BUDGET).unwrap();
        assert!(q.unbounded(0) && q.unbounded(1));
        assert_eq!(q.period(&[0]), Some(vec![1, 1]));
        // 2x + 2y = 3 is rationally but not integrally feasible
        let s = sys(&[&[2, 2, 1]], &[3]);
        let q = LinearQueries::new(&s, DEFAULT_BRANCH_BUDGET).unwrap();
        assert_eq!(q.max(0).unwrap(), 1);
        let s = sys(&[&[2, 2]], &[3]);
        assert!(LinearQueries::new(&s, DEFAULT_BRANCH_BUDGET)
            .unwrap()
            .feasible()
            .is_none());
    }

    #[test]
    fn lattice_solvability() {
        assert!(!integer_solvable(&sys(&[&[2, -2, 2]], &[1])));
        assert!(integer_solvable(&sys(&[&[2, 3]], &[1])));
        // x + y = 1 and x - y = 0 force x = 1/2
        assert!(!integer_solvable(&sys(&[&[1, 1], &[1, -1]], &[1, 0])));
        assert!(integer_solvable(&sys(&[&[1, 1], &[2, 2]], &[1, 2])));
        assert!(!integer_solvable(&sys(&[&[1, 1], &[2, 2]], &[1, 3])));
        assert!(integer_solvable(&sys(&[&[6, 10, 15]], &[1])));
    }
}
