//! A small exact two-phase simplex (Bland's rule) for the polyhedral
//! adjacency test. Variables are implicitly nonnegative.

use num_traits::{Signed, Zero};

use super::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cmp {
    Le,
    Ge,
    Eq,
}

#[derive(Clone, Debug)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub cmp: Cmp,
    pub rhs: Rational,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal { value: Rational, x: Vec<Rational> },
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    ncols: usize,
}

impl Tableau {
    fn rhs(&self, r: usize) -> &Rational {
        &self.rows[r][self.ncols]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for x in self.rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let f = self.rows[i][c].clone();
            for j in 0..=self.ncols {
                let t = &f * &self.rows[r][j];
                self.rows[i][j] -= t;
            }
        }
        self.basis[r] = c;
    }

    /// Maximizes `cost · x` over columns not in `barred`. `false` if unbounded.
    fn optimize(&mut self, cost: &[Rational], barred: &[bool]) -> bool {
        loop {
            let entering = (0..self.ncols).find(|&j| {
                if barred[j] || self.basis.contains(&j) {
                    return false;
                }
                let mut red = cost[j].clone();
                for (i, &b) in self.basis.iter().enumerate() {
                    red -= &cost[b] * &self.rows[i][j];
                }
                red.is_positive()
            });
            let Some(c) = entering else { return true };
            let mut best: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                if !self.rows[i][c].is_positive() {
                    continue;
                }
                let ratio = self.rhs(i) / &self.rows[i][c];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => {
                        ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                    }
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                None => return false,
                Some((r, _)) => self.pivot(r, c),
            }
        }
    }
}

/// Maximizes `objective · x` subject to `constraints` and `x >= 0`.
pub fn maximize(objective: &[Rational], constraints: &[Constraint]) -> LpOutcome {
    let n = objective.len();
    let mut normalized: Vec<Constraint> = Vec::with_capacity(constraints.len());
    for c in constraints {
        assert_eq!(c.coeffs.len(), n, "constraint width mismatch");
        if c.rhs.is_negative() {
            let cmp = match c.cmp {
                Cmp::Le => Cmp::Ge,
                Cmp::Ge => Cmp::Le,
                Cmp::Eq => Cmp::Eq,
            };
            normalized.push(Constraint {
                coeffs: c.coeffs.iter().map(|x| -x).collect(),
                cmp,
                rhs: -c.rhs.clone(),
            });
        } else {
            normalized.push(c.clone());
        }
    }
    let n_slack = normalized.iter().filter(|c| c.cmp != Cmp::Eq).count();
    let n_art = normalized.iter().filter(|c| c.cmp != Cmp::Le).count();
    let ncols = n + n_slack + n_art;
    let mut rows = Vec::with_capacity(normalized.len());
    let mut basis = Vec::with_capacity(normalized.len());
    let (mut s, mut a) = (n, n + n_slack);
    for c in &normalized {
        let mut row = vec![Rational::zero(); ncols + 1];
        row[..n].clone_from_slice(&c.coeffs);
        row[ncols] = c.rhs.clone();
        match c.cmp {
            Cmp::Le => {
                row[s] = Rational::from_integer(1.into());
                basis.push(s);
                s += 1;
            }
            Cmp::Ge => {
                row[s] = Rational::from_integer((-1).into());
                row[a] = Rational::from_integer(1.into());
                basis.push(a);
                s += 1;
                a += 1;
            }
            Cmp::Eq => {
                row[a] = Rational::from_integer(1.into());
                basis.push(a);
                a += 1;
            }
        }
        rows.push(row);
    }
    let mut t = Tableau { rows, basis, ncols };
    let is_art: Vec<bool> = (0..ncols).map(|j| j >= n + n_slack).collect();

    if n_art > 0 {
        let cost1: Vec<Rational> = (0..ncols)
            .map(|j| {
                if is_art[j] {
                    Rational::from_integer((-1).into())
                } else {
                    Rational::zero()
                }
            })
            .collect();
        let none = vec![false; ncols];
        t.optimize(&cost1, &none);
        let infeasible = t
            .basis
            .iter()
            .enumerate()
            .any(|(i, &b)| is_art[b] && !t.rhs(i).is_zero());
        if infeasible {
            return LpOutcome::Infeasible;
        }
        for i in 0..t.rows.len() {
            if is_art[t.basis[i]] {
                if let Some(c) = (0..ncols).find(|&j| !is_art[j] && !t.rows[i][j].is_zero()) {
                    t.pivot(i, c);
                }
            }
        }
    }

    let mut cost2 = vec![Rational::zero(); ncols];
    cost2[..n].clone_from_slice(objective);
    if !t.optimize(&cost2, &is_art) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![Rational::zero(); n];
    for (i, &b) in t.basis.iter().enumerate() {
        if b < n {
            x[b] = t.rhs(i).clone();
        }
    }
    let value = objective
        .iter()
        .zip(&x)
        .fold(Rational::zero(), |acc, (c, v)| acc + c * v);
    LpOutcome::Optimal { value, x }
}
