//! Dense two-phase simplex over exact rationals with Bland's rule.
//!
//! All variables are nonnegative. Rows may be `<=`, `>=` or `=`.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::config::Caps;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Minimize,
    Maximize,
}

#[derive(Debug, Clone)]
pub struct Constraint {
    pub coeffs: Vec<BigRational>,
    pub sense: Sense,
    pub rhs: BigRational,
}

#[derive(Debug, Clone)]
pub struct LpProblem {
    pub direction: Direction,
    pub objective: Vec<BigRational>,
    pub constraints: Vec<Constraint>,
}

impl LpProblem {
    pub fn new(direction: Direction, objective: Vec<BigRational>) -> LpProblem {
        LpProblem {
            direction,
            objective,
            constraints: Vec::new(),
        }
    }

    pub fn add(&mut self, coeffs: Vec<BigRational>, sense: Sense, rhs: BigRational) {
        self.constraints.push(Constraint { coeffs, sense, rhs });
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone)]
pub struct LpSolution {
    pub status: LpStatus,
    /// Objective value, present when optimal.
    pub value: Option<BigRational>,
    /// Primal solution, present when optimal.
    pub x: Option<Vec<BigRational>>,
}

struct Tableau {
    rows: Vec<Vec<BigRational>>,
    cost: Vec<BigRational>,
    basis: Vec<usize>,
    width: usize,
}

impl Tableau {
    fn rhs(&self) -> usize {
        self.width
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let piv = self.rows[r][c].clone();
        for v in self.rows[r].iter_mut() {
            if !v.is_zero() {
                *v /= &piv;
            }
        }
        let prow = self.rows[r].clone();
        let eliminate = |row: &mut Vec<BigRational>| {
            let f = row[c].clone();
            if f.is_zero() {
                return;
            }
            for (v, p) in row.iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *v -= &f * p;
                }
            }
        };
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                eliminate(row);
            }
        }
        eliminate(&mut self.cost);
        self.basis[r] = c;
    }

    /// Runs Bland's rule over `allowed` entering columns. Returns `false` if unbounded.
    fn optimize(&mut self, allowed: &[bool]) -> bool {
        let rhs = self.rhs();
        loop {
            let Some(c) = (0..self.width).find(|&j| allowed[j] && self.cost[j].is_negative()) else {
                return true;
            };
            let mut best: Option<(usize, BigRational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][c];
                if a.is_positive() {
                    let ratio = &self.rows[i][rhs] / a;
                    let better = match &best {
                        None => true,
                        Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                    };
                    if better {
                        best = Some((i, ratio));
                    }
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, c),
                None => return false,
            }
        }
    }

    fn set_cost(&mut self, c: &[BigRational]) {
        let rhs = self.rhs();
        let mut cost = c.to_vec();
        cost.resize(self.width + 1, BigRational::zero());
        for (i, row) in self.rows.iter().enumerate() {
            let cb = &c[self.basis[i]];
            if cb.is_zero() {
                continue;
            }
            for j in 0..=rhs {
                if !row[j].is_zero() {
                    cost[j] -= cb * &row[j];
                }
            }
        }
        self.cost = cost;
    }
}

/// Solves `p` exactly. Errors when the variable count exceeds `max_columns`.
pub fn lp_solve(p: &LpProblem, max_columns: usize) -> Result<LpSolution> {
    let n = p.num_vars();
    Caps::check("LP columns", max_columns, n)?;
    for con in &p.constraints {
        if con.coeffs.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                actual: con.coeffs.len(),
            });
        }
    }
    let m = p.constraints.len();

    // Column layout: originals, then one slack/surplus per inequality, then artificials.
    let mut rows: Vec<(Vec<BigRational>, Sense, BigRational)> = p
        .constraints
        .iter()
        .map(|con| {
            if con.rhs.is_negative() {
                let flipped = match con.sense {
                    Sense::Le => Sense::Ge,
                    Sense::Ge => Sense::Le,
                    Sense::Eq => Sense::Eq,
                };
                (con.coeffs.iter().map(|a| -a).collect(), flipped, -&con.rhs)
            } else {
                (con.coeffs.clone(), con.sense, con.rhs.clone())
            }
        })
        .collect();
    let n_slack = rows.iter().filter(|r| r.1 != Sense::Eq).count();
    let n_art = rows.iter().filter(|r| r.1 != Sense::Le).count();
    let width = n + n_slack + n_art;
    let mut tab = Tableau {
        rows: Vec::with_capacity(m),
        cost: Vec::new(),
        basis: Vec::with_capacity(m),
        width,
    };
    let (mut slack, mut art) = (n, n + n_slack);
    for (coeffs, sense, rhs) in rows.drain(..) {
        let mut row = coeffs;
        row.resize(width + 1, BigRational::zero());
        row[width] = rhs;
        match sense {
            Sense::Le => {
                row[slack] = BigRational::one();
                tab.basis.push(slack);
                slack += 1;
            }
            Sense::Ge => {
                row[slack] = -BigRational::one();
                slack += 1;
                row[art] = BigRational::one();
                tab.basis.push(art);
                art += 1;
            }
            Sense::Eq => {
                row[art] = BigRational::one();
                tab.basis.push(art);
                art += 1;
            }
        }
        tab.rows.push(row);
    }
    let is_art = |j: usize| j >= n + n_slack && j < width;

    if n_art > 0 {
        let mut c1 = vec![BigRational::zero(); width];
        for j in n + n_slack..width {
            c1[j] = BigRational::one();
        }
        tab.set_cost(&c1);
        let all = vec![true; width];
        tab.optimize(&all);
        if !tab.cost[width].is_zero() {
            return Ok(LpSolution {
                status: LpStatus::Infeasible,
                value: None,
                x: None,
            });
        }
        // Drive zero-level artificials out of the basis; drop redundant rows.
        let mut i = 0;
        while i < tab.rows.len() {
            if is_art(tab.basis[i]) {
                match (0..n + n_slack).find(|&j| !tab.rows[i][j].is_zero()) {
                    Some(j) => {
                        tab.pivot(i, j);
                        i += 1;
                    }
                    None => {
                        tab.rows.remove(i);
                        tab.basis.remove(i);
                    }
                }
            } else {
                i += 1;
            }
        }
    }

    let sign = match p.direction {
        Direction::Minimize => BigRational::one(),
        Direction::Maximize => -BigRational::one(),
    };
    let mut c2 = vec![BigRational::zero(); width];
    for (j, cj) in p.objective.iter().enumerate() {
        c2[j] = cj * &sign;
    }
    tab.set_cost(&c2);
    let allowed: Vec<bool> = (0..width).map(|j| !is_art(j)).collect();
    if !tab.optimize(&allowed) {
        return Ok(LpSolution {
            status: LpStatus::Unbounded,
            value: None,
            x: None,
        });
    }
    let mut x = vec![BigRational::zero(); n];
    for (i, &b) in tab.basis.iter().enumerate() {
        if b < n {
            x[b] = tab.rows[i][width].clone();
        }
    }
    let value = x
        .iter()
        .zip(&p.objective)
        .fold(BigRational::zero(), |acc, (a, b)| acc + a * b);
    Ok(LpSolution {
        status: LpStatus::Optimal,
        value: Some(value),
        x: Some(x),
    })
}
