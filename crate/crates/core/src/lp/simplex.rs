//! Dense two-phase primal simplex on equality-constrained problems with
//! lower-bounded variables.
//!
//! Entering and leaving variables follow Bland's smallest-index rule, so the
//! method terminates on degenerate problems. Lower bounds are removed by the
//! shift `x = x' + lb` before the tableau is built.

use serde::Serialize;

use crate::{Error, Result};

/// Smallest pivot magnitude accepted in the ratio test.
pub const PIVOT_TOL: f64 = 1e-11;
/// Phase-1 optimum above which the problem is declared infeasible,
/// relative to `1 + |b|_inf`.
pub const FEASIBILITY_TOL: f64 = 1e-9;
const ZERO_TOL: f64 = 1e-12;
const COST_TOL: f64 = 1e-11;

/// `maximize c.x` subject to `A x = b`, `x >= lb`.
#[derive(Debug, Clone, PartialEq)]
pub struct LpStandardForm {
    pub objective: Vec<f64>,
    pub eq_matrix: Vec<Vec<f64>>,
    pub eq_rhs: Vec<f64>,
    pub lower_bounds: Vec<f64>,
}

impl LpStandardForm {
    /// Problem with all lower bounds at zero.
    pub fn new(objective: Vec<f64>, eq_matrix: Vec<Vec<f64>>, eq_rhs: Vec<f64>) -> Self {
        let n = objective.len();
        Self {
            objective,
            eq_matrix,
            eq_rhs,
            lower_bounds: vec![0.0; n],
        }
    }

    pub fn with_lower_bounds(mut self, lower_bounds: Vec<f64>) -> Self {
        self.lower_bounds = lower_bounds;
        self
    }

    pub fn n_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn n_rows(&self) -> usize {
        self.eq_rhs.len()
    }

    fn check(&self) -> Result<()> {
        let (m, n) = (self.n_rows(), self.n_vars());
        let bad = |msg: String| Err(Error::InvalidInput(msg));
        if self.eq_matrix.len() != m {
            return bad(format!(
                "{} matrix rows for {m} right-hand sides",
                self.eq_matrix.len()
            ));
        }
        if m > n {
            return bad(format!("{m} constraints for {n} variables"));
        }
        if self.lower_bounds.len() != n {
            return bad(format!(
                "{} lower bounds for {n} variables",
                self.lower_bounds.len()
            ));
        }
        if let Some(i) = self.eq_matrix.iter().position(|row| row.len() != n) {
            return bad(format!(
                "row {i} has {} entries, expected {n}",
                self.eq_matrix[i].len()
            ));
        }
        let finite = self.objective.iter().all(|v| v.is_finite())
            && self.eq_rhs.iter().all(|v| v.is_finite())
            && self.lower_bounds.iter().all(|v| v.is_finite())
            && self.eq_matrix.iter().flatten().all(|v| v.is_finite());
        if !finite {
            return bad("non-finite coefficient".into());
        }
        Ok(())
    }

    /// `|A x - b|_inf`.
    pub fn residual(&self, x: &[f64]) -> f64 {
        self.eq_matrix
            .iter()
            .zip(&self.eq_rhs)
            .map(|(row, b)| (row.iter().zip(x).map(|(a, v)| a * v).sum::<f64>() - b).abs())
            .fold(0.0, f64::max)
    }

    pub fn objective_at(&self, x: &[f64]) -> f64 {
        self.objective.iter().zip(x).map(|(c, v)| c * v).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LpSolution {
    pub status: LpStatus,
    /// Primal vertex; meaningful only when `status == Optimal`.
    pub x: Vec<f64>,
    pub objective_value: f64,
    pub iterations: usize,
}

struct Tableau {
    rows: Vec<Vec<f64>>,
    /// Reduced costs of a minimization, last entry holds `-z`.
    cost: Vec<f64>,
    basis: Vec<usize>,
    /// Columns allowed to enter the basis.
    eligible: Vec<bool>,
    width: usize,
    iterations: usize,
    max_iterations: usize,
}

enum Step {
    Optimal,
    Unbounded,
    Pivoted,
}

impl Tableau {
    fn rhs(&self, i: usize) -> f64 {
        self.rows[i][self.width]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = 1.0 / self.rows[r][c];
        self.rows[r].iter_mut().for_each(|v| *v *= inv);
        self.rows[r][c] = 1.0;
        let pivot_row = std::mem::take(&mut self.rows[r]);
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[c];
            if f != 0.0 {
                row.iter_mut()
                    .zip(&pivot_row)
                    .for_each(|(v, p)| *v -= f * p);
                row[c] = 0.0;
            }
        }
        let f = self.cost[c];
        if f != 0.0 {
            self.cost
                .iter_mut()
                .zip(&pivot_row)
                .for_each(|(v, p)| *v -= f * p);
            self.cost[c] = 0.0;
        }
        self.rows[r] = pivot_row;
        self.basis[r] = c;
        self.iterations += 1;
    }

    /// Rebuilds reduced costs for cost vector `c` (minimization) and the
    /// current basis.
    fn price(&mut self, c: &[f64]) {
        self.cost = c.to_vec();
        self.cost.push(0.0);
        for (i, &j) in self.basis.iter().enumerate() {
            let cb = self.cost[j];
            if cb != 0.0 {
                for (v, a) in self.cost.iter_mut().zip(&self.rows[i]) {
                    *v -= cb * a;
                }
            }
        }
        for &j in &self.basis {
            self.cost[j] = 0.0;
        }
    }

    fn step(&mut self) -> Result<Step> {
        let mut skipped = None;
        for j in 0..self.width {
            if !self.eligible[j] || self.cost[j] >= -COST_TOL {
                continue;
            }
            let mut best: Option<(usize, f64)> = None;
            let mut largest = 0.0_f64;
            for (i, row) in self.rows.iter().enumerate() {
                let a = row[j];
                largest = largest.max(a);
                if a > PIVOT_TOL {
                    let ratio = row[self.width] / a;
                    best = match best {
                        None => Some((i, ratio)),
                        Some((bi, br)) => {
                            let tie = (ratio - br).abs() <= ZERO_TOL * (1.0 + br.abs());
                            if ratio < br && !tie || tie && self.basis[i] < self.basis[bi] {
                                Some((i, ratio))
                            } else {
                                Some((bi, br))
                            }
                        }
                    };
                }
            }
            match best {
                Some((r, _)) => {
                    if self.iterations >= self.max_iterations {
                        return Err(Error::IterationLimit(self.iterations));
                    }
                    self.pivot(r, j);
                    return Ok(Step::Pivoted);
                }
                None if largest <= ZERO_TOL => return Ok(Step::Unbounded),
                None => skipped = Some(largest),
            }
        }
        match skipped {
            Some(mag) => Err(Error::NumericalBreakdown(mag)),
            None => Ok(Step::Optimal),
        }
    }

    fn run(&mut self) -> Result<Step> {
        loop {
            match self.step()? {
                Step::Pivoted => continue,
                done => return Ok(done),
            }
        }
    }
}

pub fn solve_lp(problem: &LpStandardForm) -> Result<LpSolution> {
    problem.check()?;
    let (m, n) = (problem.n_rows(), problem.n_vars());
    let lb = &problem.lower_bounds;

    // shift x = x' + lb and make every right-hand side nonnegative
    let mut rows: Vec<Vec<f64>> = problem.eq_matrix.clone();
    let mut rhs: Vec<f64> = problem
        .eq_matrix
        .iter()
        .zip(&problem.eq_rhs)
        .map(|(row, b)| b - row.iter().zip(lb).map(|(a, l)| a * l).sum::<f64>())
        .collect();
    for (row, b) in rows.iter_mut().zip(rhs.iter_mut()) {
        if *b < 0.0 {
            row.iter_mut().for_each(|v| *v = -*v);
            *b = -*b;
        }
    }

    // crash basis from singleton columns, artificials elsewhere
    let mut basis: Vec<Option<usize>> = vec![None; m];
    for j in 0..n {
        let mut nz = (0..m).filter(|&i| rows[i][j] != 0.0);
        let (Some(i), None) = (nz.next(), nz.next()) else {
            continue;
        };
        if basis[i].is_some() {
            continue;
        }
        let a = rows[i][j];
        if a < 0.0 && rhs[i] == 0.0 {
            rows[i].iter_mut().for_each(|v| *v = -*v);
        } else if a < 0.0 {
            continue;
        }
        let inv = 1.0 / rows[i][j];
        rows[i].iter_mut().for_each(|v| *v *= inv);
        rhs[i] *= inv;
        basis[i] = Some(j);
    }
    let artificial_rows: Vec<usize> = (0..m).filter(|&i| basis[i].is_none()).collect();
    let width = n + artificial_rows.len();
    let mut tab_rows = Vec::with_capacity(m);
    for (i, (mut row, b)) in rows.into_iter().zip(rhs).enumerate() {
        row.resize(width + 1, 0.0);
        if basis[i].is_none() {
            let k = artificial_rows
                .iter()
                .position(|&r| r == i)
                .expect("listed");
            row[n + k] = 1.0;
            basis[i] = Some(n + k);
        }
        row[width] = b;
        tab_rows.push(row);
    }
    let mut tab = Tableau {
        rows: tab_rows,
        cost: Vec::new(),
        basis: basis.into_iter().map(|b| b.expect("assigned")).collect(),
        eligible: vec![true; width],
        width,
        iterations: 0,
        max_iterations: 50_000 + 50 * (m + width),
    };

    // phase 1: minimize the sum of artificials
    if !artificial_rows.is_empty() {
        let mut c1 = vec![0.0; width];
        c1[n..].iter_mut().for_each(|v| *v = 1.0);
        tab.price(&c1);
        tab.run()?;
        let infeasibility: f64 = (0..m)
            .filter(|&i| tab.basis[i] >= n)
            .map(|i| tab.rhs(i))
            .sum();
        let scale = 1.0 + problem.eq_rhs.iter().fold(0.0_f64, |a, b| a.max(b.abs()));
        if infeasibility > FEASIBILITY_TOL * scale {
            return Ok(LpSolution {
                status: LpStatus::Infeasible,
                x: vec![f64::NAN; n],
                objective_value: f64::NAN,
                iterations: tab.iterations,
            });
        }
        // drive zero-level artificials out where a structural pivot exists
        for i in 0..m {
            if tab.basis[i] < n {
                continue;
            }
            if let Some(j) = (0..n).find(|&j| tab.rows[i][j].abs() > PIVOT_TOL) {
                tab.pivot(i, j);
            }
        }
        tab.eligible[n..].iter_mut().for_each(|e| *e = false);
    }

    // phase 2
    let mut c2: Vec<f64> = problem.objective.iter().map(|c| -c).collect();
    c2.resize(width, 0.0);
    tab.price(&c2);
    let status = match tab.run()? {
        Step::Unbounded => LpStatus::Unbounded,
        _ => LpStatus::Optimal,
    };
    if status == LpStatus::Unbounded {
        return Ok(LpSolution {
            status,
            x: vec![f64::NAN; n],
            objective_value: f64::INFINITY,
            iterations: tab.iterations,
        });
    }
    let mut x = lb.clone();
    for (i, &j) in tab.basis.iter().enumerate() {
        if j < n {
            // clamp roundoff below the bound
            x[j] += tab.rhs(i).max(0.0);
        }
    }
    Ok(LpSolution {
        status,
        objective_value: problem.objective_at(&x),
        x,
        iterations: tab.iterations,
    })
}
