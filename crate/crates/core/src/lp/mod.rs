//! Linear programs over equal-angle arc chains.
//!
//! Both formulations share the endpoint constraint `A R = b` from
//! [`assemble_endpoint_system`]:
//!
//! * [`solve_maxmin`] maximizes the smallest radius through the epigraph
//!   variable `t` (`R_k - t - s_k = 0`, `s_k >= 0`), which minimizes the
//!   largest curvature of the chain;
//! * [`solve_minlength`] minimizes the chain length `theta0 * sum R_k` under a
//!   radius floor, the discrete counterpart of a Dubins geodesic.

mod simplex;

pub use simplex::{solve_lp, LpSolution, LpStandardForm, LpStatus, FEASIBILITY_TOL, PIVOT_TOL};

use crate::discrete::{assemble_endpoint_system, DiscreteArcChain, EndpointSystem};
use crate::geometry::ProblemInstance;
use crate::{Error, Result};

/// Optimal `t` below this (relative to `|AB|`) means no chain with strictly
/// positive radii exists.
const POSITIVE_RADIUS_TOL: f64 = 1e-12;

/// Epigraph LP in the variables `(R_0..R_{p-1}, t, s_0..s_{p-1})`.
pub fn maxmin_program(system: &EndpointSystem) -> LpStandardForm {
    let p = system.p();
    let n = 2 * p + 1;
    let mut objective = vec![0.0; n];
    objective[p] = 1.0;
    let mut rows = Vec::with_capacity(p + 2);
    for r in &system.matrix {
        let mut row = r.clone();
        row.resize(n, 0.0);
        rows.push(row);
    }
    for k in 0..p {
        let mut row = vec![0.0; n];
        row[k] = 1.0;
        row[p] = -1.0;
        row[p + 1 + k] = -1.0;
        rows.push(row);
    }
    let mut rhs = system.rhs.to_vec();
    rhs.resize(p + 2, 0.0);
    LpStandardForm::new(objective, rows, rhs)
}

/// Chain of `p` equal-angle arcs whose smallest radius is as large as
/// possible. Ties between optimal vertices are resolved by the solver.
pub fn solve_maxmin(inst: &ProblemInstance, p: usize) -> Result<DiscreteArcChain> {
    let system = assemble_endpoint_system(inst, p)?;
    let sol = solve_lp(&maxmin_program(&system))?;
    match sol.status {
        LpStatus::Optimal => {}
        LpStatus::Infeasible => return Err(Error::DiscreteInfeasible { p }),
        LpStatus::Unbounded => return Err(Error::Unbounded),
    }
    let t = sol.x[p];
    if t <= POSITIVE_RADIUS_TOL * inst.a().distance(inst.b()) {
        return Err(Error::DiscreteInfeasible { p });
    }
    // basic R_k may sit a rounding error under t
    let radii = sol.x[..p].iter().map(|&r| r.max(t)).collect();
    DiscreteArcChain::new(inst.omega(), radii)
}

/// Shortest chain of `p` equal-angle arcs with every radius at least `r_min`.
pub fn solve_minlength(inst: &ProblemInstance, p: usize, r_min: f64) -> Result<DiscreteArcChain> {
    if !(r_min >= 0.0 && r_min.is_finite()) {
        return Err(Error::InvalidInput(format!("radius floor {r_min}")));
    }
    let system = assemble_endpoint_system(inst, p)?;
    let lp = LpStandardForm::new(vec![-1.0; p], system.matrix.to_vec(), system.rhs.to_vec())
        .with_lower_bounds(vec![r_min; p]);
    let sol = solve_lp(&lp)?;
    match sol.status {
        LpStatus::Optimal => {}
        LpStatus::Infeasible => return Err(Error::DiscreteInfeasible { p }),
        LpStatus::Unbounded => return Err(Error::Unbounded),
    }
    let radii = sol.x.iter().map(|&r| r.max(r_min)).collect();
    DiscreteArcChain::new(inst.omega(), radii)
}
