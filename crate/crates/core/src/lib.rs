//! Curves of nonnegative curvature joining two points with prescribed
//! tangents that meet at a corner.
//!
//! Given endpoints `A`, `B` and unit tangents `alpha`, `beta` whose lines
//! cross at a corner `O`, the crate builds:
//!
//! * the unique arc+segment curve of radius `R_a` ([`exact::build_arc_segment`]),
//! * the arc-segment-arc Dubins family on `(0, R_a]` ([`exact::build_dubins`]),
//! * the quadratic Bézier baseline ([`exact::baseline_parabola`]),
//! * equal-angle `p`-arc chains maximizing the smallest radius, solved by a
//!   dense two-phase simplex ([`lp::solve_maxmin`], [`lp::solve_minlength`]).
//!
//! Everything is expressed in a normalized frame where the total turning
//! `omega` lies in `(0, pi)`, so positive curvature always means a left turn.

pub mod cli;
pub mod curves;
pub mod discrete;
mod error;
pub mod exact;
pub mod export;
pub mod geometry;
pub mod lp;

pub use error::{Error, Result};
pub use geometry::{Point2, ProblemInstance, UnitVec2};
