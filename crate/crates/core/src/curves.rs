//! Piecewise arc/line paths: construction with G1 checks, arc-length
//! sampling, curvature profiles and membership validation.
//!
//! Arcs are stored as center, radius, start angle and a signed sweep, so the
//! curvature of an arc is exactly `1 / radius`. Paths built by this crate
//! only contain counterclockwise arcs (`sweep > 0`); clockwise arcs exist so
//! that reversed or deliberately invalid paths can be represented and
//! rejected by [`validate_membership`].

use std::f64::consts::FRAC_PI_2;

use serde::Serialize;

use crate::geometry::{Point2, ProblemInstance, UnitVec2};
use crate::{Error, Result};

/// Default positional and angular tolerance for joints and validation.
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ArcPiece {
    pub center: Point2,
    pub radius: f64,
    pub start_angle: f64,
    /// Turning of the arc; positive is counterclockwise.
    pub sweep: f64,
}

impl ArcPiece {
    pub fn new(center: Point2, radius: f64, start_angle: f64, sweep: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::InvalidPiece(format!("arc radius {radius}")));
        }
        if sweep == 0.0 || !sweep.is_finite() {
            return Err(Error::InvalidPiece(format!("arc sweep {sweep}")));
        }
        Ok(Self {
            center,
            radius,
            start_angle,
            sweep,
        })
    }

    /// Counterclockwise arc leaving `start` with heading `heading`.
    pub fn from_start(start: Point2, heading: UnitVec2, radius: f64, sweep: f64) -> Result<Self> {
        let side = if sweep >= 0.0 { 1.0 } else { -1.0 };
        let center = start + Point2::from(heading.perp()) * (side * radius);
        let radial = start - center;
        Self::new(center, radius, radial.y.atan2(radial.x), sweep)
    }

    pub fn length(&self) -> f64 {
        self.radius * self.sweep.abs()
    }

    fn orientation(&self) -> f64 {
        self.sweep.signum()
    }

    fn point_at_angle(&self, theta: f64) -> Point2 {
        let (s, c) = theta.sin_cos();
        self.center + Point2::new(c, s) * self.radius
    }

    pub fn start(&self) -> Point2 {
        self.point_at_angle(self.start_angle)
    }

    pub fn end(&self) -> Point2 {
        self.point_at_angle(self.start_angle + self.sweep)
    }

    /// Signed curvature.
    pub fn curvature(&self) -> f64 {
        self.orientation() / self.radius
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LinePiece {
    pub start: Point2,
    pub end: Point2,
}

impl LinePiece {
    pub fn new(start: Point2, end: Point2) -> Result<Self> {
        if start.distance(end) <= 0.0 {
            return Err(Error::InvalidPiece("zero-length segment".into()));
        }
        Ok(Self { start, end })
    }

    pub fn length(&self) -> f64 {
        self.start.distance(self.end)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Piece {
    Arc(ArcPiece),
    Line(LinePiece),
}

impl Piece {
    pub fn length(&self) -> f64 {
        match self {
            Piece::Arc(a) => a.length(),
            Piece::Line(l) => l.length(),
        }
    }

    pub fn start(&self) -> Point2 {
        match self {
            Piece::Arc(a) => a.start(),
            Piece::Line(l) => l.start,
        }
    }

    pub fn end(&self) -> Point2 {
        match self {
            Piece::Arc(a) => a.end(),
            Piece::Line(l) => l.end,
        }
    }

    /// Signed turning of the tangent across the piece.
    pub fn turning(&self) -> f64 {
        match self {
            Piece::Arc(a) => a.sweep,
            Piece::Line(_) => 0.0,
        }
    }

    pub fn curvature(&self) -> f64 {
        match self {
            Piece::Arc(a) => a.curvature(),
            Piece::Line(_) => 0.0,
        }
    }

    /// Absolute tangent angle at local arc length `s`.
    pub fn heading_at(&self, s: f64) -> f64 {
        match self {
            Piece::Arc(a) => {
                let sigma = a.orientation();
                a.start_angle + sigma * (s / a.radius) + sigma * FRAC_PI_2
            }
            Piece::Line(l) => {
                let d = l.end - l.start;
                d.y.atan2(d.x)
            }
        }
    }

    pub fn start_heading(&self) -> f64 {
        self.heading_at(0.0)
    }

    pub fn end_heading(&self) -> f64 {
        self.heading_at(self.length())
    }

    /// Position at local arc length `s`, clamped to the piece; the stored
    /// endpoints are returned exactly at either end.
    pub fn point_at(&self, s: f64) -> Point2 {
        if s <= 0.0 {
            return self.start();
        }
        if s >= self.length() {
            return self.end();
        }
        match self {
            Piece::Arc(a) => a.point_at_angle(a.start_angle + a.orientation() * s / a.radius),
            Piece::Line(l) => l.start + (l.end - l.start) * (s / l.length()),
        }
    }

    pub fn reversed(&self) -> Piece {
        match *self {
            Piece::Arc(a) => Piece::Arc(ArcPiece {
                center: a.center,
                radius: a.radius,
                start_angle: a.start_angle + a.sweep,
                sweep: -a.sweep,
            }),
            Piece::Line(l) => Piece::Line(LinePiece {
                start: l.end,
                end: l.start,
            }),
        }
    }
}

/// Wraps an angle difference into `(-pi, pi]`.
pub fn wrap_angle(theta: f64) -> f64 {
    let w = theta.sin().atan2(theta.cos());
    if w <= -std::f64::consts::PI {
        w + std::f64::consts::TAU
    } else {
        w
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub position: f64,
    pub tangent: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            position: DEFAULT_TOL,
            tangent: DEFAULT_TOL,
        }
    }
}

/// An ordered, G1-continuous sequence of arcs and segments.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PiecewisePath {
    pieces: Vec<Piece>,
    total_length: f64,
}

impl PiecewisePath {
    pub fn new(pieces: Vec<Piece>) -> Result<Self> {
        Self::with_tolerances(pieces, Tolerances::default())
    }

    pub fn with_tolerances(pieces: Vec<Piece>, tol: Tolerances) -> Result<Self> {
        if pieces.is_empty() {
            return Err(Error::InvalidPiece("empty path".into()));
        }
        for (k, w) in pieces.windows(2).enumerate() {
            let gap = w[0].end().distance(w[1].start());
            if gap > tol.position {
                return Err(Error::Discontinuous(format!(
                    "position gap {gap:e} at joint {k}"
                )));
            }
            let kink = wrap_angle(w[1].start_heading() - w[0].end_heading()).abs();
            if kink > tol.tangent {
                return Err(Error::Discontinuous(format!(
                    "tangent jump {kink:e} rad at joint {k}"
                )));
            }
        }
        let total_length = pieces.iter().map(Piece::length).sum();
        Ok(Self {
            pieces,
            total_length,
        })
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn total_length(&self) -> f64 {
        self.total_length
    }

    pub fn start(&self) -> Point2 {
        self.pieces[0].start()
    }

    pub fn end(&self) -> Point2 {
        self.pieces[self.pieces.len() - 1].end()
    }

    pub fn start_heading(&self) -> f64 {
        self.pieces[0].start_heading()
    }

    pub fn end_heading(&self) -> f64 {
        self.pieces[self.pieces.len() - 1].end_heading()
    }

    pub fn total_turning(&self) -> f64 {
        self.pieces.iter().map(Piece::turning).sum()
    }

    pub fn arcs(&self) -> impl Iterator<Item = &ArcPiece> {
        self.pieces.iter().filter_map(|p| match p {
            Piece::Arc(a) => Some(a),
            Piece::Line(_) => None,
        })
    }

    /// Smallest arc radius, `inf` for an all-line path.
    pub fn min_radius(&self) -> f64 {
        self.arcs().map(|a| a.radius).fold(f64::INFINITY, f64::min)
    }

    /// Same geometry traversed from end to start.
    pub fn reversed(&self) -> PiecewisePath {
        PiecewisePath {
            pieces: self.pieces.iter().rev().map(Piece::reversed).collect(),
            total_length: self.total_length,
        }
    }

    /// Position, cumulative turning and signed curvature at arc length `s`.
    pub fn point_at(&self, s: f64) -> CurvePoint {
        let mut offset = 0.0;
        let mut phi = 0.0;
        let last = self.pieces.len() - 1;
        for (k, piece) in self.pieces.iter().enumerate() {
            let len = piece.length();
            if s <= offset + len || k == last {
                let local = (s - offset).clamp(0.0, len);
                let turned = match piece {
                    Piece::Arc(a) => a.orientation() * local / a.radius,
                    Piece::Line(_) => 0.0,
                };
                return CurvePoint {
                    s,
                    position: piece.point_at(local),
                    phi: phi + turned,
                    curvature: piece.curvature(),
                };
            }
            offset += len;
            phi += piece.turning();
        }
        unreachable!("path has at least one piece")
    }
}

/// One sample of a path's arc-length parametrization.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurvePoint {
    pub s: f64,
    pub position: Point2,
    /// Turning accumulated since the start tangent.
    pub phi: f64,
    pub curvature: f64,
}

/// `n >= 2` samples at uniform arc length over `[0, L]`.
pub fn sample_path(path: &PiecewisePath, n: usize) -> Vec<CurvePoint> {
    let n = n.max(2);
    let len = path.total_length();
    (0..n)
        .map(|i| {
            let s = if i == n - 1 {
                len
            } else {
                len * i as f64 / (n - 1) as f64
            };
            path.point_at(s)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurvatureInterval {
    pub s_start: f64,
    pub s_end: f64,
    pub curvature: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurvatureProfile {
    pub intervals: Vec<CurvatureInterval>,
    pub max_curvature: f64,
    /// `inf` when the path has no arc.
    pub min_radius: f64,
}

/// Piecewise-constant curvature `c(s)` of the path.
pub fn curvature_profile(path: &PiecewisePath) -> CurvatureProfile {
    let mut s = 0.0;
    let intervals = path
        .pieces()
        .iter()
        .map(|p| {
            let start = s;
            s += p.length();
            CurvatureInterval {
                s_start: start,
                s_end: s,
                curvature: p.curvature(),
            }
        })
        .collect();
    let min_radius = path.min_radius();
    CurvatureProfile {
        intervals,
        max_curvature: if min_radius.is_finite() {
            1.0 / min_radius
        } else {
            0.0
        },
        min_radius,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Clause {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub clauses: Vec<Clause>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.clauses.iter().all(|c| c.passed)
    }

    pub fn clause(&self, name: &str) -> Option<&Clause> {
        self.clauses.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Clause> {
        self.clauses.iter().filter(|c| !c.passed)
    }

    /// `Err(Validation)` naming the first failing clause.
    pub fn into_result(self) -> Result<()> {
        match self.failures().next() {
            None => Ok(()),
            Some(c) => Err(Error::Validation(format!("{}: {}", c.name, c.detail))),
        }
    }
}

/// Checks the defining conditions of the admissible class: endpoints,
/// end tangents, monotone turning and total turning `omega` with `phi`
/// staying in `[0, omega]`.
pub fn validate_membership(
    path: &PiecewisePath,
    inst: &ProblemInstance,
    tol: f64,
) -> ValidationReport {
    let mut clauses = Vec::with_capacity(7);
    let mut push = |name, passed, detail: String| {
        clauses.push(Clause {
            name,
            passed,
            detail,
        })
    };

    let d = path.start().distance(inst.a());
    push("start point", d <= tol, format!("|X(0) - A| = {d:e}"));
    let d = path.end().distance(inst.b());
    push("end point", d <= tol, format!("|X(L) - B| = {d:e}"));

    let e = wrap_angle(path.start_heading() - inst.alpha().angle()).abs();
    push(
        "start tangent",
        e <= tol,
        format!("angle(X'(0), alpha) = {e:e}"),
    );
    let e = wrap_angle(path.end_heading() - inst.beta().angle()).abs();
    push(
        "end tangent",
        e <= tol,
        format!("angle(X'(L), beta) = {e:e}"),
    );

    // every piece is parametrized by arc length
    push("unit speed", true, String::new());

    let mut s = 0.0;
    let mut phi = 0.0;
    let mut monotone = None;
    let (mut lo, mut hi) = (0.0_f64, 0.0_f64);
    for piece in path.pieces() {
        let turn = piece.turning();
        if turn < -tol && monotone.is_none() {
            monotone = Some(s);
        }
        phi += turn;
        lo = lo.min(phi);
        hi = hi.max(phi);
        s += piece.length();
    }
    push(
        "phi nondecreasing",
        monotone.is_none(),
        monotone.map_or_else(String::new, |s| format!("φ non-monotone at s={s}")),
    );
    let e = (phi - inst.omega()).abs();
    push(
        "total turning",
        e <= tol,
        format!("φ(L) - φ(0) = {phi}, omega = {}", inst.omega()),
    );
    push(
        "phi range",
        lo >= -tol && hi <= inst.omega() + tol,
        format!("φ ranges over [{lo}, {hi}]"),
    );
    ValidationReport { clauses }
}

/// Tests that every sampled point lies on the inner side of every sampled
/// tangent line.
pub fn half_plane_check(path: &PiecewisePath, n: usize) -> bool {
    half_plane_check_with_tol(path, n, DEFAULT_TOL * path.total_length().max(1.0))
}

pub fn half_plane_check_with_tol(path: &PiecewisePath, n: usize, tol: f64) -> bool {
    let samples = sample_path(path, n);
    let start = path.start_heading();
    samples.iter().all(|p| {
        let normal = UnitVec2::from_angle(start + p.phi).perp();
        samples
            .iter()
            .all(|q| (q.position - p.position).dot(normal.into()) >= -tol)
    })
}
