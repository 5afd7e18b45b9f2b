//! Closed-form curves: the arc+segment curve of radius `R_a`, the
//! arc-segment-arc Dubins family for radii in `(0, R_a]`, and the quadratic
//! Bézier baseline through the corner.

use std::f64::consts::PI;

use serde::Serialize;

use crate::curves::{wrap_angle, ArcPiece, LinePiece, Piece, PiecewisePath};
use crate::geometry::{require_feasible, Point2, ProblemInstance, UnitVec2, LENGTH_TOL};
use crate::{Error, Result};

/// Arcs whose sweep falls below this are dropped by the Dubins builder.
pub const DEGENERATE_SWEEP: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CaseTag {
    /// `|OA| > |OB|`: straight run along `alpha`, then the arc.
    SegmentThenArc,
    /// `|OB| > |OA|`: the arc, then a straight run along `beta`.
    ArcThenSegment,
    /// `|OA| = |OB|`: a single arc.
    PureArc,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExactSolution {
    pub r_a: f64,
    pub path: PiecewisePath,
    pub case_tag: CaseTag,
    pub segment_length: f64,
}

/// Radius of the circle tangent to both rays `[OA)` and `[OB)` at distance
/// `min(|OA|, |OB|)` from the corner.
pub fn compute_ra(inst: &ProblemInstance) -> Result<f64> {
    let f = require_feasible(inst)?;
    Ok(f.u0.min(f.v0) * ((PI - inst.omega()) / 2.0).tan())
}

/// The unique admissible curve made of one arc and at most one segment.
pub fn build_arc_segment(inst: &ProblemInstance) -> Result<ExactSolution> {
    let f = require_feasible(inst)?;
    let r_a = compute_ra(inst)?;
    let omega = inst.omega();
    let alpha = inst.alpha();
    let alpha_v = Point2::from(alpha);

    let (case_tag, pieces, center) = if (f.u0 - f.v0).abs() <= LENGTH_TOL {
        let arc = ArcPiece::from_start(inst.a(), alpha, r_a, omega)?;
        (CaseTag::PureArc, vec![Piece::Arc(arc)], arc.center)
    } else if f.u0 > f.v0 {
        let d = inst.o() - alpha_v * f.v0;
        let seg = LinePiece::new(inst.a(), d)?;
        let arc = ArcPiece::from_start(d, alpha, r_a, omega)?;
        (
            CaseTag::SegmentThenArc,
            vec![Piece::Line(seg), Piece::Arc(arc)],
            arc.center,
        )
    } else {
        let arc = ArcPiece::from_start(inst.a(), alpha, r_a, omega)?;
        let seg = LinePiece::new(arc.end(), inst.b())?;
        (
            CaseTag::ArcThenSegment,
            vec![Piece::Arc(arc), Piece::Line(seg)],
            arc.center,
        )
    };

    // the circle must touch both tangent lines
    let rel = center - inst.o();
    let to_oa = rel.cross(alpha_v).abs();
    let to_ob = rel.cross(inst.beta().into()).abs();
    let scale = f.u0.max(f.v0).max(1.0);
    if (to_oa - r_a).abs() > LENGTH_TOL * scale || (to_ob - r_a).abs() > LENGTH_TOL * scale {
        return Err(Error::Validation(format!(
            "arc center at distances {to_oa}, {to_ob} from the tangent lines, expected {r_a}"
        )));
    }

    let segment_length = match case_tag {
        CaseTag::PureArc => 0.0,
        _ => (f.u0 - f.v0).abs(),
    };
    Ok(ExactSolution {
        r_a,
        path: PiecewisePath::new(pieces)?,
        case_tag,
        segment_length,
    })
}

/// Left-straight-left Dubins curve with both arcs of radius `radius`.
///
/// Admissible for `0 < radius <= R_a`; at `R_a` one arc vanishes and the
/// result is the arc+segment curve.
pub fn build_dubins(inst: &ProblemInstance, radius: f64) -> Result<PiecewisePath> {
    let r_a = compute_ra(inst)?;
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::InvalidInput(format!("radius {radius}")));
    }
    if radius > r_a * (1.0 + 1e-12) {
        return Err(Error::RadiusTooLarge { radius, r_a });
    }
    let omega = inst.omega();
    let alpha = inst.alpha();
    let beta = inst.beta();
    let start_center = inst.a() + Point2::from(alpha.perp()) * radius;
    let end_center = inst.b() + Point2::from(beta.perp()) * radius;
    let link = end_center - start_center;
    let link_len = link.norm();

    if link_len <= LENGTH_TOL {
        let arc = ArcPiece::from_start(inst.a(), alpha, radius, omega)?;
        return PiecewisePath::new(vec![Piece::Arc(arc)]);
    }

    let dir = UnitVec2::new(link.x, link.y)?;
    let mut first = wrap_angle(dir.angle() - alpha.angle());
    let mut second = omega - first;
    if first < -DEGENERATE_SWEEP || second < -DEGENERATE_SWEEP {
        return Err(Error::RadiusTooLarge { radius, r_a });
    }
    first = first.max(0.0);
    second = second.max(0.0);

    let mut pieces = Vec::with_capacity(3);
    let mut cursor = inst.a();
    if first >= DEGENERATE_SWEEP {
        let arc = ArcPiece::from_start(cursor, alpha, radius, first)?;
        cursor = arc.end();
        pieces.push(Piece::Arc(arc));
    }
    let exit = end_center - Point2::from(dir.perp()) * radius;
    if second >= DEGENERATE_SWEEP {
        let seg = LinePiece::new(cursor, exit)?;
        let arc = ArcPiece::from_start(exit, dir, radius, second)?;
        pieces.push(Piece::Line(seg));
        pieces.push(Piece::Arc(arc));
    } else {
        pieces.push(Piece::Line(LinePiece::new(cursor, inst.b())?));
    }
    PiecewisePath::new(pieces)
}

/// The quadratic Bézier `(1-t)^2 A + 2t(1-t) O + t^2 B`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ParabolaBaseline {
    pub control_points: [Point2; 3],
    pub min_radius: f64,
    pub t_min: f64,
}

impl ParabolaBaseline {
    pub fn point_at(&self, t: f64) -> Point2 {
        let [a, o, b] = self.control_points;
        a * ((1.0 - t) * (1.0 - t)) + o * (2.0 * t * (1.0 - t)) + b * (t * t)
    }

    pub fn derivative(&self, t: f64) -> Point2 {
        let [a, o, b] = self.control_points;
        ((o - a) * (1.0 - t) + (b - o) * t) * 2.0
    }

    pub fn second_derivative(&self) -> Point2 {
        let [a, o, b] = self.control_points;
        (a - o * 2.0 + b) * 2.0
    }

    pub fn radius_at(&self, t: f64) -> f64 {
        let d = self.derivative(t);
        d.norm().powi(3) / d.cross(self.second_derivative()).abs()
    }

    /// Dense polyline used for export.
    pub fn sample(&self, n: usize) -> Vec<Point2> {
        let n = n.max(2);
        (0..n)
            .map(|i| self.point_at(i as f64 / (n - 1) as f64))
            .collect()
    }

    /// Polyline length, adequate for reporting at a few thousand samples.
    pub fn approx_length(&self, n: usize) -> f64 {
        self.sample(n).windows(2).map(|w| w[0].distance(w[1])).sum()
    }
}

pub fn baseline_parabola(inst: &ProblemInstance) -> Result<ParabolaBaseline> {
    require_feasible(inst)?;
    let (a, o, b) = (inst.a(), inst.o(), inst.b());
    let first = o - a;
    let second = b - o;
    // P'(t)/2 = first + t (second - first); its norm is minimal at t_min
    let diff = second - first;
    let t_min = (-first.dot(diff) / diff.dot(diff)).clamp(0.0, 1.0);
    let speed = (first + diff * t_min) * 2.0;
    // |P' x P''| = 4 |first x second| for every t
    let cross = 4.0 * first.cross(second).abs();
    Ok(ParabolaBaseline {
        control_points: [a, o, b],
        min_radius: speed.norm().powi(3) / cross,
        t_min,
    })
}
