//! CSV, JSON and SVG writers.
//!
//! Curves are written in the caller's direction of travel: when the instance
//! was flipped during normalization, samples and pieces are reversed here.
//! Arc chains are written in the normalized order together with the flip flag.

use std::fmt::Write as _;

use serde::Serialize;

use crate::curves::{sample_path, CurvePoint, Piece, PiecewisePath};
use crate::discrete::DiscreteArcChain;
use crate::exact::ParabolaBaseline;
use crate::geometry::{Point2, ProblemInstance};

/// Samples of `path` ordered from the caller's start point.
pub fn presented_samples(
    path: &PiecewisePath,
    inst: &ProblemInstance,
    n: usize,
) -> Vec<CurvePoint> {
    let pts = sample_path(path, n);
    if !inst.flipped() {
        return pts;
    }
    let len = path.total_length();
    let omega = inst.omega();
    pts.into_iter()
        .rev()
        .map(|p| CurvePoint {
            s: len - p.s,
            position: p.position,
            phi: omega - p.phi,
            curvature: p.curvature,
        })
        .collect()
}

/// Pieces ordered from the caller's start point; reversed arcs carry a
/// negative sweep.
pub fn presented_pieces(path: &PiecewisePath, inst: &ProblemInstance) -> Vec<Piece> {
    if inst.flipped() {
        path.reversed().pieces().to_vec()
    } else {
        path.pieces().to_vec()
    }
}

/// Samples of the baseline parabola at uniform parameter `t`, with arc
/// length accumulated along the polyline.
pub fn parabola_samples(
    par: &ParabolaBaseline,
    inst: &ProblemInstance,
    n: usize,
) -> Vec<CurvePoint> {
    let n = n.max(2);
    let alpha = inst.alpha().angle();
    let mut s = 0.0;
    let mut prev: Option<Point2> = None;
    let mut pts: Vec<CurvePoint> = (0..n)
        .map(|i| {
            let t = i as f64 / (n - 1) as f64;
            let position = par.point_at(t);
            if let Some(q) = prev {
                s += q.distance(position);
            }
            prev = Some(position);
            let d = par.derivative(t);
            CurvePoint {
                s,
                position,
                phi: crate::curves::wrap_angle(d.y.atan2(d.x) - alpha),
                curvature: 1.0 / par.radius_at(t),
            }
        })
        .collect();
    if inst.flipped() {
        let len = s;
        let omega = inst.omega();
        pts.reverse();
        for p in &mut pts {
            p.s = len - p.s;
            p.phi = omega - p.phi;
        }
    }
    pts
}

pub fn samples_csv(points: &[CurvePoint]) -> String {
    let mut out = String::from("s,x,y,phi,curvature\n");
    for p in points {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            p.s, p.position.x, p.position.y, p.phi, p.curvature
        );
    }
    out
}

pub fn chain_csv(chain: &DiscreteArcChain) -> String {
    let mut out = String::from("k,theta0,R_k,L_k\n");
    let theta0 = chain.theta0();
    for (k, r) in chain.radii().iter().enumerate() {
        let _ = writeln!(out, "{k},{theta0},{r},{}", r * theta0);
    }
    out
}

/// One curve of an SVG figure.
#[derive(Debug, Clone)]
pub struct SvgLayer {
    /// CSS class of the `path` element.
    pub class: String,
    d: String,
    bbox_points: Vec<Point2>,
}

// SVG's y axis points down; coordinates are mirrored so the figure reads
// like the usual mathematical plot.
fn fmt_pt(p: Point2) -> String {
    format!("{} {}", p.x, -p.y)
}

impl SvgLayer {
    /// Lines and elliptical arcs with equal radii, in the caller's direction.
    pub fn from_path(class: &str, path: &PiecewisePath, inst: &ProblemInstance) -> Self {
        let pieces = presented_pieces(path, inst);
        let mut d = format!("M {}", fmt_pt(pieces[0].start()));
        for piece in &pieces {
            match piece {
                Piece::Line(l) => {
                    let _ = write!(d, " L {}", fmt_pt(l.end));
                }
                Piece::Arc(a) => {
                    let large = u8::from(a.sweep.abs() > std::f64::consts::PI);
                    // mirroring y turns counterclockwise into SVG's negative sweep
                    let sweep = u8::from(a.sweep < 0.0);
                    let _ = write!(
                        d,
                        " A {r} {r} 0 {large} {sweep} {}",
                        fmt_pt(a.end()),
                        r = a.radius
                    );
                }
            }
        }
        let bbox_points = sample_path(path, 512)
            .into_iter()
            .map(|p| p.position)
            .collect();
        Self {
            class: class.to_string(),
            d,
            bbox_points,
        }
    }

    pub fn polyline(class: &str, points: &[Point2]) -> Self {
        let mut d = String::new();
        for (i, p) in points.iter().enumerate() {
            let cmd = if i == 0 { "M" } else { " L" };
            let _ = write!(d, "{cmd} {}", fmt_pt(*p));
        }
        Self {
            class: class.to_string(),
            d,
            bbox_points: points.to_vec(),
        }
    }

    pub fn d(&self) -> &str {
        &self.d
    }
}

const SVG_STYLE: &str =
    "path { fill: none; stroke-width: 1px; vector-effect: non-scaling-stroke; } \
.exact { stroke: #5bc0eb; } .dubins { stroke: #1f4e9c; } .discrete { stroke: #2e8b57; } \
.minlength { stroke: #c0392b; } .parabola { stroke: #8e44ad; }";

/// Standalone SVG document; the view box encloses every layer plus a 5%
/// margin.
pub fn svg_document(layers: &[SvgLayer]) -> String {
    let (mut x0, mut y0, mut x1, mut y1) = (
        f64::INFINITY,
        f64::INFINITY,
        f64::NEG_INFINITY,
        f64::NEG_INFINITY,
    );
    for p in layers.iter().flat_map(|l| &l.bbox_points) {
        x0 = x0.min(p.x);
        x1 = x1.max(p.x);
        y0 = y0.min(-p.y);
        y1 = y1.max(-p.y);
    }
    if !x0.is_finite() {
        (x0, y0, x1, y1) = (0.0, 0.0, 1.0, 1.0);
    }
    let span = (x1 - x0).max(y1 - y0).max(f64::MIN_POSITIVE);
    let margin = 0.05 * span;
    let mut out = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} {} {} {}\">\n<style>{SVG_STYLE}</style>\n",
        x0 - margin,
        y0 - margin,
        x1 - x0 + 2.0 * margin,
        y1 - y0 + 2.0 * margin
    );
    for layer in layers {
        let _ = writeln!(
            out,
            "<path class=\"{}\" stroke=\"black\" stroke-width=\"1px\" d=\"{}\"/>",
            layer.class, layer.d
        );
    }
    out.push_str("</svg>\n");
    out
}

/// JSON description of a built path.
#[derive(Debug, Clone, Serialize)]
pub struct PathDocument {
    pub kind: &'static str,
    pub flipped: bool,
    pub length: f64,
    /// `None` for an all-line path.
    pub min_radius: Option<f64>,
    pub total_turning: f64,
    pub pieces: Vec<Piece>,
}

impl PathDocument {
    pub fn new(kind: &'static str, path: &PiecewisePath, inst: &ProblemInstance) -> Self {
        let r = path.min_radius();
        Self {
            kind,
            flipped: inst.flipped(),
            length: path.total_length(),
            min_radius: r.is_finite().then_some(r),
            total_turning: path.total_turning(),
            pieces: presented_pieces(path, inst),
        }
    }
}
