//! Problem ingestion: points, tangents, the corner `O` and the normalized
//! instance on which every construction in this crate operates.
//!
//! A [`ProblemInstance`] is always stored in the orientation where the turning
//! angle `omega` from `alpha` to `beta` lies in `(0, pi)`. When the caller's
//! data turns clockwise, the endpoints are swapped and the tangents negated;
//! [`ProblemInstance::flipped`] records this so exporters can restore the
//! original direction of travel.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Tolerance for geometric predicates on lengths.
pub const LENGTH_TOL: f64 = 1e-9;
/// Tolerance on unit-vector norms and the parallel-tangent test.
pub const UNIT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const ORIGIN: Point2 = Point2 { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn dot(self, other: Point2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the 3D cross product.
    pub fn cross(self, other: Point2) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn distance(self, other: Point2) -> f64 {
        (self - other).norm()
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    /// Counterclockwise rotation by a quarter turn.
    pub fn perp(self) -> Point2 {
        Point2::new(-self.y, self.x)
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.x, self.y)
    }

    pub fn from_complex(z: Complex64) -> Self {
        Point2::new(z.re, z.im)
    }
}

impl Add for Point2 {
    type Output = Point2;
    fn add(self, rhs: Point2) -> Point2 {
        Point2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point2 {
    type Output = Point2;
    fn sub(self, rhs: Point2) -> Point2 {
        Point2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Neg for Point2 {
    type Output = Point2;
    fn neg(self) -> Point2 {
        Point2::new(-self.x, -self.y)
    }
}

impl Mul<f64> for Point2 {
    type Output = Point2;
    fn mul(self, k: f64) -> Point2 {
        Point2::new(self.x * k, self.y * k)
    }
}

impl From<UnitVec2> for Point2 {
    fn from(u: UnitVec2) -> Point2 {
        Point2::new(u.dx, u.dy)
    }
}

/// A direction in the plane, normalized on construction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UnitVec2 {
    dx: f64,
    dy: f64,
}

impl UnitVec2 {
    /// Normalizes `(dx, dy)`. Fails on zero or non-finite input.
    pub fn new(dx: f64, dy: f64) -> Result<Self> {
        let n = dx.hypot(dy);
        if !n.is_finite() || n <= UNIT_TOL {
            return Err(Error::InvalidInput(format!(
                "cannot normalize direction ({dx}, {dy})"
            )));
        }
        Ok(Self {
            dx: dx / n,
            dy: dy / n,
        })
    }

    pub fn from_angle(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Self { dx: c, dy: s }
    }

    pub fn dx(self) -> f64 {
        self.dx
    }

    pub fn dy(self) -> f64 {
        self.dy
    }

    pub fn angle(self) -> f64 {
        self.dy.atan2(self.dx)
    }

    pub fn rotate(self, theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Self {
            dx: c * self.dx - s * self.dy,
            dy: s * self.dx + c * self.dy,
        }
    }

    pub fn perp(self) -> Self {
        Self {
            dx: -self.dy,
            dy: self.dx,
        }
    }

    pub fn dot(self, other: UnitVec2) -> f64 {
        self.dx * other.dx + self.dy * other.dy
    }

    pub fn cross(self, other: UnitVec2) -> f64 {
        self.dx * other.dy - self.dy * other.dx
    }

    /// Signed angle in `(-pi, pi]` turning `self` onto `other`.
    pub fn angle_to(self, other: UnitVec2) -> f64 {
        self.cross(other).atan2(self.dot(other))
    }
}

impl Neg for UnitVec2 {
    type Output = UnitVec2;
    fn neg(self) -> UnitVec2 {
        UnitVec2 {
            dx: -self.dx,
            dy: -self.dy,
        }
    }
}

/// The normalized corner problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProblemInstance {
    a: Point2,
    b: Point2,
    o: Point2,
    alpha: UnitVec2,
    beta: UnitVec2,
    omega: f64,
    flipped: bool,
}

impl ProblemInstance {
    pub fn a(&self) -> Point2 {
        self.a
    }

    pub fn b(&self) -> Point2 {
        self.b
    }

    pub fn o(&self) -> Point2 {
        self.o
    }

    pub fn alpha(&self) -> UnitVec2 {
        self.alpha
    }

    pub fn beta(&self) -> UnitVec2 {
        self.beta
    }

    /// Total turning from `alpha` to `beta`, in `(0, pi)`.
    pub fn omega(&self) -> f64 {
        self.omega
    }

    /// Whether normalization reversed the caller's direction of travel.
    pub fn flipped(&self) -> bool {
        self.flipped
    }

    /// Second axis of the frame `(A, alpha, k)`.
    pub fn normal(&self) -> UnitVec2 {
        self.alpha.perp()
    }

    /// Affix of `p` in the orthonormal frame `(A, alpha, alpha^perp)`.
    pub fn frame_affix(&self, p: Point2) -> Complex64 {
        let d = p - self.a;
        Complex64::new(d.dot(self.alpha.into()), d.dot(self.normal().into()))
    }

    /// Inverse of [`ProblemInstance::frame_affix`].
    pub fn from_frame(&self, z: Complex64) -> Point2 {
        self.a + Point2::from(self.alpha) * z.re + Point2::from(self.normal()) * z.im
    }
}

/// Builds the normalized instance, deriving the corner `O` from the two
/// tangent lines.
pub fn normalize_problem(
    a: Point2,
    b: Point2,
    alpha: UnitVec2,
    beta: UnitVec2,
) -> Result<ProblemInstance> {
    normalize_with_corner(a, b, alpha, beta, None)
}

/// Like [`normalize_problem`], but checks a caller-supplied corner against
/// the line intersection.
pub fn normalize_with_corner(
    a: Point2,
    b: Point2,
    alpha: UnitVec2,
    beta: UnitVec2,
    corner: Option<Point2>,
) -> Result<ProblemInstance> {
    if !a.is_finite() || !b.is_finite() || corner.is_some_and(|o| !o.is_finite()) {
        return Err(Error::InvalidInput("non-finite coordinates".into()));
    }
    let cross = alpha.cross(beta);
    if cross.abs() <= UNIT_TOL {
        return Err(Error::ParallelTangents { cross });
    }
    // A + t alpha = B + u beta
    let t = (b - a).cross(beta.into()) / cross;
    let o = a + Point2::from(alpha) * t;
    if let Some(given) = corner {
        let distance = given.distance(o);
        if distance > LENGTH_TOL {
            return Err(Error::InconsistentCorner { distance });
        }
    }
    if o.distance(a) <= LENGTH_TOL || o.distance(b) <= LENGTH_TOL {
        return Err(Error::DegenerateCorner);
    }
    if a.distance(b) <= LENGTH_TOL {
        return Err(Error::InvalidInput("A and B coincide".into()));
    }

    let raw = alpha.angle_to(beta);
    let inst = if raw > 0.0 {
        ProblemInstance {
            a,
            b,
            o,
            alpha,
            beta,
            omega: raw,
            flipped: false,
        }
    } else {
        ProblemInstance {
            a: b,
            b: a,
            o,
            alpha: -beta,
            beta: -alpha,
            omega: (-beta).angle_to(-alpha),
            flipped: true,
        }
    };
    Ok(inst)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FeasibilityReport {
    pub u0: f64,
    pub v0: f64,
    pub feasible: bool,
}

/// Signed distances `AO = u0 alpha` and `OB = v0 beta`; a curve of the class
/// can only exist when both are strictly positive.
pub fn feasibility_check(inst: &ProblemInstance) -> FeasibilityReport {
    let u0 = (inst.o - inst.a).dot(inst.alpha.into());
    let v0 = (inst.b - inst.o).dot(inst.beta.into());
    FeasibilityReport {
        u0,
        v0,
        feasible: u0 > 0.0 && v0 > 0.0,
    }
}

/// Convenience: the feasibility report, or `InfeasibleGeometry`.
pub fn require_feasible(inst: &ProblemInstance) -> Result<FeasibilityReport> {
    let report = feasibility_check(inst);
    if report.feasible {
        Ok(report)
    } else {
        Err(Error::InfeasibleGeometry {
            u0: report.u0,
            v0: report.v0,
        })
    }
}

/// Length envelope `mu <= L <= nu` and curvature floor `delta` valid for every
/// curve of the class.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundsReport {
    pub mu: f64,
    pub nu: f64,
    pub delta: f64,
    pub b_tilde: f64,
}

pub fn length_bounds(inst: &ProblemInstance) -> Result<BoundsReport> {
    let half = inst.omega / 2.0;
    // every admissible tangent lies within omega/2 of this axis
    let axis = inst.alpha.rotate(half);
    let b_tilde = (inst.b - inst.a).dot(axis.into());
    if b_tilde <= 0.0 {
        return Err(Error::NonPositiveBTilde(b_tilde));
    }
    let nu = b_tilde / half.cos();
    Ok(BoundsReport {
        mu: inst.a.distance(inst.b),
        nu,
        delta: inst.omega / nu,
        b_tilde,
    })
}

/// JSON instance document: `{"A":[x,y],"B":[x,y],"alpha":[dx,dy],"beta":[dx,dy]}`
/// with an optional `"O":[x,y]`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct InstanceSpec {
    #[serde(rename = "A")]
    pub a: [f64; 2],
    #[serde(rename = "B")]
    pub b: [f64; 2],
    pub alpha: [f64; 2],
    pub beta: [f64; 2],
    #[serde(rename = "O", default, skip_serializing_if = "Option::is_none")]
    pub o: Option<[f64; 2]>,
}

impl InstanceSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn normalize(&self) -> Result<ProblemInstance> {
        let p = |v: [f64; 2]| Point2::new(v[0], v[1]);
        normalize_with_corner(
            p(self.a),
            p(self.b),
            UnitVec2::new(self.alpha[0], self.alpha[1])?,
            UnitVec2::new(self.beta[0], self.beta[1])?,
            self.o.map(p),
        )
    }
}

/// The instance worked through by hand in the documentation:
/// `A = (1/2, -1/2)`, `B = (0, -1/2)`, `O` at the origin, `omega = 3 pi / 4`.
pub fn reference_instance() -> ProblemInstance {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    normalize_problem(
        Point2::new(0.5, -0.5),
        Point2::new(0.0, -0.5),
        UnitVec2::new(-h, h).expect("unit"),
        UnitVec2::new(0.0, -1.0).expect("unit"),
    )
    .expect("reference instance is valid")
}
