//! Chains of circular arcs.
//!
//! A chain of `p` arcs with turning angles `theta_k` and lengths `L_k` ends
//! at `sum_k gamma_k u_k L_k`, where `u_k = exp(i phi_k)` is the heading at
//! the start of arc `k` and `gamma_k = sinc(theta_k / 2) exp(i theta_k / 2)`
//! maps the arc length onto its chord. With every turning angle equal to
//! `theta0 = omega / p` and `L_k = R_k theta0` the endpoint is linear in the
//! radii, which gives the 2×p system assembled here.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::curves::{ArcPiece, Piece, PiecewisePath};
use crate::geometry::{require_feasible, ProblemInstance};
use crate::{Error, Result};

/// Closure tolerance of [`chain_to_path`], relative to `1 + |AB|`.
pub const CLOSURE_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChainEvaluation {
    /// Endpoint relative to the chain start, in the frame of the start tangent.
    pub endpoint_affix: Complex64,
    pub total_turning: f64,
}

/// `sin(x) / x`, continuous at zero.
fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-8 {
        1.0 - x * x / 6.0
    } else {
        x.sin() / x
    }
}

/// Chord-to-arc factor of an arc turning by `theta`; `1` for a segment.
pub fn chord_factor(theta: f64) -> Complex64 {
    Complex64::from_polar(sinc(theta / 2.0), theta / 2.0)
}

/// Endpoint and total turning of a general chain of arcs and segments.
/// A zero turning angle denotes a straight segment.
pub fn evaluate_arc_chain(thetas: &[f64], lengths: &[f64]) -> Result<ChainEvaluation> {
    if thetas.len() != lengths.len() || thetas.is_empty() {
        return Err(Error::InvalidInput(format!(
            "{} turning angles for {} lengths",
            thetas.len(),
            lengths.len()
        )));
    }
    let mut phi = 0.0;
    let mut endpoint = Complex64::new(0.0, 0.0);
    for (index, (&theta, &len)) in thetas.iter().zip(lengths).enumerate() {
        if theta < 0.0 {
            return Err(Error::NegativeTurning { index, theta });
        }
        if !(len > 0.0 && len.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "length {len} at piece {index}"
            )));
        }
        endpoint += chord_factor(theta) * Complex64::from_polar(1.0, phi) * len;
        phi += theta;
    }
    Ok(ChainEvaluation {
        endpoint_affix: endpoint,
        total_turning: phi,
    })
}

/// Real form of the equal-angle endpoint condition: `matrix * R = rhs`.
#[derive(Debug, Clone, PartialEq)]
pub struct EndpointSystem {
    pub theta0: f64,
    /// Rows are the real and imaginary parts of the complex coefficients.
    pub matrix: [Vec<f64>; 2],
    /// Affix of `B` in the frame `(A, alpha, k)`.
    pub rhs: [f64; 2],
}

impl EndpointSystem {
    pub fn p(&self) -> usize {
        self.matrix[0].len()
    }

    pub fn apply(&self, radii: &[f64]) -> [f64; 2] {
        let dot = |row: &[f64]| row.iter().zip(radii).map(|(a, r)| a * r).sum::<f64>();
        [dot(&self.matrix[0]), dot(&self.matrix[1])]
    }

    pub fn residual(&self, radii: &[f64]) -> f64 {
        let [x, y] = self.apply(radii);
        (x - self.rhs[0]).hypot(y - self.rhs[1])
    }
}

/// Coefficient of `R_k`: `i (1 - e^{i theta0}) e^{i k theta0}`, evaluated as
/// `2 sin(theta0 / 2) e^{i (k + 1/2) theta0}` to keep small angles accurate.
fn coefficient(theta0: f64, k: usize) -> Complex64 {
    Complex64::from_polar(2.0 * (theta0 / 2.0).sin(), (k as f64 + 0.5) * theta0)
}

pub fn assemble_endpoint_system(inst: &ProblemInstance, p: usize) -> Result<EndpointSystem> {
    require_feasible(inst)?;
    if p < 2 {
        return Err(Error::InvalidInput(format!("p = {p}, need at least 2")));
    }
    let theta0 = inst.omega() / p as f64;
    let (re, im): (Vec<f64>, Vec<f64>) = (0..p)
        .map(|k| {
            let c = coefficient(theta0, k);
            (c.re, c.im)
        })
        .unzip();
    let b = inst.frame_affix(inst.b());
    Ok(EndpointSystem {
        theta0,
        matrix: [re, im],
        rhs: [b.re, b.im],
    })
}

/// `p` arcs of common turning `omega / p` and radii `R_k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ChainRecord", into = "ChainRecord")]
pub struct DiscreteArcChain {
    omega: f64,
    theta0: f64,
    radii: Vec<f64>,
}

impl DiscreteArcChain {
    /// Radii must be nonnegative; a zero radius only arises as the limit of
    /// the minimum-length problem without a radius floor and cannot be turned
    /// into a path.
    pub fn new(omega: f64, radii: Vec<f64>) -> Result<Self> {
        if radii.len() < 2 {
            return Err(Error::InvalidInput(format!(
                "chain needs at least 2 arcs, got {}",
                radii.len()
            )));
        }
        if !(omega > 0.0 && omega < std::f64::consts::PI) {
            return Err(Error::InvalidInput(format!(
                "turning {omega} outside (0, pi)"
            )));
        }
        if let Some((k, r)) = radii
            .iter()
            .enumerate()
            .find(|(_, r)| !(r.is_finite() && **r >= 0.0))
        {
            return Err(Error::InvalidInput(format!("radius {r} at arc {k}")));
        }
        Ok(Self {
            omega,
            theta0: omega / radii.len() as f64,
            radii,
        })
    }

    pub fn p(&self) -> usize {
        self.radii.len()
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn theta0(&self) -> f64 {
        self.theta0
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn min_radius(&self) -> f64 {
        self.radii.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn length(&self) -> f64 {
        self.theta0 * self.radii.iter().sum::<f64>()
    }

    pub fn arc_lengths(&self) -> Vec<f64> {
        self.radii.iter().map(|r| r * self.theta0).collect()
    }

    pub fn is_strictly_positive(&self) -> bool {
        self.radii.iter().all(|&r| r > 0.0)
    }

    /// Splits every arc into two arcs of the same radius.
    pub fn refine(&self) -> DiscreteArcChain {
        let radii = self.radii.iter().flat_map(|&r| [r, r]).collect();
        DiscreteArcChain {
            omega: self.omega,
            theta0: self.omega / (2 * self.p()) as f64,
            radii,
        }
    }
}

#[derive(Serialize, Deserialize)]
struct ChainRecord {
    p: usize,
    omega: f64,
    theta0: f64,
    radii: Vec<f64>,
}

impl TryFrom<ChainRecord> for DiscreteArcChain {
    type Error = Error;

    fn try_from(rec: ChainRecord) -> Result<Self> {
        if rec.p != rec.radii.len() {
            return Err(Error::InvalidInput(format!(
                "p = {} but {} radii",
                rec.p,
                rec.radii.len()
            )));
        }
        DiscreteArcChain::new(rec.omega, rec.radii)
    }
}

impl From<DiscreteArcChain> for ChainRecord {
    fn from(c: DiscreteArcChain) -> Self {
        ChainRecord {
            p: c.p(),
            omega: c.omega,
            theta0: c.theta0,
            radii: c.radii,
        }
    }
}

/// Lays the chain out from `A` along `alpha` and checks that it lands on `B`.
pub fn chain_to_path(chain: &DiscreteArcChain, inst: &ProblemInstance) -> Result<PiecewisePath> {
    if (chain.omega() - inst.omega()).abs() > 1e-12 {
        return Err(Error::InvalidInput(format!(
            "chain turns by {}, instance by {}",
            chain.omega(),
            inst.omega()
        )));
    }
    let theta0 = chain.theta0();
    let mut cursor = inst.a();
    let mut pieces = Vec::with_capacity(chain.p());
    for (k, &r) in chain.radii().iter().enumerate() {
        if r <= 0.0 {
            return Err(Error::InvalidPiece(format!("zero radius at arc {k}")));
        }
        let heading = inst.alpha().rotate(k as f64 * theta0);
        let arc = ArcPiece::from_start(cursor, heading, r, theta0)?;
        cursor = arc.end();
        pieces.push(Piece::Arc(arc));
    }
    let tol = CLOSURE_TOL * (1.0 + inst.a().distance(inst.b()));
    let distance = cursor.distance(inst.b());
    if distance > tol {
        return Err(Error::EndpointMismatch { distance, tol });
    }
    PiecewisePath::new(pieces)
}
