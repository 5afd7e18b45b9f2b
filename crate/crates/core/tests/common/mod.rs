#![allow(dead_code)]

use cornercurve::geometry::{normalize_problem, Point2, ProblemInstance, UnitVec2};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Feasible instance with turning in `(0.1, pi - 0.1)` and arbitrary
/// placement, heading and orientation.
pub fn random_instance(rng: &mut impl Rng) -> ProblemInstance {
    let omega = rng.gen_range(0.1..std::f64::consts::PI - 0.1);
    let heading = rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
    let o = Point2::new(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0));
    let u0 = rng.gen_range(0.2..3.0);
    let v0 = rng.gen_range(0.2..3.0);
    let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
    let alpha = UnitVec2::from_angle(heading);
    let beta = alpha.rotate(sign * omega);
    let a = o - Point2::from(alpha) * u0;
    let b = o + Point2::from(beta) * v0;
    normalize_problem(a, b, alpha, beta).expect("generated instance is valid")
}
