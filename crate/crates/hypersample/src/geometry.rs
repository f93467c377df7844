//! Exact geometry of the hyperbolic plane in Poincaré-disk coordinates.
//!
//! The metric is normalized to curvature −1, so `ds = 2|dz|/(1-|z|^2)`,
//! geodesic circles of radius `r` have circumference `2π sinh r`, and the
//! spectral-gap parameter is [`RHO`] = 1/2. Isometries are Möbius maps of the
//! disk; the three one-parameter flows exposed here (two transvections and the
//! rotation about the origin) are generated by Killing fields that are
//! orthonormal at the origin.

use crate::error::{Error, Result};
use crate::quadrature::gauss_legendre_on;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Half-sum of the positive restricted roots under the curvature −1
/// normalization of the hyperbolic plane.
pub const RHO: f64 = 0.5;

/// A point of the open unit disk. Construction enforces `u^2 + v^2 < 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "(f64, f64)", into = "(f64, f64)")]
pub struct Point {
    u: f64,
    v: f64,
}

impl TryFrom<(f64, f64)> for Point {
    type Error = Error;
    fn try_from(p: (f64, f64)) -> Result<Self> {
        Point::new(p.0, p.1)
    }
}

impl From<Point> for (f64, f64) {
    fn from(p: Point) -> (f64, f64) {
        (p.u, p.v)
    }
}

impl Point {
    pub fn new(u: f64, v: f64) -> Result<Self> {
        if !(u.is_finite() && v.is_finite()) || u * u + v * v >= 1.0 {
            return Err(Error::Domain(format!(
                "({u}, {v}) is not strictly inside the unit disk"
            )));
        }
        Ok(Point { u, v })
    }

    /// The base point `o` at the disk center.
    pub const fn origin() -> Self {
        Point { u: 0.0, v: 0.0 }
    }

    /// Point at geodesic distance `r` from the origin in direction `theta`.
    pub fn from_polar(r: f64, theta: f64) -> Self {
        let rho = (0.5 * r).tanh();
        Point {
            u: rho * theta.cos(),
            v: rho * theta.sin(),
        }
    }

    pub fn u(&self) -> f64 {
        self.u
    }

    pub fn v(&self) -> f64 {
        self.v
    }

    pub fn norm_sq(&self) -> f64 {
        self.u * self.u + self.v * self.v
    }

    /// Geodesic distance to the origin.
    pub fn radial_distance(&self) -> f64 {
        2.0 * self.norm_sq().sqrt().atanh()
    }
}

/// `acosh(1 + e)` computed without forming `1 + e`, accurate for tiny `e`.
fn acosh1p(e: f64) -> f64 {
    (e + (e * (2.0 + e)).sqrt()).ln_1p()
}

/// Geodesic distance between two disk points.
///
/// `d(x,y) = acosh(1 + 2|x-y|^2 / ((1-|x|^2)(1-|y|^2)))`, evaluated in a form
/// that keeps full relative accuracy for nearby points (needed by the
/// finite-difference derivatives along flows).
pub fn geodesic_distance(x: Point, y: Point) -> f64 {
    let du = x.u - y.u;
    let dv = x.v - y.v;
    let e = 2.0 * (du * du + dv * dv) / ((1.0 - x.norm_sq()) * (1.0 - y.norm_sq()));
    acosh1p(e)
}

/// The Möbius transvection taking the origin to `c`, applied to `z`:
/// `z ↦ (z + c) / (1 + conj(c) z)` in complex notation.
pub fn mobius_translate(c: Point, z: Point) -> Point {
    // numerator (z + c), denominator (1 + conj(c) z)
    let (nu, nv) = (z.u + c.u, z.v + c.v);
    let du = 1.0 + c.u * z.u + c.v * z.v;
    let dv = c.u * z.v - c.v * z.u;
    let den = du * du + dv * dv;
    Point {
        u: (nu * du + nv * dv) / den,
        v: (nv * du - nu * dv) / den,
    }
}

/// The three Killing fields exposed by the lab: two transvection generators
/// spanning the tangent space at the origin and the rotation generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum KillingField {
    /// Transvection along the u-axis; unit vector at the origin.
    Translation1,
    /// Transvection along the v-axis; unit vector at the origin.
    Translation2,
    /// Rotation about the origin (generator of the isotropy group).
    Rotation,
}

impl KillingField {
    pub fn from_index(index: usize) -> Result<Self> {
        match index {
            1 => Ok(Self::Translation1),
            2 => Ok(Self::Translation2),
            3 => Ok(Self::Rotation),
            _ => Err(Error::InvalidArgument(format!(
                "Killing field index must be 1, 2 or 3, got {index}"
            ))),
        }
    }

    pub const ALL: [KillingField; 3] = [
        KillingField::Translation1,
        KillingField::Translation2,
        KillingField::Rotation,
    ];

    /// Fields with nonzero velocity at the origin (the transvections).
    pub const TRANSLATIONS: [KillingField; 2] =
        [KillingField::Translation1, KillingField::Translation2];
}

/// Image of `x` under the time-`t` flow of the given Killing field.
///
/// The transvection flows move the origin along a unit-speed geodesic, so
/// `killing_flow(Translation1, t, o) = (tanh(t/2), 0)`; they satisfy the
/// one-parameter group law exactly because they are Möbius maps.
pub fn killing_flow(field: KillingField, t: f64, x: Point) -> Point {
    match field {
        KillingField::Translation1 => {
            let a = (0.5 * t).tanh();
            mobius_translate(Point { u: a, v: 0.0 }, x)
        }
        KillingField::Translation2 => {
            let a = (0.5 * t).tanh();
            mobius_translate(Point { u: 0.0, v: a }, x)
        }
        KillingField::Rotation => {
            let (s, c) = t.sin_cos();
            Point {
                u: c * x.u - s * x.v,
                v: s * x.u + c * x.v,
            }
        }
    }
}

/// Fixed constants of the curvature −1 model, with the Killing-form scaling
/// of the same space kept alongside for cross-checks.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct MetricConvention {
    pub curvature: f64,
    pub rho: f64,
    pub dim: u32,
}

impl Default for MetricConvention {
    fn default() -> Self {
        MetricConvention {
            curvature: -1.0,
            rho: RHO,
            dim: 2,
        }
    }
}

impl MetricConvention {
    /// Root multiplicities of the hyperbolic plane: one short root, no long
    /// root, so `d = a + b + 1 = 2`.
    pub const KILLING_A: f64 = 1.0;
    pub const KILLING_B: f64 = 0.0;

    /// The scale factor `c = (2a + 8b)^{-1/2}` of the Killing-form metric.
    pub fn killing_scale() -> f64 {
        1.0 / (2.0 * Self::KILLING_A + 8.0 * Self::KILLING_B).sqrt()
    }

    /// Sphere circumference in the raw Killing-form metric:
    /// `Ω_d 2^{-b} c^{-a-b} sinh^a(cr) sinh^b(2cr)` with `Ω_2 = 2π`.
    pub fn sphere_area_killing(r: f64) -> Result<f64> {
        if r < 0.0 {
            return Err(Error::Domain(format!("negative radius {r}")));
        }
        let (a, b) = (Self::KILLING_A, Self::KILLING_B);
        let c = Self::killing_scale();
        Ok(2.0 * PI * 2.0_f64.powf(-b) * c.powf(-a - b) * (c * r).sinh().powf(a)
            * (2.0 * c * r).sinh().powf(b))
    }
}

/// Circumference of the geodesic circle of radius `r` (curvature −1).
pub fn sphere_area(r: f64) -> Result<f64> {
    if r < 0.0 {
        return Err(Error::Domain(format!("negative radius {r}")));
    }
    Ok(2.0 * PI * r.sinh())
}

/// Hyperbolic area of the ball `B(o, r)`.
pub fn ball_area(r: f64) -> f64 {
    2.0 * PI * (r.cosh() - 1.0)
}

/// Quadrature grid for invariant integrals over `B(o, R)`: Gauss–Legendre in
/// the radial coordinate against the `sinh` density, uniform (trapezoid) in
/// the angle.
#[derive(Debug, Clone)]
pub struct PolarGrid {
    radial: Vec<(f64, f64)>,
    angular: Vec<(f64, f64)>,
    domain_radius: f64,
    /// Flattened (point, combined weight) pairs; the weight already contains
    /// the `sinh` density, so sums against it are invariant integrals.
    nodes: Vec<(Point, f64)>,
}

impl PolarGrid {
    /// Builds the grid and certifies it: integrating the constant 1 must
    /// reproduce the ball area to relative 1e-8.
    pub fn new(domain_radius: f64, n_r: usize, n_theta: usize) -> Result<Self> {
        if domain_radius <= 0.0 {
            return Err(Error::Domain(format!(
                "domain radius must be positive, got {domain_radius}"
            )));
        }
        if n_r < 8 || n_theta < 8 {
            return Err(Error::InvalidArgument(format!(
                "polar grid needs at least 8 nodes per direction, got {n_r} x {n_theta}"
            )));
        }
        let (rs, wr) = gauss_legendre_on(n_r, 0.0, domain_radius);
        let radial: Vec<(f64, f64)> = rs.into_iter().zip(wr).collect();
        let wt = 2.0 * PI / n_theta as f64;
        let angular: Vec<(f64, f64)> = (0..n_theta)
            .map(|j| (wt * j as f64, wt))
            .collect();
        let mut nodes = Vec::with_capacity(n_r * n_theta);
        for &(r, w_r) in &radial {
            let density = w_r * r.sinh();
            for &(theta, w_t) in &angular {
                nodes.push((Point::from_polar(r, theta), density * w_t));
            }
        }
        let grid = PolarGrid {
            radial,
            angular,
            domain_radius,
            nodes,
        };
        let measured = grid.integrate(|_| 1.0);
        let exact = ball_area(domain_radius);
        let residual = ((measured - exact) / exact).abs();
        if residual > 1e-8 {
            return Err(Error::Quadrature {
                context: format!("polar grid area check at R = {domain_radius}"),
                achieved: residual,
                wanted: 1e-8,
            });
        }
        Ok(grid)
    }

    pub fn domain_radius(&self) -> f64 {
        self.domain_radius
    }

    pub fn radial_nodes(&self) -> &[(f64, f64)] {
        &self.radial
    }

    pub fn angular_nodes(&self) -> &[(f64, f64)] {
        &self.angular
    }

    /// (point, weight) pairs with the invariant density folded into the weight.
    pub fn nodes(&self) -> &[(Point, f64)] {
        &self.nodes
    }

    /// Invariant integral of `f` over `B(o, R)`.
    pub fn integrate(&self, f: impl Fn(Point) -> f64) -> f64 {
        self.nodes.iter().map(|&(p, w)| w * f(p)).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::adaptive_simpson;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn random_point(rng: &mut impl Rng, radius: f64) -> Point {
        let u: f64 = rng.random();
        let s = (1.0 + u * (radius.cosh() - 1.0)).acosh();
        let theta = rng.random::<f64>() * 2.0 * PI;
        Point::from_polar(s, theta)
    }

    #[test]
    fn point_invariant_enforced() {
        assert!(Point::new(0.3, -0.4).is_ok());
        assert!(Point::new(1.0, 0.0).is_err());
        assert!(Point::new(0.8, 0.7).is_err());
        assert!(Point::new(f64::NAN, 0.0).is_err());
    }

    #[test]
    fn distance_identity_and_closed_form() {
        let o = Point::origin();
        assert_eq!(geodesic_distance(o, o), 0.0);
        // d(o, (tanh(1/2), 0)) = 1
        let x = Point::new(0.5_f64.tanh(), 0.0).unwrap();
        assert_abs_diff_eq!(geodesic_distance(o, x), 1.0, epsilon = 1e-14);
    }

    #[test]
    fn distance_matches_polyline_length_oracle() {
        // independent check: integrate ds = 2|dz|/(1-|z|^2) along the radial
        // segment to tanh(1/2)
        let t_end = 0.5_f64.tanh();
        let n = 20_000;
        let mut len = 0.0;
        for i in 0..n {
            let a = t_end * i as f64 / n as f64;
            let b = t_end * (i + 1) as f64 / n as f64;
            let m = 0.5 * (a + b);
            len += 2.0 * (b - a) / (1.0 - m * m);
        }
        assert_abs_diff_eq!(len, 1.0, epsilon = 1e-9);
    }

    #[test]
    fn distance_symmetry_and_triangle() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..100 {
            let x = random_point(&mut rng, 3.0);
            let y = random_point(&mut rng, 3.0);
            assert_eq!(geodesic_distance(x, y), geodesic_distance(y, x));
        }
        for _ in 0..10_000 {
            let x = random_point(&mut rng, 3.0);
            let y = random_point(&mut rng, 3.0);
            let z = random_point(&mut rng, 3.0);
            let lhs = geodesic_distance(x, z);
            let rhs = geodesic_distance(x, y) + geodesic_distance(y, z);
            assert!(lhs <= rhs + 1e-12, "triangle inequality violated: {lhs} > {rhs}");
        }
    }

    #[test]
    fn sphere_area_values() {
        assert_eq!(sphere_area(0.0).unwrap(), 0.0);
        // frozen from 2*pi*sinh(1)
        assert_relative_eq!(sphere_area(1.0).unwrap(), 7.384006872882645, max_relative = 1e-14);
        assert!(sphere_area(-0.1).is_err());
    }

    #[test]
    fn log_sphere_area_derivative_is_coth() {
        // d/dr log S(r) = coth(r), the radial drift of the Laplacian
        let h = 1e-5;
        for &r in &[0.3, 1.0, 2.5] {
            let d = (sphere_area(r + h).unwrap().ln() - sphere_area(r - h).unwrap().ln()) / (2.0 * h);
            assert_relative_eq!(d, 1.0 / r.tanh(), max_relative = 1e-8);
        }
    }

    #[test]
    fn killing_form_convention_is_a_rescaling() {
        // The raw Killing-form metric is the curvature -1 metric with lengths
        // scaled by 1/c: S_killing(r/c) * c = 2 pi sinh(r).
        let c = MetricConvention::killing_scale();
        assert_relative_eq!(c, 1.0 / 2.0_f64.sqrt(), max_relative = 1e-15);
        for &r in &[0.5, 1.0, 2.0] {
            let lhs = MetricConvention::sphere_area_killing(r / c).unwrap() * c;
            assert_relative_eq!(lhs, sphere_area(r).unwrap(), max_relative = 1e-13);
        }
        assert!(MetricConvention::sphere_area_killing(-1.0).is_err());
    }

    #[test]
    fn flows_fix_time_zero_and_act_isometrically() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for field in KillingField::ALL {
            for _ in 0..50 {
                let x = random_point(&mut rng, 2.5);
                let y = random_point(&mut rng, 2.5);
                let t = rng.random::<f64>() * 4.0 - 2.0;
                let x0 = killing_flow(field, 0.0, x);
                assert_abs_diff_eq!(x0.u(), x.u(), epsilon = 1e-15);
                assert_abs_diff_eq!(x0.v(), x.v(), epsilon = 1e-15);
                let d0 = geodesic_distance(x, y);
                let d1 = geodesic_distance(
                    killing_flow(field, t, x),
                    killing_flow(field, t, y),
                );
                assert_abs_diff_eq!(d0, d1, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn flow_group_law() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for field in KillingField::ALL {
            for _ in 0..50 {
                let x = random_point(&mut rng, 2.0);
                let s = rng.random::<f64>() * 2.0 - 1.0;
                let t = rng.random::<f64>() * 2.0 - 1.0;
                let a = killing_flow(field, s + t, x);
                let b = killing_flow(field, s, killing_flow(field, t, x));
                assert_abs_diff_eq!(a.u(), b.u(), epsilon = 1e-13);
                assert_abs_diff_eq!(a.v(), b.v(), epsilon = 1e-13);
            }
        }
    }

    #[test]
    fn translations_have_unit_speed_at_origin() {
        let h = 1e-6;
        for field in KillingField::TRANSLATIONS {
            let forward = killing_flow(field, h, Point::origin());
            let speed = geodesic_distance(Point::origin(), forward) / h;
            assert_relative_eq!(speed, 1.0, max_relative = 1e-9);
        }
    }

    #[test]
    fn polar_grid_area_and_positivity() {
        let grid = PolarGrid::new(3.0, 48, 64).unwrap();
        // frozen from 2*pi*(cosh(3) - 1)
        assert_relative_eq!(grid.integrate(|_| 1.0), 56.97380062234158, max_relative = 1e-9);
        assert!(grid.nodes().iter().all(|&(_, w)| w > 0.0));
        assert!(PolarGrid::new(3.0, 4, 64).is_err());
    }

    #[test]
    fn polar_grid_gaussian_matches_adaptive_oracle() {
        let grid = PolarGrid::new(3.0, 48, 64).unwrap();
        let got = grid.integrate(|p| (-geodesic_distance(Point::origin(), p).powi(2)).exp());
        // radial function: reference by 1D adaptive quadrature of
        // 2 pi exp(-r^2) sinh(r)
        let oracle =
            adaptive_simpson(|r| 2.0 * PI * (-r * r).exp() * r.sinh(), 0.0, 3.0, 1e-13);
        assert_relative_eq!(got, oracle, max_relative = 1e-7);
    }

    #[test]
    fn measure_invariance_under_flows() {
        // compactly supported bump, flowed; integral must not change
        let grid = PolarGrid::new(4.0, 160, 512).unwrap();
        let bump = |p: Point| {
            let d = geodesic_distance(Point::origin(), p);
            if d < 1.5 {
                let s = d / 1.5;
                (1.0 - 1.0 / (1.0 - s * s)).exp()
            } else {
                0.0
            }
        };
        let base = grid.integrate(bump);
        for field in KillingField::ALL {
            let moved = grid.integrate(|p| bump(killing_flow(field, 0.7, p)));
            assert_relative_eq!(moved, base, max_relative = 1e-6);
        }
    }

    #[test]
    fn mobius_translate_moves_origin() {
        let c = Point::new(0.3, -0.2).unwrap();
        let img = mobius_translate(c, Point::origin());
        assert_abs_diff_eq!(img.u(), c.u(), epsilon = 1e-15);
        assert_abs_diff_eq!(img.v(), c.v(), epsilon = 1e-15);
        // transvections are isometries
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let x = random_point(&mut rng, 2.0);
            let y = random_point(&mut rng, 2.0);
            assert_abs_diff_eq!(
                geodesic_distance(mobius_translate(c, x), mobius_translate(c, y)),
                geodesic_distance(x, y),
                epsilon = 1e-12
            );
        }
    }
}
