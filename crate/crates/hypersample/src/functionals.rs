//! Sampling functionals: finite non-negative measures supported near lattice
//! points.
//!
//! Two kinds span the extremes the sampling theory distinguishes: the Dirac
//! measure (pointwise evaluation, mass 1) and the uniform average over a
//! small geodesic ball (mass = ball area). A family carries one functional
//! per lattice center together with its uniform mass bounds.

use crate::error::{Error, Result};
use crate::geometry::{ball_area, mobius_translate, Point};
use crate::lattice::Lattice;
use crate::quadrature::gauss_legendre_on;
use crate::spectral::BandlimitedFn;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::sync::Arc;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FunctionalKind {
    Dirac,
    BallAverage,
}

/// A measure-type functional `Φ(f) = ∫_K f dμ` on a compact set
/// `K ⊂ B(center, r/2)`.
#[derive(Debug, Clone)]
pub struct SamplingFunctional {
    kind: FunctionalKind,
    center: Point,
    support_radius: f64,
    mass: f64,
    /// Local quadrature template shared across a family (ball averages only):
    /// polar nodes around the origin with invariant weights, translated to the
    /// center on use.
    template: Option<Arc<Vec<(Point, f64)>>>,
}

impl SamplingFunctional {
    pub fn dirac(center: Point) -> Self {
        SamplingFunctional {
            kind: FunctionalKind::Dirac,
            center,
            support_radius: 0.0,
            mass: 1.0,
            template: None,
        }
    }

    fn ball_average(center: Point, radius: f64, template: Arc<Vec<(Point, f64)>>) -> Self {
        let mass = template.iter().map(|&(_, w)| w).sum();
        SamplingFunctional {
            kind: FunctionalKind::BallAverage,
            center,
            support_radius: radius,
            mass,
            template: Some(template),
        }
    }

    pub fn kind(&self) -> FunctionalKind {
        self.kind
    }

    pub fn center(&self) -> Point {
        self.center
    }

    pub fn support_radius(&self) -> f64 {
        self.support_radius
    }

    /// Total mass `|K|` of the defining measure.
    pub fn mass(&self) -> f64 {
        self.mass
    }

    /// Applies the functional to an arbitrary evaluation closure.
    pub fn apply_fn(&self, f: impl Fn(Point) -> f64) -> f64 {
        match (&self.kind, &self.template) {
            (FunctionalKind::Dirac, _) => f(self.center),
            (FunctionalKind::BallAverage, Some(template)) => template
                .iter()
                .map(|&(local, w)| w * f(mobius_translate(self.center, local)))
                .sum(),
            (FunctionalKind::BallAverage, None) => unreachable!("ball average without template"),
        }
    }

    /// Applies the functional to a bandlimited span.
    pub fn apply(&self, f: &BandlimitedFn) -> f64 {
        self.apply_fn(|x| f.eval(x))
    }
}

/// One functional per lattice center, plus the family-level mass bounds
/// `c_Φ = min |K_ν|` and `C_Φ = max |K_ν|`.
#[derive(Debug, Clone)]
pub struct FunctionalFamily {
    kind: FunctionalKind,
    eps: f64,
    functionals: Vec<SamplingFunctional>,
    mass_lower: f64,
    mass_upper: f64,
}

/// Builds the family over a lattice. `eps ∈ (0, 1/2]` scales the ball-average
/// support radius as `ε·r`, which keeps every support inside `B(x_ν, r/2)`.
pub fn build_family(lattice: &Lattice, kind: FunctionalKind, eps: f64) -> Result<FunctionalFamily> {
    if !(eps > 0.0 && eps <= 0.5) {
        return Err(Error::InvalidArgument(format!(
            "eps must lie in (0, 1/2], got {eps}"
        )));
    }
    let functionals: Vec<SamplingFunctional> = match kind {
        FunctionalKind::Dirac => lattice
            .centers()
            .iter()
            .map(|&c| SamplingFunctional::dirac(c))
            .collect(),
        FunctionalKind::BallAverage => {
            let radius = eps * lattice.r();
            let template = Arc::new(ball_template(radius)?);
            lattice
                .centers()
                .iter()
                .map(|&c| SamplingFunctional::ball_average(c, radius, Arc::clone(&template)))
                .collect()
        }
    };
    let mass_lower = functionals.iter().map(|f| f.mass).fold(f64::INFINITY, f64::min);
    let mass_upper = functionals.iter().map(|f| f.mass).fold(0.0, f64::max);
    if !(mass_lower > 0.0 && mass_upper.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "family mass bounds degenerate: [{mass_lower}, {mass_upper}]"
        )));
    }
    Ok(FunctionalFamily {
        kind,
        eps,
        functionals,
        mass_lower,
        mass_upper,
    })
}

/// 16 x 16 polar quadrature of the ball `B(o, radius)`; weights carry the
/// invariant density, so their sum is the ball area.
fn ball_template(radius: f64) -> Result<Vec<(Point, f64)>> {
    const N: usize = 16;
    let (rs, ws) = gauss_legendre_on(N, 0.0, radius);
    let wt = 2.0 * PI / N as f64;
    let mut nodes = Vec::with_capacity(N * N);
    for (&s, &w) in rs.iter().zip(&ws) {
        let density = w * s.sinh() * wt;
        for k in 0..N {
            nodes.push((Point::from_polar(s, wt * k as f64), density));
        }
    }
    let mass: f64 = nodes.iter().map(|&(_, w)| w).sum();
    let exact = ball_area(radius);
    if ((mass - exact) / exact).abs() > 1e-8 {
        return Err(Error::Quadrature {
            context: format!("ball-average template at radius {radius}"),
            achieved: ((mass - exact) / exact).abs(),
            wanted: 1e-8,
        });
    }
    Ok(nodes)
}

impl FunctionalFamily {
    pub fn kind(&self) -> FunctionalKind {
        self.kind
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn len(&self) -> usize {
        self.functionals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.functionals.is_empty()
    }

    pub fn functionals(&self) -> &[SamplingFunctional] {
        &self.functionals
    }

    /// `c_Φ`: the smallest mass in the family.
    pub fn mass_lower(&self) -> f64 {
        self.mass_lower
    }

    /// `C_Φ`: the largest mass in the family.
    pub fn mass_upper(&self) -> f64 {
        self.mass_upper
    }

    /// Raw sample vector `{Φ_ν(f)}` in lattice order.
    pub fn samples(&self, f: &BandlimitedFn) -> Vec<f64> {
        self.functionals.iter().map(|phi| phi.apply(f)).collect()
    }

    /// Mass-normalized samples `{|K_ν|^{-1} Φ_ν(f)}`.
    pub fn normalized_samples(&self, f: &BandlimitedFn) -> Vec<f64> {
        self.functionals
            .iter()
            .map(|phi| phi.apply(f) / phi.mass())
            .collect()
    }

    /// Summary for result files: kind, eps and the mass bounds.
    pub fn export(&self) -> FamilyExport {
        FamilyExport {
            kind: self.kind,
            eps: self.eps,
            size: self.len(),
            mass_lower: self.mass_lower,
            mass_upper: self.mass_upper,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FamilyExport {
    pub kind: FunctionalKind,
    pub eps: f64,
    pub size: usize,
    #[serde(rename = "massLower")]
    pub mass_lower: f64,
    #[serde(rename = "massUpper")]
    pub mass_upper: f64,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::build_lattice;
    use crate::spectral::{synthesize, SpectralProfile};
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn small_lattice() -> Lattice {
        build_lattice(0.5, 2.0, 3).unwrap()
    }

    fn test_fn(seed: u64) -> BandlimitedFn {
        let g = SpectralProfile::box_profile(2.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let centers: Vec<Point> = (0..6)
            .map(|_| Point::from_polar(rng.random::<f64>() * 1.5, rng.random::<f64>() * 7.0))
            .collect();
        let coeffs: Vec<f64> = (0..6).map(|_| rng.random::<f64>() * 2.0 - 1.0).collect();
        synthesize(&g, centers, coeffs).unwrap()
    }

    #[test]
    fn dirac_is_point_evaluation() {
        let lat = small_lattice();
        let family = build_family(&lat, FunctionalKind::Dirac, 0.25).unwrap();
        let f = test_fn(1);
        for (phi, &c) in family.functionals().iter().zip(lat.centers()) {
            assert_eq!(phi.apply(&f), f.eval(c));
            assert_eq!(phi.mass(), 1.0);
        }
        assert_eq!(family.mass_lower(), 1.0);
        assert_eq!(family.mass_upper(), 1.0);
        assert_eq!(family.len(), lat.len());
    }

    #[test]
    fn ball_average_mass_is_ball_area() {
        let lat = small_lattice();
        let family = build_family(&lat, FunctionalKind::BallAverage, 0.25).unwrap();
        // frozen from 2*pi*(cosh(0.125) - 1)
        let expected = 0.04915133437730603;
        for phi in family.functionals() {
            assert_relative_eq!(phi.mass(), expected, max_relative = 1e-8);
            // averaging the constant 1 returns the mass
            assert_relative_eq!(phi.apply_fn(|_| 1.0), phi.mass(), max_relative = 1e-14);
        }
        assert_relative_eq!(family.mass_lower(), family.mass_upper(), max_relative = 1e-15);
    }

    #[test]
    fn small_ball_average_approaches_point_value() {
        let lat = small_lattice();
        let f = test_fn(2);
        let family = build_family(&lat, FunctionalKind::BallAverage, 0.01).unwrap();
        for (phi, &c) in family.functionals().iter().zip(lat.centers()).take(8) {
            let avg = phi.apply(&f) / phi.mass();
            let point = f.eval(c);
            assert!(
                (avg - point).abs() <= 1e-3 * point.abs().max(1e-3),
                "average {avg} vs point {point}"
            );
        }
    }

    #[test]
    fn functionals_are_linear() {
        let lat = small_lattice();
        let f = test_fn(3);
        let g = test_fn(4);
        for kind in [FunctionalKind::Dirac, FunctionalKind::BallAverage] {
            let family = build_family(&lat, kind, 0.25).unwrap();
            let phi = &family.functionals()[1];
            let lhs = 2.0 * phi.apply(&f) - 0.5 * phi.apply(&g);
            let rhs = phi.apply_fn(|x| 2.0 * f.eval(x) - 0.5 * g.eval(x));
            assert_abs_diff_eq!(lhs, rhs, epsilon = 1e-12 * lhs.abs().max(1.0));
        }
    }

    #[test]
    fn support_containment_enforced() {
        let lat = small_lattice();
        assert!(build_family(&lat, FunctionalKind::BallAverage, 0.75).is_err());
        assert!(build_family(&lat, FunctionalKind::BallAverage, 0.0).is_err());
        let family = build_family(&lat, FunctionalKind::BallAverage, 0.5).unwrap();
        for phi in family.functionals() {
            assert!(phi.support_radius() <= 0.5 * lat.r() + 1e-15);
        }
    }
}
