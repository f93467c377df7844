//! Finite kernel spans: the concrete bandlimited functions of the lab.

use super::profile::SpectralProfile;
use crate::error::{Error, Result};
use crate::geometry::{geodesic_distance, killing_flow, KillingField, Point, PolarGrid};
use nalgebra::DMatrix;

/// `f(x) = Σ_j c_j K_g(x, y_j)` for a band profile `g`, centers `y_j` and
/// real coefficients `c_j`.
#[derive(Debug, Clone)]
pub struct BandlimitedFn {
    profile: SpectralProfile,
    centers: Vec<Point>,
    coeffs: Vec<f64>,
}

/// Builds the span element; the evaluation at any point is the plain sum of
/// filtered-kernel terms.
pub fn synthesize(
    profile: &SpectralProfile,
    centers: Vec<Point>,
    coeffs: Vec<f64>,
) -> Result<BandlimitedFn> {
    if centers.is_empty() {
        return Err(Error::InvalidArgument(
            "a bandlimited span needs at least one center".into(),
        ));
    }
    if centers.len() != coeffs.len() {
        return Err(Error::InvalidArgument(format!(
            "got {} centers but {} coefficients",
            centers.len(),
            coeffs.len()
        )));
    }
    Ok(BandlimitedFn {
        profile: profile.clone(),
        centers,
        coeffs,
    })
}

/// Kernel cross-matrix `[K_g(rows_i, cols_j)]` for a given profile.
pub fn gram_matrix(profile: &SpectralProfile, rows: &[Point], cols: &[Point]) -> DMatrix<f64> {
    DMatrix::from_fn(rows.len(), cols.len(), |i, j| {
        profile.filtered_kernel(rows[i], cols[j])
    })
}

/// An L_p norm together with the relative weight the integrand carries on the
/// annulus just outside the quadrature domain — the truncation indicator.
#[derive(Debug, Clone, Copy)]
pub struct LpNorm {
    pub value: f64,
    pub tail_fraction: f64,
}

impl BandlimitedFn {
    pub fn band(&self) -> f64 {
        self.profile.band()
    }

    pub fn profile(&self) -> &SpectralProfile {
        &self.profile
    }

    pub fn centers(&self) -> &[Point] {
        &self.centers
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn eval(&self, x: Point) -> f64 {
        self.centers
            .iter()
            .zip(&self.coeffs)
            .map(|(&y, &c)| c * self.profile.kernel_radial(geodesic_distance(x, y)))
            .sum()
    }

    pub fn scaled(&self, alpha: f64) -> Self {
        let mut out = self.clone();
        for c in &mut out.coeffs {
            *c *= alpha;
        }
        out
    }

    /// `Δ^{s/2} f`: same centers and coefficients, profile multiplied by
    /// `(λ² + ρ²)^{s/2}`.
    pub fn apply_laplacian_power(&self, s: f64) -> Self {
        BandlimitedFn {
            profile: self.profile.laplacian_power(s),
            centers: self.centers.clone(),
            coeffs: self.coeffs.clone(),
        }
    }

    /// L₂ inner product, evaluated spectrally: the inner product of two
    /// kernel translates is one kernel evaluation of the product profile, and
    /// the rest is bilinearity. No spatial quadrature is involved.
    pub fn l2_inner(&self, other: &BandlimitedFn) -> Result<f64> {
        let cross = self.profile.product(&other.profile)?;
        let mut acc = 0.0;
        for (&yi, &ci) in self.centers.iter().zip(&self.coeffs) {
            for (&zj, &dj) in other.centers.iter().zip(&other.coeffs) {
                acc += ci * dj * cross.kernel_radial(geodesic_distance(yi, zj));
            }
        }
        Ok(acc)
    }

    /// Spectral L₂ norm.
    pub fn l2_norm(&self) -> f64 {
        self.l2_inner(self)
            .expect("a profile is compatible with itself")
            .max(0.0)
            .sqrt()
    }

    /// L_p norm on the grid's ball with the truncation indicator, without
    /// enforcing the tail tolerance. `p = f64::INFINITY` takes the sup over
    /// the grid refined by a local pattern search.
    pub fn lp_norm_with_tail(&self, p: f64, grid: &PolarGrid) -> Result<LpNorm> {
        if !(1.0..=f64::INFINITY).contains(&p) {
            return Err(Error::InvalidArgument(format!(
                "p must lie in [1, ∞], got {p}"
            )));
        }
        let r_dom = grid.domain_radius();
        let annulus = annulus_nodes(r_dom, r_dom + 2.0, grid);
        if p.is_infinite() {
            let mut best = (Point::origin(), 0.0);
            for &(x, _) in grid.nodes() {
                let v = self.eval(x).abs();
                if v > best.1 {
                    best = (x, v);
                }
            }
            let refined = self.refine_max(best.0, best.1);
            let outside = annulus
                .iter()
                .map(|&(x, _)| self.eval(x).abs())
                .fold(0.0f64, f64::max);
            return Ok(LpNorm {
                value: refined,
                tail_fraction: if refined > 0.0 { outside / refined } else { 0.0 },
            });
        }
        let mass: f64 = grid
            .nodes()
            .iter()
            .map(|&(x, w)| w * self.eval(x).abs().powf(p))
            .sum();
        let tail_mass: f64 = annulus
            .iter()
            .map(|&(x, w)| w * self.eval(x).abs().powf(p))
            .sum();
        let total = mass + tail_mass;
        Ok(LpNorm {
            value: mass.powf(1.0 / p),
            tail_fraction: if total > 0.0 { tail_mass / total } else { 0.0 },
        })
    }

    /// L_p norm on the grid's ball. Errors when the truncation indicator
    /// exceeds 1e-6 of the result, advising a larger domain.
    pub fn lp_norm(&self, p: f64, grid: &PolarGrid) -> Result<f64> {
        let norm = self.lp_norm_with_tail(p, grid)?;
        if norm.tail_fraction > 1e-6 {
            return Err(Error::TailTooLarge {
                tail: norm.tail_fraction,
                limit: 1e-6,
            });
        }
        Ok(norm.value)
    }

    fn refine_max(&self, start: Point, start_val: f64) -> f64 {
        // pattern search in disk coordinates around the best grid node
        let mut center = start;
        let mut best = start_val;
        let mut step = 0.02 * (1.0 - start.norm_sq());
        for _ in 0..24 {
            let mut improved = false;
            for &(du, dv) in &[(step, 0.0), (-step, 0.0), (0.0, step), (0.0, -step)] {
                if let Ok(cand) = Point::new(center.u() + du, center.v() + dv) {
                    let v = self.eval(cand).abs();
                    if v > best {
                        best = v;
                        center = cand;
                        improved = true;
                    }
                }
            }
            if !improved {
                step *= 0.5;
                if step < 1e-9 {
                    break;
                }
            }
        }
        best
    }

    /// The iterated Killing-field derivative `V_{i_1} … V_{i_k} f` as an
    /// evaluation object. Derivatives are Richardson-extrapolated central
    /// differences along the exact Möbius flows; at most three orders.
    pub fn killing_derivative(&self, indices: &[KillingField]) -> Result<KillingDerivative<'_>> {
        if indices.is_empty() || indices.len() > 3 {
            return Err(Error::InvalidArgument(format!(
                "derivative order must be 1..=3, got {}",
                indices.len()
            )));
        }
        // step 1e-4 for a first-order derivative, 1e-3 when nested
        let h = if indices.len() == 1 { 1e-4 } else { 1e-3 };
        Ok(KillingDerivative {
            f: self,
            indices: indices.to_vec(),
            h,
        })
    }
}

/// Extra quadrature nodes on the annulus `[r_dom, r_out]`, used only for the
/// truncation indicator.
fn annulus_nodes(r_dom: f64, r_out: f64, reference: &PolarGrid) -> Vec<(Point, f64)> {
    use crate::quadrature::gauss_legendre_on;
    let n_r = (reference.radial_nodes().len() / 2).max(16);
    let (rs, ws) = gauss_legendre_on(n_r, r_dom, r_out);
    let angular = reference.angular_nodes();
    let mut nodes = Vec::with_capacity(n_r * angular.len());
    for (&r, &w) in rs.iter().zip(&ws) {
        let density = w * r.sinh();
        for &(theta, wt) in angular {
            nodes.push((Point::from_polar(r, theta), density * wt));
        }
    }
    nodes
}

/// Evaluator for an iterated Killing-field derivative of a bandlimited span.
pub struct KillingDerivative<'a> {
    f: &'a BandlimitedFn,
    indices: Vec<KillingField>,
    h: f64,
}

impl KillingDerivative<'_> {
    pub fn eval(&self, x: Point) -> f64 {
        eval_nested(self.f, &self.indices, x, self.h)
    }

    pub fn order(&self) -> usize {
        self.indices.len()
    }
}

fn eval_nested(f: &BandlimitedFn, indices: &[KillingField], x: Point, h: f64) -> f64 {
    match indices.split_first() {
        None => f.eval(x),
        Some((&field, rest)) => {
            let g = |y: Point| eval_nested(f, rest, y, h);
            let diff = |hh: f64| {
                (g(killing_flow(field, hh, x)) - g(killing_flow(field, -hh, x))) / (2.0 * hh)
            };
            // one Richardson step: error drops from O(h²) to O(h⁴)
            (4.0 * diff(0.5 * h) - diff(h)) / 3.0
        }
    }
}
