//! Exact Euclidean baseline: the extremal function of the Nikolskii
//! inequality on the line (and the plane, by tensoring) and critical-rate
//! Shannon sampling. Everything here has classical closed forms, which makes
//! the module the quantitative ground truth the hyperbolic lab is calibrated
//! against.

use crate::error::{Error, Result};
use crate::quadrature::gauss_legendre;
use rayon::prelude::*;
use std::f64::consts::PI;

/// `sin(x)/x` with the removable singularity filled in.
fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-8 {
        1.0 - x * x / 6.0
    } else {
        x.sin() / x
    }
}

/// `sin(πx)/(πx)`: the unit-spaced interpolation kernel.
fn sinc_pi(x: f64) -> f64 {
    sinc(PI * x)
}

/// The extremal function `f(x) = Π_i x_i^{-2} sin²(ω x_i / 2)` of the
/// Nikolskii inequality, with `f(0) = (ω²/4)^d`.
#[derive(Debug, Clone, Copy)]
pub struct ExtremalFn {
    pub band: f64,
    pub dim: u32,
}

impl ExtremalFn {
    pub fn new(band: f64, dim: u32) -> Result<Self> {
        if !(band > 0.0) || !(dim == 1 || dim == 2) {
            return Err(Error::InvalidArgument(format!(
                "extremal function needs ω > 0 and d ∈ {{1, 2}}, got ω = {band}, d = {dim}"
            )));
        }
        Ok(ExtremalFn { band, dim })
    }

    fn eval_1d(&self, x: f64) -> f64 {
        let u = 0.5 * self.band * x;
        (0.25 * self.band * self.band) * sinc(u) * sinc(u)
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        assert_eq!(x.len(), self.dim as usize);
        x.iter().map(|&xi| self.eval_1d(xi)).product()
    }

    /// One-dimensional L_p norm by period-summed Gauss–Legendre quadrature.
    ///
    /// The integrand decays like `x^{-2p}`, so truncating after `N` periods
    /// leaves at most `X₀^{1-2p}/(2p-1)`; `N` is chosen to push that analytic
    /// bound below 1e-8 of the running value.
    fn lp_norm_pow_1d(&self, p: f64) -> Result<f64> {
        let period = 2.0 * PI / self.band;
        let (gx, gw) = gauss_legendre(12);
        let integrate_periods = |from: usize, to: usize| -> f64 {
            (from..to)
                .into_par_iter()
                .map(|k| {
                    let a = k as f64 * period;
                    let mid = a + 0.5 * period;
                    let half = 0.5 * period;
                    let mut acc = 0.0;
                    for (&t, &w) in gx.iter().zip(&gw) {
                        let x = mid + half * t;
                        acc += w * half * self.eval_1d(x).powf(p);
                    }
                    acc
                })
                .collect::<Vec<f64>>()
                .iter()
                .sum()
        };
        // warm-up estimate over 64 periods, then extend to meet the bound
        let mut total = integrate_periods(0, 64);
        let mut covered = 64usize;
        loop {
            let x0 = covered as f64 * period;
            let tail_bound = x0.powf(1.0 - 2.0 * p) / (2.0 * p - 1.0);
            if tail_bound <= 1e-8 * total {
                break;
            }
            // required truncation point from the bound, with headroom
            let x_needed = (1e-8 * total * (2.0 * p - 1.0)).powf(1.0 / (1.0 - 2.0 * p));
            let periods_needed = ((x_needed / period).ceil() as usize).max(covered + 1);
            if periods_needed > 40_000_000 {
                return Err(Error::Quadrature {
                    context: format!("extremal L_{p} norm tail at ω = {}", self.band),
                    achieved: tail_bound / total,
                    wanted: 1e-8,
                });
            }
            total += integrate_periods(covered, periods_needed);
            covered = periods_needed;
        }
        Ok(2.0 * total) // even integrand
    }

    /// L_p norm for `p ∈ [1, ∞]`; tensors exactly across dimensions because
    /// the function is a product of one-dimensional factors.
    pub fn lp_norm(&self, p: f64) -> Result<f64> {
        if !(1.0..=f64::INFINITY).contains(&p) {
            return Err(Error::InvalidArgument(format!("p must be in [1, ∞], got {p}")));
        }
        let one_d = if p.is_infinite() {
            0.25 * self.band * self.band // attained at the origin
        } else {
            self.lp_norm_pow_1d(p)?.powf(1.0 / p)
        };
        Ok(one_d.powi(self.dim as i32))
    }
}

/// Result of the extremal-ratio measurement.
#[derive(Debug, Clone, Copy)]
pub struct ExtremalRatio {
    /// `‖f‖_q / ‖f‖_p`.
    pub ratio: f64,
    /// The implied constant `C(p, q) = ratio / ω^{d/p - d/q}`; exactness of
    /// the Nikolskii inequality means this does not depend on ω.
    pub constant: f64,
}

/// `‖f‖_q / ‖f‖_p` for the extremal function, plus the ω-normalized constant.
pub fn extremal_ratio(p: f64, q: f64, omega: f64, dim: u32) -> Result<ExtremalRatio> {
    if !(1.0 <= p && p <= q) {
        return Err(Error::InvalidArgument(format!(
            "need 1 ≤ p ≤ q ≤ ∞, got p = {p}, q = {q}"
        )));
    }
    let f = ExtremalFn::new(omega, dim)?;
    let ratio = f.lp_norm(q)? / f.lp_norm(p)?;
    let d = dim as f64;
    let exponent = if q.is_infinite() { d / p } else { d / p - d / q };
    Ok(ExtremalRatio {
        ratio,
        constant: ratio / omega.powf(exponent),
    })
}

/// A finite span of critically-spaced sinc translates:
/// `f(x) = Σ_n c_n sinc(ω(x - nπ/ω)/π)` with nodes at `nπ/ω`.
#[derive(Debug, Clone)]
pub struct SincSpan {
    band: f64,
    coeffs: Vec<f64>,
}

impl SincSpan {
    pub fn new(band: f64, coeffs: Vec<f64>) -> Result<Self> {
        if !(band > 0.0) || band > PI {
            return Err(Error::InvalidArgument(format!(
                "sinc spans use band ∈ (0, π], got {band}"
            )));
        }
        if coeffs.is_empty() {
            return Err(Error::InvalidArgument("empty coefficient vector".into()));
        }
        Ok(SincSpan { band, coeffs })
    }

    pub fn band(&self) -> f64 {
        self.band
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn eval(&self, x: f64) -> f64 {
        let scale = self.band / PI;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(n, &c)| c * sinc_pi(scale * x - n as f64))
            .sum()
    }

    /// Exact L₂ norm from translate orthogonality: `‖f‖₂² = (π/ω) Σ c_n²`.
    pub fn l2_norm(&self) -> f64 {
        let ss: f64 = self.coeffs.iter().map(|c| c * c).sum();
        (PI / self.band * ss).sqrt()
    }
}

/// Discrete and continuous norms of the classical sampling comparison:
/// `(Σ_n |f(n)|²)^{1/2}` over the integer lattice against `‖f‖₂`.
///
/// Requires `band ≤ π`; above that the integer lattice undersamples and the
/// comparison is broken by aliasing.
pub fn shannon_pp(span: &SincSpan) -> Result<(f64, f64)> {
    if span.band > PI + 1e-12 {
        return Err(Error::InvalidArgument(format!(
            "band {} exceeds π: integer samples alias frequencies above the Nyquist rate",
            span.band
        )));
    }
    // at the critical rate the integer samples essentially exhaust the nodes;
    // below it the samples decay like 1/n and the window must be wide
    let critical = (span.band - PI).abs() < 1e-12;
    let margin: i64 = if critical { 64 } else { 200_000 };
    let last_node = ((span.coeffs.len() - 1) as f64 * PI / span.band).ceil() as i64;
    let discrete_sq: f64 = (-margin..=last_node + margin)
        .into_par_iter()
        .map(|n| {
            let v = span.eval(n as f64);
            v * v
        })
        .sum();
    Ok((discrete_sq.sqrt(), span.l2_norm()))
}

/// Sinc interpolation of integer samples at the critical band `ω = π`.
pub fn shannon_reconstruct(samples: &[f64]) -> Result<SincSpan> {
    SincSpan::new(PI, samples.to_vec())
}
