//! Band profiles and their radial kernels.

use super::plancherel::PlancherelDensity;
use super::spherical::{spherical_function, sweep_spherical, RadialSweep};
use crate::error::{Error, Result};
use crate::geometry::{geodesic_distance, Point, RHO};
use crate::quadrature::gauss_legendre_on;
use std::sync::{Arc, OnceLock};

/// Radial extent of the tabulated kernels; evaluations beyond it fall back to
/// direct quadrature (the kernels are far below every working tolerance out
/// there).
const TABLE_R_MAX: f64 = 16.0;
const TABLE_STEP: f64 = 2e-3;

/// Shared Gauss–Legendre rule on a spectral support interval, together with
/// the `φ_λ` sweep on the tabulation knots. Profiles that live on the same
/// rule can be multiplied pointwise, which is what turns Plancherel identities
/// into kernel evaluations.
#[derive(Debug)]
pub(crate) struct SpectralQuadrature {
    support: (f64, f64),
    nodes: Vec<f64>,
    weights: Vec<f64>,
    density: Vec<f64>,
    sweep: OnceLock<Arc<RadialSweep>>,
}

impl SpectralQuadrature {
    fn new(lo: f64, hi: f64, n: usize) -> Self {
        let (nodes, weights) = gauss_legendre_on(n, lo, hi);
        let mu = PlancherelDensity::global();
        let density = nodes.iter().map(|&l| mu.density(l)).collect();
        SpectralQuadrature {
            support: (lo, hi),
            nodes,
            weights,
            density,
            sweep: OnceLock::new(),
        }
    }

    fn sweep(&self) -> &Arc<RadialSweep> {
        self.sweep
            .get_or_init(|| Arc::new(sweep_spherical(&self.nodes, TABLE_R_MAX, TABLE_STEP)))
    }

    fn compatible(&self, other: &Self) -> bool {
        self.support == other.support && self.nodes.len() == other.nodes.len()
    }
}

#[derive(Debug, Clone)]
struct KernelTable {
    step: f64,
    k: Vec<f64>,
    dk: Vec<f64>,
}

impl KernelTable {
    /// Cubic Hermite interpolation on the uniform knots; exact endpoint
    /// derivatives come from the radial sweep.
    fn eval(&self, r: f64) -> Option<f64> {
        let t = r / self.step;
        let i = t as usize;
        if i + 1 >= self.k.len() {
            return None;
        }
        let s = t - i as f64;
        let (s2, s3) = (s * s, s * s * s);
        let h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
        let h10 = s3 - 2.0 * s2 + s;
        let h01 = -2.0 * s3 + 3.0 * s2;
        let h11 = s3 - s2;
        Some(
            h00 * self.k[i]
                + h10 * self.step * self.dk[i]
                + h01 * self.k[i + 1]
                + h11 * self.step * self.dk[i + 1],
        )
    }
}

/// A spectral weight `g(λ)` supported inside `[0, ω]`, tabulated on a
/// Gauss–Legendre rule of the support (node count `max(64, ⌈20 ω⌉)`).
///
/// The associated radial kernel `k_g(r) = ∫ g φ_λ(r) dμ_Pl` is tabulated
/// lazily on first use and evaluated by cubic Hermite interpolation, so that
/// pointwise kernel evaluations — the workhorse of every harness — cost O(1).
#[derive(Debug, Clone)]
pub struct SpectralProfile {
    band: f64,
    label: String,
    quad: Arc<SpectralQuadrature>,
    values: Vec<f64>,
    table: Arc<OnceLock<KernelTable>>,
}

impl SpectralProfile {
    fn node_count(band: f64) -> usize {
        64usize.max((20.0 * band).ceil() as usize)
    }

    fn from_fn(band: f64, lo: f64, hi: f64, label: String, g: impl Fn(f64) -> f64) -> Result<Self> {
        if !(band > 0.0) || lo < 0.0 || hi > band + 1e-12 || lo >= hi {
            return Err(Error::InvalidArgument(format!(
                "invalid profile support [{lo}, {hi}] for band {band}"
            )));
        }
        let quad = Arc::new(SpectralQuadrature::new(lo, hi, Self::node_count(band)));
        let values = quad.nodes.iter().map(|&l| g(l)).collect();
        Ok(SpectralProfile {
            band,
            label,
            quad,
            values,
            table: Arc::new(OnceLock::new()),
        })
    }

    /// The flat profile `g ≡ 1` on `[0, ω]`: the reproducing kernel of the
    /// band-ω Paley–Wiener space.
    pub fn box_profile(band: f64) -> Result<Self> {
        Self::from_fn(band, 0.0, band, format!("box({band})"), |_| 1.0)
    }

    /// A smooth profile on `[0, ω]`: `g(λ) = exp(1 − 1/(1 − (λ/ω)²))`, equal
    /// to 1 at `λ = 0` and vanishing to all orders at the band edge. Its
    /// kernel decays much faster in space than the box kernel, which keeps
    /// truncated-domain norms honest.
    pub fn smooth(band: f64) -> Result<Self> {
        Self::from_fn(band, 0.0, band, format!("smooth({band})"), move |l| {
            let s = (l / band).min(1.0 - 1e-12);
            (1.0 - 1.0 / (1.0 - s * s)).exp()
        })
    }

    /// A bump concentrated at the top of the band, supported on `[ω − ε, ω]`.
    /// Useful for exhibiting sharpness of spectral norm bounds.
    pub fn bump_at(band: f64, eps: f64) -> Result<Self> {
        if !(eps > 0.0) || eps > band {
            return Err(Error::InvalidArgument(format!(
                "bump width must lie in (0, ω], got {eps}"
            )));
        }
        let lo = band - eps;
        Self::from_fn(band, lo, band, format!("bump({band},{eps})"), move |l| {
            let s = (2.0 * (l - lo) / eps - 1.0).clamp(-1.0 + 1e-12, 1.0 - 1e-12);
            (1.0 - 1.0 / (1.0 - s * s)).exp()
        })
    }

    /// The profile of `Δ^{s/2} f` for `f` with this profile: pointwise
    /// multiplication by `(λ² + ρ²)^{s/2}`.
    pub fn laplacian_power(&self, s: f64) -> Self {
        let mut out = self.clone();
        out.values = self
            .quad
            .nodes
            .iter()
            .zip(&self.values)
            .map(|(&l, &g)| g * (l * l + RHO * RHO).powf(0.5 * s))
            .collect();
        out.label = format!("(λ²+ρ²)^{{{}/2}}·{}", s, self.label);
        out.table = Arc::new(OnceLock::new());
        out
    }

    /// Pointwise product of two profiles on the same quadrature; the kernel of
    /// the product profile computes inner products of the factors' kernels.
    pub fn product(&self, other: &Self) -> Result<Self> {
        if !self.quad.compatible(&other.quad) {
            return Err(Error::InvalidArgument(format!(
                "profiles {} and {} live on different spectral rules",
                self.label, other.label
            )));
        }
        let mut out = self.clone();
        out.values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b)
            .collect();
        out.label = format!("{}·{}", self.label, other.label);
        out.band = self.band.max(other.band);
        out.table = Arc::new(OnceLock::new());
        Ok(out)
    }

    pub fn squared(&self) -> Self {
        self.product(self).expect("a profile is compatible with itself")
    }

    pub fn band(&self) -> f64 {
        self.band
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn support(&self) -> (f64, f64) {
        self.quad.support
    }

    /// `g` sampled on the quadrature nodes, as (λ, g(λ)) pairs.
    pub fn tabulation(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.quad.nodes.iter().copied().zip(self.values.iter().copied())
    }

    fn table(&self) -> &KernelTable {
        self.table.get_or_init(|| {
            let sweep = self.quad.sweep();
            let n = sweep.n_knots();
            let mut k = vec![0.0; n];
            let mut dk = vec![0.0; n];
            for (i, ((&w, &g), &mu)) in self
                .quad
                .weights
                .iter()
                .zip(&self.values)
                .zip(&self.quad.density)
                .enumerate()
            {
                let c = w * g * mu;
                if c == 0.0 {
                    continue;
                }
                let (phi, dphi) = (&sweep.phi[i], &sweep.dphi[i]);
                for j in 0..n {
                    k[j] += c * phi[j];
                    dk[j] += c * dphi[j];
                }
            }
            KernelTable {
                step: sweep.step,
                k,
                dk,
            }
        })
    }

    /// The radial kernel `k_g(r)`.
    pub fn kernel_radial(&self, r: f64) -> f64 {
        match self.table().eval(r.abs()) {
            Some(v) => v,
            None => self
                .kernel_radial_quadrature(r)
                .expect("kernel quadrature beyond table range"),
        }
    }

    /// The filtered kernel `K_g(x, y) = k_g(d(x, y))`.
    pub fn filtered_kernel(&self, x: Point, y: Point) -> f64 {
        self.kernel_radial(geodesic_distance(x, y))
    }

    /// Direct evaluation of the defining quadrature (the Gauss–Legendre rule
    /// in λ against the adaptively integrated `φ_λ`). This is the reference
    /// path the tabulated kernel is checked against.
    pub fn kernel_radial_quadrature(&self, r: f64) -> Result<f64> {
        let mut acc = 0.0;
        for (i, &l) in self.quad.nodes.iter().enumerate() {
            let c = self.quad.weights[i] * self.values[i] * self.quad.density[i];
            if c != 0.0 {
                acc += c * spherical_function(l, r)?;
            }
        }
        Ok(acc)
    }

    /// `k_g(0) = ∫ g dμ_Pl`, the common value of `K_g(x, x)`.
    pub fn kernel_at_zero(&self) -> f64 {
        self.quad
            .weights
            .iter()
            .zip(&self.values)
            .zip(&self.quad.density)
            .map(|((&w, &g), &mu)| w * g * mu)
            .sum()
    }

    /// Monotone envelope of `|k_g|` from `r` to the end of the table; a crude
    /// but honest bound for locality cutoffs.
    pub fn kernel_envelope(&self, r: f64) -> f64 {
        let table = self.table();
        let start = ((r / table.step) as usize).min(table.k.len().saturating_sub(1));
        table.k[start..]
            .iter()
            .fold(0.0f64, |m, &v| m.max(v.abs()))
    }
}
