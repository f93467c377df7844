//! Radial spherical analysis on the hyperbolic plane: the spherical function,
//! the calibrated Plancherel density, filtered reproducing kernels and the
//! bandlimited functions they span.
//!
//! A band profile `g` supported in `[0, ω]` determines the radial kernel
//!
//! ```text
//! K_g(x, y) = ∫_0^ω g(λ) φ_λ(d(x, y)) dμ_Pl(λ),
//! ```
//!
//! the inverse spherical transform of `g`. Finite spans `Σ_j c_j K_g(·, y_j)`
//! are the concrete bandlimited functions of the lab: they lie in the
//! Paley–Wiener space of band `ω` by construction, their pairwise inner
//! products reduce to kernel evaluations (no spatial quadrature), and the
//! Laplace–Beltrami operator acts on them as multiplication by `λ² + ρ²` on
//! the profile.

mod bandlimited;
mod plancherel;
mod profile;
mod spherical;

pub use bandlimited::{synthesize, BandlimitedFn, KillingDerivative, LpNorm};
pub use plancherel::PlancherelDensity;
pub use profile::SpectralProfile;
pub use spherical::{spherical_function, spherical_function_with_accuracy};

