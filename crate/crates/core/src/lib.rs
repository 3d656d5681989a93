//! Numerical library for Bargmann-Dirichlet spaces on the complex plane.
//!
//! The crate covers the space hierarchy `A^{2,ν}_m(ℂ)` of holomorphic
//! functions whose m-th complex derivative is square-integrable against the
//! Gaussian measure `e^{-ν|z|²} dλ(z)`:
//!
//! * [`specfun`] — stable evaluation of the special functions everything else
//!   consumes (Hermite, Laguerre, log-gamma, ₁F₁, the ₂F₂(1,1;b,b;·)
//!   specialization, and the Hermite generating-tail identity),
//! * [`quadrature`] — Gauss rules (Hermite, Laguerre, Legendre, Jacobi) via
//!   Golub-Welsch and a polar rule for planar Gaussian-measure integrals,
//! * [`spaces`] — norms, orthonormal bases, inner products, membership
//!   evidence, and a finite-difference magnetic Laplacian,
//! * [`kernels`] — reproducing, Landau, spectral-projector and heat kernels,
//!   each with closed-form and series routes,
//! * [`varpi`] — the iterated convolution weight `ϖ_m` and its bound and
//!   Laplace transform,
//! * [`bargmann`] — the Bargmann-Dirichlet transform kernels (dual
//!   closed-integral / basis-series routes), transform application and the
//!   isometry checks,
//! * [`verify`] — the named-check verification suites driven by the CLI and
//!   the acceptance tests.

pub mod bargmann;
pub mod kernels;
pub mod quadrature;
pub mod spaces;
pub mod specfun;
pub mod varpi;
pub mod verify;

mod cheb;

use num_complex::Complex64;

/// Crate-wide error type.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    /// An argument was outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// A series failed to converge within the configured term budget.
    #[error("series did not converge within {terms} terms (partial sum {partial})")]
    Truncation { partial: Complex64, terms: usize },
    /// An integrand or stencil produced a non-finite value.
    #[error("non-finite value in {context} at node {node}")]
    NonFinite { context: String, node: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
