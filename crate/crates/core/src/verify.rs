//! Named verification checks with residuals and tolerances.
//!
//! Each check computes a worst-case residual over its grid and compares it
//! against a pinned tolerance (scaled uniformly by the config's
//! `tol_scale`). The CLI `verify` subcommand serializes the resulting
//! report; the acceptance test suite drives the same functions directly.

pub mod criteria;
pub mod extras;

use serde::{Deserialize, Serialize};

/// Configuration echoed into every report.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct VerifyConfig {
    /// Uniform multiplier applied to every check tolerance.
    pub tol_scale: f64,
    /// Seed for the checks that draw random polynomials or coefficients.
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self { tol_scale: 1.0, seed: 42 }
    }
}

/// One named check: a residual against a tolerance, plus the identity it
/// exercises.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    /// Which mathematical identity or property the check exercises.
    pub reference: String,
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl Check {
    pub fn new(
        name: &str,
        reference: &str,
        lhs: f64,
        rhs: f64,
        residual: f64,
        tolerance: f64,
    ) -> Self {
        Self {
            name: name.into(),
            reference: reference.into(),
            lhs,
            rhs,
            residual,
            tolerance,
            passed: residual <= tolerance,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub checks: Vec<Check>,
    pub wall_time_s: f64,
    pub config: VerifyConfig,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// The check suites exposed by the CLI.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    All,
    Specfun,
    Spaces,
    Kernels,
    Varpi,
    Transform,
}

impl Suite {
    pub fn name(&self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Specfun => "specfun",
            Suite::Spaces => "spaces",
            Suite::Kernels => "kernels",
            Suite::Varpi => "varpi",
            Suite::Transform => "transform",
        }
    }
}

impl std::str::FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "all" => Ok(Suite::All),
            "specfun" => Ok(Suite::Specfun),
            "spaces" => Ok(Suite::Spaces),
            "kernels" => Ok(Suite::Kernels),
            "varpi" => Ok(Suite::Varpi),
            "transform" => Ok(Suite::Transform),
            other => Err(format!(
                "unknown suite '{other}' (expected all, specfun, spaces, kernels, varpi or transform)"
            )),
        }
    }
}

fn suite_checks(suite: Suite, cfg: &VerifyConfig) -> Vec<Check> {
    match suite {
        Suite::Specfun => vec![
            extras::hermite_known_values(cfg),
            extras::hermite_explicit_forms(cfg),
            extras::hermite_function_bound(cfg),
            extras::hermite_tail_generating(cfg),
            extras::laguerre_known_values(cfg),
            extras::laguerre_summation_grid(cfg),
            extras::gamma_beta_values(cfg),
            extras::hyp1f1_exponential_case(cfg),
            extras::hyp1f1_integral_representation(cfg),
            extras::hyp2f2_brute_force(cfg),
            extras::gauss_hermite_orthonormality(cfg),
            extras::gauss_rule_polynomial_exactness(cfg),
            extras::gauss_rule_node_doubling(cfg),
        ],
        Suite::Spaces => vec![
            extras::monomial_norm_values(cfg),
            criteria::monomial_norms_vs_quadrature(cfg),
            extras::basis_orthonormality_split_quadrature(cfg),
            extras::inner_product_coefficient_vs_quadrature(cfg),
            extras::membership_weight_consistency(cfg),
            criteria::membership_classification(cfg),
            criteria::laplacian_annihilates_holomorphic(cfg),
            criteria::laplacian_witnesses(cfg),
            extras::intertwiner_relation(cfg),
            extras::intertwiner_isometry(cfg),
        ],
        Suite::Kernels => vec![
            criteria::kernel_closed_vs_series(cfg),
            extras::kernel_hermitian_symmetry(cfg),
            extras::kernel_gram_positive(cfg),
            extras::reproducing_property(cfg),
            extras::landau_base_cases(cfg),
            criteria::projector_summation(cfg),
            criteria::projector_idempotence(cfg),
            extras::projector_reproduce_and_annihilate(cfg),
            criteria::heat_dual_route(cfg),
            criteria::heat_semigroup(cfg),
            extras::heat_limit_is_landau(cfg),
        ],
        Suite::Varpi => vec![
            criteria::varpi_closed_form(cfg),
            extras::varpi_nested_oracle(cfg),
            criteria::varpi_bound_envelope(cfg),
            criteria::varpi_laplace_identity(cfg),
            extras::varpi_laplace_single_factor(cfg),
            extras::varpi_associativity(cfg),
            extras::varpi_table_interpolation(cfg),
        ],
        Suite::Transform => vec![
            extras::classic_transform_normalization(cfg),
            criteria::transform_dual_route(cfg),
            extras::transform_kernel_at_zero(cfg),
            criteria::transform_basis_image(cfg),
            criteria::isometry_exact(cfg),
            criteria::isometry_numeric(cfg),
            extras::kernel_norm_bound(cfg),
            extras::prefactor_identity(cfg),
            criteria::divergence_term_ratios(cfg),
            extras::divergence_partial_sums(cfg),
        ],
        Suite::All => {
            let mut all = Vec::new();
            for s in [Suite::Specfun, Suite::Spaces, Suite::Kernels, Suite::Varpi, Suite::Transform]
            {
                all.extend(suite_checks(s, cfg));
            }
            all
        }
    }
}

/// Runs the named suite deterministically under the given config.
pub fn run_suite(suite: Suite, cfg: &VerifyConfig) -> VerificationReport {
    let start = std::time::Instant::now();
    let checks = suite_checks(suite, cfg);
    VerificationReport {
        suite: suite.name().into(),
        checks,
        wall_time_s: start.elapsed().as_secs_f64(),
        config: *cfg,
    }
}
