//! The Bargmann-Dirichlet transform: integral kernels K_{ν,m}(z,x) evaluated
//! by two independent routes (a closed half-line integral and the
//! basis-product series Σ_j φ_j(x) ψ_j^m(z)), transform application on
//! Gauss-Hermite grids, and the isometry checks.
//!
//! The closed route integrates the Hermite generating tail
//! exp(2xs - s²) H_m(x - s), s = √(ν/2) e^{-t} z, against √t e^{-t} dt for
//! m = 1 and against ϖ_m(t) dt for m ≥ 2; for m = 0 the tail sum alone
//! already closes the series and no integral is needed.

use num_complex::Complex64;

use crate::quadrature::{make_rule, QuadratureRule, RuleKind};
use crate::spaces::{basis_scale, monomial_norm_sq, norm_sq, PowerSeries, SpaceParams};
use crate::specfun::{hermite, hermite_orthonormal_all, hermite_tail_sum, ln_gamma};
use crate::varpi::Varpi;
use crate::{Error, Result};

/// Evaluation route for the transform kernel.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransformMethod {
    /// Σ_{j<terms} φ_j(x) ψ_j^m(z).
    BasisSeries { terms: usize },
    /// Gauss-Laguerre discretization of the half-line integral with t_nodes
    /// points (doubled internally for |z| > 2).
    ClosedIntegral { t_nodes: usize },
}

impl std::fmt::Display for TransformMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TransformMethod::BasisSeries { terms } => write!(f, "series[{terms}]"),
            TransformMethod::ClosedIntegral { t_nodes } => write!(f, "integral[{t_nodes}]"),
        }
    }
}

/// Full specification of a transform-kernel evaluation.
///
/// `include_gaussian` selects between the L²(dx) kernel K (with the e^{-x²/2}
/// factor) and the L²(e^{-x²}dx) kernel K̃ (without it); the two transforms
/// differ by the canonical isometry φ ↦ e^{x²/2} φ.
#[derive(Debug, Clone, Copy)]
pub struct TransformKernelSpec {
    pub params: SpaceParams,
    pub method: TransformMethod,
    pub include_gaussian: bool,
}

impl TransformKernelSpec {
    pub fn new(params: SpaceParams, method: TransformMethod, include_gaussian: bool) -> Result<Self> {
        match method {
            TransformMethod::BasisSeries { terms } if terms < 1 => {
                return Err(Error::Domain("basis series needs at least one term".into()));
            }
            TransformMethod::ClosedIntegral { t_nodes } if t_nodes < 8 => {
                return Err(Error::Domain("closed integral needs at least 8 t-nodes".into()));
            }
            _ => {}
        }
        Ok(Self { params, method, include_gaussian })
    }
}

/// A kernel or transform value with its method tag and error estimate.
#[derive(Debug, Clone, Copy)]
pub struct TransformResult {
    pub value: Complex64,
    pub method: TransformMethod,
    pub residual_estimate: f64,
}

/// Classical Bargmann kernel π^{-3/4} exp(-x²/2 + √2 x z - z²/2).
pub fn classic_kernel(z: Complex64, x: f64) -> Complex64 {
    let pref = std::f64::consts::PI.powf(-0.75);
    pref * (-0.5 * x * x + std::f64::consts::SQRT_2 * x * z - 0.5 * z * z).exp()
}

/// Precomputed state for repeated kernel evaluations at fixed (ν, m, method).
#[derive(Debug, Clone)]
pub struct TransformKernel {
    spec: TransformKernelSpec,
    // closed-integral state: (rule, A_m at its nodes) at base and doubled
    // resolutions, plus a halved rule for the embedded error estimate
    rules: Option<ClosedRules>,
    // basis-series state: ψ_j leading coefficients
    scales: Vec<f64>,
}

#[derive(Debug, Clone)]
struct ClosedRules {
    half: (QuadratureRule, Vec<f64>),
    base: (QuadratureRule, Vec<f64>),
    double: (QuadratureRule, Vec<f64>),
}

impl TransformKernel {
    pub fn new(spec: TransformKernelSpec) -> Result<Self> {
        TransformKernelSpec::new(spec.params, spec.method, spec.include_gaussian)?;
        let m = spec.params.m();
        let mut rules = None;
        let mut scales = Vec::new();
        match spec.method {
            TransformMethod::ClosedIntegral { t_nodes } => {
                if m >= 1 {
                    let varpi = if m >= 2 { Some(Varpi::new(m)?) } else { None };
                    let build = |n: usize| -> Result<(QuadratureRule, Vec<f64>)> {
                        let alpha = if m == 1 { 0.5 } else { (3.0 * m as f64 - 2.0) / 2.0 };
                        let rule = make_rule(RuleKind::GaussLaguerre { alpha }, n)?;
                        let a = match &varpi {
                            Some(v) => rule.nodes().iter().map(|t| v.analytic_factor(m, *t)).collect(),
                            None => vec![1.0; n],
                        };
                        Ok((rule, a))
                    };
                    rules = Some(ClosedRules {
                        half: build(t_nodes / 2)?,
                        base: build(t_nodes)?,
                        double: build(2 * t_nodes)?,
                    });
                }
            }
            TransformMethod::BasisSeries { terms } => {
                scales = (0..terms).map(|j| basis_scale(&spec.params, j)).collect();
            }
        }
        Ok(Self { spec, rules, scales })
    }

    pub fn spec(&self) -> &TransformKernelSpec {
        &self.spec
    }

    /// K or K̃ at (z, x) according to `include_gaussian`.
    pub fn eval(&self, z: Complex64, x: f64) -> TransformResult {
        let mut out = self.eval_tilde(z, x);
        if self.spec.include_gaussian {
            let g = (-0.5 * x * x).exp();
            out.value *= g;
            out.residual_estimate *= g;
        }
        out
    }

    /// K̃(z, x): the kernel without the e^{-x²/2} factor.
    pub fn eval_tilde(&self, z: Complex64, x: f64) -> TransformResult {
        match self.spec.method {
            TransformMethod::ClosedIntegral { .. } => self.eval_closed(z, x),
            TransformMethod::BasisSeries { .. } => self.eval_series(z, x),
        }
    }

    fn eval_closed(&self, z: Complex64, x: f64) -> TransformResult {
        let nu = self.spec.params.nu();
        let m = self.spec.params.m();
        let pref = nu.sqrt() * std::f64::consts::PI.powf(-0.75);
        let s_scale = (nu / 2.0).sqrt() * z;

        if m == 0 {
            // the series closes without an integral representation
            let value = pref * hermite_tail_sum(0, x, s_scale);
            return TransformResult {
                value,
                method: self.spec.method,
                residual_estimate: 8.0 * f64::EPSILON * value.norm(),
            };
        }

        let rules = self.rules.as_ref().expect("closed rules present for m >= 1");
        let (fine, coarse) = if z.norm() > 2.0 {
            (&rules.double, &rules.base)
        } else {
            (&rules.base, &rules.half)
        };

        let integral = |pair: &(QuadratureRule, Vec<f64>)| -> Complex64 {
            let (rule, a) = pair;
            let mut acc = Complex64::new(0.0, 0.0);
            for ((t, w), ai) in rule.nodes().iter().zip(rule.weights()).zip(a) {
                let s = s_scale * (-t).exp();
                acc += *w * *ai * hermite_tail_sum(m, x, s);
            }
            acc
        };
        let i_fine = integral(fine);
        let i_coarse = integral(coarse);

        // head Σ_{k<m} (√(ν/2) z)^k H_k(x)/k! (reduces to 1 for m = 1)
        let mut head = Complex64::new(0.0, 0.0);
        let mut pow = Complex64::new(1.0, 0.0);
        for k in 0..m {
            head += pow * hermite(k, x);
            pow *= s_scale / (k as f64 + 1.0);
        }

        // (√(2/π))^m z^m; for m = 1 this is the (√2/√π) z prefactor
        let coef = (2.0 / std::f64::consts::PI).sqrt().powi(m as i32) * z.powu(m as u32);
        let value = pref * (head + coef * i_fine);
        let value_coarse = pref * (head + coef * i_coarse);
        TransformResult {
            value,
            method: self.spec.method,
            residual_estimate: (value - value_coarse).norm(),
        }
    }

    fn eval_series(&self, z: Complex64, x: f64) -> TransformResult {
        let terms = self.scales.len();
        let phis = hermite_orthonormal_all(terms.saturating_sub(1), x);
        let mut sum = Complex64::new(0.0, 0.0);
        let mut pow = Complex64::new(1.0, 0.0);
        let mut last = 0.0;
        for j in 0..terms {
            let term = phis[j] * self.scales[j] * pow;
            sum += term;
            last = term.norm();
            pow *= z;
        }
        // geometric tail estimate from the post-peak term decay
        let m = self.spec.params.m();
        let ratio = z.norm() * self.spec.params.nu().sqrt()
            / ((terms.saturating_sub(m)).max(1) as f64).sqrt();
        let residual = if ratio < 0.9 { last * ratio / (1.0 - ratio) } else { last };
        TransformResult { value: sum, method: self.spec.method, residual_estimate: residual }
    }
}

/// Truncation point for the basis series: smallest J whose geometric tail
/// bound on Σ_{j≥J} |ψ_j(z)| drops below `tol` of the retained mass. The
/// orthonormal Hermite factor is bounded, so this controls the K̃ tail.
pub fn suggest_series_terms(params: &SpaceParams, z: Complex64, tol: f64) -> usize {
    let r = z.norm();
    let m = params.m();
    let mut peak: f64 = basis_scale(params, 0);
    let mut rj = 1.0;
    let mut j = 0usize;
    loop {
        j += 1;
        rj *= r;
        let a = basis_scale(params, j) * rj;
        peak = peak.max(a);
        let ratio = r * params.nu().sqrt() / ((j.saturating_sub(m)).max(1) as f64).sqrt();
        if j > m + 4 && ratio < 0.5 {
            let tail = a * ratio / (1.0 - ratio);
            if tail <= tol * peak.max(f64::MIN_POSITIVE) {
                return j + 1;
            }
        }
        if j >= 4000 {
            return j;
        }
    }
}

/// Kernel of the Bargmann-Dirichlet transform for A^{2,ν}_1; the closed
/// route integrates √t e^{-t} times the ℓ = 1 Hermite generating tail.
pub fn dirichlet_kernel(
    nu: f64,
    z: Complex64,
    x: f64,
    method: TransformMethod,
    include_gaussian: bool,
) -> Result<TransformResult> {
    let spec = TransformKernelSpec::new(SpaceParams::new(nu, 1)?, method, include_gaussian)?;
    Ok(TransformKernel::new(spec)?.eval(z, x))
}

/// Kernel of the generalized transform for A^{2,ν}_m, m ≥ 2; the closed
/// route integrates ϖ_m(t) times the ℓ = m Hermite generating tail.
pub fn generalized_kernel(
    nu: f64,
    m: usize,
    z: Complex64,
    x: f64,
    method: TransformMethod,
    include_gaussian: bool,
) -> Result<TransformResult> {
    if m < 2 {
        return Err(Error::Domain(format!("generalized kernel needs m >= 2, got {m}")));
    }
    let spec = TransformKernelSpec::new(SpaceParams::new(nu, m)?, method, include_gaussian)?;
    Ok(TransformKernel::new(spec)?.eval(z, x))
}

/// How a sampled line function relates to the Gaussian weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightForm {
    /// The callable is φ itself, an element of L²(dx).
    Plain,
    /// The callable is g with φ = g e^{-x²/2}; avoids overflowing e^{x²/2}
    /// at far-out Gauss-Hermite nodes when g is polynomial-like.
    GaussianWeighted,
}

/// B_{ν,m}[φ](z) = Σ_i w_i K̃(z, x_i) · (φ e^{x²/2})(x_i) on a Gauss-Hermite
/// rule, which absorbs the e^{-x²} weight of the L²(e^{-x²}dx) pairing.
pub fn transform_apply<F: Fn(f64) -> Complex64>(
    kernel: &TransformKernel,
    phi: F,
    form: WeightForm,
    z: Complex64,
    x_rule: &QuadratureRule,
) -> Result<TransformResult> {
    if !matches!(x_rule.kind(), RuleKind::GaussHermite) {
        return Err(Error::Domain("transform_apply requires a Gauss-Hermite rule".into()));
    }
    let mut acc = Complex64::new(0.0, 0.0);
    let mut abs_mass = 0.0;
    let mut worst_res = 0.0f64;
    for (x, w) in x_rule.nodes().iter().zip(x_rule.weights()) {
        let u = match form {
            WeightForm::Plain => phi(*x) * (0.5 * x * x).exp(),
            WeightForm::GaussianWeighted => phi(*x),
        };
        if !u.re.is_finite() || !u.im.is_finite() {
            return Err(Error::NonFinite { context: "transform input".into(), node: *x });
        }
        let k = kernel.eval_tilde(z, *x);
        acc += *w * k.value * u;
        abs_mass += *w * u.norm();
        worst_res = worst_res.max(k.residual_estimate);
    }
    Ok(TransformResult {
        value: acc,
        method: kernel.spec().method,
        residual_estimate: worst_res * abs_mass,
    })
}

/// Parseval route of the isometry: for φ = Σ λ_j φ_j the image is
/// Σ λ_j ψ_j^m, whose coefficient on z^j is λ_j/‖e_j‖. Returns
/// (Σ|λ_j|², ‖image‖²_{ν,m}).
pub fn isometry_check(p: &SpaceParams, coeffs: &[Complex64]) -> (f64, f64) {
    let input: f64 = coeffs.iter().map(|c| c.norm_sqr()).sum();
    let image = PowerSeries::new(
        coeffs.iter().enumerate().map(|(j, c)| c * basis_scale(p, j)).collect(),
    );
    (input, norm_sq(p, &image))
}

/// Fully numerical isometry route: apply the closed-integral transform on a
/// unit circle of z-points, recover the polynomial coefficients of the image
/// by discrete Fourier projection, and take the coefficient norm.
pub fn isometry_check_numeric(
    p: &SpaceParams,
    coeffs: &[Complex64],
    x_nodes: usize,
    t_nodes: usize,
) -> Result<(f64, f64)> {
    let spec = TransformKernelSpec::new(*p, TransformMethod::ClosedIntegral { t_nodes }, false)?;
    let kernel = TransformKernel::new(spec)?;
    let x_rule = make_rule(RuleKind::GaussHermite, x_nodes)?;
    isometry_check_numeric_with(&kernel, &x_rule, coeffs)
}

/// Same as [`isometry_check_numeric`], reusing a prepared kernel and rule.
pub fn isometry_check_numeric_with(
    kernel: &TransformKernel,
    x_rule: &QuadratureRule,
    coeffs: &[Complex64],
) -> Result<(f64, f64)> {
    let p = kernel.spec().params;
    let input: f64 = coeffs.iter().map(|c| c.norm_sqr()).sum();
    let deg = coeffs.len().saturating_sub(1);
    let n = 2 * (deg + 1);

    let lambda = coeffs.to_vec();
    let g = move |x: f64| -> Complex64 {
        let phis = hermite_orthonormal_all(lambda.len() - 1, x);
        lambda.iter().zip(&phis).map(|(l, p)| l * p).sum()
    };

    let mut samples = Vec::with_capacity(n);
    for k in 0..n {
        let theta = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
        let z = Complex64::from_polar(1.0, theta);
        samples.push(transform_apply(kernel, &g, WeightForm::GaussianWeighted, z, x_rule)?.value);
    }

    let mut output = 0.0;
    for j in 0..=deg {
        let mut c = Complex64::new(0.0, 0.0);
        for (k, f) in samples.iter().enumerate() {
            let theta = -2.0 * std::f64::consts::PI * (j * k) as f64 / n as f64;
            c += f * Complex64::from_polar(1.0, theta);
        }
        c /= n as f64;
        output += c.norm_sqr() * monomial_norm_sq(&p, j);
    }
    Ok((input, output))
}

/// Both sides of the kernel L² bound: lhs = Σ_j |ψ_j^m(z)|² (adaptively
/// truncated), rhs = the Parseval envelope (ν + e^{ν|z|²})/π for m = 1 and
/// (ν/π)(1 + |z|^{2m}) e^{ν|z|²} for m ≥ 2 (exact value for m = 0).
pub fn kernel_norm_bound_check(p: &SpaceParams, z: Complex64) -> (f64, f64) {
    let r2 = z.norm_sqr();
    let nu = p.nu();
    let mut lhs = 0.0;
    let mut pow = 1.0;
    let mut streak = 0usize;
    let mut j = 0usize;
    loop {
        let term = pow * (-crate::spaces::log_monomial_norm_sq(p, j)).exp();
        lhs += term;
        if term <= 1e-18 * lhs {
            streak += 1;
            if streak >= 3 {
                break;
            }
        } else {
            streak = 0;
        }
        if j > 20_000 {
            break;
        }
        pow *= r2;
        j += 1;
    }
    let rhs = match p.m() {
        0 => nu / std::f64::consts::PI * (nu * r2).exp(),
        1 => (nu + (nu * r2).exp()) / std::f64::consts::PI,
        m => nu / std::f64::consts::PI * (1.0 + r2.powi(m as i32)) * (nu * r2).exp(),
    };
    (lhs, rhs)
}

/// j-th term of the divergence series for the m-th derivative of the Fock
/// witness function: π ν^m [(j+1)...(j+m)]² / [(j+1)...(j+m+2)].
pub fn divergence_demo_term(nu: f64, m: usize, j: usize) -> f64 {
    let mut num = 1.0;
    for i in 1..=m {
        let f = (j + i) as f64;
        num *= f * f;
    }
    let mut den = 1.0;
    for i in 1..=(m + 2) {
        den *= (j + i) as f64;
    }
    std::f64::consts::PI * nu.powi(m as i32) * num / den
}

/// Partial sums S_0..S_J of the divergence series. The terms behave like
/// π ν^m (j+1)^{m-2}, so the sums diverge for every m ≥ 1 (logarithmically
/// at m = 1), which is exactly why the Fock space is not derivative-stable.
pub fn fock_derivative_divergence_demo(nu: f64, m: usize, j_max: usize) -> Result<Vec<f64>> {
    if m < 1 {
        return Err(Error::Domain("divergence demo needs m >= 1".into()));
    }
    if j_max < 10 {
        return Err(Error::Domain("divergence demo needs at least 10 terms".into()));
    }
    let mut sums = Vec::with_capacity(j_max + 1);
    let mut acc = 0.0;
    for j in 0..=j_max {
        acc += divergence_demo_term(nu, m, j);
        sums.push(acc);
    }
    Ok(sums)
}

/// Numerical check of the prefactor identity (√(2/π))^m = 2^{-m/2} Γ(3/2)^{-m}
/// linking the two printed forms of the generalized kernel.
pub fn prefactor_identity_residual(m: usize) -> f64 {
    let lhs = (2.0 / std::f64::consts::PI).sqrt().powi(m as i32);
    let rhs = 2f64.powf(-(m as f64) / 2.0) * (-(m as f64) * ln_gamma(1.5).unwrap()).exp();
    ((lhs - rhs) / rhs).abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::PlanarRule;
    use approx::assert_relative_eq;

    const PI: f64 = std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn closed(n: usize) -> TransformMethod {
        TransformMethod::ClosedIntegral { t_nodes: n }
    }

    fn series(n: usize) -> TransformMethod {
        TransformMethod::BasisSeries { terms: n }
    }

    #[test]
    fn classic_kernel_ground_state() {
        assert_relative_eq!(classic_kernel(c(0.0, 0.0), 0.0).re, PI.powf(-0.75), max_relative = 1e-15);

        // B[h₀](z) = π^{-1/2} for the Gaussian ground state h₀ = π^{-1/4} e^{-x²/2}
        let rule = make_rule(RuleKind::GaussHermite, 40).unwrap();
        for &z in &[c(0.0, 0.0), c(1.0, 0.0), c(0.0, 1.0)] {
            // ∫ K(z,x) h₀(x) dx with the e^{-x²} weight pulled out
            let v = rule
                .integrate_complex(|x| {
                    classic_kernel(z, x) * PI.powf(-0.25) * (0.5 * x * x).exp()
                })
                .unwrap();
            assert!(
                (v - c(PI.powf(-0.5), 0.0)).norm() <= 1e-10,
                "z={z}: {v}"
            );
        }

        // ‖B[h₀]‖ = 1 in the ν = 1 Fock norm
        let plane = PlanarRule::with_defaults(1.0).unwrap();
        let n = plane
            .integrate(|_| c(PI.powf(-0.5), 0.0) * c(PI.powf(-0.5), 0.0))
            .unwrap();
        assert_relative_eq!(n.re, 1.0, max_relative = 1e-9);
    }

    #[test]
    fn dirichlet_kernel_at_zero() {
        for nu in [0.5, 1.3] {
            for x in [-1.0, 0.4, 2.0] {
                let k = dirichlet_kernel(nu, c(0.0, 0.0), x, closed(32), true).unwrap();
                let want = nu.sqrt() * PI.powf(-0.75) * (-0.5 * x * x).exp();
                assert_relative_eq!(k.value.re, want, max_relative = 1e-12);
                assert!(k.value.im.abs() < 1e-15);
            }
        }
    }

    #[test]
    fn dirichlet_dual_route() {
        let z = c(0.8, 0.3);
        let x = 0.5;
        let a = dirichlet_kernel(1.0, z, x, closed(64), true).unwrap();
        let b = dirichlet_kernel(1.0, z, x, series(80), true).unwrap();
        assert!(
            (a.value - b.value).norm() <= 1e-8 * b.value.norm(),
            "{} vs {} (rel {})",
            a.value,
            b.value,
            (a.value - b.value).norm() / b.value.norm()
        );
        // the embedded estimate compares against the half rule, so it is a
        // conservative upper bound on the fine-rule error
        assert!(a.residual_estimate <= 1e-6 * a.value.norm().max(1e-3));
        assert!(a.residual_estimate >= (a.value - b.value).norm() / 10.0);
    }

    #[test]
    fn generalized_kernel_at_zero_and_m_validation() {
        let k = generalized_kernel(1.7, 3, c(0.0, 0.0), 0.9, closed(32), true).unwrap();
        let want = 1.7f64.sqrt() * PI.powf(-0.75) * (-0.5 * 0.9 * 0.9f64).exp();
        assert_relative_eq!(k.value.re, want, max_relative = 1e-12);
        assert!(generalized_kernel(1.0, 1, c(0.0, 0.0), 0.0, closed(32), true).is_err());
    }

    #[test]
    fn generalized_m2_against_confluent_route() {
        // independent route: rewrite ϖ_2 inside the t-integral through its
        // confluent-hypergeometric closed form and integrate against the
        // t² e^{-t} weight
        let nu = 1.0;
        let z = c(0.5, 0.0);
        let x = 1.0;

        let rule = make_rule(RuleKind::GaussLaguerre { alpha: 2.0 }, 80).unwrap();
        let ctl = crate::specfun::SeriesControl { max_terms: 4000, ..Default::default() };
        let s_scale = (nu / 2.0f64).sqrt() * z;
        let integral = rule
            .integrate_complex(|t| {
                let s = s_scale * (-t).exp();
                let f11 = crate::specfun::hyp1f1(1.5, 3.0, t, &ctl).unwrap();
                (PI / 8.0) * (-t).exp() * f11 * hermite_tail_sum(2, x, s)
            })
            .unwrap();
        let bracket = Complex64::new(1.0, 0.0)
            + (2.0 * nu).sqrt() * x * z
            + (2.0 / PI) * z * z * integral;
        let confluent_route =
            nu.sqrt() * PI.powf(-0.75) * (-0.5 * x * x).exp() * bracket;

        let series_route = generalized_kernel(nu, 2, z, x, series(80), true).unwrap().value;
        assert!(
            (confluent_route - series_route).norm() <= 1e-8 * series_route.norm(),
            "{confluent_route} vs {series_route}"
        );

        let varpi_route = generalized_kernel(nu, 2, z, x, closed(64), true).unwrap().value;
        assert!((varpi_route - series_route).norm() <= 1e-8 * series_route.norm());
    }

    #[test]
    fn fock_route_matches_classic_kernel() {
        let spec = TransformKernelSpec::new(SpaceParams::new(1.0, 0).unwrap(), closed(16), true).unwrap();
        let kernel = TransformKernel::new(spec).unwrap();
        for &z in &[c(0.2, 0.5), c(-1.0, 0.3)] {
            for x in [-0.7, 1.2] {
                let got = kernel.eval(z, x).value;
                let want = classic_kernel(z, x);
                assert!((got - want).norm() <= 1e-13 * want.norm(), "z={z} x={x}");
            }
        }
    }

    #[test]
    fn prefactor_identity() {
        for m in 0..=6usize {
            assert!(prefactor_identity_residual(m) <= 1e-13, "m={m}");
        }
    }

    #[test]
    fn transform_maps_hermite_functions_to_basis() {
        // j = 0 column: ∫ K̃(z,x) φ₀(x) e^{-x²} dx = ψ₀(z) = √(ν/π)
        let nu = 1.4;
        let spec =
            TransformKernelSpec::new(SpaceParams::new(nu, 1).unwrap(), closed(64), false).unwrap();
        let kernel = TransformKernel::new(spec).unwrap();
        let x_rule = make_rule(RuleKind::GaussHermite, 64).unwrap();
        let phi0 = |_x: f64| Complex64::new(PI.powf(-0.25), 0.0);
        for &z in &[c(0.0, 0.0), c(0.7, -0.4)] {
            let got = transform_apply(&kernel, phi0, WeightForm::GaussianWeighted, z, &x_rule)
                .unwrap()
                .value;
            assert!(
                (got - c((nu / PI).sqrt(), 0.0)).norm() <= 1e-9,
                "z={z}: {got}"
            );
        }

        // zero maps to zero, and linearity holds at quadrature exactness
        let zero = |_x: f64| c(0.0, 0.0);
        let got = transform_apply(&kernel, zero, WeightForm::Plain, c(0.3, 0.3), &x_rule).unwrap();
        assert_eq!(got.value, c(0.0, 0.0));

        let p = SpaceParams::new(nu, 1).unwrap();
        let f = |x: f64| c(hermite_orthonormal_all(2, x)[2], 0.0);
        let g = |x: f64| c(hermite_orthonormal_all(1, x)[1], 0.0);
        let (a, b) = (c(0.8, -0.2), c(-0.1, 1.1));
        for &z in &[c(0.0, 0.0), c(0.5, 0.1), c(-0.2, -0.6)] {
            let lin = transform_apply(
                &kernel,
                |x| a * f(x) + b * g(x),
                WeightForm::GaussianWeighted,
                z,
                &x_rule,
            )
            .unwrap()
            .value;
            let fa = transform_apply(&kernel, f, WeightForm::GaussianWeighted, z, &x_rule).unwrap();
            let gb = transform_apply(&kernel, g, WeightForm::GaussianWeighted, z, &x_rule).unwrap();
            let want = a * fa.value + b * gb.value;
            assert!((lin - want).norm() <= 1e-12 * (1.0 + want.norm()));
        }
        let _ = p;

        // wrong rule kind is a usage error
        let bad = make_rule(RuleKind::GaussLegendre { a: -1.0, b: 1.0 }, 16).unwrap();
        assert!(transform_apply(&kernel, phi0, WeightForm::Plain, c(0.0, 0.0), &bad).is_err());
    }

    #[test]
    fn isometry_exact_route() {
        let p = SpaceParams::new(1.0, 1).unwrap();
        let (i, o) = isometry_check(&p, &[c(1.0, 0.0)]);
        assert_relative_eq!(i, 1.0, max_relative = 1e-15);
        assert_relative_eq!(o, 1.0, max_relative = 1e-12);

        let s = 3f64.sqrt().recip();
        let (i, o) = isometry_check(&p, &[c(s, 0.0), c(s, 0.0), c(s, 0.0)]);
        assert_relative_eq!(i, 1.0, max_relative = 1e-14);
        assert!((i - o).abs() <= 1e-9 * i);

        let p2 = SpaceParams::new(0.7, 2).unwrap();
        let coeffs: Vec<Complex64> =
            (0..10).map(|k| c(0.3 + 0.1 * k as f64, 0.2 - 0.05 * k as f64)).collect();
        let (i, o) = isometry_check(&p2, &coeffs);
        assert!((i - o).abs() <= 1e-8 * i, "{i} vs {o}");
    }

    #[test]
    fn isometry_numeric_route() {
        let p = SpaceParams::new(1.0, 1).unwrap();
        let s = 3f64.sqrt().recip();
        let (i, o) =
            isometry_check_numeric(&p, &[c(s, 0.0), c(s, 0.0), c(s, 0.0)], 48, 48).unwrap();
        assert!((i - o).abs() <= 1e-6 * i, "{i} vs {o} (rel {})", (i - o).abs() / i);

        let p2 = SpaceParams::new(0.8, 2).unwrap();
        let coeffs = [c(0.5, -0.1), c(0.2, 0.4), c(-0.3, 0.3), c(0.1, 0.0)];
        let (i, o) = isometry_check_numeric(&p2, &coeffs, 48, 48).unwrap();
        assert!((i - o).abs() <= 1e-6 * i, "{i} vs {o} (rel {})", (i - o).abs() / i);
    }

    #[test]
    fn norm_bound_holds() {
        let p = SpaceParams::new(1.0, 1).unwrap();
        let (lhs, rhs) = kernel_norm_bound_check(&p, c(0.0, 0.0));
        assert_relative_eq!(lhs, 1.0 / PI, max_relative = 1e-12);
        assert_relative_eq!(rhs, 2.0 / PI, max_relative = 1e-14);
        assert!(lhs <= rhs);

        for m in [0usize, 2, 3] {
            let p = SpaceParams::new(0.9, m).unwrap();
            let (lhs, rhs) = kernel_norm_bound_check(&p, c(0.0, 0.0));
            assert!(lhs <= rhs * (1.0 + 1e-12), "m={m}: {lhs} vs {rhs}");
            assert_relative_eq!(lhs, 0.9 / PI, max_relative = 1e-12);
        }

        let p = SpaceParams::new(2.0, 1).unwrap();
        let (lhs, rhs) = kernel_norm_bound_check(&p, c(1.5, 0.0));
        assert!(lhs.is_finite() && rhs.is_finite());
        assert!(lhs < rhs);
    }

    #[test]
    fn divergence_demo_growth() {
        let nu = 1.0;

        // m = 1: logarithmic growth, S_{2J}/S_J tracks 1 + ln2/(lnJ + C)
        // for an O(1) constant C
        let j = 5000usize;
        let sums = fock_derivative_divergence_demo(nu, 1, 2 * j).unwrap();
        let ratio = sums[2 * j] / sums[j];
        let lo = 1.0 + 2f64.ln() / ((j as f64).ln() + 2.0);
        let hi = 1.0 + 2f64.ln() / ((j as f64).ln() - 3.0);
        assert!(ratio > lo && ratio < hi, "{ratio} outside [{lo}, {hi}]");

        // m = 2: terms approach the constant πν², so S_J/J → πν²
        let sums = fock_derivative_divergence_demo(nu, 2, 10_000).unwrap();
        let mean = sums[10_000] / 10_001.0;
        assert!((mean - PI * nu * nu).abs() <= 0.01 * PI, "{mean}");

        // m = 3 term ratio at j = 10⁴
        let j = 10_000usize;
        let t = divergence_demo_term(nu, 3, j);
        let asymptote = PI * nu.powi(3) * (j as f64 + 1.0);
        assert!((t / asymptote - 1.0).abs() <= 0.01, "{}", t / asymptote);

        assert!(fock_derivative_divergence_demo(nu, 0, 100).is_err());
        assert!(fock_derivative_divergence_demo(nu, 1, 5).is_err());
    }

    #[test]
    fn spec_validation() {
        let p = SpaceParams::new(1.0, 1).unwrap();
        assert!(TransformKernelSpec::new(p, series(0), true).is_err());
        assert!(TransformKernelSpec::new(p, closed(4), true).is_err());
        assert!(TransformKernelSpec::new(p, closed(8), false).is_ok());
    }

    #[test]
    fn series_term_suggestion_is_sufficient() {
        for (nu, m) in [(0.5, 1usize), (2.0, 2), (1.0, 3)] {
            let p = SpaceParams::new(nu, m).unwrap();
            let z = c(1.2, -0.9);
            let terms = suggest_series_terms(&p, z, 1e-10);
            let a = TransformKernel::new(TransformKernelSpec::new(p, series(terms), false).unwrap())
                .unwrap()
                .eval(z, 0.7)
                .value;
            let b = TransformKernel::new(
                TransformKernelSpec::new(p, series(terms + 60), false).unwrap(),
            )
            .unwrap()
            .eval(z, 0.7)
            .value;
            assert!((a - b).norm() <= 1e-9 * b.norm().max(1e-6), "nu={nu} m={m}");
        }
    }
}
