//! The acceptance-grade checks: every tolerance here is pinned and drives
//! both the CLI suites and the acceptance test target.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Check, VerifyConfig};
use crate::bargmann::{
    divergence_demo_term, isometry_check, isometry_check_numeric_with, TransformKernel,
    TransformKernelSpec, TransformMethod,
};
use crate::kernels::{
    heat_kernel, landau_kernel, reproducing_kernel, reproducing_kernel_series_adaptive,
    spectral_projector_kernel, HeatMethod,
};
use crate::quadrature::{make_rule, PlanarRule, RuleKind};
use crate::spaces::{
    basis_scale, magnetic_laplacian_fd, membership_test, monomial_norm_sq, MembershipClass,
    PowerSeries, SpaceParams,
};
use crate::specfun::hermite_orthonormal_all;
use crate::varpi::{varpi2_closed, varpi_bound, Varpi};

const PI: f64 = std::f64::consts::PI;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm().max(f64::MIN_POSITIVE)
}

fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let step = (hi / lo).ln() / (n - 1) as f64;
    (0..n).map(|k| lo * (step * k as f64).exp()).collect()
}

/// Closed hypergeometric kernel against the adaptively truncated
/// orthonormal-basis series over ν ∈ {0.5,1,2}, m ∈ {0..3} and a 5x5 grid of
/// (z, w) pairs inside |z|,|w| ≤ 2: 300 evaluations in all.
pub fn kernel_closed_vs_series(cfg: &VerifyConfig) -> Check {
    let zs = [c(0.0, 0.0), c(1.0, 0.0), c(-0.5, 0.5), c(1.2, -0.8), c(0.0, 2.0)];
    let ws = [c(0.0, 0.0), c(0.5, 0.0), c(-1.0, 0.5), c(0.3, -0.3), c(0.0, -2.0)];
    let mut worst = 0.0f64;
    for nu in [0.5, 1.0, 2.0] {
        for m in 0..=3usize {
            let p = SpaceParams::new(nu, m).unwrap();
            for z in zs {
                for w in ws {
                    let closed = reproducing_kernel(&p, z, w).unwrap().value;
                    let series = reproducing_kernel_series_adaptive(&p, z, w, 1e-13).value;
                    worst = worst.max(rel(closed, series));
                }
            }
        }
    }
    Check::new(
        "kernel closed form vs basis series",
        "reproducing kernel: hypergeometric closed form against the orthonormal-basis sum, 300-point grid",
        worst,
        0.0,
        worst,
        1e-10 * cfg.tol_scale,
    )
}

/// Transform-kernel dual route: closed half-line integral against the basis
/// series on the grid ν ∈ {0.5,1,2}, m ∈ {1,2,3}, z ∈ {0, 0.5, 1+0.5i, 2i},
/// x ∈ {-2, 0, 1.3}.
pub fn transform_dual_route(cfg: &VerifyConfig) -> Check {
    let zs = [c(0.0, 0.0), c(0.5, 0.0), c(1.0, 0.5), c(0.0, 2.0)];
    let xs = [-2.0, 0.0, 1.3];
    let mut worst = 0.0f64;
    for nu in [0.5, 1.0, 2.0] {
        for m in 1..=3usize {
            let p = SpaceParams::new(nu, m).unwrap();
            let closed = TransformKernel::new(
                TransformKernelSpec::new(p, TransformMethod::ClosedIntegral { t_nodes: 64 }, true)
                    .unwrap(),
            )
            .unwrap();
            let series = TransformKernel::new(
                TransformKernelSpec::new(p, TransformMethod::BasisSeries { terms: 90 }, true)
                    .unwrap(),
            )
            .unwrap();
            for z in zs {
                for x in xs {
                    let a = closed.eval(z, x).value;
                    let b = series.eval(z, x).value;
                    worst = worst.max(rel(a, b));
                }
            }
        }
    }
    Check::new(
        "transform kernel dual route",
        "transform kernel: closed half-line integral against the Hermite-basis series",
        worst,
        0.0,
        worst,
        1e-7 * cfg.tol_scale,
    )
}

/// The transform maps the j-th Hermite function onto the j-th basis element:
/// coefficients of the image recovered by circle projection must match the
/// basis normalization for j ≤ 10, m ∈ {1,2,3}.
pub fn transform_basis_image(cfg: &VerifyConfig) -> Check {
    let nu = 1.0;
    let j_max = 10usize;
    let l_max = j_max + 4;
    let n_circle = 48usize;
    let x_rule = make_rule(RuleKind::GaussHermite, 72).unwrap();
    let mut worst = 0.0f64;

    for m in 1..=3usize {
        let p = SpaceParams::new(nu, m).unwrap();
        let kernel = TransformKernel::new(
            TransformKernelSpec::new(p, TransformMethod::ClosedIntegral { t_nodes: 96 }, false)
                .unwrap(),
        )
        .unwrap();

        // kernel matrix on circle-points x quadrature-nodes, shared by all j
        let circle: Vec<Complex64> = (0..n_circle)
            .map(|k| Complex64::from_polar(1.0, 2.0 * PI * k as f64 / n_circle as f64))
            .collect();
        let kmat: Vec<Vec<Complex64>> = circle
            .iter()
            .map(|z| x_rule.nodes().iter().map(|x| kernel.eval_tilde(*z, *x).value).collect())
            .collect();
        let phis: Vec<Vec<f64>> =
            x_rule.nodes().iter().map(|x| hermite_orthonormal_all(j_max, *x)).collect();

        for j in 0..=j_max {
            let images: Vec<Complex64> = (0..n_circle)
                .map(|k| {
                    x_rule
                        .weights()
                        .iter()
                        .enumerate()
                        .map(|(i, w)| *w * kmat[k][i] * phis[i][j])
                        .sum()
                })
                .collect();
            for l in 0..=l_max {
                let mut coeff = c(0.0, 0.0);
                for (k, f) in images.iter().enumerate() {
                    coeff +=
                        f * Complex64::from_polar(1.0, -2.0 * PI * (l * k) as f64 / n_circle as f64);
                }
                coeff /= n_circle as f64;
                let want = if l == j { basis_scale(&p, j) } else { 0.0 };
                worst = worst.max((coeff - c(want, 0.0)).norm());
            }
        }
    }
    Check::new(
        "transform basis image",
        "transform of the j-th Hermite function equals the j-th basis element, coefficientwise",
        worst,
        0.0,
        worst,
        1e-8 * cfg.tol_scale,
    )
}

fn seeded_vectors(seed: u64, count: usize) -> Vec<(SpaceParams, Vec<Complex64>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nus = [0.5, 1.0, 2.0];
    (0..count)
        .map(|i| {
            let m = i % 3 + 1;
            let nu = nus[i % nus.len()];
            let len = rng.gen_range(3..=8usize);
            let coeffs: Vec<Complex64> = (0..len)
                .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            (SpaceParams::new(nu, m).unwrap(), coeffs)
        })
        .collect()
}

/// Parseval route of the isometry on 20 seeded random coefficient vectors.
pub fn isometry_exact(cfg: &VerifyConfig) -> Check {
    let mut worst = 0.0f64;
    for (p, coeffs) in seeded_vectors(cfg.seed, 20) {
        let (input, output) = isometry_check(&p, &coeffs);
        worst = worst.max((input - output).abs() / input);
    }
    Check::new(
        "isometry (coefficient route)",
        "norm preservation of the transform on the coefficient side",
        worst,
        0.0,
        worst,
        1e-9 * cfg.tol_scale,
    )
}

/// Quadrature-and-projection route of the isometry on the same 20 vectors.
pub fn isometry_numeric(cfg: &VerifyConfig) -> Check {
    let x_rule = make_rule(RuleKind::GaussHermite, 48).unwrap();
    let mut kernels: std::collections::HashMap<(usize, u64), TransformKernel> =
        std::collections::HashMap::new();
    let mut worst = 0.0f64;
    for (p, coeffs) in seeded_vectors(cfg.seed, 20) {
        let key = (p.m(), p.nu().to_bits());
        let kernel = kernels.entry(key).or_insert_with(|| {
            TransformKernel::new(
                TransformKernelSpec::new(p, TransformMethod::ClosedIntegral { t_nodes: 48 }, false)
                    .unwrap(),
            )
            .unwrap()
        });
        let (input, output) = isometry_check_numeric_with(kernel, &x_rule, &coeffs).unwrap();
        worst = worst.max((input - output).abs() / input);
    }
    Check::new(
        "isometry (quadrature route)",
        "norm preservation of the transform through quadrature and coefficient recovery",
        worst,
        0.0,
        worst,
        1e-6 * cfg.tol_scale,
    )
}

/// ϖ_2 by convolution against its confluent-hypergeometric closed form on
/// t ∈ [0.01, 20].
pub fn varpi_closed_form(cfg: &VerifyConfig) -> Check {
    let v = Varpi::new(2).unwrap();
    let mut worst = 0.0f64;
    for t in log_grid(0.01, 20.0, 60) {
        let conv = v.eval(t).unwrap();
        let closed = varpi2_closed(t).unwrap();
        worst = worst.max((conv - closed).abs() / closed);
    }
    Check::new(
        "varpi convolution vs closed form",
        "iterated convolution weight at m = 2 against its confluent-hypergeometric form",
        worst,
        0.0,
        worst,
        1e-9 * cfg.tol_scale,
    )
}

/// Laplace transform of ϖ_m: quadrature against the product closed form for
/// m ∈ {2,3}, k = 0..5.
pub fn varpi_laplace_identity(cfg: &VerifyConfig) -> Check {
    let mut worst = 0.0f64;
    for m in [2usize, 3] {
        let v = Varpi::new(m).unwrap();
        for k in 0..=5 {
            let (numeric, closed) = v.laplace(k as f64).unwrap();
            worst = worst.max((numeric - closed).abs() / closed);
        }
    }
    Check::new(
        "varpi laplace transform",
        "Laplace transform of the convolution weight against its factored closed form",
        worst,
        0.0,
        worst,
        1e-6 * cfg.tol_scale,
    )
}

/// The beta-power envelope ϖ_m(t) ≤ B(3/2,3/2)^{m-1} t^{(3m-2)/2} e^{-t}
/// (and nonnegativity) over m ∈ {2,3,4}, t ∈ logspace(0.01, 30).
pub fn varpi_bound_envelope(cfg: &VerifyConfig) -> Check {
    let mut violation = 0.0f64;
    for m in [2usize, 3, 4] {
        let v = Varpi::new(m).unwrap();
        for t in log_grid(0.01, 30.0, 50) {
            let w = v.eval(t).unwrap();
            let b = varpi_bound(m, t).unwrap();
            violation = violation.max((w - b) / b).max(-w / b);
        }
    }
    Check::new(
        "varpi envelope",
        "0 ≤ varpi ≤ beta-power envelope at every sampled point",
        violation,
        0.0,
        violation.max(0.0),
        1e-12 * cfg.tol_scale,
    )
}

/// Monomial norms from the closed formulas against the planar-quadrature
/// route through the m-split inner product, j ≤ 20.
pub fn monomial_norms_vs_quadrature(cfg: &VerifyConfig) -> Check {
    let mut worst = 0.0f64;
    for nu in [0.5, 1.0, 2.0] {
        let rule = PlanarRule::for_degree(nu, 20).unwrap();
        for m in 0..=3usize {
            let p = SpaceParams::new(nu, m).unwrap();
            for j in 0..=20usize {
                let e_j = PowerSeries::monomial(j);
                let integrand: PowerSeries =
                    if m == 0 || j < m { e_j } else { e_j.derivative(m) };
                let q = rule
                    .integrate(|z| {
                        let v = integrand.eval(z);
                        v * v.conj()
                    })
                    .unwrap()
                    .re;
                let closed = monomial_norm_sq(&p, j);
                worst = worst.max((q - closed).abs() / closed);
            }
        }
    }
    Check::new(
        "monomial norms vs quadrature",
        "closed monomial norms against the planar Gaussian-measure integral",
        worst,
        0.0,
        worst,
        1e-11 * cfg.tol_scale,
    )
}

/// Heat kernel closed form against the eigenvalue series for t ≥ 0.2.
pub fn heat_dual_route(cfg: &VerifyConfig) -> Check {
    let pairs = [
        (c(1.0, 0.0), c(0.3, 0.2)),
        (c(0.0, 0.0), c(0.0, 0.0)),
        (c(-0.7, 0.4), c(0.5, -0.9)),
    ];
    let mut worst = 0.0f64;
    for nu in [0.5, 1.0, 2.0] {
        for t in [0.2, 0.5, 1.0, 2.5] {
            for (z, w) in pairs {
                let closed = heat_kernel(nu, t, z, w, HeatMethod::ClosedForm).unwrap().value;
                let series = heat_kernel(nu, t, z, w, HeatMethod::Series).unwrap().value;
                worst = worst.max(rel(series, closed));
            }
        }
    }
    Check::new(
        "heat kernel dual route",
        "heat kernel generating-function form against the eigenvalue series",
        worst,
        0.0,
        worst,
        1e-10 * cfg.tol_scale,
    )
}

/// Semigroup composition of the heat kernel under planar quadrature at three
/// configurations.
pub fn heat_semigroup(cfg: &VerifyConfig) -> Check {
    let configs = [
        (1.0, 0.4, 0.9, c(0.6, 0.1), c(-0.2, 0.4)),
        (0.5, 1.0, 0.7, c(0.0, 0.8), c(0.5, 0.0)),
        (2.0, 0.3, 0.3, c(0.4, -0.4), c(-0.3, -0.2)),
    ];
    let mut worst = 0.0f64;
    for (nu, t1, t2, z, w) in configs {
        let rule = PlanarRule::with_defaults(nu).unwrap();
        let composed = rule
            .integrate(|u| {
                heat_kernel(nu, t1, z, u, HeatMethod::ClosedForm).unwrap().value
                    * heat_kernel(nu, t2, u, w, HeatMethod::ClosedForm).unwrap().value
            })
            .unwrap();
        let direct = heat_kernel(nu, t1 + t2, z, w, HeatMethod::ClosedForm).unwrap().value;
        worst = worst.max(rel(composed, direct));
    }
    Check::new(
        "heat semigroup",
        "kernel composition over the Gaussian measure reproduces the summed-time kernel",
        worst,
        0.0,
        worst,
        1e-7 * cfg.tol_scale,
    )
}

/// Spectral projector kernel equals the partial sum of Landau kernels for
/// every integer part up to 10.
pub fn projector_summation(cfg: &VerifyConfig) -> Check {
    let pairs = [(c(1.0, 0.0), c(0.0, 0.4)), (c(0.5, 0.0), c(0.0, 0.3))];
    let mut worst = 0.0f64;
    for nu in [0.5, 1.0, 2.0] {
        for level in 0..=10usize {
            let lambda = level as f64 + 0.3;
            for (z, w) in pairs {
                let direct = spectral_projector_kernel(nu, lambda, z, w);
                let sum: Complex64 = (0..=level).map(|l| landau_kernel(nu, l, z, w)).sum();
                worst = worst.max(rel(direct, sum));
            }
        }
    }
    Check::new(
        "spectral projector summation",
        "spectral-family kernel equals the partial sum of Landau kernels",
        worst,
        0.0,
        worst,
        1e-12 * cfg.tol_scale,
    )
}

/// Operator idempotence P_ℓ ∘ P_ℓ = P_ℓ under planar quadrature for
/// ℓ ≤ 2, sampled at five points; this is also the check that pins the ν/π
/// kernel normalization, which would fail by (π/ν)² otherwise.
pub fn projector_idempotence(cfg: &VerifyConfig) -> Check {
    let nu = 1.3;
    let rule = PlanarRule::new(nu, 32, 48).unwrap();
    let pts: Vec<(Complex64, f64)> = rule.points().collect();
    let phi = |w: Complex64| w.conj() + 0.3 * w * w + c(0.2, 0.1);
    let phi_vals: Vec<Complex64> = pts.iter().map(|(u, _)| phi(*u)).collect();
    let samples = [c(0.0, 0.0), c(0.5, 0.0), c(0.0, 0.3), c(-0.4, 0.2), c(0.3, -0.5)];

    let mut worst = 0.0f64;
    for ell in 0..=2usize {
        // inner pass: g = P_ℓ[φ] at every quadrature node
        let g: Vec<Complex64> = pts
            .iter()
            .map(|(u, _)| {
                pts.iter()
                    .zip(&phi_vals)
                    .map(|((v, wv), pv)| *wv * pv * landau_kernel(nu, ell, *u, *v))
                    .sum()
            })
            .collect();
        let scale = samples
            .iter()
            .map(|z| {
                pts.iter()
                    .zip(&phi_vals)
                    .map(|((v, wv), pv)| *wv * pv * landau_kernel(nu, ell, *z, *v))
                    .sum::<Complex64>()
                    .norm()
            })
            .fold(0.0f64, f64::max)
            .max(1e-3);
        for z in samples {
            let once: Complex64 = pts
                .iter()
                .zip(&phi_vals)
                .map(|((v, wv), pv)| *wv * pv * landau_kernel(nu, ell, z, *v))
                .sum();
            let twice: Complex64 = pts
                .iter()
                .zip(&g)
                .map(|((u, wu), gu)| *wu * gu * landau_kernel(nu, ell, z, *u))
                .sum();
            worst = worst.max((twice - once).norm() / scale);
        }
    }
    Check::new(
        "landau projector idempotence",
        "applying an eigenspace projector twice equals applying it once (fixes the kernel normalization)",
        worst,
        0.0,
        worst,
        1e-7 * cfg.tol_scale,
    )
}

/// The finite-difference magnetic Laplacian annihilates holomorphic
/// polynomials up to the stencil truncation error.
pub fn laplacian_annihilates_holomorphic(cfg: &VerifyConfig) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x9a);
    let h = 1e-3;
    let coeffs: Vec<Complex64> =
        (0..=6).map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
    let poly = PowerSeries::new(coeffs.clone());
    let f = |z: Complex64| poly.eval(z);

    let mut worst = 0.0f64;
    for _ in 0..20 {
        let z = c(rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5));
        let nu = rng.gen_range(0.5..2.0);
        let got = magnetic_laplacian_fd(nu, &f, z, h).unwrap();
        // second-derivative scale of the polynomial at z
        let r = z.norm().max(1.0);
        let scale: f64 = coeffs
            .iter()
            .enumerate()
            .map(|(j, cj)| cj.norm() * (j * j.saturating_sub(1)) as f64 * r.powi(j as i32 - 2))
            .sum::<f64>()
            .max(1.0);
        worst = worst.max(got.norm() / (10.0 * h * h * scale));
    }
    Check::new(
        "magnetic laplacian annihilates holomorphic polynomials",
        "holomorphic functions lie in the null space of the magnetic Laplacian",
        worst,
        0.0,
        worst,
        1.0 * cfg.tol_scale,
    )
}

/// Non-holomorphic witnesses against their symbolic Wirtinger values.
pub fn laplacian_witnesses(cfg: &VerifyConfig) -> Check {
    let h = 1e-3;
    let pts = [c(1.0, 1.0), c(0.5, -0.3), c(-0.8, 0.2)];
    let mut worst = 0.0f64;
    for nu in [1.0, 2.0] {
        for z in pts {
            // F = z̄ → ν z̄
            let f = |u: Complex64| u.conj();
            let got = magnetic_laplacian_fd(nu, &f, z, h).unwrap();
            worst = worst.max((got - nu * z.conj()).norm());
            // F = z z̄ → -1 + ν |z|²
            let g = |u: Complex64| u * u.conj();
            let got = magnetic_laplacian_fd(nu, &g, z, h).unwrap();
            worst = worst.max((got - c(nu * z.norm_sqr() - 1.0, 0.0)).norm());
        }
    }
    Check::new(
        "magnetic laplacian witnesses",
        "finite-difference operator against symbolic Wirtinger calculus on non-holomorphic inputs",
        worst,
        0.0,
        worst,
        5e-6 * cfg.tol_scale,
    )
}

/// Term ratios of the divergence series approach π ν^m (j+1)^{m-2}.
pub fn divergence_term_ratios(cfg: &VerifyConfig) -> Check {
    let j = 10_000usize;
    let mut worst = 0.0f64;
    for nu in [0.5, 1.0, 2.0] {
        for m in 1..=3usize {
            let t = divergence_demo_term(nu, m, j);
            let asymptote = PI * nu.powi(m as i32) * (j as f64 + 1.0).powi(m as i32 - 2);
            worst = worst.max((t / asymptote - 1.0).abs());
        }
    }
    Check::new(
        "derivative divergence term ratios",
        "series terms for the m-th derivative of the Fock witness approach their power-law asymptote",
        worst,
        0.0,
        worst,
        0.01 * cfg.tol_scale,
    )
}

/// Membership evidence classifies the exponential as convergent and the Fock
/// witness function as divergent for m = 1 (while it stays in the Fock space
/// itself).
pub fn membership_classification(cfg: &VerifyConfig) -> Check {
    let nu = 1.0;
    let p1 = SpaceParams::new(nu, 1).unwrap();
    let p0 = SpaceParams::new(nu, 0).unwrap();
    let mut misses = 0usize;

    let mut coeffs = Vec::new();
    let mut a = 1.0;
    for j in 0..80usize {
        coeffs.push(a);
        a *= nu / (j as f64 + 1.0);
    }
    let exp_series = PowerSeries::from_real(&coeffs);
    if membership_test(&p1, &exp_series, 20).classification != MembershipClass::ConvergentEvidence
    {
        misses += 1;
    }

    if membership_test(&p1, &PowerSeries::monomial(3), 20).classification
        != MembershipClass::ConvergentEvidence
    {
        misses += 1;
    }

    // a_j = ν^{(j+1)/2}/√((j+2)!)
    let mut coeffs = Vec::new();
    let mut log_fact = 2f64.ln();
    for j in 0..250usize {
        coeffs.push((0.5 * (j as f64 + 1.0) * nu.ln() - 0.5 * log_fact).exp());
        log_fact += (j as f64 + 3.0).ln();
    }
    let witness = PowerSeries::from_real(&coeffs);
    if membership_test(&p1, &witness, 20).classification != MembershipClass::DivergentEvidence {
        misses += 1;
    }
    if membership_test(&p0, &witness, 20).classification != MembershipClass::ConvergentEvidence {
        misses += 1;
    }

    let residual = misses as f64;
    Check::new(
        "membership classification",
        "weighted-series membership evidence separates the exponential from the derivative witness",
        residual,
        0.0,
        residual,
        0.5 * cfg.tol_scale,
    )
}

/// Combined check used by tooling that wants one entry per acceptance
/// criterion; not part of the CLI suites.
pub fn all_criteria(cfg: &VerifyConfig) -> Vec<Check> {
    vec![
        kernel_closed_vs_series(cfg),
        transform_dual_route(cfg),
        transform_basis_image(cfg),
        isometry_exact(cfg),
        isometry_numeric(cfg),
        varpi_closed_form(cfg),
        varpi_laplace_identity(cfg),
        varpi_bound_envelope(cfg),
        monomial_norms_vs_quadrature(cfg),
        heat_dual_route(cfg),
        heat_semigroup(cfg),
        projector_summation(cfg),
        projector_idempotence(cfg),
        laplacian_annihilates_holomorphic(cfg),
        laplacian_witnesses(cfg),
        divergence_term_ratios(cfg),
        membership_classification(cfg),
    ]
}
