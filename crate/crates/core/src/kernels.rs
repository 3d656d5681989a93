//! Reproducing kernels of the spaces A^{2,ν}_m, Landau-level kernels,
//! spectral projectors, and the heat kernel, each with an independent
//! series/quadrature route next to its closed form.
//!
//! Every kernel here carries the normalization c_ν = ν/π. That constant is
//! forced by projector idempotence and by the Papadakis series
//! K(z,w) = Σ_j ψ_j(z) conj(ψ_j(w)), and is used consistently for the
//! reproducing, Landau, spectral and heat kernels.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::quadrature::PlanarRule;
use crate::spaces::{basis_scale, inner_product, log_monomial_norm_sq, PowerSeries, SpaceParams};
use crate::specfun::{hyp2f2_11_complex, laguerre, ln_gamma, SeriesControl};
use crate::{Error, Result};

const FRAC_1_PI: f64 = std::f64::consts::FRAC_1_PI;

/// How a kernel value was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum KernelMethod {
    ClosedForm,
    SeriesTruncation(usize),
}

impl std::fmt::Display for KernelMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            KernelMethod::ClosedForm => write!(f, "closed"),
            KernelMethod::SeriesTruncation(n) => write!(f, "series[{n}]"),
        }
    }
}

/// A kernel evaluation together with its method tag and an error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelValue {
    pub value: Complex64,
    pub method: KernelMethod,
    pub residual_estimate: f64,
}

/// Closed-form reproducing kernel of A^{2,ν}_m:
///
/// K_m(z,w) = (ν/π) { Σ_{j<m} (ν z w̄)^j/j!
///                    + (z w̄)^m/(m!)² ₂F₂(1,1;m+1,m+1;ν z w̄) },
///
/// which for m = 0 collapses to the Fock kernel (ν/π) e^{ν z w̄} and for
/// m = 1 to (ν/π){1 + z w̄ ₂F₂(1,1;2,2;ν z w̄)}.
pub fn reproducing_kernel(p: &SpaceParams, z: Complex64, w: Complex64) -> Result<KernelValue> {
    let ctl = SeriesControl::default();
    let nu = p.nu();
    let m = p.m();
    let zw = z * w.conj();
    let x = nu * zw;

    let value = if m == 0 {
        nu * FRAC_1_PI * x.exp()
    } else {
        let mut head = Complex64::new(0.0, 0.0);
        let mut pow = Complex64::new(1.0, 0.0);
        for j in 0..m {
            head += pow;
            pow *= x / (j as f64 + 1.0);
        }
        let f22 = hyp2f2_11_complex(m as f64 + 1.0, x, &ctl)?;
        let mfact_sq = (2.0 * ln_gamma(m as f64 + 1.0)?).exp();
        nu * FRAC_1_PI * (head + zw.powu(m as u32) / mfact_sq * f22)
    };

    Ok(KernelValue {
        value,
        method: KernelMethod::ClosedForm,
        residual_estimate: ctl.rel_tol * value.norm(),
    })
}

/// Papadakis form K(z,w) = Σ_{j<J} ψ_j(z) conj(ψ_j(w)), truncated at J terms.
pub fn reproducing_kernel_series(
    p: &SpaceParams,
    z: Complex64,
    w: Complex64,
    terms: usize,
) -> KernelValue {
    let zw = z * w.conj();
    let mut sum = Complex64::new(0.0, 0.0);
    let mut pow = Complex64::new(1.0, 0.0);
    let mut last = 0.0;
    for j in 0..terms.max(1) {
        let term = pow * (-log_monomial_norm_sq(p, j)).exp();
        sum += term;
        last = term.norm();
        pow *= zw;
    }
    KernelValue {
        value: sum,
        method: KernelMethod::SeriesTruncation(terms.max(1)),
        residual_estimate: if sum.norm() > 0.0 { last / sum.norm() } else { last },
    }
}

/// Papadakis series with the truncation point chosen adaptively: terms are
/// added until the geometric tail estimate drops below `tol` relative.
pub fn reproducing_kernel_series_adaptive(
    p: &SpaceParams,
    z: Complex64,
    w: Complex64,
    tol: f64,
) -> KernelValue {
    let zw = z * w.conj();
    let r = zw.norm();
    let mut sum = Complex64::new(0.0, 0.0);
    let mut pow = Complex64::new(1.0, 0.0);
    let mut j = 0usize;
    loop {
        let term = pow * (-log_monomial_norm_sq(p, j)).exp();
        sum += term;
        pow *= zw;
        j += 1;
        // ‖e_{j+1}‖²/‖e_j‖² ≥ (j+1)/ν-type growth makes the term ratio
        // eventually below r ν/(j+1-m); bound the tail geometrically.
        if j > p.m() + 1 {
            let ratio = r * p.nu() / (j - p.m()) as f64;
            if ratio < 0.5 {
                let tail = term.norm() * ratio / (1.0 - ratio);
                if tail <= tol * sum.norm().max(f64::MIN_POSITIVE) {
                    return KernelValue {
                        value: sum,
                        method: KernelMethod::SeriesTruncation(j),
                        residual_estimate: tail / sum.norm().max(f64::MIN_POSITIVE),
                    };
                }
            }
        }
        if j > 4000 {
            return KernelValue {
                value: sum,
                method: KernelMethod::SeriesTruncation(j),
                residual_estimate: term.norm(),
            };
        }
    }
}

/// Evaluates both sides of the reproducing identity <f, K(·,w)> = f(w).
///
/// The kernel section K(·,w) is expanded over the monomials up to deg f,
/// with coefficient conj(ψ_j(w)) · (leading coefficient of ψ_j).
pub fn reproducing_property_check(
    p: &SpaceParams,
    f: &PowerSeries,
    w: Complex64,
) -> (Complex64, Complex64) {
    let mut coeffs = Vec::with_capacity(f.len());
    let mut wbar_pow = Complex64::new(1.0, 0.0);
    for j in 0..f.len() {
        let scale = basis_scale(p, j);
        coeffs.push(scale * scale * wbar_pow);
        wbar_pow *= w.conj();
    }
    let section = PowerSeries::new(coeffs);
    (inner_product(p, f, &section), f.eval(w))
}

/// Reproducing kernel of the Landau level ℓ:
/// K^ν_ℓ(z,w) = (ν/π) e^{ν z w̄} L_ℓ(ν|z-w|²).
pub fn landau_kernel(nu: f64, ell: usize, z: Complex64, w: Complex64) -> Complex64 {
    let x = nu * (z - w).norm_sqr();
    nu * FRAC_1_PI * (nu * z * w.conj()).exp() * laguerre(ell, 0.0, x)
}

/// Orthogonal projection onto the ℓ-th Landau level by planar quadrature:
/// P_ℓ[φ](z) = ∫ φ(w) K^ν_ℓ(z,w) e^{-ν|w|²} dλ(w).
pub fn landau_projector_apply<F: Fn(Complex64) -> Complex64>(
    nu: f64,
    ell: usize,
    phi: &F,
    rule: &PlanarRule,
    z: Complex64,
) -> Result<Complex64> {
    if rule.nu() != nu {
        return Err(Error::Domain(format!(
            "planar rule is for nu = {}, projector asked for nu = {nu}",
            rule.nu()
        )));
    }
    rule.integrate(|w| phi(w) * landau_kernel(nu, ell, z, w))
}

/// Spectral-family kernel of the magnetic Laplacian at level λ:
/// zero for λ < 0, (ν/π) e^{ν z w̄} L^{(1)}_{[λ]}(ν|z-w|²) otherwise.
/// Equals Σ_{ℓ ≤ [λ]} K^ν_ℓ by the Laguerre summation identity.
pub fn spectral_projector_kernel(nu: f64, lambda: f64, z: Complex64, w: Complex64) -> Complex64 {
    if lambda < 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    let ell = lambda.floor() as usize;
    let x = nu * (z - w).norm_sqr();
    nu * FRAC_1_PI * (nu * z * w.conj()).exp() * laguerre(ell, 1.0, x)
}

/// Evaluation route for the heat kernel.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HeatMethod {
    /// Laguerre generating-function closed form.
    ClosedForm,
    /// Eigenvalue series Σ_k e^{-νtk} L_k(ν|z-w|²), truncated when the term
    /// falls below 1e-15 of the running sum.
    Series,
}

/// Heat kernel of e^{-t Δ̃_ν}:
///
/// closed form (ν/π) e^{ν z w̄} (1-q)^{-1} exp(-ν|z-w|² q/(1-q)) with
/// q = e^{-νt}, or the spectral series route.
pub fn heat_kernel(
    nu: f64,
    t: f64,
    z: Complex64,
    w: Complex64,
    method: HeatMethod,
) -> Result<KernelValue> {
    if !(t > 0.0) {
        return Err(Error::Domain(format!("heat kernel requires t > 0, got {t}")));
    }
    let q = (-nu * t).exp();
    let x = nu * (z - w).norm_sqr();
    let prefactor = nu * FRAC_1_PI * (nu * z * w.conj()).exp();

    match method {
        HeatMethod::ClosedForm => {
            let value = prefactor / (1.0 - q) * (-x * q / (1.0 - q)).exp();
            Ok(KernelValue {
                value,
                method: KernelMethod::ClosedForm,
                residual_estimate: 4.0 * f64::EPSILON * value.norm(),
            })
        }
        HeatMethod::Series => {
            let mut sum = 0.0f64;
            let mut lk_prev = 1.0f64; // L_0
            let mut lk = 1.0 - x; // L_1
            let mut qk = 1.0f64;
            let mut k = 0usize;
            let mut term = qk * lk_prev;
            let mut small_streak = 0usize;
            loop {
                sum += term;
                if term.abs() <= 1e-15 * sum.abs() {
                    small_streak += 1;
                    if small_streak >= 2 {
                        break;
                    }
                } else {
                    small_streak = 0;
                }
                if k > 400_000 {
                    return Err(Error::Truncation {
                        partial: prefactor * sum,
                        terms: k,
                    });
                }
                k += 1;
                qk *= q;
                term = qk * lk;
                let kf = k as f64;
                let lk_next = ((2.0 * kf + 1.0 - x) * lk - kf * lk_prev) / (kf + 1.0);
                lk_prev = lk;
                lk = lk_next;
            }
            let tail_bound = term.abs() * q / (1.0 - q);
            Ok(KernelValue {
                value: prefactor * sum,
                method: KernelMethod::SeriesTruncation(k + 1),
                residual_estimate: prefactor.norm() * tail_bound,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    const PI: f64 = std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn kernel_at_zero_gives_normalization() {
        // All m: only the j = 0 Papadakis term survives at w = 0.
        for m in 0..=3usize {
            let p = SpaceParams::new(1.7, m).unwrap();
            let k = reproducing_kernel(&p, c(0.9, 0.4), c(0.0, 0.0)).unwrap();
            assert_relative_eq!(k.value.re, 1.7 / PI, max_relative = 1e-13);
            assert!(k.value.im.abs() < 1e-15);
        }
        let p = SpaceParams::new(0.6, 0).unwrap();
        let k = reproducing_kernel(&p, c(0.0, 0.0), c(0.0, 0.0)).unwrap();
        assert_relative_eq!(k.value.re, 0.6 / PI, max_relative = 1e-14);
    }

    #[test]
    fn series_first_term_and_origin() {
        let p = SpaceParams::new(2.0, 1).unwrap();
        let k = reproducing_kernel_series(&p, c(1.0, 1.0), c(0.5, -0.5), 1);
        assert_relative_eq!(k.value.re, 2.0 / PI, max_relative = 1e-14);

        for m in 0..=3usize {
            let p = SpaceParams::new(1.3, m).unwrap();
            let k = reproducing_kernel_series(&p, c(0.0, 0.0), c(0.0, 0.0), 40);
            assert_relative_eq!(k.value.re, 1.3 / PI, max_relative = 1e-14);
        }
    }

    #[test]
    fn closed_form_matches_papadakis_series() {
        for nu in [0.5, 1.0, 2.0] {
            for m in 0..=3usize {
                let p = SpaceParams::new(nu, m).unwrap();
                let z = c(1.0, 0.0);
                let w = c(1.0, 0.0);
                let closed = reproducing_kernel(&p, z, w).unwrap().value;
                let series = reproducing_kernel_series(&p, z, w, 60).value;
                assert!(
                    (closed - series).norm() <= 1e-10 * series.norm(),
                    "nu={nu} m={m}: {closed} vs {series}"
                );
            }
        }
    }

    proptest! {
        #[test]
        fn kernels_are_hermitian(
            re_z in -1.5f64..1.5, im_z in -1.5f64..1.5,
            re_w in -1.5f64..1.5, im_w in -1.5f64..1.5,
            m in 0usize..4,
        ) {
            let p = SpaceParams::new(1.1, m).unwrap();
            let z = c(re_z, im_z);
            let w = c(re_w, im_w);
            let kzw = reproducing_kernel(&p, z, w).unwrap().value;
            let kwz = reproducing_kernel(&p, w, z).unwrap().value;
            prop_assert!((kzw - kwz.conj()).norm() <= 1e-13 * (1.0 + kzw.norm()));

            let lz = landau_kernel(1.1, 2, z, w);
            let lw = landau_kernel(1.1, 2, w, z);
            prop_assert!((lz - lw.conj()).norm() <= 1e-13 * (1.0 + lz.norm()));

            let hz = heat_kernel(1.1, 0.4, z, w, HeatMethod::ClosedForm).unwrap().value;
            let hw = heat_kernel(1.1, 0.4, w, z, HeatMethod::ClosedForm).unwrap().value;
            prop_assert!((hz - hw.conj()).norm() <= 1e-13 * (1.0 + hz.norm()));
        }
    }

    #[test]
    fn gram_matrix_is_positive_semidefinite() {
        use nalgebra::DMatrix;
        let pts = [c(0.0, 0.0), c(0.5, 0.0), c(0.0, 0.7), c(-0.4, 0.3), c(1.0, -0.2), c(0.8, 0.8)];
        for m in [0usize, 1, 2] {
            let p = SpaceParams::new(1.0, m).unwrap();
            let gram = DMatrix::from_fn(6, 6, |i, j| {
                reproducing_kernel(&p, pts[i], pts[j]).unwrap().value
            });
            let eig = gram.symmetric_eigen();
            for lambda in eig.eigenvalues.iter() {
                assert!(*lambda >= -1e-9, "m={m}: eigenvalue {lambda}");
            }
        }
    }

    #[test]
    fn reproducing_property() {
        let p = SpaceParams::new(1.0, 1).unwrap();
        let w = c(0.7, -0.2);

        let e0 = PowerSeries::monomial(0);
        let (lhs, rhs) = reproducing_property_check(&p, &e0, w);
        assert!((lhs - rhs).norm() < 1e-14);
        assert!((rhs - c(1.0, 0.0)).norm() < 1e-15);

        let f = PowerSeries::new(vec![
            c(0.3, -1.0),
            c(1.2, 0.4),
            c(-0.7, 0.1),
            c(0.05, 0.6),
            c(1.0, -0.3),
            c(0.2, 0.2),
            c(-0.4, 0.9),
        ]);
        for m in 0..=3usize {
            let p = SpaceParams::new(1.4, m).unwrap();
            let (lhs, rhs) = reproducing_property_check(&p, &f, w);
            assert!((lhs - rhs).norm() <= 1e-10 * rhs.norm(), "m={m}: {lhs} vs {rhs}");
        }

        // single monomial reproduces exactly
        let e4 = PowerSeries::monomial(4);
        let (lhs, rhs) = reproducing_property_check(&p, &e4, w);
        assert!((lhs - rhs).norm() <= 1e-14 * rhs.norm());
    }

    #[test]
    fn landau_kernel_base_cases() {
        let z = c(0.3, 0.4);
        let w = c(-0.2, 0.9);
        let fock = 1.5 * FRAC_1_PI * (1.5 * z * w.conj()).exp();
        assert!((landau_kernel(1.5, 0, z, w) - fock).norm() < 1e-15 * fock.norm());

        // L_ℓ(0) = 1 on the diagonal
        for ell in 0..=4usize {
            let d = landau_kernel(1.5, ell, z, z);
            let want = 1.5 * FRAC_1_PI * (1.5 * z.norm_sqr()).exp();
            assert_relative_eq!(d.re, want, max_relative = 1e-14);
        }
    }

    #[test]
    fn spectral_projector_branches_and_summation() {
        let z = c(1.0, 0.0);
        let w = c(0.0, 0.4);
        assert_eq!(spectral_projector_kernel(1.0, -1.0, z, w), c(0.0, 0.0));

        // λ = 0.5: L_0^{(1)} = 1, so the kernel is the ℓ=0 Landau kernel
        let a = spectral_projector_kernel(1.0, 0.5, z, w);
        let b = landau_kernel(1.0, 0, z, w);
        assert!((a - b).norm() <= 1e-15 * b.norm());

        // λ = 2.3 equals the sum of the first three Landau kernels
        let a = spectral_projector_kernel(1.0, 2.3, z, w);
        let sum = (0..=2).map(|l| landau_kernel(1.0, l, z, w)).sum::<Complex64>();
        assert!((a - sum).norm() <= 1e-12 * sum.norm());
    }

    #[test]
    fn landau_projector_acts_on_polynomials() {
        let nu = 1.0;
        let rule = PlanarRule::with_defaults(nu).unwrap();
        let poly = |z: Complex64| c(0.4, 0.0) + z * c(1.0, -0.5) + z * z * c(0.3, 0.2);

        // ℓ = 0 reproduces holomorphic inputs
        for &z in &[c(0.0, 0.0), c(0.5, 0.2), c(-0.3, 0.6)] {
            let got = landau_projector_apply(nu, 0, &poly, &rule, z).unwrap();
            assert!((got - poly(z)).norm() <= 1e-9, "z={z}: {got} vs {}", poly(z));
        }

        // ℓ = 1 is orthogonal to the holomorphic level
        for &z in &[c(0.0, 0.0), c(0.5, 0.2), c(-0.3, 0.6), c(0.9, 0.0), c(0.0, -0.8)] {
            let got = landau_projector_apply(nu, 1, &poly, &rule, z).unwrap();
            assert!(got.norm() <= 1e-8, "z={z}: {got}");
        }

        let zero = |_: Complex64| c(0.0, 0.0);
        let got = landau_projector_apply(nu, 2, &zero, &rule, c(0.3, 0.3)).unwrap();
        assert_eq!(got, c(0.0, 0.0));

        // mismatched rule intensity is rejected
        assert!(landau_projector_apply(2.0, 0, &poly, &rule, c(0.0, 0.0)).is_err());
    }

    #[test]
    fn landau_kernel_idempotence_under_quadrature() {
        let nu = 1.0;
        let rule = PlanarRule::with_defaults(nu).unwrap();
        let z = c(0.5, 0.0);
        let w = c(0.0, 0.3);
        for ell in 0..=2usize {
            let composed = rule
                .integrate(|u| landau_kernel(nu, ell, z, u) * landau_kernel(nu, ell, u, w))
                .unwrap();
            let direct = landau_kernel(nu, ell, z, w);
            assert!(
                (composed - direct).norm() <= 1e-8 * (1.0 + direct.norm()),
                "ell={ell}: {composed} vs {direct}"
            );
        }
    }

    #[test]
    fn heat_kernel_limits_and_dual_route() {
        let nu = 1.0;
        let z = c(1.0, 0.0);
        let w = c(0.3, 0.2);

        // t → ∞ recovers the ℓ = 0 Landau kernel
        let k = heat_kernel(nu, 40.0, z, w, HeatMethod::ClosedForm).unwrap().value;
        let fock = landau_kernel(nu, 0, z, w);
        assert!((k - fock).norm() <= 1e-12 * fock.norm());

        // z = w = 0: closed form and geometric series agree exactly
        let t = 0.7;
        let closed = heat_kernel(nu, t, c(0.0, 0.0), c(0.0, 0.0), HeatMethod::ClosedForm).unwrap();
        let series = heat_kernel(nu, t, c(0.0, 0.0), c(0.0, 0.0), HeatMethod::Series).unwrap();
        assert!((closed.value - series.value).norm() <= 1e-13 * closed.value.norm());

        let closed = heat_kernel(nu, 0.5, z, w, HeatMethod::ClosedForm).unwrap();
        let series = heat_kernel(nu, 0.5, z, w, HeatMethod::Series).unwrap();
        assert!(
            (closed.value - series.value).norm() <= 1e-10 * closed.value.norm(),
            "{} vs {}",
            closed.value,
            series.value
        );
        assert!(matches!(series.method, KernelMethod::SeriesTruncation(_)));

        assert!(heat_kernel(nu, 0.0, z, w, HeatMethod::ClosedForm).is_err());
        assert!(heat_kernel(nu, -1.0, z, w, HeatMethod::Series).is_err());
    }

    #[test]
    fn heat_semigroup_property() {
        let nu = 1.0;
        let rule = PlanarRule::with_defaults(nu).unwrap();
        let z = c(0.6, 0.1);
        let w = c(-0.2, 0.4);
        let (t1, t2) = (0.4, 0.9);
        let composed = rule
            .integrate(|u| {
                heat_kernel(nu, t1, z, u, HeatMethod::ClosedForm).unwrap().value
                    * heat_kernel(nu, t2, u, w, HeatMethod::ClosedForm).unwrap().value
            })
            .unwrap();
        let direct = heat_kernel(nu, t1 + t2, z, w, HeatMethod::ClosedForm).unwrap().value;
        assert!((composed - direct).norm() <= 1e-7 * direct.norm());
    }

    #[test]
    fn adaptive_series_meets_requested_tolerance() {
        for m in 0..=3usize {
            let p = SpaceParams::new(2.0, m).unwrap();
            let z = c(1.4, -1.2);
            let w = c(-0.9, 0.6);
            let closed = reproducing_kernel(&p, z, w).unwrap().value;
            let adaptive = reproducing_kernel_series_adaptive(&p, z, w, 1e-12);
            assert!(
                (closed - adaptive.value).norm() <= 1e-10 * closed.norm(),
                "m={m}: {} vs {}",
                closed,
                adaptive.value
            );
        }
    }
}
