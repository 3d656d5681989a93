//! Gaussian quadrature rules (Golub-Welsch) and integration drivers,
//! including a polar product rule for integrals against the planar Gaussian
//! measure e^{-ν|z|²} dλ(z).

use num_complex::Complex64;

use crate::specfun::ln_gamma;
use crate::{Error, Result};

/// Weight function and domain of a Gauss rule.
///
/// The weight is always implicit: integrands passed to the drivers must not
/// include it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RuleKind {
    /// e^{-x²} on (-∞, ∞)
    GaussHermite,
    /// x^alpha e^{-x} on [0, ∞)
    GaussLaguerre { alpha: f64 },
    /// 1 on [a, b]
    GaussLegendre { a: f64, b: f64 },
    /// (1-x)^alpha (1+x)^beta on [-1, 1]
    GaussJacobi { alpha: f64, beta: f64 },
}

/// Immutable node/weight table for one of the [`RuleKind`] weights.
#[derive(Debug, Clone)]
pub struct QuadratureRule {
    kind: RuleKind,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

/// Recurrence coefficients of the monic orthogonal polynomials:
/// p_{k+1} = (x - a_k) p_k - b_k p_{k-1}, plus the zeroth moment of the weight.
fn recurrence(kind: RuleKind, n: usize) -> Result<(Vec<f64>, Vec<f64>, f64)> {
    let mut diag = Vec::with_capacity(n);
    let mut off = Vec::with_capacity(n.saturating_sub(1));
    let mu0;
    match kind {
        RuleKind::GaussHermite => {
            for _ in 0..n {
                diag.push(0.0);
            }
            for k in 1..n {
                off.push((k as f64 / 2.0).sqrt());
            }
            mu0 = std::f64::consts::PI.sqrt();
        }
        RuleKind::GaussLaguerre { alpha } => {
            if !(alpha > -1.0) {
                return Err(Error::Domain(format!(
                    "Gauss-Laguerre exponent must exceed -1, got {alpha}"
                )));
            }
            for k in 0..n {
                diag.push(2.0 * k as f64 + alpha + 1.0);
            }
            for k in 1..n {
                let kf = k as f64;
                off.push((kf * (kf + alpha)).sqrt());
            }
            mu0 = ln_gamma(alpha + 1.0)?.exp();
        }
        RuleKind::GaussLegendre { a, b } => {
            if !(b > a) {
                return Err(Error::Domain(format!(
                    "Gauss-Legendre interval must have b > a, got [{a}, {b}]"
                )));
            }
            for _ in 0..n {
                diag.push(0.0);
            }
            for k in 1..n {
                let kf = k as f64;
                off.push((kf * kf / (4.0 * kf * kf - 1.0)).sqrt());
            }
            mu0 = 2.0;
        }
        RuleKind::GaussJacobi { alpha, beta } => {
            if !(alpha > -1.0) || !(beta > -1.0) {
                return Err(Error::Domain(format!(
                    "Gauss-Jacobi exponents must exceed -1, got ({alpha}, {beta})"
                )));
            }
            let s = alpha + beta;
            diag.push((beta - alpha) / (s + 2.0));
            for k in 1..n {
                let kf = k as f64;
                let d = 2.0 * kf + s;
                diag.push((beta * beta - alpha * alpha) / (d * (d + 2.0)));
            }
            for k in 1..n {
                let kf = k as f64;
                let d = 2.0 * kf + s;
                let bk = if k == 1 {
                    // (k+α+β) cancels against (2k+α+β-1) at k = 1
                    4.0 * (1.0 + alpha) * (1.0 + beta) / ((d * d) * (d + 1.0))
                } else {
                    4.0 * kf * (kf + alpha) * (kf + beta) * (kf + s)
                        / ((d * d) * (d + 1.0) * (d - 1.0))
                };
                off.push(bk.sqrt());
            }
            mu0 = 2f64.powf(s + 1.0)
                * (ln_gamma(alpha + 1.0)? + ln_gamma(beta + 1.0)? - ln_gamma(s + 2.0)?).exp();
        }
    }
    Ok((diag, off, mu0))
}

/// Implicit-shift QL iteration for a symmetric tridiagonal matrix, keeping
/// only the first row of the accumulated eigenvector matrix (all that
/// Golub-Welsch needs). Returns (eigenvalues, first components), unsorted.
fn tridiag_eigen_first_row(diag: &[f64], off: &[f64]) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = diag.len();
    let mut d = diag.to_vec();
    let mut e = off.to_vec();
    e.push(0.0);
    let mut z = vec![0.0; n];
    z[0] = 1.0;

    for l in 0..n {
        let mut iter = 0usize;
        loop {
            // look for a negligible off-diagonal element to split at
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 50 {
                return Err(Error::Domain(
                    "tridiagonal eigensolve failed to converge".into(),
                ));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let mut s = 1.0;
            let mut c = 1.0;
            let mut p = 0.0;
            let mut i = m;
            while i > l {
                i -= 1;
                let mut f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                // same Givens rotation applied to the tracked first row
                f = z[i + 1];
                z[i + 1] = s * z[i] + c * f;
                z[i] = c * z[i] - s * f;
                if i == l {
                    d[l] -= p;
                    e[l] = g;
                    e[m] = 0.0;
                }
            }
        }
    }
    Ok((d, z))
}

/// Builds the n-point rule for the given weight by the Golub-Welsch
/// algorithm: nodes are the eigenvalues of the symmetric Jacobi matrix,
/// weights come from the first components of its eigenvectors.
pub fn make_rule(kind: RuleKind, count: usize) -> Result<QuadratureRule> {
    if count == 0 {
        return Err(Error::Domain("node count must be at least 1".into()));
    }
    let (diag, off, mu0) = recurrence(kind, count)?;
    let (eigenvalues, first_row) = tridiag_eigen_first_row(&diag, &off)?;

    let mut pairs: Vec<(f64, f64)> = eigenvalues
        .into_iter()
        .zip(first_row.into_iter().map(|v| mu0 * v * v))
        .collect();
    pairs.sort_unstable_by(|p, q| p.0.partial_cmp(&q.0).unwrap());

    let (mut nodes, weights): (Vec<f64>, Vec<f64>) = pairs.into_iter().unzip();

    // Map the reference Legendre nodes/weights onto [a, b].
    if let RuleKind::GaussLegendre { a, b } = kind {
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        for x in nodes.iter_mut() {
            *x = mid + half * *x;
        }
        return Ok(QuadratureRule {
            kind,
            nodes,
            weights: weights.into_iter().map(|w| w * half).collect(),
        });
    }

    Ok(QuadratureRule { kind, nodes, weights })
}

impl QuadratureRule {
    pub fn kind(&self) -> RuleKind {
        self.kind
    }

    pub fn count(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Σ w_i f(x_i). The rule's weight function is implicit, so for
    /// Gauss-Hermite the integrand must exclude the e^{-x²} factor, and so on.
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> Result<f64> {
        let mut acc = 0.0;
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            let v = f(*x);
            if !v.is_finite() {
                return Err(Error::NonFinite { context: "line integrand".into(), node: *x });
            }
            acc += w * v;
        }
        Ok(acc)
    }

    /// Same driver for complex-valued integrands.
    pub fn integrate_complex<F: Fn(f64) -> Complex64>(&self, f: F) -> Result<Complex64> {
        let mut acc = Complex64::new(0.0, 0.0);
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            let v = f(*x);
            if !v.re.is_finite() || !v.im.is_finite() {
                return Err(Error::NonFinite { context: "line integrand".into(), node: *x });
            }
            acc += *w * v;
        }
        Ok(acc)
    }
}

/// Polar product rule for ∫_ℂ F(z) e^{-ν|z|²} dλ(z).
///
/// The radial direction uses the substitution s = ν r², which turns the weight
/// into exactly e^{-s} (Gauss-Laguerre, α = 0); the angular direction is the
/// uniform trapezoid rule, exact on trigonometric polynomials.
#[derive(Debug, Clone)]
pub struct PlanarRule {
    nu: f64,
    radial: QuadratureRule,
    angular_count: usize,
}

impl PlanarRule {
    pub fn new(nu: f64, radial_count: usize, angular_count: usize) -> Result<Self> {
        if !(nu > 0.0) {
            return Err(Error::Domain(format!("planar rule requires nu > 0, got {nu}")));
        }
        if angular_count < 2 {
            return Err(Error::Domain("angular count must be at least 2".into()));
        }
        let radial = make_rule(RuleKind::GaussLaguerre { alpha: 0.0 }, radial_count)?;
        Ok(Self { nu, radial, angular_count })
    }

    /// Default desk-scale rule: 48 radial x 64 angular points.
    pub fn with_defaults(nu: f64) -> Result<Self> {
        Self::new(nu, 48, 64)
    }

    /// Rule sized for exactness on monomials z^a conj(z)^b with a + b up to
    /// `max_degree`: 4·max_degree + 1 angular points and a radial count
    /// comfortably past degree.
    pub fn for_degree(nu: f64, max_degree: usize) -> Result<Self> {
        Self::new(nu, (max_degree + 4).max(32), 4 * max_degree + 1)
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    pub fn angular_count(&self) -> usize {
        self.angular_count
    }

    pub fn radial_count(&self) -> usize {
        self.radial.count()
    }

    /// Iterates (node, weight) pairs of the full product rule, weight
    /// including the 1/(2ν) and 2π/M factors but not e^{-ν|z|²}.
    pub fn points(&self) -> impl Iterator<Item = (Complex64, f64)> + '_ {
        let m = self.angular_count;
        let dtheta = 2.0 * std::f64::consts::PI / m as f64;
        let scale = dtheta / (2.0 * self.nu);
        self.radial
            .nodes()
            .iter()
            .zip(self.radial.weights())
            .flat_map(move |(s, w)| {
                let r = (s / self.nu).sqrt();
                let wr = w * scale;
                (0..m).map(move |k| {
                    let theta = dtheta * k as f64;
                    (Complex64::from_polar(r, theta), wr)
                })
            })
    }

    /// ∫_ℂ F(z) e^{-ν|z|²} dλ(z); the Gaussian factor is implicit.
    pub fn integrate<F: Fn(Complex64) -> Complex64>(&self, f: F) -> Result<Complex64> {
        let mut acc = Complex64::new(0.0, 0.0);
        for (z, w) in self.points() {
            let v = f(z);
            if !v.re.is_finite() || !v.im.is_finite() {
                return Err(Error::NonFinite { context: "planar integrand".into(), node: z.norm() });
            }
            acc += w * v;
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::hermite_orthonormal;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    const PI: f64 = std::f64::consts::PI;

    #[test]
    fn hermite_rule_moments() {
        let rule = make_rule(RuleKind::GaussHermite, 20).unwrap();
        assert_relative_eq!(rule.integrate(|_| 1.0).unwrap(), PI.sqrt(), max_relative = 1e-13);
        assert_relative_eq!(rule.integrate(|x| x * x).unwrap(), PI.sqrt() / 2.0, max_relative = 1e-13);
    }

    #[test]
    fn laguerre_rule_weight_normalization() {
        // ∫ √t e^{-t} dt = Γ(3/2) = √π/2
        let rule = make_rule(RuleKind::GaussLaguerre { alpha: 0.5 }, 32).unwrap();
        assert_relative_eq!(rule.integrate(|_| 1.0).unwrap(), PI.sqrt() / 2.0, max_relative = 1e-13);
        // ∫ √t e^{-2t} dt = Γ(3/2)/2^{3/2}
        let rule = make_rule(RuleKind::GaussLaguerre { alpha: 0.5 }, 64).unwrap();
        assert_relative_eq!(
            rule.integrate(|t| (-t).exp()).unwrap(),
            (PI.sqrt() / 2.0) / 2.0f64.powf(1.5),
            max_relative = 1e-12
        );
    }

    #[test]
    fn rule_invariants_hold() {
        for (kind, n) in [
            (RuleKind::GaussHermite, 40),
            (RuleKind::GaussLaguerre { alpha: 0.0 }, 48),
            (RuleKind::GaussLaguerre { alpha: 2.5 }, 33),
            (RuleKind::GaussLegendre { a: -1.0, b: 3.0 }, 25),
            (RuleKind::GaussJacobi { alpha: 0.5, beta: 0.5 }, 30),
            (RuleKind::GaussJacobi { alpha: 0.5, beta: 3.5 }, 17),
        ] {
            let rule = make_rule(kind, n).unwrap();
            assert_eq!(rule.count(), n);
            assert_eq!(rule.nodes().len(), rule.weights().len());
            assert!(rule.nodes().windows(2).all(|w| w[0] < w[1]), "{kind:?} nodes not increasing");
            assert!(rule.weights().iter().all(|w| *w > 0.0), "{kind:?} weights not positive");
        }
    }

    #[test]
    fn invalid_parameters_are_rejected() {
        assert!(make_rule(RuleKind::GaussHermite, 0).is_err());
        assert!(make_rule(RuleKind::GaussLaguerre { alpha: -1.0 }, 8).is_err());
        assert!(make_rule(RuleKind::GaussJacobi { alpha: -1.5, beta: 0.0 }, 8).is_err());
        assert!(make_rule(RuleKind::GaussLegendre { a: 1.0, b: 1.0 }, 8).is_err());
        assert!(PlanarRule::new(-1.0, 16, 16).is_err());
    }

    #[test]
    fn non_finite_integrand_names_the_node() {
        let rule = make_rule(RuleKind::GaussLaguerre { alpha: 0.0 }, 8).unwrap();
        let err = rule.integrate(|t| 1.0 / (t - rule.nodes()[3])).unwrap_err();
        match err {
            Error::NonFinite { node, .. } => assert_eq!(node, rule.nodes()[3]),
            other => panic!("expected NonFinite, got {other:?}"),
        }
    }

    #[test]
    fn orthonormal_hermite_pair_integrates_to_one() {
        let rule = make_rule(RuleKind::GaussHermite, 40).unwrap();
        let v = rule.integrate(|x| {
            let p = hermite_orthonormal(3, x);
            p * p
        });
        assert_relative_eq!(v.unwrap(), 1.0, max_relative = 1e-11);
        assert_eq!(rule.integrate(|_| 0.0).unwrap(), 0.0);
    }

    #[test]
    fn planar_rule_gaussian_moments() {
        for nu in [0.5, 1.0, 2.0] {
            let rule = PlanarRule::for_degree(nu, 20).unwrap();
            let one = rule.integrate(|_| Complex64::new(1.0, 0.0)).unwrap();
            assert_relative_eq!(one.re, PI / nu, max_relative = 1e-12);
            assert!(one.im.abs() < 1e-14 * PI / nu);
        }

        // ∫ |z^3|² e^{-|z|²} dλ = π 3! = 6π
        let rule = PlanarRule::for_degree(1.0, 8).unwrap();
        let v = rule.integrate(|z| (z * z * z) * (z.conj() * z.conj() * z.conj())).unwrap();
        assert_relative_eq!(v.re, 6.0 * PI, max_relative = 1e-12);

        // angular orthogonality kills z conj(z)²
        let v = rule.integrate(|z| z * z.conj() * z.conj()).unwrap();
        assert!(v.norm() < 1e-13);
    }

    #[test]
    fn planar_monomial_norm_law() {
        // ∫ |z^j|² e^{-ν|z|²} dλ = π j!/ν^{j+1}
        for nu in [0.5, 1.0, 2.0] {
            let rule = PlanarRule::for_degree(nu, 20).unwrap();
            assert!(rule.radial_count() >= 32);
            let mut factorial = 1.0;
            for j in 0..=20usize {
                if j > 0 {
                    factorial *= j as f64;
                }
                let v = rule
                    .integrate(|z| {
                        let zj = z.powu(j as u32);
                        zj * zj.conj()
                    })
                    .unwrap();
                let want = PI * factorial / nu.powi(j as i32 + 1);
                assert!(
                    (v.re - want).abs() <= 1e-11 * want,
                    "j={j} nu={nu}: {} vs {want}",
                    v.re
                );
            }
        }
    }

    #[test]
    fn node_doubling_self_consistency() {
        let coarse = make_rule(RuleKind::GaussHermite, 32).unwrap();
        let fine = make_rule(RuleKind::GaussHermite, 64).unwrap();
        let f = |x: f64| (0.7 * x).cos() * (-0.3 * x).exp();
        let a = coarse.integrate(f).unwrap();
        let b = fine.integrate(f).unwrap();
        assert!((a - b).abs() <= 1e-12 * (1.0 + b.abs()));

        let coarse = PlanarRule::new(1.0, 24, 32).unwrap();
        let fine = PlanarRule::new(1.0, 48, 64).unwrap();
        let g = |z: Complex64| (z * 0.4).exp() * (z.conj() * 0.2).exp();
        let a = coarse.integrate(g).unwrap();
        let b = fine.integrate(g).unwrap();
        assert!((a - b).norm() <= 1e-12 * (1.0 + b.norm()));
    }

    proptest! {
        // Gauss rules integrate polynomials up to degree 2n-1 exactly.
        #[test]
        fn legendre_polynomial_exactness(coeffs in proptest::collection::vec(-2.0f64..2.0, 1..10)) {
            let n = 6usize;
            let rule = make_rule(RuleKind::GaussLegendre { a: -1.0, b: 2.0 }, n).unwrap();
            let deg = coeffs.len().min(2 * n - 1);
            let poly = |x: f64| {
                let mut acc = 0.0;
                for c in coeffs.iter().take(deg).rev() {
                    acc = acc * x + c;
                }
                acc
            };
            // antiderivative evaluated exactly
            let exact: f64 = coeffs
                .iter()
                .take(deg)
                .enumerate()
                .map(|(k, c)| c * (2.0f64.powi(k as i32 + 1) - (-1.0f64).powi(k as i32 + 1)) / (k as f64 + 1.0))
                .sum();
            let got = rule.integrate(poly).unwrap();
            prop_assert!((got - exact).abs() <= 1e-12 * (1.0 + exact.abs()));
        }
    }
}
