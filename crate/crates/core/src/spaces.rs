//! The space hierarchy A^{2,ν}_m(ℂ): monomial norms, orthonormal bases,
//! coefficient inner products, the m-split of a power series, membership
//! evidence, and a finite-difference magnetic Laplacian.

use num_complex::Complex64;
use serde::de::{SeqAccess, Visitor};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::specfun::ln_gamma;
use crate::{Error, Result};

const LN_PI: f64 = 1.144_729_885_849_400_2;

/// Selects the space: magnetic intensity ν > 0 and derivative order m
/// (m = 0 is the Bargmann-Fock space, m = 1 the Bargmann-Dirichlet space,
/// m ≥ 2 the generalized spaces).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpaceParams {
    nu: f64,
    m: usize,
}

impl SpaceParams {
    pub fn new(nu: f64, m: usize) -> Result<Self> {
        if !(nu > 0.0) || !nu.is_finite() {
            return Err(Error::Domain(format!("magnetic intensity must be positive, got {nu}")));
        }
        Ok(Self { nu, m })
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    pub fn m(&self) -> usize {
        self.m
    }
}

/// A holomorphic function as a finite coefficient sequence a_0..a_J.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerSeries {
    coeffs: Vec<Complex64>,
}

impl PowerSeries {
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        Self { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self { coeffs: coeffs.iter().map(|c| Complex64::new(*c, 0.0)).collect() }
    }

    /// The monomial e_j(z) = z^j.
    pub fn monomial(j: usize) -> Self {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); j + 1];
        coeffs[j] = Complex64::new(1.0, 0.0);
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> Complex64 {
        self.coeffs.get(j).copied().unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Horner evaluation.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    /// Coefficientwise complex m-derivative.
    pub fn derivative(&self, order: usize) -> Self {
        if order >= self.coeffs.len() {
            return Self { coeffs: vec![] };
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(order)
            .map(|(j, a)| {
                let mut fall = 1.0;
                for i in 0..order {
                    fall *= (j - i) as f64;
                }
                a * fall
            })
            .collect();
        Self { coeffs }
    }
}

// CLI wire format: JSON array of [re, im] pairs.
impl Serialize for PowerSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            seq.serialize_element(&[c.re, c.im])?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for PowerSeries {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct PairsVisitor;
        impl<'de> Visitor<'de> for PairsVisitor {
            type Value = PowerSeries;
            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                f.write_str("an array of [re, im] pairs")
            }
            fn visit_seq<A: SeqAccess<'de>>(
                self,
                mut seq: A,
            ) -> std::result::Result<PowerSeries, A::Error> {
                let mut coeffs = Vec::new();
                while let Some([re, im]) = seq.next_element::<[f64; 2]>()? {
                    coeffs.push(Complex64::new(re, im));
                }
                Ok(PowerSeries::new(coeffs))
            }
        }
        deserializer.deserialize_seq(PairsVisitor)
    }
}

/// ln ‖e_j‖²_{ν,m}.
///
/// ‖e_j‖² is π j!/ν^{j+1} for the Fock branch (m = 0 or j ≤ m-1) and
/// π (j!)² / (ν^{j-m+1} Γ(j-m+1)) once the m-th derivative survives.
pub fn log_monomial_norm_sq(p: &SpaceParams, j: usize) -> f64 {
    let ln_nu = p.nu.ln();
    if p.m == 0 || j < p.m {
        LN_PI + ln_gamma(j as f64 + 1.0).expect("positive argument") - (j as f64 + 1.0) * ln_nu
    } else {
        let k = (j - p.m) as f64;
        LN_PI + 2.0 * ln_gamma(j as f64 + 1.0).expect("positive argument")
            - (k + 1.0) * ln_nu
            - ln_gamma(k + 1.0).expect("positive argument")
    }
}

/// ‖e_j‖²_{ν,m} = <e_j, e_j>_{ν,m}.
pub fn monomial_norm_sq(p: &SpaceParams, j: usize) -> f64 {
    log_monomial_norm_sq(p, j).exp()
}

/// Leading coefficient of the j-th orthonormal basis element
/// ψ_j^m(z) = basis_scale · z^j.
pub fn basis_scale(p: &SpaceParams, j: usize) -> f64 {
    (-0.5 * log_monomial_norm_sq(p, j)).exp()
}

/// ψ_j^m(z), the orthonormal basis of A^{2,ν}_m.
pub fn basis_eval(p: &SpaceParams, j: usize, z: Complex64) -> Complex64 {
    z.powu(j as u32) * basis_scale(p, j)
}

/// <f, g>_{ν,m} = Σ_j a_j conj(b_j) ‖e_j‖²_{ν,m}; exact for finite series.
pub fn inner_product(p: &SpaceParams, f: &PowerSeries, g: &PowerSeries) -> Complex64 {
    let n = f.len().min(g.len());
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..n {
        let a = f.coeff(j);
        let b = g.coeff(j);
        if a != Complex64::new(0.0, 0.0) && b != Complex64::new(0.0, 0.0) {
            acc += a * b.conj() * monomial_norm_sq(p, j);
        }
    }
    acc
}

/// ‖f‖²_{ν,m}.
pub fn norm_sq(p: &SpaceParams, f: &PowerSeries) -> f64 {
    inner_product(p, f, f).re
}

/// Splits f into (f_{1,m}, f_{2,m}): coefficients below m and from m on,
/// with f_{2,m} keeping its leading zeros so f1 + f2 = f coefficientwise.
pub fn split_series(f: &PowerSeries, m: usize) -> (PowerSeries, PowerSeries) {
    let cut = m.min(f.len());
    let f1 = PowerSeries::new(f.coeffs()[..cut].to_vec());
    let mut tail = vec![Complex64::new(0.0, 0.0); f.len()];
    tail[cut..].copy_from_slice(&f.coeffs()[cut..]);
    (f1, PowerSeries::new(tail))
}

/// Classification of membership evidence for a truncated coefficient
/// sequence. A finite vector can never decide the infinite-series test, so
/// this is evidence, not proof.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MembershipClass {
    ConvergentEvidence,
    DivergentEvidence,
    Inconclusive,
}

#[derive(Debug, Clone)]
pub struct MembershipVerdict {
    /// Partial sums of the weighted series Σ w_j |a_j|²; nonnegative and
    /// nondecreasing.
    pub weighted_tail_sums: Vec<f64>,
    pub classification: MembershipClass,
    /// Geometric-mean successive-term ratio over the examined window.
    pub ratio_estimate: f64,
}

#[derive(Debug, Clone, Copy)]
pub struct MembershipConfig {
    pub tail_window: usize,
    /// Ratio-test dead band: ratios inside [1-ε, 1+ε] fall through to the
    /// power-law stage.
    pub ratio_epsilon: f64,
    /// Power-law margin: an estimated tail exponent p with terms ~ j^{-p}
    /// counts as convergent only when p exceeds 1 by this much.
    pub exponent_margin: f64,
}

impl Default for MembershipConfig {
    fn default() -> Self {
        Self { tail_window: 20, ratio_epsilon: 0.05, exponent_margin: 0.1 }
    }
}

/// ln of the membership-test weight w_j, or None when the weight is zero.
///
/// m = 0: j!/ν^j;  m = 1: j·j!/ν^j;  m ≥ 2: (j!)²/(ν^{j-m}(j-m)!) for j ≥ m.
pub fn log_membership_weight(p: &SpaceParams, j: usize) -> Option<f64> {
    let ln_nu = p.nu.ln();
    let jf = j as f64;
    match p.m {
        0 => Some(ln_gamma(jf + 1.0).unwrap() - jf * ln_nu),
        1 => {
            if j == 0 {
                None
            } else {
                Some(jf.ln() + ln_gamma(jf + 1.0).unwrap() - jf * ln_nu)
            }
        }
        m => {
            if j < m {
                None
            } else {
                let k = (j - m) as f64;
                Some(2.0 * ln_gamma(jf + 1.0).unwrap() - k * ln_nu - ln_gamma(k + 1.0).unwrap())
            }
        }
    }
}

pub fn membership_test(p: &SpaceParams, f: &PowerSeries, tail_window: usize) -> MembershipVerdict {
    membership_test_with(p, f, MembershipConfig { tail_window, ..Default::default() })
}

/// Weighted partial sums plus a two-stage tail diagnosis: a successive-term
/// ratio test first, and a power-law exponent estimate when the ratio sits in
/// the dead band (geometric decay and power-law tails both end up with ratio
/// near 1 there, but only an exponent > 1 makes the series converge).
pub fn membership_test_with(
    p: &SpaceParams,
    f: &PowerSeries,
    cfg: MembershipConfig,
) -> MembershipVerdict {
    let mut terms = Vec::with_capacity(f.len());
    let mut sums = Vec::with_capacity(f.len());
    let mut running = 0.0;
    for (j, a) in f.coeffs().iter().enumerate() {
        // the weight and |a_j|² can separately over/underflow where their
        // product is O(1), so combine them in log space
        let mag = a.norm();
        let term = match log_membership_weight(p, j) {
            Some(lw) if mag > 0.0 => (lw + 2.0 * mag.ln()).exp(),
            _ => 0.0,
        };
        running += term;
        terms.push(term);
        sums.push(running);
    }

    let window_start = terms.len().saturating_sub(cfg.tail_window.max(3));
    let window: Vec<(usize, f64)> = terms
        .iter()
        .enumerate()
        .skip(window_start)
        .filter(|(_, t)| **t > 1e-280)
        .map(|(j, t)| (j, *t))
        .collect();

    // Fewer than three live terms in the window is the finite or sparse
    // case: the weighted partial sums are (eventually) constant, which is
    // convergent evidence by definition.
    if window.len() < 3 {
        return MembershipVerdict {
            weighted_tail_sums: sums,
            classification: MembershipClass::ConvergentEvidence,
            ratio_estimate: 0.0,
        };
    }

    let (j0, u0) = window[0];
    let (j1, u1) = window[window.len() - 1];
    let ratio = ((u1.ln() - u0.ln()) / (j1 - j0) as f64).exp();

    let classification = if ratio < 1.0 - cfg.ratio_epsilon {
        MembershipClass::ConvergentEvidence
    } else if ratio > 1.0 + cfg.ratio_epsilon {
        MembershipClass::DivergentEvidence
    } else {
        // Least-squares slope of ln u against ln j over the window.
        let pts: Vec<(f64, f64)> = window.iter().map(|(j, u)| ((*j as f64).ln(), u.ln())).collect();
        let n = pts.len() as f64;
        let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
        let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
        let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
        let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        if sxx == 0.0 {
            MembershipClass::Inconclusive
        } else {
            let slope = sxy / sxx;
            let max_dev = pts
                .iter()
                .map(|p| (p.1 - (my + slope * (p.0 - mx))).abs())
                .fold(0.0f64, f64::max);
            if max_dev > 0.5 {
                MembershipClass::Inconclusive
            } else if -slope > 1.0 + cfg.exponent_margin {
                MembershipClass::ConvergentEvidence
            } else {
                MembershipClass::DivergentEvidence
            }
        }
    };

    MembershipVerdict { weighted_tail_sums: sums, classification, ratio_estimate: ratio }
}

/// Finite-difference magnetic Laplacian
/// Δ_ν F = -∂²F/∂z∂z̄ + ν z̄ ∂F/∂z̄ on a 3x3 stencil of spacing h.
///
/// Central differences give O(h²) truncation error. In Wirtinger form,
/// ∂²/∂z∂z̄ is a quarter of the real Laplacian and
/// ∂/∂z̄ = (∂_x + i ∂_y)/2.
pub fn magnetic_laplacian_fd<F: Fn(Complex64) -> Complex64>(
    nu: f64,
    f: &F,
    z: Complex64,
    h: f64,
) -> Result<Complex64> {
    if !(h > 0.0) {
        return Err(Error::Domain(format!("stencil spacing must be positive, got {h}")));
    }
    let i = Complex64::new(0.0, 1.0);
    let vals = [f(z + h), f(z - h), f(z + i * h), f(z - i * h), f(z)];
    for v in &vals {
        if !v.re.is_finite() || !v.im.is_finite() {
            return Err(Error::NonFinite { context: "laplacian stencil".into(), node: z.norm() });
        }
    }
    let [fp, fm, fip, fim, f0] = vals;
    let fx = (fp - fm) / (2.0 * h);
    let fy = (fip - fim) / (2.0 * h);
    let lap = (fp + fm + fip + fim - 4.0 * f0) / (h * h);
    let dzbar = 0.5 * (fx + i * fy);
    Ok(-0.25 * lap + nu * z.conj() * dzbar)
}

/// Δ_ν with one Richardson extrapolation step (h, h/2) at the default
/// spacing h = 1e-4, trading the O(h²) truncation for O(h⁴).
pub fn magnetic_laplacian<F: Fn(Complex64) -> Complex64>(
    nu: f64,
    f: &F,
    z: Complex64,
) -> Result<Complex64> {
    let h = 1e-4;
    let coarse = magnetic_laplacian_fd(nu, f, z, h)?;
    let fine = magnetic_laplacian_fd(nu, f, z, h / 2.0)?;
    Ok((4.0 * fine - coarse) / 3.0)
}

/// The scaling map T_ν F = ν^{-1/2} F(z/√ν), an isometry
/// L²(e^{-ν|z|²}dλ) → L²(e^{-|z|²}dλ) intertwining Δ_ν with ν Δ_1.
pub fn scale_intertwiner<F: Fn(Complex64) -> Complex64>(
    nu: f64,
    f: F,
) -> impl Fn(Complex64) -> Complex64 {
    let c = nu.powf(-0.5);
    let root = nu.sqrt();
    move |z| c * f(z / root)
}
