//! Special functions: Hermite and generalized Laguerre polynomials, log-gamma
//! and beta, the confluent hypergeometric series ₁F₁, the ₂F₂(1,1;b,b;·)
//! specialization, and the Hermite generating-tail identity.
//!
//! Everything here is a pure function of its arguments. Factorials and
//! Pochhammer symbols are kept in log space so that degrees well past the
//! f64 factorial-overflow point (n ≈ 170) stay finite.

use num_complex::Complex64;

use crate::{Error, Result};

/// Truncation policy for hypergeometric series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesControl {
    pub max_terms: usize,
    pub rel_tol: f64,
    pub abs_tol: f64,
}

impl SeriesControl {
    pub fn new(max_terms: usize, rel_tol: f64, abs_tol: f64) -> Result<Self> {
        if max_terms == 0 {
            return Err(Error::Domain("max_terms must be at least 1".into()));
        }
        if !(rel_tol > 0.0) || !(abs_tol > 0.0) {
            return Err(Error::Domain("series tolerances must be positive".into()));
        }
        Ok(Self { max_terms, rel_tol, abs_tol })
    }
}

impl Default for SeriesControl {
    fn default() -> Self {
        Self { max_terms: 600, rel_tol: 1e-15, abs_tol: 1e-300 }
    }
}

/// Compensated (Kahan) accumulator.
#[derive(Debug, Clone, Copy, Default)]
struct Kahan {
    sum: f64,
    carry: f64,
}

impl Kahan {
    fn add(&mut self, x: f64) {
        let y = x - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }
}

/// Physicists' Hermite polynomial H_n(x) by the three-term recurrence
/// H_{k+1} = 2x H_k - 2k H_{k-1}.
pub fn hermite(n: usize, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = 2.0 * x;
    for k in 1..n {
        let next = 2.0 * x * cur - 2.0 * (k as f64) * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// H_n at a complex argument, same recurrence over complex numbers.
pub fn hermite_complex(n: usize, z: Complex64) -> Complex64 {
    if n == 0 {
        return Complex64::new(1.0, 0.0);
    }
    let mut prev = Complex64::new(1.0, 0.0);
    let mut cur = 2.0 * z;
    for k in 1..n {
        let next = 2.0 * z * cur - 2.0 * (k as f64) * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Orthonormalized Hermite polynomial φ_j(x) = π^{-1/4} (2^j j!)^{-1/2} H_j(x).
///
/// Uses the normalized recurrence φ_{k+1} = x √(2/(k+1)) φ_k - √(k/(k+1)) φ_{k-1}
/// so no intermediate factorial is formed; j of several hundred is fine.
pub fn hermite_orthonormal(j: usize, x: f64) -> f64 {
    let phi0 = std::f64::consts::PI.powf(-0.25);
    if j == 0 {
        return phi0;
    }
    let mut prev = phi0;
    let mut cur = x * std::f64::consts::SQRT_2 * phi0;
    for k in 1..j {
        let kf = k as f64;
        let next = x * (2.0 / (kf + 1.0)).sqrt() * cur - (kf / (kf + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// All of φ_0(x), ..., φ_{j_max}(x) in one recurrence pass.
pub fn hermite_orthonormal_all(j_max: usize, x: f64) -> Vec<f64> {
    let phi0 = std::f64::consts::PI.powf(-0.25);
    let mut out = Vec::with_capacity(j_max + 1);
    out.push(phi0);
    if j_max == 0 {
        return out;
    }
    out.push(x * std::f64::consts::SQRT_2 * phi0);
    for k in 1..j_max {
        let kf = k as f64;
        let next = x * (2.0 / (kf + 1.0)).sqrt() * out[k] - (kf / (kf + 1.0)).sqrt() * out[k - 1];
        out.push(next);
    }
    out
}

/// Generalized Laguerre polynomial L_n^{(α)}(x) by the standard recurrence
/// (k+1) L_{k+1} = (2k+1+α-x) L_k - (k+α) L_{k-1}.
pub fn laguerre(n: usize, alpha: f64, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = 1.0 + alpha - x;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + alpha - x) * cur - (kf + alpha) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Both sides of the Laguerre summation identity
/// Σ_{j=0}^{k} L_j^{(α)}(x) = L_k^{(α+1)}(x), returned as (lhs, rhs).
pub fn laguerre_sum_identity(k: usize, alpha: f64, x: f64) -> (f64, f64) {
    let mut lhs = Kahan::default();
    for j in 0..=k {
        lhs.add(laguerre(j, alpha, x));
    }
    (lhs.sum, laguerre(k, alpha + 1.0, x))
}

// Lanczos approximation, g = 7, 9 coefficients.
const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Natural log of the Euler gamma function for x > 0.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("ln_gamma requires x > 0, got {x}")));
    }
    if x < 0.5 {
        // Reflection keeps full accuracy near zero.
        let s = (std::f64::consts::PI * x).sin();
        return Ok(std::f64::consts::PI.ln() - s.ln() - ln_gamma(1.0 - x)?);
    }
    let x = x - 1.0;
    let mut acc = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    Ok(0.5 * (2.0 * std::f64::consts::PI).ln() + (x + 0.5) * t.ln() - t + acc.ln())
}

/// Euler beta function B(x, y) = Γ(x)Γ(y)/Γ(x+y) for x, y > 0.
pub fn beta(x: f64, y: f64) -> Result<f64> {
    Ok((ln_gamma(x)? + ln_gamma(y)? - ln_gamma(x + y)?).exp())
}

/// Confluent hypergeometric series ₁F₁(α; β; t) by ascending terms with
/// compensated summation. β must not be a non-positive integer.
pub fn hyp1f1(alpha: f64, beta_p: f64, t: f64, ctl: &SeriesControl) -> Result<f64> {
    if beta_p <= 0.0 && beta_p == beta_p.floor() {
        return Err(Error::Domain(format!(
            "hyp1f1 undefined for non-positive integer beta = {beta_p}"
        )));
    }
    let mut sum = Kahan::default();
    let mut term = 1.0;
    sum.add(term);
    let mut small_streak = 0usize;
    for k in 0..ctl.max_terms {
        let kf = k as f64;
        term *= (alpha + kf) / (beta_p + kf) * t / (kf + 1.0);
        sum.add(term);
        if term.abs() <= ctl.rel_tol * sum.sum.abs() + ctl.abs_tol {
            small_streak += 1;
            if small_streak >= 2 {
                return Ok(sum.sum);
            }
        } else {
            small_streak = 0;
        }
    }
    Err(Error::Truncation {
        partial: Complex64::new(sum.sum, 0.0),
        terms: ctl.max_terms,
    })
}

/// The ₂F₂(1,1;b,b;x) specialization Σ_k (k!/(b)_k)² x^k/k!, real argument.
pub fn hyp2f2_11(b: f64, x: f64, ctl: &SeriesControl) -> Result<f64> {
    let v = hyp2f2_11_complex(b, Complex64::new(x, 0.0), ctl)?;
    Ok(v.re)
}

/// ₂F₂(1,1;b,b;z) over complex argument; the series is entire so the real
/// termination rule carries over unchanged.
pub fn hyp2f2_11_complex(b: f64, z: Complex64, ctl: &SeriesControl) -> Result<Complex64> {
    if !(b > 0.0) {
        return Err(Error::Domain(format!("hyp2f2_11 requires b > 0, got {b}")));
    }
    let mut re = Kahan::default();
    let mut im = Kahan::default();
    let mut term = Complex64::new(1.0, 0.0);
    re.add(term.re);
    im.add(term.im);
    let mut small_streak = 0usize;
    for k in 0..ctl.max_terms {
        let kf = k as f64;
        let denom = (b + kf) * (b + kf);
        term = term * z * ((kf + 1.0) / denom);
        re.add(term.re);
        im.add(term.im);
        let sum_norm = (re.sum * re.sum + im.sum * im.sum).sqrt();
        if term.norm() <= ctl.rel_tol * sum_norm + ctl.abs_tol {
            small_streak += 1;
            if small_streak >= 2 {
                return Ok(Complex64::new(re.sum, im.sum));
            }
        } else {
            small_streak = 0;
        }
    }
    Err(Error::Truncation {
        partial: Complex64::new(re.sum, im.sum),
        terms: ctl.max_terms,
    })
}

/// Closed form of the Hermite generating tail
/// Σ_k H_{k+ℓ}(x) s^k / k! = exp(2xs - s²) H_ℓ(x - s).
pub fn hermite_tail_sum(ell: usize, x: f64, s: Complex64) -> Complex64 {
    let xc = Complex64::new(x, 0.0);
    (2.0 * xc * s - s * s).exp() * hermite_complex(ell, xc - s)
}
