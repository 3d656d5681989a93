//! The iterated convolution weight
//! ϖ_m(t) = (√t e^{-t}) * (√t e^{-2t}) * ... * (√t e^{-mt}), m ≥ 2,
//! with its closed form at m = 2, the beta-power envelope, and its Laplace
//! transform.
//!
//! Every level factors as ϖ_k(t) = t^{(3k-2)/2} e^{-t} A_k(t) with A_k
//! entire and positive: substituting s = t·u in the convolution gives
//!
//!   A_2(t) = ∫₀¹ u^{1/2} (1-u)^{1/2} e^{-tu} du,
//!   A_k(t) = ∫₀¹ u^{(3k-5)/2} (1-u)^{1/2} A_{k-1}(tu) e^{-(k-1)t(1-u)} du,
//!
//! so each convolution step is one Gauss-Jacobi quadrature whose weight
//! absorbs both endpoint singularities exactly. Lower levels are tabulated on
//! a Chebyshev grid (cubic interpolation, validated below 1e-10); the top
//! level is always integrated directly.

use crate::cheb::ChebTable;
use crate::quadrature::{make_rule, RuleKind};
use crate::specfun::{beta, hyp1f1, ln_gamma, SeriesControl};
use crate::{Error, Result};

/// Tabulation range for the analytic factors; beyond it a power-law
/// continuation A_k(t) ≈ A_k(T)(T/t)^{3(k-1)/2} takes over, where the weight
/// t^{(3k-2)/2} e^{-t} has long since vanished.
const TABLE_T_MAX: f64 = 300.0;
const TABLE_SEGMENTS: usize = 4000;
const CONV_NODES: usize = 64;

fn leading_power(k: usize) -> f64 {
    (3.0 * k as f64 - 2.0) / 2.0
}

/// Gauss-Jacobi rule for ∫₀¹ u^p (1-u)^{1/2} g(u) du, nodes mapped to [0,1]
/// and weights carrying the weight function and the interval scaling.
fn jacobi01(p: f64, n: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    let rule = make_rule(RuleKind::GaussJacobi { alpha: 0.5, beta: p }, n)?;
    let scale = 2f64.powf(-p - 1.5);
    let nodes = rule.nodes().iter().map(|x| 0.5 * (1.0 + x)).collect();
    let weights = rule.weights().iter().map(|w| w * scale).collect();
    Ok((nodes, weights))
}

/// Evaluator for ϖ_k, 2 ≤ k ≤ m, sharing one set of level tables.
#[derive(Debug, Clone)]
pub struct Varpi {
    m: usize,
    /// conv_rules[k-3] integrates level k from level k-1 (k ≥ 3).
    conv_rules: Vec<(Vec<f64>, Vec<f64>)>,
    /// base rule for A_2.
    base_rule: (Vec<f64>, Vec<f64>),
    /// tables[k-2] tabulates A_k; built for 2 ≤ k ≤ m-1.
    tables: Vec<ChebTable>,
}

impl Varpi {
    pub fn new(m: usize) -> Result<Self> {
        if m < 2 {
            return Err(Error::Domain(format!("varpi is defined for m >= 2, got {m}")));
        }
        let base_rule = jacobi01(0.5, CONV_NODES)?;
        let mut conv_rules = Vec::new();
        for k in 3..=m {
            conv_rules.push(jacobi01(leading_power(k - 1), CONV_NODES)?);
        }
        let mut me = Self { m, conv_rules, base_rule, tables: Vec::new() };
        for k in 2..m {
            let table = ChebTable::build(TABLE_T_MAX, TABLE_SEGMENTS, |t| me.factor_direct(k, t));
            me.tables.push(table);
        }
        Ok(me)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// A_k(t) through the level table when one exists.
    pub fn analytic_factor(&self, k: usize, t: f64) -> f64 {
        debug_assert!((2..=self.m).contains(&k));
        if k < self.m {
            let table = &self.tables[k - 2];
            if t <= table.t_max() {
                return table.eval(t);
            }
            return table.eval(table.t_max()) * (table.t_max() / t).powf(1.5 * (k - 1) as f64);
        }
        self.factor_direct(k, t)
    }

    /// A_k(t) by direct Gauss-Jacobi, reading level k-1 from its table.
    /// Exposed so the verification suite can compare interpolated values
    /// against recomputation.
    pub fn factor_direct_public(&self, k: usize, t: f64) -> f64 {
        self.factor_direct(k, t)
    }

    fn factor_direct(&self, k: usize, t: f64) -> f64 {
        if k == 2 {
            let (nodes, weights) = &self.base_rule;
            return nodes
                .iter()
                .zip(weights)
                .map(|(u, w)| w * (-t * u).exp())
                .sum();
        }
        let (nodes, weights) = &self.conv_rules[k - 3];
        let decay = (k - 1) as f64;
        nodes
            .iter()
            .zip(weights)
            .map(|(u, w)| w * self.analytic_factor(k - 1, t * u) * (-decay * t * (1.0 - u)).exp())
            .sum()
    }

    /// ϖ_k(t) for any level 2 ≤ k ≤ m.
    pub fn eval_level(&self, k: usize, t: f64) -> Result<f64> {
        if !(2..=self.m).contains(&k) {
            return Err(Error::Domain(format!("level {k} outside 2..={}", self.m)));
        }
        if t < 0.0 {
            return Err(Error::Domain(format!("varpi requires t >= 0, got {t}")));
        }
        if t == 0.0 {
            return Ok(0.0);
        }
        Ok(t.powf(leading_power(k)) * (-t).exp() * self.analytic_factor(k, t))
    }

    /// ϖ_m(t).
    pub fn eval(&self, t: f64) -> Result<f64> {
        self.eval_level(self.m, t)
    }

    /// Laplace transform at k ≥ 0: (numeric, closed).
    ///
    /// Numeric route: ∫ e^{-kt} ϖ_m(t) dt = (k+1)^{-α-1} ∫ τ^α e^{-τ}
    /// A_m(τ/(k+1)) dτ with α = (3m-2)/2, one weight-matched Gauss-Laguerre
    /// sum. Closed route: Γ(3/2)^m / [(k+1)...(k+m)]^{3/2} in log space.
    pub fn laplace(&self, k: f64) -> Result<(f64, f64)> {
        if k < 0.0 {
            return Err(Error::Domain(format!("laplace transform needs k >= 0, got {k}")));
        }
        let alpha = leading_power(self.m);
        let rule = make_rule(RuleKind::GaussLaguerre { alpha }, 64)?;
        let shift = k + 1.0;
        let numeric = rule.integrate(|tau| self.analytic_factor(self.m, tau / shift))?
            / shift.powf(alpha + 1.0);

        let ln_gamma_32 = ln_gamma(1.5)?;
        let mut ln_den = 0.0;
        for i in 1..=self.m {
            ln_den += (k + i as f64).ln();
        }
        let closed = (self.m as f64 * ln_gamma_32 - 1.5 * ln_den).exp();
        Ok((numeric, closed))
    }

    /// Samples ϖ_m on a caller-supplied grid.
    pub fn table(&self, grid: &[f64]) -> Result<VarpiTable> {
        if grid.is_empty() || grid.windows(2).any(|w| w[0] >= w[1]) || grid[0] < 0.0 {
            return Err(Error::Domain("varpi grid must be increasing and nonnegative".into()));
        }
        let values = grid.iter().map(|t| self.eval(*t)).collect::<Result<Vec<_>>>()?;
        Ok(VarpiTable { m: self.m, grid: grid.to_vec(), values })
    }
}

/// A sampled ϖ_m.
#[derive(Debug, Clone)]
pub struct VarpiTable {
    pub m: usize,
    pub grid: Vec<f64>,
    pub values: Vec<f64>,
}

/// One-off ϖ_m(t); builds a fresh evaluator, so prefer [`Varpi`] for sweeps.
pub fn varpi(m: usize, t: f64) -> Result<f64> {
    Varpi::new(m)?.eval(t)
}

/// Closed form ϖ_2(t) = (π/8) t² e^{-2t} ₁F₁(3/2;3;t).
pub fn varpi2_closed(t: f64) -> Result<f64> {
    if t < 0.0 {
        return Err(Error::Domain(format!("varpi2_closed requires t >= 0, got {t}")));
    }
    if t > 700.0 {
        // e^t inside the series overflows f64; the weight has vanished long
        // before this anyway.
        return Err(Error::Domain(format!("varpi2_closed series overflows past t = 700, got {t}")));
    }
    let ctl = SeriesControl { max_terms: 4000, ..SeriesControl::default() };
    Ok(std::f64::consts::PI / 8.0 * t * t * (-2.0 * t).exp() * hyp1f1(1.5, 3.0, t, &ctl)?)
}

/// The envelope ϖ_m(t) ≤ B(3/2,3/2)^{m-1} t^{(3m-2)/2} e^{-t}.
pub fn varpi_bound(m: usize, t: f64) -> Result<f64> {
    if m < 2 {
        return Err(Error::Domain(format!("varpi bound is stated for m >= 2, got {m}")));
    }
    if t < 0.0 {
        return Err(Error::Domain(format!("varpi bound requires t >= 0, got {t}")));
    }
    let b = beta(1.5, 1.5)?;
    Ok(b.powi(m as i32 - 1) * t.powf(leading_power(m)) * (-t).exp())
}

/// One-off Laplace transform pair; see [`Varpi::laplace`].
pub fn varpi_laplace(m: usize, k: f64) -> Result<(f64, f64)> {
    Varpi::new(m)?.laplace(k)
}
