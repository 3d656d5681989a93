//! Chebyshev-spaced lookup tables with local cubic interpolation.

/// Values of a smooth function tabulated at the Chebyshev points
/// t_i = T/2 (1 - cos(π i / N)), i = 0..=N, on [0, T].
///
/// Evaluation interpolates a local polynomial through the six nearest grid
/// points; the endpoint clustering of the grid keeps the error uniform for
/// functions with moderate derivatives.
#[derive(Debug, Clone)]
pub struct ChebTable {
    t_max: f64,
    grid: Vec<f64>,
    values: Vec<f64>,
}

impl ChebTable {
    pub fn build<F: Fn(f64) -> f64>(t_max: f64, segments: usize, f: F) -> Self {
        assert!(t_max > 0.0 && segments >= 8);
        let n = segments;
        let mut grid = Vec::with_capacity(n + 1);
        let mut values = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let t = 0.5 * t_max * (1.0 - (std::f64::consts::PI * i as f64 / n as f64).cos());
            grid.push(t);
            values.push(f(t));
        }
        // pin the endpoints exactly
        grid[0] = 0.0;
        grid[n] = t_max;
        Self { t_max, grid, values }
    }

    pub fn t_max(&self) -> f64 {
        self.t_max
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    /// Interpolated value for t in [0, t_max].
    pub fn eval(&self, t: f64) -> f64 {
        debug_assert!((0.0..=self.t_max).contains(&t));
        let n = self.grid.len() - 1;
        // invert the Chebyshev map for the segment index, then nudge for
        // floating-point drift
        let c = (1.0 - 2.0 * t / self.t_max).clamp(-1.0, 1.0);
        let mut i = ((c.acos() * n as f64 / std::f64::consts::PI) as usize).min(n - 1);
        while i > 0 && t < self.grid[i] {
            i -= 1;
        }
        while i + 1 < n && t > self.grid[i + 1] {
            i += 1;
        }
        let lo = i.saturating_sub(2).min(n - 5);
        let x = &self.grid[lo..lo + 6];
        let y = &self.values[lo..lo + 6];
        let mut acc = 0.0;
        for j in 0..6 {
            let mut l = y[j];
            for k in 0..6 {
                if k != j {
                    l *= (t - x[k]) / (x[j] - x[k]);
                }
            }
            acc += l;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interpolates_smooth_functions_tightly() {
        let f = |t: f64| (-(0.07 * t)).exp() * (0.3 * t).cos() + 1.0 / (1.0 + t);
        let table = ChebTable::build(300.0, 8000, f);
        let mut worst = 0.0f64;
        for k in 0..5000 {
            let t = 300.0 * (k as f64 + 0.37) / 5000.0;
            let err = (table.eval(t) - f(t)).abs() / (1.0 + f(t).abs());
            worst = worst.max(err);
        }
        assert!(worst < 1e-10, "worst relative interpolation error {worst}");
    }

    #[test]
    fn exact_at_grid_points_and_endpoints() {
        let f = |t: f64| t * t + 1.0;
        let table = ChebTable::build(10.0, 64, f);
        for &t in table.grid().to_vec().iter() {
            assert!((table.eval(t) - f(t)).abs() < 1e-12);
        }
        assert!((table.eval(0.0) - 1.0).abs() < 1e-14);
        assert!((table.eval(10.0) - 101.0).abs() < 1e-11);
    }
}
