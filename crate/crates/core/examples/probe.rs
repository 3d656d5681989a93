use bdspace::verify::{run_suite, Suite, VerifyConfig};
use std::time::Instant;
fn main() {
    let cfg = VerifyConfig::default();
    for suite in [Suite::Specfun, Suite::Spaces, Suite::Kernels, Suite::Varpi, Suite::Transform] {
        let t0 = Instant::now();
        let report = run_suite(suite, &cfg);
        println!("== {} ({:?})", report.suite, t0.elapsed());
        for c in &report.checks {
            let flag = if c.passed { "pass" } else { "FAIL" };
            println!("  [{flag}] {:<55} residual={:.3e} tol={:.1e}", c.name, c.residual, c.tolerance);
        }
    }
}
