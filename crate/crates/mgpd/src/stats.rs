//! Thin statistical-test helpers shared by the detection logic and the
//! verification suite.

use statrs::distribution::{ChiSquared, ContinuousCDF, Normal};

/// Two-sided critical value: `|z|` beyond this rejects at level `alpha`.
pub fn z_critical_two_sided(alpha: f64) -> f64 {
    assert!((0.0..1.0).contains(&alpha) && alpha > 0.0, "alpha out of (0,1)");
    let normal = Normal::new(0.0, 1.0).unwrap();
    normal.inverse_cdf(1.0 - alpha / 2.0)
}

/// Binomial z statistic of `count` successes in `n` trials against the null
/// success probability `p0`.
pub fn binomial_z(count: u64, n: u64, p0: f64) -> f64 {
    assert!(n > 0, "no samples");
    assert!((0.0..=1.0).contains(&p0), "p0 out of [0,1]");
    let f = count as f64 / n as f64;
    let sigma = (p0 * (1.0 - p0) / n as f64).sqrt();
    if sigma == 0.0 {
        if f == p0 {
            0.0
        } else {
            f64::INFINITY.copysign(f - p0)
        }
    } else {
        (f - p0) / sigma
    }
}

/// Upper-tail chi-square critical value for `dof` degrees of freedom.
pub fn chi_square_critical(dof: u64, alpha: f64) -> f64 {
    let dist = ChiSquared::new(dof as f64).unwrap();
    dist.inverse_cdf(1.0 - alpha)
}

/// Pooled two-proportion z statistic for H0: both samples share one rate.
/// Returns 0 when both samples are empty of successes or failures alike.
pub fn two_proportion_z(x1: u64, n1: u64, x2: u64, n2: u64) -> f64 {
    assert!(n1 > 0 && n2 > 0, "no samples");
    let p1 = x1 as f64 / n1 as f64;
    let p2 = x2 as f64 / n2 as f64;
    let pooled = (x1 + x2) as f64 / (n1 + n2) as f64;
    let var = pooled * (1.0 - pooled) * (1.0 / n1 as f64 + 1.0 / n2 as f64);
    if var == 0.0 {
        0.0
    } else {
        (p1 - p2) / var.sqrt()
    }
}
