/// Two-sided 95% normal quantile.
const Z_95: f64 = 1.959_963_984_540_054;

/// 95% Wilson score interval for `failures` out of `trials`.
///
/// Bounds are clamped to `[0, 1]` and always bracket the point estimate.
pub fn wilson_interval(failures: u64, trials: u64) -> (f64, f64) {
    assert!(trials > 0, "interval needs at least one trial");
    assert!(failures <= trials, "more failures than trials");
    let n = trials as f64;
    let rate = failures as f64 / n;
    let z2 = Z_95 * Z_95;
    let denom = 1.0 + z2 / n;
    let center = (rate + z2 / (2.0 * n)) / denom;
    let half = Z_95 / denom * (rate * (1.0 - rate) / n + z2 / (4.0 * n * n)).sqrt();
    let lo = if failures == 0 { 0.0 } else { (center - half).clamp(0.0, rate) };
    let hi = if failures == trials { 1.0 } else { (center + half).clamp(rate, 1.0) };
    (lo, hi)
}
