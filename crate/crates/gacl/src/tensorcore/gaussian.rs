//! Diagonal Gaussian heads shared by the policies and the VAE.

pub const LOG_STD_MIN: f64 = -5.0;
pub const LOG_STD_MAX: f64 = 2.0;

const LN_2PI: f64 = 1.8378770664093453;

pub fn clamp_log_std(x: f64) -> f64 {
    x.clamp(LOG_STD_MIN, LOG_STD_MAX)
}

/// Log-density of `sample` under `N(mean, exp(log_std)^2)`, summed over dims.
/// `log_std` entries are clamped to `[LOG_STD_MIN, LOG_STD_MAX]` first.
pub fn gaussian_logprob(mean: &[f64], log_std: &[f64], sample: &[f64]) -> f64 {
    debug_assert_eq!(mean.len(), log_std.len());
    debug_assert_eq!(mean.len(), sample.len());
    let mut lp = 0.0;
    for i in 0..mean.len() {
        let ls = clamp_log_std(log_std[i]);
        let z = (sample[i] - mean[i]) / ls.exp();
        lp += -0.5 * z * z - ls - 0.5 * LN_2PI;
    }
    lp
}

/// Reparameterized sample `mean + exp(log_std) * noise`.
pub fn gaussian_sample(mean: &[f64], log_std: &[f64], noise: &[f64]) -> Vec<f64> {
    debug_assert_eq!(mean.len(), log_std.len());
    debug_assert_eq!(mean.len(), noise.len());
    mean.iter()
        .zip(log_std)
        .zip(noise)
        .map(|((&m, &ls), &n)| m + clamp_log_std(ls).exp() * n)
        .collect()
}

/// Entropy of the diagonal Gaussian, summed over dims.
pub fn gaussian_entropy(log_std: &[f64]) -> f64 {
    log_std
        .iter()
        .map(|&ls| clamp_log_std(ls) + 0.5 * (LN_2PI + 1.0))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_normal_at_mode() {
        let lp = gaussian_logprob(&[0.0], &[0.0], &[0.0]);
        assert!((lp + 0.5 * LN_2PI).abs() < 1e-15);
    }

    #[test]
    fn zero_noise_returns_mean() {
        let mean = [1.5, -0.25, 7.0];
        let s = gaussian_sample(&mean, &[0.3, -1.0, 0.0], &[0.0, 0.0, 0.0]);
        assert_eq!(s, mean.to_vec());
    }

    #[test]
    fn log_std_is_clamped() {
        let s = gaussian_sample(&[0.0], &[100.0], &[1.0]);
        assert!((s[0] - LOG_STD_MAX.exp()).abs() < 1e-12);
        let lp_huge = gaussian_logprob(&[0.0], &[100.0], &[0.5]);
        let lp_max = gaussian_logprob(&[0.0], &[LOG_STD_MAX], &[0.5]);
        assert_eq!(lp_huge, lp_max);
    }

    #[test]
    fn density_integrates_to_one() {
        // Quadrature oracle: Riemann sum of exp(logprob) over a fine 1-D grid.
        let (mean, log_std) = (0.7, -0.4);
        let sigma = (log_std as f64).exp();
        let (lo, hi) = (mean - 10.0 * sigma, mean + 10.0 * sigma);
        let n = 200_000;
        let h = (hi - lo) / n as f64;
        let mut total = 0.0;
        for i in 0..n {
            let x = lo + (i as f64 + 0.5) * h;
            total += gaussian_logprob(&[mean], &[log_std], &[x]).exp() * h;
        }
        assert!((total - 1.0).abs() < 0.01, "integral = {total}");
    }
}
