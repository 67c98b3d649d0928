/// Kolmogorov-Smirnov distance between the empirical distribution of
/// `values` and Uniform(0, 1). Sorts `values` in place.
pub fn ks_uniform(values: &mut [f64]) -> f64 {
    if values.is_empty() {
        return 1.0;
    }
    values.sort_by(f64::total_cmp);
    let n = values.len() as f64;
    values
        .iter()
        .enumerate()
        .map(|(i, &u)| {
            let u = u.clamp(0.0, 1.0);
            let above = (i + 1) as f64 / n - u;
            let below = u - i as f64 / n;
            above.max(below)
        })
        .fold(0.0, f64::max)
}

/// KS distance between a sample and a continuous CDF.
pub fn ks_distance<F: Fn(f64) -> f64>(values: &[f64], cdf: F) -> f64 {
    let mut u: Vec<f64> = values.iter().map(|&x| cdf(x)).collect();
    ks_uniform(&mut u)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_point_is_at_least_half() {
        for u in [0.0, 0.3, 0.5, 0.9] {
            assert!(ks_uniform(&mut [u]) >= 0.5);
        }
        assert_eq!(ks_uniform(&mut [0.5]), 0.5);
    }

    #[test]
    fn evenly_spread_points() {
        let mut v: Vec<f64> = (0..100).map(|i| (i as f64 + 0.5) / 100.0).collect();
        assert!((ks_uniform(&mut v) - 0.005).abs() < 1e-12);
    }

    #[test]
    fn point_mass_far_from_uniform() {
        let mut v = vec![0.9; 50];
        assert!((ks_uniform(&mut v) - 0.9).abs() < 1e-12);
    }
}
