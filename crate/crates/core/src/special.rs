//! Normal and Student-t distribution functions.
//!
//! The error function and the regularized incomplete beta function come from
//! `statrs`; the t quantile is solved here with a bracketed Newton iteration
//! because its closed forms only exist for one and two degrees of freedom.

use std::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2};

use statrs::function::{beta::beta_reg, erf, gamma::ln_gamma};

/// Standard normal CDF.
pub fn normal_cdf(z: f64) -> f64 {
    0.5 * erf::erfc(-z * FRAC_1_SQRT_2)
}

/// Standard normal density.
pub fn normal_pdf(z: f64) -> f64 {
    (-0.5 * z * z).exp() / (2.0 * PI).sqrt()
}

/// Standard normal quantile. Returns `±inf` at 0 and 1.
pub fn normal_quantile(p: f64) -> f64 {
    if p <= 0.0 {
        return f64::NEG_INFINITY;
    }
    if p >= 1.0 {
        return f64::INFINITY;
    }
    -SQRT_2 * erf::erfc_inv(2.0 * p)
}

/// Student-t CDF with `nu` degrees of freedom, via the regularized incomplete beta.
pub fn student_t_cdf(t: f64, nu: f64) -> f64 {
    if t.is_infinite() {
        return if t > 0.0 { 1.0 } else { 0.0 };
    }
    let x = nu / (nu + t * t);
    let tail = 0.5 * beta_reg(0.5 * nu, 0.5, x);
    if t < 0.0 {
        tail
    } else {
        1.0 - tail
    }
}

pub fn student_t_pdf(t: f64, nu: f64) -> f64 {
    let ln_norm = ln_gamma(0.5 * (nu + 1.0)) - ln_gamma(0.5 * nu) - 0.5 * (nu * PI).ln();
    (ln_norm - 0.5 * (nu + 1.0) * (1.0 + t * t / nu).ln()).exp()
}

/// Student-t quantile with `nu` degrees of freedom.
pub fn student_t_quantile(p: f64, nu: f64) -> f64 {
    if p <= 0.0 {
        return f64::NEG_INFINITY;
    }
    if p >= 1.0 {
        return f64::INFINITY;
    }
    if p == 0.5 {
        return 0.0;
    }
    if nu == 1.0 {
        return (PI * (p - 0.5)).tan();
    }
    if nu == 2.0 {
        return (2.0 * p - 1.0) / (2.0 * p * (1.0 - p)).sqrt();
    }
    // Solve in the lower tail and reflect, so the residual is a small number
    // rather than a difference of numbers near one.
    let (target, sign) = if p < 0.5 { (p, -1.0) } else { (1.0 - p, 1.0) };
    let lower = |t: f64| student_t_cdf(t, nu);

    // Bracket: [lo, 0] with cdf(lo) <= target.
    let mut lo = normal_quantile(target).min(-1.0);
    while lower(lo) > target {
        lo *= 2.0;
    }
    let mut hi = 0.0_f64;
    let mut t = normal_quantile(target).clamp(lo, hi);
    for _ in 0..200 {
        let f = lower(t) - target;
        if f > 0.0 {
            hi = t;
        } else {
            lo = t;
        }
        let step = f / student_t_pdf(t, nu);
        let mut next = t - step;
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        if (next - t).abs() <= 1e-15 * t.abs().max(1.0) {
            t = next;
            break;
        }
        t = next;
    }
    sign * t.abs()
}

#[cfg(test)]
#[allow(clippy::excessive_precision)]
mod tests {
    use super::*;

    // Reference values computed with mpmath at 30 significant digits.

    #[test]
    fn normal_cdf_reference_values() {
        let cases = [
            (-8.0, 6.2209605742717841235e-16),
            (-3.0, 0.0013498980316300945267),
            (-1.5, 0.066807201268858066004),
            (0.3, 0.61791142218895263307),
            (1.0, 0.841344746068542948585),
            (2.5, 0.99379033467422386483),
        ];
        for (z, want) in cases {
            assert!((normal_cdf(z) - want).abs() < 1e-10, "z={z}");
        }
    }

    #[test]
    fn normal_quantile_reference_values() {
        let cases = [
            (1e-10, -6.3613409024040562047),
            (0.001, -3.0902323061678135415),
            (0.2, -0.84162123357291420518),
            (0.975, 1.9599639845400542355),
        ];
        for (p, want) in cases {
            assert!((normal_quantile(p) - want).abs() < 1e-10, "p={p}");
        }
        assert_eq!(normal_quantile(0.0), f64::NEG_INFINITY);
    }

    #[test]
    fn student_t_cdf_reference_values() {
        let cases = [
            (1.0, -4.133, 0.075564437086858224235),
            (1.0, -1.0, 0.25),
            (1.0, 10.0, 0.96827448256944643049),
            (2.0, -4.133, 0.026928262501177015321),
            (2.0, 0.65, 0.7088100840160515527),
            (3.0, -1.0, 0.19550110947788532096),
            (3.0, 0.65, 0.71898592435609794787),
            (7.0, 2.5, 0.97950389070712355156),
            (7.0, -4.133, 0.0021937311277604074715),
            (30.0, -4.133, 0.0001323069023960560924),
            (30.0, 10.0, 0.99999999997712374296),
        ];
        for (nu, t, want) in cases {
            assert!((student_t_cdf(t, nu) - want).abs() < 1e-10, "nu={nu} t={t}");
        }
    }

    #[test]
    fn student_t_quantile_reference_values() {
        let cases = [
            (2.0, 0.025, -4.3026527297494638523),
            (2.0, 0.3, -0.61721339984836764104),
            (2.0, 0.99, 6.9645567342832741871),
            (3.0, 0.025, -3.1824463052837095927),
            (3.0, 0.3, -0.58438972743981866911),
            (3.0, 0.99, 4.5407028585681335553),
            (10.0, 0.025, -2.2281388519862747484),
            (10.0, 0.3, -0.54152803875501565799),
            (10.0, 0.99, 2.7637694581126961988),
        ];
        for (nu, p, want) in cases {
            assert!(
                (student_t_quantile(p, nu) - want).abs() < 1e-10,
                "nu={nu} p={p}"
            );
        }
    }

    #[test]
    fn student_t_quantile_inverts_cdf_in_far_tails() {
        for nu in [2.0, 3.0, 5.0, 12.0] {
            for p in [1e-10, 1e-6, 0.4, 0.9999] {
                let t = student_t_quantile(p, nu);
                let back = student_t_cdf(t, nu);
                assert!(
                    (back - p).abs() <= 1e-9 * p.max(1e-3),
                    "nu={nu} p={p} back={back}"
                );
            }
        }
    }
}
