//! Numerical comparison between the exact root-of-unity value of
//! `sum_n (q;q)_n` and the radial limit of `-1/2 sum_n n chi12(n) q^((n^2-1)/24)`.

use num_complex::Complex64;
use serde::Serialize;

use super::{CyclotomicInteger, HabiroElement, HabiroError};

pub const DEFAULT_TOLERANCE: f64 = 0.05;
const TERM_CUTOFF: f64 = 1e-15;
const MAX_TERMS: u64 = 50_000_000;

/// Radii `1 - 10^-k` for `k = 1..=4`.
pub fn default_radii() -> Vec<f64> {
    (1..=4).map(|k| 1.0 - 10f64.powi(-k)).collect()
}

/// The primitive quadratic character modulo 12.
pub fn chi12(n: i64) -> i64 {
    match n.rem_euclid(12) {
        1 | 11 => 1,
        5 | 7 => -1,
        _ => 0,
    }
}

/// `-1/2 sum_{n>=1} n chi12(n) q^((n^2-1)/24)` at `q = radius * exp(2 pi i / m)`,
/// summed until the terms fall below `1e-15` past their peak.
pub fn radial_series(m: u64, radius: f64) -> Result<Complex64, HabiroError> {
    if !(radius > 0.0 && radius < 1.0) {
        return Err(HabiroError::NonConvergence(format!(
            "radius {radius} outside (0, 1)"
        )));
    }
    let roots: Vec<Complex64> = (0..m)
        .map(|k| Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / m as f64))
        .collect();
    let log_r = radius.ln();
    // n * r^(n^2/24) peaks near n^2 = 12 / |ln r|
    let peak = (12.0 / -log_r).sqrt();
    let mut sum = Complex64::new(0.0, 0.0);
    let mut n: u64 = 1;
    loop {
        if n > MAX_TERMS {
            return Err(HabiroError::NonConvergence(format!(
                "series at radius {radius} did not reach the tail bound in {MAX_TERMS} terms"
            )));
        }
        let c = chi12(n as i64);
        if c != 0 {
            let e = (n * n - 1) / 24;
            let magnitude = n as f64 * (e as f64 * log_r).exp();
            sum += roots[(e % m) as usize] * (c as f64 * magnitude);
            if n as f64 > peak && magnitude < TERM_CUTOFF {
                break;
            }
        }
        n += 1;
    }
    Ok(sum * -0.5)
}

/// Polynomial (Neville) extrapolation of `values[i]` at `steps[i]` to step 0.
pub fn richardson_to_zero(steps: &[f64], values: &[Complex64]) -> Complex64 {
    assert_eq!(steps.len(), values.len());
    let mut table = values.to_vec();
    let n = table.len();
    for level in 1..n {
        for i in 0..n - level {
            let (hi, hj) = (steps[i], steps[i + level]);
            table[i] = (table[i + 1] * hi - table[i] * hj) / (hi - hj);
        }
    }
    table[0]
}

#[derive(Debug, Clone, Serialize)]
pub struct RadialReport {
    pub root_order: u64,
    pub exact: CyclotomicInteger,
    pub exact_value: [f64; 2],
    pub radii: Vec<f64>,
    pub radial_values: Vec<[f64; 2]>,
    pub extrapolated: [f64; 2],
    pub difference: f64,
    pub tolerance: f64,
    pub passed: bool,
}

fn pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

pub fn zagier_radial_check(
    m: u64,
    radii: &[f64],
    tolerance: f64,
) -> Result<RadialReport, HabiroError> {
    if m == 0 {
        return Err(HabiroError::Domain("root order must be positive".into()));
    }
    if radii.is_empty() || radii.windows(2).any(|w| w[1] <= w[0]) {
        return Err(HabiroError::Domain(
            "radii must be non-empty and increasing".into(),
        ));
    }
    let exact = HabiroElement::kontsevich(m as usize).evaluate_at_root(m)?;
    let exact_value = exact.to_complex();
    let values = radii
        .iter()
        .map(|&r| radial_series(m, r))
        .collect::<Result<Vec<_>, _>>()?;
    let steps: Vec<f64> = radii.iter().map(|r| 1.0 - r).collect();
    let extrapolated = richardson_to_zero(&steps, &values);
    let difference = (extrapolated - exact_value).norm();
    Ok(RadialReport {
        root_order: m,
        exact,
        exact_value: pair(exact_value),
        radii: radii.to_vec(),
        radial_values: values.into_iter().map(pair).collect(),
        extrapolated: pair(extrapolated),
        difference,
        tolerance,
        passed: difference < tolerance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn character_values() {
        let got: Vec<i64> = (0..12).map(chi12).collect();
        assert_eq!(got, vec![0, 1, 0, 0, 0, -1, 0, -1, 0, 0, 0, 1]);
        assert_eq!(chi12(13), 1);
    }

    #[test]
    fn neville_is_exact_on_polynomials() {
        let steps = [0.1, 0.01, 0.001];
        let values: Vec<Complex64> = steps
            .iter()
            .map(|&h| Complex64::new(2.0 + 3.0 * h - h * h, h))
            .collect();
        let z = richardson_to_zero(&steps, &values);
        assert!((z - Complex64::new(2.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn rejects_bad_radius() {
        assert!(matches!(
            radial_series(1, 1.0),
            Err(HabiroError::NonConvergence(_))
        ));
        assert!(zagier_radial_check(1, &[0.99, 0.9], 0.05).is_err());
    }
}
