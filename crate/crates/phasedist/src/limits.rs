//! Reduction and limit checks: the semiconfined model against its
//! field-free specialization, and against the Hermite oscillator as the
//! wall recedes (`a -> inf`). All statements are verified numerically as
//! convergence; the thresholds are calibrated, not derived.

use crate::error::{Error, Result};
use crate::grid::GridSpec;
use crate::husimi::{
    husimi_hermite, husimi_semiconfined, husimi_semiconfined_field_free, PhasePoint,
};
use crate::model::{derive, OscillatorParams};
use crate::specfun::{hermite, laguerre, log_gamma};
use rayon::prelude::*;

/// Sup-norm differences along an ordered parameter sweep.
#[derive(Debug, Clone)]
pub struct ConvergenceSeries {
    pub parameter_values: Vec<f64>,
    pub sup_differences: Vec<f64>,
    /// True iff each successive sup-difference is strictly smaller.
    pub monotone: bool,
}

impl ConvergenceSeries {
    fn new(parameter_values: Vec<f64>, sup_differences: Vec<f64>) -> Self {
        assert_eq!(parameter_values.len(), sup_differences.len());
        let monotone = sup_differences.windows(2).all(|w| w[1] < w[0]);
        ConvergenceSeries {
            parameter_values,
            sup_differences,
            monotone,
        }
    }
}

/// Relative difference between the general-field path evaluated at `g = 0`
/// and the field-free specialized path, at one point.
pub fn reduction_check_g0(n: u32, pt: PhasePoint, params: &OscillatorParams) -> Result<f64> {
    if params.g != 0.0 {
        return Err(Error::domain(format!(
            "reduction check requires g = 0, got g = {}",
            params.g
        )));
    }
    let dp = derive(params)?;
    let general = husimi_semiconfined(n, pt, params, &dp)?.value();
    let reduced = husimi_semiconfined_field_free(n, pt, params, &dp)?.value();
    Ok((general - reduced).abs() / general.max(reduced).max(f64::MIN_POSITIVE))
}

/// Sup-norm distance between the semiconfined and Hermite distributions
/// over a grid, for each wall distance in `a_values` (strictly increasing).
/// Both families are evaluated with the same `m0, omega, hbar, g`.
pub fn hermite_limit_check(
    n: u32,
    g: f64,
    a_values: &[f64],
    spec: &GridSpec,
    base: &OscillatorParams,
) -> Result<ConvergenceSeries> {
    if a_values.windows(2).any(|w| w[1] <= w[0]) || a_values.is_empty() {
        return Err(Error::domain(
            "a_values must be non-empty and strictly increasing".to_string(),
        ));
    }
    let hermite_params = OscillatorParams::hermite(base.m0, base.omega, base.hbar, g)?;
    let dp_h = derive(&hermite_params)?;
    let mut sups = Vec::with_capacity(a_values.len());
    for &a in a_values {
        let params = OscillatorParams::semiconfined(base.m0, base.omega, base.hbar, a, g)?;
        let dp = derive(&params)?;
        let sup = (0..spec.num_points())
            .into_par_iter()
            .map(|idx| {
                let pt = PhasePoint {
                    x: spec.x_value(idx / spec.p_steps),
                    p: spec.p_value(idx % spec.p_steps),
                };
                let w_sc = husimi_semiconfined(n, pt, &params, &dp)?.value();
                let w_h = husimi_hermite(n, pt, &hermite_params, &dp_h).value();
                Ok((w_sc - w_h).abs())
            })
            .try_reduce(|| 0.0f64, |x, y| Ok(x.max(y)))?;
        sups.push(sup);
    }
    Ok(ConvergenceSeries::new(a_values.to_vec(), sups))
}

/// Residual of the Laguerre-to-Hermite polynomial limit
/// `(2/alpha)^(n/2) L_n^(alpha)(sqrt(2 alpha) x + alpha) -> (-1)^n H_n(x)/n!`
/// for each `alpha` in increasing order. The rate is ~alpha^(-1/2).
pub fn laguerre_to_hermite_check(n: u32, x: f64, alpha_values: &[f64]) -> ConvergenceSeries {
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    let target =
        sign * hermite(n, x) * (-log_gamma(n as f64 + 1.0).expect("n+1 > 0")).exp();
    let residuals: Vec<f64> = alpha_values
        .iter()
        .map(|&alpha| {
            let scaled = (2.0 / alpha).powf(n as f64 / 2.0)
                * laguerre(n, alpha, (2.0 * alpha).sqrt() * x + alpha);
            (scaled - target).abs()
        })
        .collect();
    ConvergenceSeries::new(alpha_values.to_vec(), residuals)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit(a: f64, g: f64) -> OscillatorParams {
        OscillatorParams::new(1.0, 1.0, 1.0, a, g).unwrap()
    }

    #[test]
    fn reduction_is_exact_at_g0() {
        let cases = [
            (0u32, 0.0, 0.0, 1.0),
            (3, 1.2, -0.4, 0.5),
            (2, -0.3, 1.7, 2.0),
            (1, 1.0, 0.5, 12.0),
        ];
        for (n, x, p, a) in cases {
            let r = reduction_check_g0(n, PhasePoint { x, p }, &unit(a, 0.0)).unwrap();
            assert!(r <= 1e-12, "n={n} x={x} p={p} a={a}: {r}");
        }
        assert!(reduction_check_g0(0, PhasePoint { x: 0.0, p: 0.0 }, &unit(1.0, 0.5)).is_err());
    }

    #[test]
    fn hermite_limit_series_decreases() {
        let spec = GridSpec::new(-3.0, 3.0, -3.0, 3.0, 21, 21).unwrap();
        let base = unit(1.0, 0.0);
        let s = hermite_limit_check(0, 0.0, &[2.0, 4.0, 8.0, 12.0], &spec, &base).unwrap();
        assert!(s.monotone, "sups: {:?}", s.sup_differences);
        // calibrated: the a = 12 sup-difference is ~5e-3
        assert!(
            *s.sup_differences.last().unwrap() < 0.02,
            "a=12 sup {:?}",
            s.sup_differences
        );

        let s = hermite_limit_check(1, 1.0, &[2.0, 4.0, 8.0, 12.0], &spec, &base).unwrap();
        assert!(s.monotone, "sups: {:?}", s.sup_differences);

        assert!(hermite_limit_check(0, 0.0, &[4.0, 2.0], &spec, &base).is_err());
    }

    #[test]
    fn laguerre_limit_examples() {
        // n = 0: both sides are exactly 1 for every alpha
        let s = laguerre_to_hermite_check(0, 0.7, &[100.0, 1000.0]);
        assert_eq!(s.sup_differences, vec![0.0, 0.0]);
        assert!(!s.monotone); // ties are not a strict decrease

        let s = laguerre_to_hermite_check(1, 0.5, &[1e2, 1e3, 1e4]);
        assert!(s.monotone, "{:?}", s.sup_differences);

        // calibrated at alpha = 1e6: residual ~5.7e-3 of the target,
        // consistent with the alpha^(-1/2) rate
        let s = laguerre_to_hermite_check(2, -1.0, &[1e4, 1e6]);
        let target = 1.0; // H_2(-1)/2! = 1
        assert!(s.monotone);
        assert!(s.sup_differences[1] < 1e-2 * target, "{:?}", s.sup_differences);
    }
}
