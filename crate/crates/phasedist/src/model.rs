//! Oscillator models: parameters, wavefunctions, energy spectra.
//!
//! Two families share one parameter set. `a = +inf` is the sentinel for the
//! ordinary harmonic ("Hermite") oscillator; finite `a` places an infinitely
//! high wall at `x = -a`, and the position-dependent-mass model confined to
//! `(-a, inf)` carries generalized-Laguerre wavefunctions
//!
//! ```text
//! psi_n(x) = C_n (1 + x/a)^(b^2) e^(-lambda0^2 a g0 (x+a)) L_n^(2b^2)(2 lambda0^2 a g0 (x+a))
//! ```
//!
//! with `b = lambda0 a` and the field parameter `g0 = sqrt(1 + 2g/(m0 w^2 a))`.
//! The normalization constant alone overflows f64 near `a = 12` (`b^2 = 144`),
//! so it is combined with the exponential factors in log space before
//! materializing.

use crate::error::{Error, Result};
use crate::specfun::{hermite, laguerre, log_gamma};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Which closed-form family to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Hermite,
    Semiconfined,
}

impl std::fmt::Display for ModelKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ModelKind::Hermite => write!(f, "hermite"),
            ModelKind::Semiconfined => write!(f, "semiconfined"),
        }
    }
}

/// Physical inputs. Units are arbitrary but consistent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatorParams {
    /// Mass scale `m0 > 0`.
    pub m0: f64,
    /// Angular frequency `omega > 0`.
    pub omega: f64,
    /// Reduced action `hbar > 0`.
    pub hbar: f64,
    /// Semiconfinement length; `+inf` selects the Hermite model.
    pub a: f64,
    /// External homogeneous field strength (potential `g x`).
    pub g: f64,
}

impl OscillatorParams {
    pub fn new(m0: f64, omega: f64, hbar: f64, a: f64, g: f64) -> Result<Self> {
        if !(m0 > 0.0) || !(omega > 0.0) || !(hbar > 0.0) {
            return Err(Error::domain(format!(
                "m0, omega, hbar must be positive (got {m0}, {omega}, {hbar})"
            )));
        }
        if !(a > 0.0) {
            return Err(Error::domain(format!(
                "semiconfinement length must be positive or +inf (got {a})"
            )));
        }
        let p = OscillatorParams {
            m0,
            omega,
            hbar,
            a,
            g,
        };
        if a.is_finite() && !(p.g0_squared() > 0.0) {
            return Err(Error::domain(format!(
                "g = {g} is at or below the bound -m0 omega^2 a / 2 where g0 becomes imaginary"
            )));
        }
        Ok(p)
    }

    /// Hermite model (no wall); `a` is set to the `+inf` sentinel.
    pub fn hermite(m0: f64, omega: f64, hbar: f64, g: f64) -> Result<Self> {
        Self::new(m0, omega, hbar, f64::INFINITY, g)
    }

    /// Semiconfined model with the wall at `x = -a` (finite `a` required).
    pub fn semiconfined(m0: f64, omega: f64, hbar: f64, a: f64, g: f64) -> Result<Self> {
        if !a.is_finite() {
            return Err(Error::domain("semiconfined model requires finite a".to_string()));
        }
        Self::new(m0, omega, hbar, a, g)
    }

    /// The model the `a` sentinel selects.
    pub fn model_kind(&self) -> ModelKind {
        if self.a.is_finite() {
            ModelKind::Semiconfined
        } else {
            ModelKind::Hermite
        }
    }

    fn g0_squared(&self) -> f64 {
        1.0 + 2.0 * self.g / (self.m0 * self.omega * self.omega * self.a)
    }
}

/// Quantities derived once per parameter set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedParams {
    /// Inverse length scale `sqrt(m0 omega / hbar)`.
    pub lambda0: f64,
    /// Dimensionless wall distance `lambda0 * a` (`+inf` for the Hermite model).
    pub b: f64,
    /// Field parameter `sqrt(1 + 2g/(m0 omega^2 a))`; equals 1 for `g = 0`.
    pub g0: f64,
    /// Displacement `g / (m0 omega^2)` of the Hermite model.
    pub x0: f64,
    /// Smoothing width `hbar / (2 m0 omega)`, fixed by the distribution choice.
    pub delta_x_sq: f64,
}

/// Compute the derived parameter set, enforcing that `g0` is real.
pub fn derive(params: &OscillatorParams) -> Result<DerivedParams> {
    let g0sq = params.g0_squared();
    if params.a.is_finite() && !(g0sq > 0.0) {
        return Err(Error::domain(format!(
            "g = {} makes g0^2 = {g0sq} <= 0",
            params.g
        )));
    }
    let lambda0 = (params.m0 * params.omega / params.hbar).sqrt();
    Ok(DerivedParams {
        lambda0,
        b: lambda0 * params.a,
        g0: g0sq.sqrt(),
        x0: params.g / (params.m0 * params.omega * params.omega),
        delta_x_sq: params.hbar / (2.0 * params.m0 * params.omega),
    })
}

/// Dimensionless per-point quantities entering the closed forms.
#[derive(Debug, Clone, Copy)]
pub struct PointKinematics {
    /// `lambda0 x`
    pub xi: f64,
    /// `lambda0 x0`
    pub xi0: f64,
    /// `p / (hbar lambda0)`
    pub eta: f64,
    /// `xi0 + xi`
    pub delta_plus: f64,
    /// `xi0 - xi`
    pub delta_minus: f64,
    /// `xi + b`
    pub b1: f64,
    /// `(b g0 - b1) + i eta`
    pub z: Complex64,
    /// `-b1^2/2 + i b eta`
    pub beta0: Complex64,
}

impl PointKinematics {
    pub fn new(x: f64, p: f64, params: &OscillatorParams, dp: &DerivedParams) -> Self {
        let xi = dp.lambda0 * x;
        let xi0 = dp.lambda0 * dp.x0;
        let eta = p / (params.hbar * dp.lambda0);
        let b1 = xi + dp.b;
        PointKinematics {
            xi,
            xi0,
            eta,
            delta_plus: xi0 + xi,
            delta_minus: xi0 - xi,
            b1,
            z: Complex64::new(dp.b * dp.g0 - b1, eta),
            beta0: Complex64::new(-b1 * b1 / 2.0, dp.b * eta),
        }
    }
}

/// Stationary-state wavefunction of the Hermite model,
/// `C_n e^(-lambda0^2 (x+x0)^2 / 2) H_n(lambda0 (x+x0))`.
pub fn psi_hermite(n: u32, x: f64, dp: &DerivedParams) -> f64 {
    let w = dp.lambda0 * (x + dp.x0);
    // ln C_n = ln (lambda0^2/pi)^(1/4) - (n ln2 + ln n!)/2
    let log_c = 0.25 * (dp.lambda0 * dp.lambda0 / std::f64::consts::PI).ln()
        - 0.5 * (n as f64 * 2f64.ln() + log_gamma(n as f64 + 1.0).expect("n+1 > 0"));
    hermite(n, w) * (log_c - w * w / 2.0).exp()
}

/// Stationary-state wavefunction of the semiconfined model; identically zero
/// for `x <= -a`. The normalization constant and the exponential envelope
/// are combined in log space so that `b^2 = 144` stays finite.
pub fn psi_semiconfined(n: u32, x: f64, params: &OscillatorParams, dp: &DerivedParams) -> f64 {
    debug_assert!(params.a.is_finite());
    if x <= -params.a {
        return 0.0;
    }
    let a = params.a;
    let b2 = dp.b * dp.b;
    let lam2 = dp.lambda0 * dp.lambda0;
    let n_f = n as f64;
    // ln |C_n| = (b^2 + 1/2) ln(2 b^2 g0) + [ln n! - ln a - ln Gamma(n + 2b^2 + 1)]/2
    let log_c = (b2 + 0.5) * (2.0 * b2 * dp.g0).ln()
        + 0.5
            * (log_gamma(n_f + 1.0).expect("n+1 > 0")
                - a.ln()
                - log_gamma(n_f + 2.0 * b2 + 1.0).expect("arg > 0"));
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    let envelope = log_c + b2 * (x / a).ln_1p() - lam2 * a * dp.g0 * (x + a);
    let lag = laguerre(n, 2.0 * b2, 2.0 * lam2 * a * dp.g0 * (x + a));
    sign * lag * envelope.exp()
}

/// `hbar omega (n + 1/2) - g^2 / (2 m0 omega^2)`.
pub fn energy_hermite(n: u32, params: &OscillatorParams) -> f64 {
    params.hbar * params.omega * (n as f64 + 0.5)
        - params.g * params.g / (2.0 * params.m0 * params.omega * params.omega)
}

/// `hbar omega g0 (n + 1/2 + m0 omega a^2 / hbar) - m0 omega^2 a^2 - a g`.
///
/// Equidistant with spacing `hbar omega g0`; reduces to the Hermite spectrum
/// at `g = 0` for every `a`.
pub fn energy_semiconfined(n: u32, params: &OscillatorParams) -> Result<f64> {
    if !params.a.is_finite() {
        return Err(Error::domain(
            "semiconfined spectrum requires finite a".to_string(),
        ));
    }
    let dp = derive(params)?;
    let a = params.a;
    Ok(params.hbar * params.omega * dp.g0
        * (n as f64 + 0.5 + params.m0 * params.omega * a * a / params.hbar)
        - params.m0 * params.omega * params.omega * a * a
        - a * params.g)
}
