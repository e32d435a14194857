//! Complex values stored as (log-modulus, phase).
//!
//! The closed-form amplitudes multiply factors like `(g0*lambda0*a)^(2*b^2+1)`
//! and `Gamma(b^2+k+1)` whose logarithms reach the thousands at large
//! semiconfinement lengths, while the final distribution values stay below
//! `1/(pi*hbar)`. Carrying every factor as a log-modulus/phase pair keeps the
//! whole pipeline overflow-free; a value is materialized only at the end.

use num_complex::Complex64;
use std::f64::consts::PI;

/// A complex number represented as `exp(log_modulus) * exp(i*phase)`.
///
/// `log_modulus = -inf` (with `phase = 0`) encodes exact zero. The phase is
/// kept normalized in `(-pi, pi]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledComplex {
    log_modulus: f64,
    phase: f64,
}

/// Wrap a phase into `(-pi, pi]`.
fn wrap_phase(phi: f64) -> f64 {
    if phi > -PI && phi <= PI {
        return phi;
    }
    let k = ((phi - PI) / (2.0 * PI)).ceil();
    let w = phi - 2.0 * PI * k;
    // guard the open boundary against rounding
    if w <= -PI {
        w + 2.0 * PI
    } else {
        w
    }
}

impl ScaledComplex {
    pub fn zero() -> Self {
        ScaledComplex {
            log_modulus: f64::NEG_INFINITY,
            phase: 0.0,
        }
    }

    pub fn one() -> Self {
        ScaledComplex {
            log_modulus: 0.0,
            phase: 0.0,
        }
    }

    /// Build from an explicit log-modulus and phase (the phase is wrapped).
    pub fn from_log_phase(log_modulus: f64, phase: f64) -> Self {
        if log_modulus == f64::NEG_INFINITY {
            return Self::zero();
        }
        ScaledComplex {
            log_modulus,
            phase: wrap_phase(phase),
        }
    }

    /// A positive real value given as its natural log.
    pub fn from_log(log_modulus: f64) -> Self {
        Self::from_log_phase(log_modulus, 0.0)
    }

    /// A signed real value given as (sign, log of magnitude).
    pub fn from_signed_log(negative: bool, log_modulus: f64) -> Self {
        Self::from_log_phase(log_modulus, if negative { PI } else { 0.0 })
    }

    pub fn from_complex(z: Complex64) -> Self {
        let r = z.norm();
        if r == 0.0 {
            return Self::zero();
        }
        Self::from_log_phase(r.ln(), z.arg())
    }

    pub fn log_modulus(&self) -> f64 {
        self.log_modulus
    }

    pub fn phase(&self) -> f64 {
        self.phase
    }

    pub fn is_zero(&self) -> bool {
        self.log_modulus == f64::NEG_INFINITY
    }

    /// Materialize the value. Overflows to `inf` past `log_modulus ~ 709.8`;
    /// callers combine logs first so that materialized values are moderate.
    pub fn to_complex(&self) -> Complex64 {
        if self.is_zero() {
            return Complex64::new(0.0, 0.0);
        }
        let r = self.log_modulus.exp();
        Complex64::new(r * self.phase.cos(), r * self.phase.sin())
    }

    pub fn conj(&self) -> Self {
        Self::from_log_phase(self.log_modulus, -self.phase)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        Self::from_log_phase(
            self.log_modulus + other.log_modulus,
            self.phase + other.phase,
        )
    }

    /// Natural log of `|self|^2`.
    pub fn log_abs_sq(&self) -> f64 {
        2.0 * self.log_modulus
    }

    /// `|self/other - 1|`, evaluated through the logs so it stays meaningful
    /// for values far outside the ordinary floating-point range.
    pub fn rel_diff(&self, other: &Self) -> f64 {
        if self.is_zero() && other.is_zero() {
            return 0.0;
        }
        if self.is_zero() || other.is_zero() {
            return f64::INFINITY;
        }
        let dlog = self.log_modulus - other.log_modulus;
        let dphi = wrap_phase(self.phase - other.phase);
        if dlog.abs() > 700.0 {
            return f64::INFINITY;
        }
        let ratio = Complex64::new(dlog.exp() * dphi.cos(), dlog.exp() * dphi.sin());
        (ratio - Complex64::new(1.0, 0.0)).norm()
    }
}

/// Sum scaled terms after rescaling by the largest log-modulus, so that terms
/// spanning hundreds of nats are accumulated without overflow.
pub fn sum_scaled(terms: &[ScaledComplex]) -> ScaledComplex {
    let m = terms
        .iter()
        .map(|t| t.log_modulus)
        .fold(f64::NEG_INFINITY, f64::max);
    if m == f64::NEG_INFINITY {
        return ScaledComplex::zero();
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for t in terms {
        if t.is_zero() {
            continue;
        }
        let r = (t.log_modulus - m).exp();
        acc += Complex64::new(r * t.phase.cos(), r * t.phase.sin());
    }
    let norm = acc.norm();
    if norm == 0.0 {
        return ScaledComplex::zero();
    }
    ScaledComplex::from_log_phase(m + norm.ln(), acc.arg())
}
