//! Double-double (compensated) arithmetic, ~31 significant digits.
//!
//! The 1F1 representation of `D_nu(z)` subtracts two near-equal terms whose
//! ratio to the result reaches ~1e13 inside the documented order/argument
//! range, so a plain f64 evaluation of that route cannot reach the 1e-10
//! cross-route agreement the test suite demands. The series route therefore
//! runs its series and gamma-ratio internally on (hi, lo) pairs and rounds
//! to f64 only at the end. Only what that route needs is implemented here.

/// A real number as an unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Dd {
    pub hi: f64,
    pub lo: f64,
}

/// Error-free sum of two f64 (Knuth two-sum).
#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

/// Error-free sum assuming |a| >= |b|.
#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

/// Error-free product via fused multiply-add.
#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };
    pub const LN2: Dd = Dd {
        hi: std::f64::consts::LN_2,
        lo: 2.3190468138462996e-17,
    };
    pub const LN_2PI: Dd = Dd {
        hi: 1.8378770664093456,
        lo: -7.756588316134483e-17,
    };
    pub const SQRT2: Dd = Dd {
        hi: std::f64::consts::SQRT_2,
        lo: -9.667293313452913e-17,
    };

    #[inline]
    pub fn from_f64(a: f64) -> Dd {
        Dd { hi: a, lo: 0.0 }
    }

    /// Exact sum of two f64 values as a Dd.
    #[inline]
    pub fn from_sum(a: f64, b: f64) -> Dd {
        let (hi, lo) = two_sum(a, b);
        Dd { hi, lo }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    pub fn add(self, o: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, o.hi);
        let e = e + self.lo + o.lo;
        let (hi, lo) = quick_two_sum(s, e);
        Dd { hi, lo }
    }

    pub fn sub(self, o: Dd) -> Dd {
        self.add(o.neg())
    }

    pub fn mul(self, o: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, o.hi);
        let e = e + self.hi * o.lo + self.lo * o.hi;
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    pub fn div(self, o: Dd) -> Dd {
        let q1 = self.hi / o.hi;
        let r = self.sub(o.mul(Dd::from_f64(q1)));
        let q2 = r.hi / o.hi;
        let r = r.sub(o.mul(Dd::from_f64(q2)));
        let q3 = r.hi / o.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo }.add(Dd::from_f64(q3))
    }

    pub fn scale(self, a: f64) -> Dd {
        self.mul(Dd::from_f64(a))
    }

    /// `e^self` by argument reduction against ln 2 and a Taylor tail.
    pub fn exp(self) -> Dd {
        if self.hi.abs() > 700.0 {
            // out of the range this crate ever feeds in; fall back
            return Dd::from_f64(self.to_f64().exp());
        }
        let k = (self.hi / Dd::LN2.hi).round();
        let r = self.sub(Dd::LN2.scale(k));
        // |r| <= ln2/2; Taylor of e^r
        let mut term = Dd::ONE;
        let mut sum = Dd::ONE;
        for n in 1..40 {
            term = term.mul(r).div(Dd::from_f64(n as f64));
            sum = sum.add(term);
            if term.hi.abs() < 1e-36 * sum.hi.abs() {
                break;
            }
        }
        let p = 2.0f64.powi(k as i32);
        Dd {
            hi: sum.hi * p,
            lo: sum.lo * p,
        }
    }

    /// Natural log, one Newton step on the f64 seed: doubles the precision.
    pub fn ln(self) -> Dd {
        debug_assert!(self.hi > 0.0);
        let y = Dd::from_f64(self.hi.ln());
        // y + x e^{-y} - 1
        y.add(self.mul(y.neg().exp()).sub(Dd::ONE))
    }
}

/// Complex double-double; just enough for the hypergeometric series.
#[derive(Debug, Clone, Copy)]
pub(crate) struct DdComplex {
    pub re: Dd,
    pub im: Dd,
}

impl DdComplex {
    pub const ONE: DdComplex = DdComplex {
        re: Dd::ONE,
        im: Dd::ZERO,
    };

    pub fn from_f64(re: f64, im: f64) -> DdComplex {
        DdComplex {
            re: Dd::from_f64(re),
            im: Dd::from_f64(im),
        }
    }

    pub fn add(self, o: DdComplex) -> DdComplex {
        DdComplex {
            re: self.re.add(o.re),
            im: self.im.add(o.im),
        }
    }

    pub fn sub(self, o: DdComplex) -> DdComplex {
        DdComplex {
            re: self.re.sub(o.re),
            im: self.im.sub(o.im),
        }
    }

    pub fn mul(self, o: DdComplex) -> DdComplex {
        DdComplex {
            re: self.re.mul(o.re).sub(self.im.mul(o.im)),
            im: self.re.mul(o.im).add(self.im.mul(o.re)),
        }
    }

    pub fn mul_real(self, o: Dd) -> DdComplex {
        DdComplex {
            re: self.re.mul(o),
            im: self.im.mul(o),
        }
    }

    pub fn div_real(self, o: Dd) -> DdComplex {
        DdComplex {
            re: self.re.div(o),
            im: self.im.div(o),
        }
    }

    /// Rough magnitude for convergence tests; full precision not needed.
    pub fn approx_norm(self) -> f64 {
        self.re.hi.hypot(self.im.hi)
    }
}

// Stirling coefficients B_{2k} / (2k (2k-1)) as exact integer ratios.
const STIRLING_DD: [(i64, i64); 13] = [
    (1, 12),
    (-1, 360),
    (1, 1260),
    (-1, 1680),
    (1, 1188),
    (-691, 360_360),
    (1, 156),
    (-3617, 122_400),
    (43_867, 244_188),
    (-174_611, 125_400),
    (77_683, 5796),
    (-236_364_091, 1_506_960),
    (657_931, 300),
];

/// `ln Gamma(x)` in double-double for `x > 0` (Stirling above 30, exact
/// recurrence shift below).
pub(crate) fn dd_ln_gamma(x: f64) -> Dd {
    debug_assert!(x > 0.0);
    let mut shift = Dd::ZERO;
    let mut y = Dd::from_f64(x);
    while y.hi < 30.0 {
        shift = shift.add(y.ln());
        y = y.add(Dd::ONE);
    }
    let inv = Dd::ONE.div(y);
    let inv2 = inv.mul(inv);
    let mut series = Dd::ZERO;
    let mut p = inv;
    for (num, den) in STIRLING_DD {
        series = series.add(Dd::from_f64(num as f64).div(Dd::from_f64(den as f64)).mul(p));
        p = p.mul(inv2);
    }
    // (y - 1/2) ln y - y + ln(2 pi)/2 + series - shift
    y.sub(Dd::from_f64(0.5))
        .mul(y.ln())
        .sub(y)
        .add(Dd::LN_2PI.scale(0.5))
        .add(series)
        .sub(shift)
}

/// `Gamma(u + 1/2) / Gamma(u)` in double-double, `u > 0`.
pub(crate) fn dd_gamma_ratio_half(u: f64) -> Dd {
    dd_ln_gamma(u + 0.5).sub(dd_ln_gamma(u)).exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    // 45-digit references
    const E_LO: f64 = 1.4456468917292502e-16;
    const EXP_2_5: (f64, f64) = (12.182493960703473, 2.0334002173348147e-16);
    const LN_37: (f64, f64) = (3.6109179126442243, 9.643918385970854e-17);
    const LNGAMMA_30: (f64, f64) = (71.25703896716801, -5.6547469778977255e-15);
    const RATIO_10_25: (f64, f64) = (3.16277103637994, 3.06667881312906e-17);
    const RATIO_0_35: (f64, f64) = (0.4369283261748289, -2.1193775079939288e-17);

    fn assert_dd(got: Dd, want: (f64, f64), tol: f64) {
        let err = (got.hi - want.0) + (got.lo - want.1);
        assert!(
            err.abs() <= tol * want.0.abs().max(1e-300),
            "got ({}, {}), want {want:?}, rel err {err:e}",
            got.hi,
            got.lo
        );
    }

    #[test]
    fn mul_and_div_round_trip() {
        let a = Dd::from_f64(1.0).div(Dd::from_f64(3.0));
        let b = a.mul(Dd::from_f64(3.0));
        assert!((b.hi - 1.0).abs() < 1e-30 && b.lo.abs() < 1e-30);
    }

    #[test]
    fn exp_and_ln() {
        assert_dd(Dd::ONE.exp(), (2.718281828459045, E_LO), 1e-30);
        assert_dd(Dd::from_f64(2.5).exp(), EXP_2_5, 1e-30);
        assert_dd(Dd::from_f64(37.0).ln(), LN_37, 1e-30);
        let x = Dd::from_f64(0.7357588823428847);
        let roundtrip = x.ln().exp();
        assert!((roundtrip.sub(x).to_f64()).abs() < 1e-30);
    }

    #[test]
    fn ln_gamma_dd() {
        assert_dd(dd_ln_gamma(30.0), LNGAMMA_30, 1e-28);
        // Gamma(1) = Gamma(2) = 1
        assert!(dd_ln_gamma(1.0).to_f64().abs() < 1e-28);
        assert!(dd_ln_gamma(2.0).to_f64().abs() < 1e-28);
    }

    #[test]
    fn gamma_ratio_dd() {
        assert_dd(dd_gamma_ratio_half(10.25), RATIO_10_25, 1e-28);
        assert_dd(dd_gamma_ratio_half(0.35), RATIO_0_35, 1e-28);
    }
}

