//! Adaptive Gauss-Kronrod quadrature on finite intervals.
//!
//! The engine integrates vector-valued integrands (all components share the
//! same nodes), bisecting the subinterval with the largest error estimate
//! until every component meets its tolerance. Semi-infinite integrals are
//! handled by the callers, which truncate where the log-integrand falls 46
//! nats below its peak before handing the finite window over. Oscillatory
//! factors are tamed with an upper bound on the initial subinterval width.

use crate::error::{Error, Result};
use std::cmp::Ordering;
use std::collections::BinaryHeap;

/// Tolerances and limits for the quadrature-based checks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureControl {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
    /// Integration windows are cut where a Gaussian envelope falls below
    /// this fraction of its peak.
    pub envelope_cut: f64,
    /// Normalization windows expand until the boundary values fall below
    /// this fraction of the distribution peak.
    pub mass_cut: f64,
}

impl Default for QuadratureControl {
    fn default() -> Self {
        QuadratureControl {
            rel_tol: 1e-10,
            abs_tol: 1e-14,
            max_subdivisions: 2000,
            envelope_cut: 1e-18,
            mass_cut: 1e-12,
        }
    }
}

// 15-point Kronrod nodes with the embedded 7-point Gauss rule.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_838_258_730,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut scaled = err.abs();
    if res_asc != 0.0 && scaled != 0.0 {
        let scale = (200.0 * scaled / res_asc).powf(1.5);
        scaled = if scale < 1.0 { res_asc * scale } else { res_asc };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        scaled = scaled.max(50.0 * f64::EPSILON * res_abs);
    }
    scaled
}

struct Segment {
    a: f64,
    b: f64,
    values: Vec<f64>,
    errors: Vec<f64>,
    res_abs: Vec<f64>,
    worst: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.worst == other.worst
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.worst.partial_cmp(&other.worst).unwrap_or(Ordering::Equal)
    }
}

/// One 15-point Kronrod evaluation of all components on `[a, b]`.
fn gk15<F>(f: &F, ncomp: usize, a: f64, b: f64) -> Segment
where
    F: Fn(f64, &mut [f64]),
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);

    // sample the 15 nodes once, keeping per-node values for res_asc
    let mut nodes = [0.0f64; 15];
    nodes[0] = center;
    for (j, x) in XGK.iter().take(7).enumerate() {
        nodes[1 + 2 * j] = center - half * x;
        nodes[2 + 2 * j] = center + half * x;
    }
    let mut fv = vec![0.0f64; 15 * ncomp];
    let mut buf = vec![0.0f64; ncomp];
    for (i, &x) in nodes.iter().enumerate() {
        f(x, &mut buf);
        fv[i * ncomp..(i + 1) * ncomp].copy_from_slice(&buf);
    }

    let mut values = vec![0.0f64; ncomp];
    let mut errors = vec![0.0f64; ncomp];
    let mut res_abs_v = vec![0.0f64; ncomp];
    for c in 0..ncomp {
        let fc = fv[c];
        let mut kron = fc * WGK[7];
        let mut gauss = 0.0;
        let mut res_abs = kron.abs();
        for j in 0..7 {
            let f1 = fv[(1 + 2 * j) * ncomp + c];
            let f2 = fv[(2 + 2 * j) * ncomp + c];
            let fsum = f1 + f2;
            kron += WGK[j] * fsum;
            res_abs += WGK[j] * (f1.abs() + f2.abs());
            if j % 2 == 1 {
                // XGK[1], XGK[3], XGK[5] are the Gauss nodes
                gauss += WG[j / 2] * fsum;
            }
        }
        gauss += fc * WG[3];
        let mean = kron * 0.5;
        let mut res_asc = WGK[7] * (fc - mean).abs();
        for j in 0..7 {
            res_asc += WGK[j]
                * ((fv[(1 + 2 * j) * ncomp + c] - mean).abs()
                    + (fv[(2 + 2 * j) * ncomp + c] - mean).abs());
        }
        values[c] = kron * half;
        res_abs_v[c] = res_abs * half.abs();
        errors[c] = rescale_error((kron - gauss) * half, res_abs_v[c], res_asc * half.abs());
    }
    let worst = errors.iter().cloned().fold(0.0f64, f64::max);
    Segment {
        a,
        b,
        values,
        errors,
        res_abs: res_abs_v,
        worst,
    }
}

/// Adaptive integration of `ncomp` components over consecutive breakpoint
/// intervals. `max_step` bounds the width of the initial subintervals
/// (oscillation control); adaptivity refines from there.
pub(crate) fn integrate_vec_segments<F>(
    f: &F,
    ncomp: usize,
    breaks: &[f64],
    max_step: Option<f64>,
    ctl: &QuadratureControl,
    context: &str,
) -> Result<Vec<f64>>
where
    F: Fn(f64, &mut [f64]),
{
    assert!(ncomp > 0 && breaks.len() >= 2);
    const MAX_INITIAL: usize = 4096;

    let span: f64 = breaks[breaks.len() - 1] - breaks[0];
    let mut heap: BinaryHeap<Segment> = BinaryHeap::new();
    let mut totals = vec![0.0f64; ncomp];
    let mut total_err = vec![0.0f64; ncomp];
    let mut total_abs = vec![0.0f64; ncomp];

    let push = |seg: Segment,
                    totals: &mut Vec<f64>,
                    total_err: &mut Vec<f64>,
                    total_abs: &mut Vec<f64>,
                    heap: &mut BinaryHeap<Segment>| {
        for c in 0..ncomp {
            totals[c] += seg.values[c];
            total_err[c] += seg.errors[c];
            total_abs[c] += seg.res_abs[c];
        }
        heap.push(seg);
    };

    // initial segments: breakpoints, each split to honor max_step
    let mut n_initial = 0usize;
    for w in breaks.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        if hi <= lo {
            continue;
        }
        let pieces = match max_step {
            Some(h) if h > 0.0 => (((hi - lo) / h).ceil() as usize).clamp(1, MAX_INITIAL),
            _ => 1,
        };
        for i in 0..pieces {
            let a = lo + (hi - lo) * i as f64 / pieces as f64;
            let b = lo + (hi - lo) * (i + 1) as f64 / pieces as f64;
            push(
                gk15(f, ncomp, a, b),
                &mut totals,
                &mut total_err,
                &mut total_abs,
                &mut heap,
            );
            n_initial += 1;
            if n_initial > 4 * MAX_INITIAL {
                break;
            }
        }
    }

    let converged = |totals: &[f64], total_err: &[f64], total_abs: &[f64]| -> bool {
        (0..ncomp).all(|c| {
            let tol = ctl
                .abs_tol
                .max(ctl.rel_tol * totals[c].abs())
                // roundoff floor: below this no further bisection can help
                .max(100.0 * f64::EPSILON * total_abs[c]);
            total_err[c] <= tol
        })
    };

    let mut subdivisions = 0usize;
    while !converged(&totals, &total_err, &total_abs) {
        if subdivisions >= ctl.max_subdivisions {
            let achieved = (0..ncomp)
                .map(|c| total_err[c] / totals[c].abs().max(ctl.abs_tol))
                .fold(0.0f64, f64::max);
            return Err(Error::accuracy(
                format!("quadrature of {context}"),
                achieved,
                ctl.rel_tol,
            ));
        }
        let seg = match heap.pop() {
            Some(s) => s,
            None => break,
        };
        if (seg.b - seg.a).abs() < 1e-14 * span.abs().max(1.0) {
            // cannot refine further; give the error back and stop splitting here
            heap.push(seg);
            break;
        }
        for c in 0..ncomp {
            totals[c] -= seg.values[c];
            total_err[c] -= seg.errors[c];
            total_abs[c] -= seg.res_abs[c];
        }
        let mid = 0.5 * (seg.a + seg.b);
        push(
            gk15(f, ncomp, seg.a, mid),
            &mut totals,
            &mut total_err,
            &mut total_abs,
            &mut heap,
        );
        push(
            gk15(f, ncomp, mid, seg.b),
            &mut totals,
            &mut total_err,
            &mut total_abs,
            &mut heap,
        );
        subdivisions += 1;
    }

    if !converged(&totals, &total_err, &total_abs) {
        let achieved = (0..ncomp)
            .map(|c| total_err[c] / totals[c].abs().max(ctl.abs_tol))
            .fold(0.0f64, f64::max);
        return Err(Error::accuracy(
            format!("quadrature of {context}"),
            achieved,
            ctl.rel_tol,
        ));
    }
    Ok(totals)
}

pub(crate) fn integrate_vec<F>(
    f: &F,
    ncomp: usize,
    a: f64,
    b: f64,
    max_step: Option<f64>,
    ctl: &QuadratureControl,
    context: &str,
) -> Result<Vec<f64>>
where
    F: Fn(f64, &mut [f64]),
{
    integrate_vec_segments(f, ncomp, &[a, b], max_step, ctl, context)
}

/// Scalar adaptive integration over `[a, b]`.
pub(crate) fn integrate<F>(
    f: &F,
    a: f64,
    b: f64,
    max_step: Option<f64>,
    ctl: &QuadratureControl,
    context: &str,
) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    let wrapped = |x: f64, out: &mut [f64]| out[0] = f(x);
    Ok(integrate_vec(&wrapped, 1, a, b, max_step, ctl, context)?[0])
}
