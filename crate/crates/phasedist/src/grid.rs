//! Rectangular phase-space grids and their export formats.
//!
//! Values are stored row-major with `x` as the outer index. Two formats are
//! written, both byte-deterministic across runs: comma-separated
//! `x,p,value` rows, and a single JSON document carrying the full parameter
//! metadata next to the value array. Numbers are printed as the shortest
//! decimal that round-trips the exact f64 (up to 17 significant digits).

use crate::error::{Error, Result};
use crate::model::{ModelKind, OscillatorParams};
use serde::{Deserialize, Serialize};
use std::io::{self, Write};

/// Bounds and resolution of an evaluation grid; `*_steps` counts grid
/// points per axis (>= 2), endpoints included.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub x_min: f64,
    pub x_max: f64,
    pub p_min: f64,
    pub p_max: f64,
    pub x_steps: usize,
    pub p_steps: usize,
}

impl GridSpec {
    pub fn new(
        x_min: f64,
        x_max: f64,
        p_min: f64,
        p_max: f64,
        x_steps: usize,
        p_steps: usize,
    ) -> Result<Self> {
        if !(x_min < x_max) || !(p_min < p_max) {
            return Err(Error::domain(format!(
                "grid bounds must satisfy x_min < x_max and p_min < p_max \
                 (got x: [{x_min}, {x_max}], p: [{p_min}, {p_max}])"
            )));
        }
        if !x_min.is_finite() || !x_max.is_finite() || !p_min.is_finite() || !p_max.is_finite() {
            return Err(Error::domain("grid bounds must be finite".to_string()));
        }
        if x_steps < 2 || p_steps < 2 {
            return Err(Error::domain(format!(
                "need at least 2 grid points per axis (got {x_steps} x {p_steps})"
            )));
        }
        Ok(GridSpec {
            x_min,
            x_max,
            p_min,
            p_max,
            x_steps,
            p_steps,
        })
    }

    pub fn x_value(&self, i: usize) -> f64 {
        self.x_min + (self.x_max - self.x_min) * i as f64 / (self.x_steps - 1) as f64
    }

    pub fn p_value(&self, j: usize) -> f64 {
        self.p_min + (self.p_max - self.p_min) * j as f64 / (self.p_steps - 1) as f64
    }

    pub fn x_step(&self) -> f64 {
        (self.x_max - self.x_min) / (self.x_steps - 1) as f64
    }

    pub fn p_step(&self) -> f64 {
        (self.p_max - self.p_min) / (self.p_steps - 1) as f64
    }

    pub fn num_points(&self) -> usize {
        self.x_steps * self.p_steps
    }
}

/// Everything needed to reproduce a grid, embedded in the export.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridMetadata {
    pub model: ModelKind,
    pub n: u32,
    pub m0: f64,
    pub omega: f64,
    pub hbar: f64,
    /// `None` encodes the infinite-`a` (Hermite) sentinel.
    pub a: Option<f64>,
    pub g: f64,
    /// Relative tolerance of the hypergeometric series evaluations.
    pub series_rel_tol: f64,
    /// Relative tolerance of the parabolic-cylinder quadrature route.
    pub pcf_quad_rel_tol: f64,
    pub version: String,
}

impl GridMetadata {
    pub fn new(model: ModelKind, n: u32, params: &OscillatorParams) -> Self {
        GridMetadata {
            model,
            n,
            m0: params.m0,
            omega: params.omega,
            hbar: params.hbar,
            a: if params.a.is_finite() {
                Some(params.a)
            } else {
                None
            },
            g: params.g,
            series_rel_tol: 1e-13,
            pcf_quad_rel_tol: 1e-11,
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }
}

/// A fully evaluated distribution grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistributionGrid {
    pub metadata: GridMetadata,
    pub spec: GridSpec,
    /// Row-major, `x` outer: `values[ix * p_steps + ip]`.
    pub values: Vec<f64>,
}

impl DistributionGrid {
    pub fn value(&self, ix: usize, ip: usize) -> f64 {
        self.values[ix * self.spec.p_steps + ip]
    }

    pub fn max_value(&self) -> f64 {
        self.values.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
    }

    /// Indices `(ix, ip)` of the largest value.
    pub fn argmax(&self) -> (usize, usize) {
        let mut best = (0usize, f64::NEG_INFINITY);
        for (i, &v) in self.values.iter().enumerate() {
            if v > best.1 {
                best = (i, v);
            }
        }
        (best.0 / self.spec.p_steps, best.0 % self.spec.p_steps)
    }

    /// `x,p,value` rows, x outer, shortest round-trip decimals.
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "x,p,value")?;
        for ix in 0..self.spec.x_steps {
            let x = self.spec.x_value(ix);
            for ip in 0..self.spec.p_steps {
                writeln!(w, "{},{},{}", x, self.spec.p_value(ip), self.value(ix, ip))?;
            }
        }
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("write to Vec cannot fail");
        String::from_utf8(buf).expect("csv output is utf-8")
    }

    /// Single JSON document: metadata, grid spec, value array.
    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("grid serialization cannot fail")
    }
}
