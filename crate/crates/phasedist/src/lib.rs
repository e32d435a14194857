//! Phase-space (Husimi) distributions of two oscillator models: the standard
//! quantum harmonic oscillator (with an optional homogeneous external field)
//! and a semiconfined oscillator with a position-dependent effective mass,
//! whose stationary states live on `(-a, inf)` and vanish at the wall
//! `x = -a`.
//!
//! The closed forms are evaluated through overflow-safe log-space arithmetic
//! (the prefactors overflow `f64` already at `a = 12`), and everything is
//! independently verifiable against direct adaptive quadrature of the
//! defining smoothing integral.
//!
//! # Modules
//!
//! | module | contents |
//! |--------|----------|
//! | [`specfun`] | log-gamma, Pochhammer, Hermite/Laguerre, complex 1F1, parabolic cylinder `D_nu` |
//! | [`model`] | oscillator parameters, wavefunctions, energy spectra |
//! | [`husimi`] | closed-form distribution evaluators and grid evaluation |
//! | [`oracle`] | quadrature of the definition, orthonormality / table-integral / normalization checks |
//! | [`limits`] | reduction and limit-relation checks (semiconfined -> harmonic as `a -> inf`) |
//! | [`cli`] | the command-line front end used by the `phasedist` binary |
//!
//! # Examples
//!
//! Each major capability has a runnable example:
//!
//! ```bash
//! cargo run --release --example point_eval
//! cargo run --release --example grid_export
//! cargo run --release --example figures
//! cargo run --release --example verification
//! cargo run --release --example hermite_limit
//! cargo run --release --example spectrum
//! cargo run --release --example special_functions
//! ```
//!
//! # Quick start
//!
//! ```
//! use phasedist::model::{derive, OscillatorParams};
//! use phasedist::husimi::{husimi_semiconfined, PhasePoint};
//!
//! let params = OscillatorParams::semiconfined(1.0, 1.0, 1.0, 1.0, 0.0).unwrap();
//! let dp = derive(&params).unwrap();
//! let w = husimi_semiconfined(0, PhasePoint { x: 0.0, p: 0.0 }, &params, &dp).unwrap();
//! assert!((w.value() - 0.13213282025798768).abs() < 1e-12);
//! ```

mod dd;
pub mod cli;
pub mod error;
pub mod grid;
pub mod husimi;
pub mod limits;
pub mod model;
pub mod oracle;
pub mod quad;
pub mod scaled;
pub mod specfun;

pub use error::{Error, Result};
pub use scaled::ScaledComplex;
