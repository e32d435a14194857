//! Watch the semiconfined distribution converge to the harmonic-oscillator
//! one as the wall recedes: sup-norm differences over a 21x21 grid for
//! a = 2, 4, 8, 12.
//!
//! ```bash
//! cargo run --release --example hermite_limit
//! ```

use phasedist::grid::GridSpec;
use phasedist::limits::{hermite_limit_check, laguerre_to_hermite_check};
use phasedist::model::OscillatorParams;

fn main() {
    let spec = GridSpec::new(-3.0, 3.0, -3.0, 3.0, 21, 21).unwrap();
    let base = OscillatorParams::semiconfined(1.0, 1.0, 1.0, 1.0, 0.0).unwrap();
    let a_values = [2.0, 4.0, 8.0, 12.0];

    println!("sup |W_semiconfined - W_hermite| over p, x in [-3, 3]:");
    println!("{:>4} {:>4} {:>10} {:>10} {:>10} {:>10}", "n", "g", "a=2", "a=4", "a=8", "a=12");
    for n in [0u32, 1] {
        for g in [0.0, 1.0] {
            let s = hermite_limit_check(n, g, &a_values, &spec, &base).unwrap();
            println!(
                "{n:>4} {g:>4} {:>10.2e} {:>10.2e} {:>10.2e} {:>10.2e}   {}",
                s.sup_differences[0],
                s.sup_differences[1],
                s.sup_differences[2],
                s.sup_differences[3],
                if s.monotone { "strictly decreasing" } else { "NOT decreasing" }
            );
        }
    }

    println!("\nunderlying polynomial limit (Laguerre -> Hermite), residuals:");
    for (n, x) in [(1u32, 0.5), (2, -1.0)] {
        let s = laguerre_to_hermite_check(n, x, &[1e2, 1e3, 1e4, 1e5, 1e6]);
        let r: Vec<String> = s
            .sup_differences
            .iter()
            .map(|v| format!("{v:.2e}"))
            .collect();
        println!("  n={n} x={x}: {}  (rate ~ alpha^-1/2)", r.join("  "));
    }
}
