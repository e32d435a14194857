//! Run the quick verification battery and print one line per check.
//! The full battery (including the 11x11 oracle cross-validation and the
//! 2-D normalization integrals) is available through the CLI:
//! `phasedist verify`.
//!
//! ```bash
//! cargo run --release --example verification
//! ```

use phasedist::cli::verification_battery;
use phasedist::oracle::QuadratureControl;

fn main() {
    let ctl = QuadratureControl::default();
    let reports = verification_battery(&ctl, true).unwrap();
    let mut failed = 0;
    for r in &reports {
        println!("{r}");
        if !r.pass {
            failed += 1;
        }
    }
    println!("\n{} checks, {} failed", reports.len(), failed);
    std::process::exit(if failed == 0 { 0 } else { 1 });
}
