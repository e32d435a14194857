//! Energy spectra of the two models. Without the field the semiconfined
//! spectrum coincides with the harmonic one for every wall distance; with
//! the field it stays equidistant with spacing hbar omega g0.
//!
//! ```bash
//! cargo run --release --example spectrum
//! ```

use phasedist::model::{derive, energy_hermite, energy_semiconfined, OscillatorParams};

fn main() {
    let hermite = OscillatorParams::hermite(1.0, 1.0, 1.0, 0.0).unwrap();
    println!("{:>3} {:>10} {:>14} {:>14} {:>14}", "n", "harmonic", "sc a=0.5", "sc a=2", "sc a=12");
    for n in 0..=5u32 {
        let e_h = energy_hermite(n, &hermite);
        let row: Vec<f64> = [0.5, 2.0, 12.0]
            .iter()
            .map(|&a| {
                let p = OscillatorParams::semiconfined(1.0, 1.0, 1.0, a, 0.0).unwrap();
                energy_semiconfined(n, &p).unwrap()
            })
            .collect();
        println!("{n:>3} {e_h:>10.4} {:>14.10} {:>14.10} {:>14.10}", row[0], row[1], row[2]);
    }

    println!("\nwith field g = 1, a = 12 (spacing hbar omega g0 = sqrt(7/6)):");
    let p = OscillatorParams::semiconfined(1.0, 1.0, 1.0, 12.0, 1.0).unwrap();
    let dp = derive(&p).unwrap();
    for n in 0..=4u32 {
        let e = energy_semiconfined(n, &p).unwrap();
        print!("E_{n} = {e:.10}");
        if n > 0 {
            let gap = e - energy_semiconfined(n - 1, &p).unwrap();
            print!("   gap {gap:.12} (g0 = {:.12})", dp.g0);
        }
        println!();
    }
}
