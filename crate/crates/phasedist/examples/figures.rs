//! Reproduce the twelve default figure grids: ground and first excited
//! state, wall distances 0.5 / 2 / 12, field off and on (m0 = omega =
//! hbar = 1). Equivalent to `phasedist figures --out target/figures`.
//!
//! ```bash
//! cargo run --release --example figures
//! ```

use phasedist::cli::{figure_grid_spec, figure_parameter_sets};
use phasedist::husimi::husimi_grid;
use phasedist::model::{ModelKind, OscillatorParams};

fn main() {
    let dir = std::path::Path::new("target/figures");
    std::fs::create_dir_all(dir).unwrap();
    for (n, a, g) in figure_parameter_sets() {
        let params = OscillatorParams::semiconfined(1.0, 1.0, 1.0, a, g).unwrap();
        let spec = figure_grid_spec(a);
        let grid = husimi_grid(ModelKind::Semiconfined, n, &spec, &params).unwrap();
        let path = dir.join(format!("fig_n{n}_a{a}_g{g}.csv"));
        std::fs::write(&path, grid.to_csv_string()).unwrap();
        let (ix, ip) = grid.argmax();
        println!(
            "{}  max {:.4} at (x, p) = ({:.3}, {:.3})",
            path.display(),
            grid.max_value(),
            spec.x_value(ix),
            spec.p_value(ip)
        );
    }
    println!("\nplot e.g. with python/matplotlib: read the csv, pivot on (x, p).");
}
