//! Evaluate a distribution on a grid and export it as CSV and as a JSON
//! document with embedded metadata.
//!
//! ```bash
//! cargo run --release --example grid_export
//! ```

use phasedist::grid::GridSpec;
use phasedist::husimi::husimi_grid;
use phasedist::model::{ModelKind, OscillatorParams};

fn main() {
    let params = OscillatorParams::semiconfined(1.0, 1.0, 1.0, 2.0, 1.0).unwrap();
    let spec = GridSpec::new(-1.95, 5.0, -5.0, 5.0, 101, 101).unwrap();
    let grid = husimi_grid(ModelKind::Semiconfined, 1, &spec, &params).unwrap();

    let dir = std::path::Path::new("target/grid_export");
    std::fs::create_dir_all(dir).unwrap();
    let csv_path = dir.join("husimi_n1_a2_g1.csv");
    let json_path = dir.join("husimi_n1_a2_g1.json");
    std::fs::write(&csv_path, grid.to_csv_string()).unwrap();
    std::fs::write(&json_path, grid.to_json_string()).unwrap();

    let (ix, ip) = grid.argmax();
    println!("wrote {}", csv_path.display());
    println!("wrote {}", json_path.display());
    println!(
        "grid {}x{}, max value {:.6} at (x, p) = ({}, {})",
        spec.x_steps,
        spec.p_steps,
        grid.max_value(),
        spec.x_value(ix),
        spec.p_value(ip)
    );
    println!(
        "metadata: model={} n={} a={:?} g={} version={}",
        grid.metadata.model, grid.metadata.n, grid.metadata.a, grid.metadata.g, grid.metadata.version
    );
}
