//! The full lattice check suite with custom tolerances and its
//! deterministic JSON report, as used by `gdirac lattice`.
//!
//! Run with `cargo run --release --example check_suite`.

use grassmann_dirac::cli::{lattice_source, LatticeOptions};
use grassmann_dirac::lattice::{Check, Tolerances};

const CONFIG: &str = "lattice { dim = 1; sites = 8; spacing = 0.5; mass = 1; checks = [all]; }";

fn main() {
    let opts = LatticeOptions {
        checks: Some(Check::ALL.to_vec()),
        seed: 0,
        tolerances: Tolerances {
            derived: 1e-11,
            ..Tolerances::default()
        },
    };
    let report = lattice_source("inline", CONFIG, &opts).unwrap();
    print!("{}", report.render());
    let json = report.to_json();
    let again = lattice_source("inline", CONFIG, &opts).unwrap().to_json();
    println!(
        "\nJSON report: {} bytes, reproducible: {}",
        json.len(),
        json == again
    );
    println!("exit status: {}", report.status().code());
}
