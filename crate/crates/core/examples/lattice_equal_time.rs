//! Constraint analysis of the free Dirac field on a periodic lattice:
//! the constraint matrix, its inverse, the equal-time Dirac brackets and
//! the anticommutators obtained from them.
//!
//! Run with `cargo run --example lattice_equal_time`.

use grassmann_dirac::lattice::{
    build_dirac_model, build_symbolic, constraint_matrix, equal_time_gdb, quantize, LatticeModel,
};

fn main() {
    let model = LatticeModel::new(1, 8, 0.5, 1.0).unwrap();
    let dl = build_dirac_model(&model);
    let c = constraint_matrix(&dl).unwrap();
    println!(
        "d={} N={} a={} m={}: {} components",
        model.dim,
        model.sites,
        model.spacing,
        model.mass,
        model.components()
    );
    println!("C C^-1 = 1 up to {:.1e}", c.identity_residual);

    println!("\nequal-time Dirac brackets, spinor block at zero separation:");
    let kernels = equal_time_gdb(&dl).unwrap();
    for k in &kernels {
        let row: Vec<String> = (0..4)
            .map(|l| format!("{:+.3}", k.entry(l, 0, l, 0)))
            .collect();
        println!(
            "  {:<16} diag {}   max |entry| {:.3}",
            k.label,
            row.join(" "),
            k.max_abs()
        );
    }

    let anti = quantize(&kernels[8]);
    println!(
        "\n{}: entry (0,x=0; 0,x=0) = {:.4}",
        anti.label,
        anti.entry(0, 0, 0, 0)
    );
    println!(
        "translation invariant to {:.1e}",
        anti.translation_residual(&model)
    );

    let small = LatticeModel::new(1, 2, 0.5, 1.0).unwrap();
    let sym = build_symbolic(&small).unwrap();
    println!(
        "\nexact pipeline on N=2: {} pairs, {} constraints, {} secondary",
        sym.pair_count(),
        sym.constraint_count(),
        sym.secondary_count()
    );
    let json = serde_json::to_string(&anti.to_json()).unwrap();
    println!("kernel JSON export: {} bytes", json.len());
}
