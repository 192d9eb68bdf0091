//! Time evolution on the lattice: powers of the first-class Hamiltonian
//! flow, the derivative identities of the lattice Delta function, and the
//! non-equal-time anticommutator as a series and in closed form.
//!
//! Run with `cargo run --example lattice_time_evolution`.

use grassmann_dirac::lattice::{
    build_dirac_model, closed_form_anticommutator, series_anticommutator, theorem1_numeric,
    verify_lemma, LatticeModel,
};

fn main() {
    let model = LatticeModel::new(1, 16, 0.5, 1.0).unwrap();
    let dl = build_dirac_model(&model);

    let t1 = theorem1_numeric(&dl, 8);
    println!("flow^n on psi vs B^n:");
    for (n, r) in &t1.orders {
        println!("  n={n}: {r:.2e}");
    }

    println!("\n(Laplacian - m^2)^k delta vs i Delta^(2k+1)(0):");
    for k in 0..6 {
        let r = verify_lemma(&model, k);
        println!("  k={k}: {:.2e} (scale {:.2e})", r.residual, r.lhs_scale);
    }

    println!("\nseries vs closed form of [psi(t+tau), psibar(t)]:");
    for tau in [0.0, 0.05, 0.1, 0.3] {
        let s = series_anticommutator(&model, tau, 40);
        let c = closed_form_anticommutator(&model, tau);
        println!(
            "  tau={tau:<5} max diff {:.2e}, max |K| {:.3}",
            s.max_abs_diff(&c.matrix),
            c.max_abs()
        );
    }
}
