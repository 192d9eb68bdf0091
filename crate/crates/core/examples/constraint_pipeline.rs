//! Legendre transform, constraint propagation, classification and the
//! Hamiltonian hierarchy for the bundled textbook models.
//!
//! Run with `cargo run --example constraint_pipeline`.

use grassmann_dirac::constraints::{analyze, check_flow_matches_euler_lagrange, library};

fn main() {
    let models = [
        ("fermionic oscillator", library::fermionic_oscillator()),
        ("gauge toy", library::gauge_toy()),
        ("harmonic oscillator", library::harmonic_oscillator()),
    ];
    for (name, model) in models {
        let a = analyze(&model).unwrap();
        let u = a.universe();
        println!(
            "== {name}: L = {}",
            model.lagrangian.display(&model.universe)
        );
        for (expr, stage, class) in a.constraints.table(u) {
            println!("   {expr:<28} {stage:?}, {class:?} class");
        }
        for (m, v) in a
            .multipliers
            .multipliers
            .iter()
            .zip(&a.multipliers.particular)
        {
            println!("   {} = {}", u.name(*m), v.display(u));
        }
        println!("   H   = {}", a.suite.canonical.display(u));
        println!("   H'  = {}", a.suite.first_class.display(u));
        println!("   H_T = {}", a.suite.total.display(u));
        println!("   H_E = {}", a.suite.extended.display(u));
        let flow = check_flow_matches_euler_lagrange(&a).unwrap();
        println!(
            "   Hamilton flow reproduces Euler-Lagrange: {}\n",
            flow.passed
        );
    }
}
