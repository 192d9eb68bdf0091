//! Arbitrariness of the evolution generated by first-class constraints:
//! shifting the multiplier of `p_q2` changes `q2` but not gauge-invariant
//! quantities.
//!
//! Run with `cargo run --example gauge_transformation`.

use grassmann_dirac::constraints::{analyze, gauge_transform, library};
use grassmann_dirac::grassmann::{Parity, Poly};

fn main() {
    let mut model = library::gauge_toy();
    let eps = model.universe.add("eps", Parity::Even).unwrap();
    model.parameters.push(eps);
    let a = analyze(&model).unwrap();
    let u = a.universe();
    let ps = &a.system.phase_space;
    let v = |n: &str| Poly::var(u.lookup(n).unwrap());

    let idx = a
        .constraints
        .iter()
        .position(|c| c.expr == v("p_q2"))
        .unwrap();
    let delta = [(idx, Poly::var(eps))];
    println!("H_T = {}", a.suite.total.display(u));
    println!("shift v1 -> v1 + eps\n");
    for f in ["q1", "q2", "p_q1", "p_q2"] {
        for order in [1, 2] {
            let d = gauge_transform(&v(f), &delta, order, &a.suite, &a.constraints, ps).unwrap();
            println!("  delta {f:<5} (order {order}) = {}", d.display(u));
        }
    }
    let invariant = v("p_q1");
    let d = gauge_transform(&invariant, &delta, 2, &a.suite, &a.constraints, ps).unwrap();
    println!("\np_q1 is gauge invariant: {}", d.is_zero());
}
