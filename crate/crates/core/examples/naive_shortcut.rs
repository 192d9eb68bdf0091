//! Reading the conjugate field off a constraint `pi = c thetabar` and using
//! an ordinary Poisson bracket gives the right answer only for one
//! Lagrangian and one argument order.
//!
//! Run with `cargo run --example naive_shortcut`.

use grassmann_dirac::constraints::naive_fragility_table;

fn main() {
    println!(
        "{:<12} {:<20} {:>10} {:>10}  agrees",
        "lagrangian", "ordering", "shortcut", "dirac"
    );
    for c in naive_fragility_table().unwrap() {
        println!(
            "{:<12} {:<20} {:>10} {:>10}  {}",
            c.lagrangian, c.ordering, c.shortcut, c.dirac, c.agrees
        );
    }
}
