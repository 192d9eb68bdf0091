//! Products, signs and one-sided derivatives of Grassmann polynomials.
//!
//! Run with `cargo run --example grassmann_algebra`.

use grassmann_dirac::coeff::Coeff;
use grassmann_dirac::grassmann::{check_mixed_derivative_identities, Parity, Poly, Side, Universe};

fn main() {
    let mut u = Universe::new();
    let th1 = u.add("theta1", Parity::Odd).unwrap();
    let th2 = u.add("theta2", Parity::Odd).unwrap();
    let q = u.add("q", Parity::Even).unwrap();
    let (a, b, x) = (Poly::var(th1), Poly::var(th2), Poly::var(q));

    let ab = &a * &b;
    let ba = &b * &a;
    println!("theta1 theta2      = {}", ab.display(&u));
    println!("theta2 theta1      = {}", ba.display(&u));
    println!("theta1 theta1      = {}", (&a * &a).display(&u));
    println!("(theta1 theta2)^2  = {}", ab.pow(2).display(&u));

    let f = (&x * &ab).scale(&Coeff::i()) + x.pow(2) * &b;
    println!("\nf = {}", f.display(&u));
    for side in [Side::Left, Side::Right] {
        println!(
            "d{side:?}/dtheta1 f = {}",
            f.derivative(th1, side).unwrap().display(&u)
        );
        println!(
            "d{side:?}/dtheta2 f = {}",
            f.derivative(th2, side).unwrap().display(&u)
        );
    }
    println!(
        "d/dq f = {}",
        f.derivative(q, Side::Left).unwrap().display(&u)
    );

    let report = check_mixed_derivative_identities(&f, th1, th2, &u).unwrap();
    println!("\nmixed second derivatives consistent: {}", report.passed);
}
