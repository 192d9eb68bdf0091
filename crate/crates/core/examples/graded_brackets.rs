//! The graded Poisson bracket on a mixed phase space and a randomized
//! check of its eight algebraic identities.
//!
//! Run with `cargo run --example graded_brackets`.

use grassmann_dirac::bracket::{
    gpb, verify_graded_algebra, CanonicalPair, PairKind, PhaseSpace, PoissonBracket, SampleConfig,
};
use grassmann_dirac::grassmann::{Parity, Poly, Universe};

fn main() {
    let mut u = Universe::new();
    let q = u.add("q", Parity::Even).unwrap();
    let p = u.add("p", Parity::Even).unwrap();
    let th = u.add("theta", Parity::Odd).unwrap();
    let pi = u.add("pi", Parity::Odd).unwrap();
    let ps = PhaseSpace::new(
        u.id(),
        vec![
            CanonicalPair::new(q, p, PairKind::Even),
            CanonicalPair::new(th, pi, PairKind::OddRight),
        ],
        vec![],
    )
    .unwrap();

    let v = Poly::var;
    let show = |f: &Poly, g: &Poly| {
        println!(
            "[{}, {}] = {}",
            f.display(&u),
            g.display(&u),
            gpb(f, g, &ps).unwrap().display(&u)
        );
    };
    show(&v(q), &v(p));
    show(&v(th), &v(pi));
    show(&v(pi), &v(th));
    show(&(v(q) * v(th)), &(v(p) * v(pi)));
    show(&(v(th) * v(pi)), &v(th));

    let cfg = SampleConfig {
        samples: 200,
        ..SampleConfig::default()
    };
    let report = verify_graded_algebra(&PoissonBracket::new(&ps), cfg, &u).unwrap();
    println!(
        "\n{} random samples per identity (seed {:#x}):",
        cfg.samples, cfg.seed
    );
    for r in &report.results {
        println!(
            "  {:<18} {}",
            r.label,
            if r.passed { "holds" } else { "FAILS" }
        );
    }
}
