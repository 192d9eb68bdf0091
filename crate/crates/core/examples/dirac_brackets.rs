//! The graded Dirac bracket on the fermionic oscillator, the equal-time
//! table it produces, and why the two tempting alternative orderings of
//! the correction term are not brackets.
//!
//! Run with `cargo run --example dirac_brackets`.

use grassmann_dirac::bracket::{gpb, verify_graded_algebra, Bracket, SampleConfig};
use grassmann_dirac::constraints::{analyze, library, BracketVariant};
use grassmann_dirac::grassmann::Poly;

fn main() {
    let a = analyze(&library::fermionic_oscillator()).unwrap();
    let u = a.universe();
    let ps = &a.system.phase_space;
    let gd = a.dirac_bracket(BracketVariant::Standard).unwrap();
    let gens = ps.canonical_generators();

    println!("{:<12} {:<12} {:>10} {:>10}", "F", "G", "gp", "gd");
    for &x in &gens {
        for &y in &gens {
            let (f, g) = (Poly::var(x), Poly::var(y));
            let p = gpb(&f, &g, ps).unwrap();
            let d = gd.bracket(&f, &g).unwrap();
            println!(
                "{:<12} {:<12} {:>10} {:>10}",
                u.name(x),
                u.name(y),
                p.display(u).to_string(),
                d.display(u).to_string()
            );
        }
    }

    println!("\nconstraints are Dirac-central:");
    for c in a.constraints.iter() {
        let zero = gens
            .iter()
            .all(|&x| gd.bracket(&Poly::var(x), &c.expr).unwrap().is_zero());
        println!("  [*, {}]_gd = 0: {zero}", c.expr.display(u));
    }

    let cfg = SampleConfig {
        samples: 100,
        ..SampleConfig::default()
    };
    for v in [
        BracketVariant::Standard,
        BracketVariant::Gd1,
        BracketVariant::Gd2,
    ] {
        let br = a.dirac_bracket(v).unwrap();
        let report = verify_graded_algebra(&br, cfg, u).unwrap();
        let failed: Vec<_> = report
            .results
            .iter()
            .filter(|r| !r.passed)
            .map(|r| r.label)
            .collect();
        println!(
            "\n{}: {}",
            v.label(),
            if failed.is_empty() {
                "all identities hold".into()
            } else {
                format!("fails {failed:?}")
            }
        );
        if let Some(r) = report.results.iter().find(|r| !r.passed) {
            let cx = r.counterexample.as_ref().unwrap();
            println!(
                "  e.g. {} on {:?} leaves {}",
                r.label, cx.arguments, cx.residual
            );
        }
    }
}
