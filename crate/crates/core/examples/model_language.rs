//! Parsing, pretty-printing and elaborating a `.gham` model, plus the
//! diagnostics produced for bad input.
//!
//! Run with `cargo run --example model_language`.

use grassmann_dirac::constraints::analyze;
use grassmann_dirac::dsl::{elaborate, parse, print_spec};

const SOURCE: &str = r#"
# a Dirac pair plus one real odd mode
odd theta, thetabar;
odd-right eta;
param m;
L = (i/2)*(thetabar*dot(theta) - dot(thetabar)*theta)
  + (i/2)*eta*dot(eta)
  - m*thetabar*theta;
"#;

fn main() {
    let spec = parse(SOURCE).unwrap();
    println!("canonical form:\n{}", print_spec(&spec));
    let reparsed = parse(&print_spec(&spec)).unwrap();
    println!(
        "round trip preserves the AST: {}",
        reparsed.without_spans() == spec.without_spans()
    );

    let model = elaborate(&spec).unwrap();
    let a = analyze(&model).unwrap();
    println!("\n{} constraints:", a.constraints.len());
    for (expr, stage, class) in a.constraints.table(a.universe()) {
        println!("  {expr}  ({stage:?}, {class:?})");
    }

    for bad in [
        "odd theta; L = theta*;",
        "even q; L = dot(r)^2;",
        "even q; L = q/x;",
    ] {
        let err = parse(bad)
            .and_then(|s| elaborate(&s).map(|_| s))
            .unwrap_err();
        println!("\n{bad}\n  -> {err}");
    }
}
