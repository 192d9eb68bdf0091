//! Dirac-Bergmann pipeline and Dirac brackets across the bundled models,
//! checked against hand-derived results and structural invariants.

use grassmann_dirac::bracket::{
    gpb, monomial_basis, verify_graded_algebra, verify_graded_algebra_exhaustive,
    verify_graded_algebra_with_blocks, Bracket, Identity, PolySampler, SampleConfig,
};
use grassmann_dirac::coeff::Coeff;
use grassmann_dirac::constraints::{
    analyze, check_flow_matches_euler_lagrange, classify, library, Analysis, BracketVariant,
    ClassTag, ConstraintError, LagrangianModel, Stage,
};
use grassmann_dirac::dsl::load_model;
use grassmann_dirac::grassmann::{Parity, Poly};

const MIXED: &str = "
odd theta, thetabar;
even q1, q2;
param m;
L = (i/2)*(thetabar*dot(theta) - dot(thetabar)*theta) - m*thetabar*theta + (1/2)*(dot(q1) - q2)^2;
";

const THREE_ODD: &str = "
odd theta, thetabar;
odd-right eta;
param m;
L = (i/2)*(thetabar*dot(theta) - dot(thetabar)*theta) + (i/2)*eta*dot(eta) - m*thetabar*theta;
";

fn models() -> Vec<(&'static str, LagrangianModel)> {
    vec![
        ("fermionic oscillator", library::fermionic_oscillator()),
        ("simple fermion", library::simple_fermion()),
        ("gauge toy", library::gauge_toy()),
        ("harmonic oscillator", library::harmonic_oscillator()),
        ("mixed", load_model(MIXED).unwrap()),
        ("three odd", load_model(THREE_ODD).unwrap()),
    ]
}

fn var(a: &Analysis, name: &str) -> Poly {
    Poly::var(a.universe().lookup(name).unwrap())
}

#[test]
fn fermionic_oscillator_from_text_matches_hand_derivation() {
    let src = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/models/fermionic_oscillator.gham"
    ))
    .unwrap();
    let a = analyze(&load_model(&src).unwrap()).unwrap();
    let u = a.universe();
    let v = |n: &str| var(&a, n);
    let half_i = u.constant(Coeff::i() * Coeff::ratio(1, 2));
    let chi1 = v("pi_theta") - &half_i * v("thetabar");
    let chi2 = v("pi_thetabar") + &half_i * v("theta");
    assert_eq!(a.constraints.exprs(), vec![chi1.clone(), chi2.clone()]);
    assert!(a
        .constraints
        .iter()
        .all(|c| c.stage == Stage::Primary && c.class == ClassTag::Second));
    assert_eq!(a.system.hamiltonian, v("m") * v("thetabar") * v("theta"));
    assert_eq!(
        gpb(&chi1, &chi2, &a.system.phase_space).unwrap(),
        u.constant(Coeff::i())
    );
    assert!(a.multipliers.homogeneous_basis.is_empty());
    assert_eq!(a.suite.total, a.suite.first_class);

    let gd = a.dirac_bracket(BracketVariant::Standard).unwrap();
    let (th, tb, pi, pb) = (v("theta"), v("thetabar"), v("pi_theta"), v("pi_thetabar"));
    assert_eq!(gd.bracket(&th, &tb).unwrap(), u.constant(-Coeff::i()));
    assert_eq!(
        gd.bracket(&th, &pi).unwrap(),
        u.constant(Coeff::ratio(1, 2))
    );
    assert_eq!(
        gd.bracket(&tb, &pb).unwrap(),
        u.constant(Coeff::ratio(-1, 2))
    );
    assert_eq!(
        gd.bracket(&pi, &pb).unwrap(),
        u.constant(-Coeff::i() * Coeff::ratio(1, 4))
    );
    assert!(gd.bracket(&th, &pb).unwrap().is_zero());
    assert!(gd.bracket(&tb, &pi).unwrap().is_zero());
}

#[test]
fn gauge_toy_from_text_matches_hand_derivation() {
    let a = analyze(&load_model("even q1, q2; L = (1/2)*(dot(q1) - q2)^2;").unwrap()).unwrap();
    let v = |n: &str| var(&a, n);
    let half = a.universe().constant(Coeff::ratio(1, 2));
    assert_eq!(
        a.system.hamiltonian,
        &half * v("p_q1").pow(2) + v("p_q1") * v("q2")
    );
    let rows: Vec<_> = a
        .constraints
        .iter()
        .map(|c| (c.expr.clone(), c.stage, c.class))
        .collect();
    assert_eq!(
        rows,
        vec![
            (v("p_q2"), Stage::Primary, ClassTag::First),
            (v("p_q1"), Stage::Secondary(1), ClassTag::First)
        ]
    );
    assert_eq!(a.multipliers.homogeneous_basis.len(), 1);
    assert_eq!(a.suite.extended_multipliers.len(), 2);
}

#[test]
fn mixed_product_space_classification() {
    let a = analyze(&load_model(MIXED).unwrap()).unwrap();
    let v = |n: &str| var(&a, n);
    for c in a.constraints.iter() {
        let bosonic = c.expr == v("p_q1") || c.expr == v("p_q2");
        let want = if bosonic {
            ClassTag::First
        } else {
            ClassTag::Second
        };
        assert_eq!(c.class, want, "{}", c.expr.display(a.universe()));
    }
    assert_eq!(a.constraints.second_class().len(), 2);
}

#[test]
fn inconsistent_dynamics_rejected() {
    let err = analyze(&load_model("even q; L = q;").unwrap()).unwrap_err();
    assert!(matches!(err, ConstraintError::Inconsistent(_)), "{err:?}");
}

#[test]
fn classification_is_idempotent() {
    for (name, m) in models() {
        let a = analyze(&m).unwrap();
        let again = classify(&a.constraints, &a.system.phase_space).unwrap();
        assert_eq!(again, a.constraints, "{name}");
    }
}

#[test]
fn multipliers_solve_consistency_conditions() {
    for (name, m) in models() {
        let a = analyze(&m).unwrap();
        let ps = &a.system.phase_space;
        let r = a.reducer().unwrap();
        let uid = ps.universe();
        for c in a.constraints.iter() {
            let drift = gpb(&c.expr, &a.suite.first_class, ps).unwrap();
            assert!(
                r.weakly_zero(&drift).unwrap(),
                "{name}: [{}, H'] not weakly zero",
                c.expr.display(a.universe())
            );
            for basis in &a.multipliers.homogeneous_basis {
                let phi = a.multipliers.combine(basis, uid);
                assert!(
                    r.weakly_zero(&gpb(&c.expr, &phi, ps).unwrap()).unwrap(),
                    "{name}"
                );
            }
        }
        // H' − H is a combination of primary constraints
        let diff = &a.suite.first_class - &a.system.hamiltonian;
        assert!(r.weakly_zero(&diff).unwrap(), "{name}");
    }
}

#[test]
fn dirac_bracket_obeys_graded_algebra_on_every_model() {
    for (name, m) in models() {
        let a = analyze(&m).unwrap();
        let gd = a.dirac_bracket(BracketVariant::Standard).unwrap();
        let cfg = SampleConfig {
            samples: 40,
            seed: 21,
            ..SampleConfig::default()
        };
        let report =
            verify_graded_algebra_with_blocks(&gd, cfg, a.universe(), a.constraints.exprs())
                .unwrap();
        assert!(report.all_passed(), "{name}: {report:?}");
    }
}

#[test]
fn dirac_bracket_identities_exhaustive_on_oscillator() {
    let a = analyze(&library::fermionic_oscillator()).unwrap();
    let gd = a.dirac_bracket(BracketVariant::Standard).unwrap();
    let basis = monomial_basis(&a.system.phase_space, 3);
    let report = verify_graded_algebra_exhaustive(&gd, &basis, a.universe()).unwrap();
    for r in &report.results {
        assert!(r.passed, "{}: {:?}", r.label, r.counterexample);
    }
}

#[test]
fn second_class_constraints_are_dirac_central() {
    for (name, m) in models() {
        let a = analyze(&m).unwrap();
        let gd = a.dirac_bracket(BracketVariant::Standard).unwrap();
        let r = a.reducer().unwrap();
        let mut sampler = PolySampler::new(
            &a.system.phase_space,
            SampleConfig {
                seed: 5,
                ..SampleConfig::default()
            },
        );
        for k in 0..30 {
            let f = sampler.sample(if k % 2 == 0 {
                Parity::Even
            } else {
                Parity::Odd
            });
            for chi in a.constraints.second_class() {
                let b = gd.bracket(&f, &chi).unwrap();
                assert!(
                    r.weakly_zero(&b).unwrap(),
                    "{name}: [{}, {}]",
                    f.display(a.universe()),
                    chi.display(a.universe())
                );
            }
        }
    }
}

#[test]
fn dirac_and_poisson_dynamics_agree_weakly() {
    for (name, m) in models() {
        let a = analyze(&m).unwrap();
        let ps = &a.system.phase_space;
        let gd = a.dirac_bracket(BracketVariant::Standard).unwrap();
        let r = a.reducer().unwrap();
        for g in ps.canonical_generators() {
            let f = Poly::var(g);
            let poisson = gpb(&f, &a.suite.total, ps).unwrap();
            let dirac = gd.bracket(&f, &a.suite.total).unwrap();
            assert!(
                r.weakly_equal(&poisson, &dirac).unwrap(),
                "{name}: {}",
                a.universe().name(g)
            );
        }
    }
}

#[test]
fn hamilton_flow_reproduces_euler_lagrange() {
    for (name, m) in models() {
        let a = analyze(&m).unwrap();
        let flow = check_flow_matches_euler_lagrange(&a).unwrap();
        assert!(flow.passed, "{name}: {flow:?}");
    }
}

/// `[A,E] + [E,A]` under the first alternative ordering equals
/// `2 [χ_β,E] C^{ββ′} [χ_β′,A]`.
#[test]
fn first_variant_antisymmetry_residual_is_exact() {
    let a = analyze(&library::fermionic_oscillator()).unwrap();
    let ps = &a.system.phase_space;
    let gd1 = a.dirac_bracket(BracketVariant::Gd1).unwrap();
    let chi = gd1.second_class().to_vec();
    let cinv = gd1.inverse_matrix().clone();
    let two = a.universe().constant(Coeff::from_int(2));
    let predicted = |e: &Poly, x: &Poly| -> Poly {
        let mut out = a.universe().zero();
        for b in 0..chi.len() {
            for b2 in 0..chi.len() {
                let c = cinv.get(b, b2);
                out = out + (gpb(&chi[b], e, ps).unwrap() * gpb(&chi[b2], x, ps).unwrap()).scale(c);
            }
        }
        &two * out
    };
    let mut sampler = PolySampler::new(
        ps,
        SampleConfig {
            seed: 9,
            ..SampleConfig::default()
        },
    );
    let mut nonzero = 0;
    for _ in 0..200 {
        let (x, e) = (sampler.sample(Parity::Odd), sampler.sample(Parity::Even));
        let residual = Identity::Antisymmetry
            .residual(&gd1, &[x.clone(), e.clone()])
            .unwrap();
        assert_eq!(residual, predicted(&e, &x));
        nonzero += usize::from(!residual.is_zero());
    }
    assert!(nonzero > 20, "only {nonzero} samples exercised the failure");
    let report = verify_graded_algebra(&gd1, SampleConfig::default(), a.universe()).unwrap();
    assert!(!report.result(Identity::Antisymmetry).passed);
}

/// `[E,FA] − [E,F]A − F[E,A]` under the second alternative ordering equals
/// `2 [χ_β′,F] C^{ββ′} [E,χ_β] A` for even `E`, `F` and odd `A`.
#[test]
fn second_variant_leibniz_residual_is_exact() {
    let a = analyze(&library::fermionic_oscillator()).unwrap();
    let ps = &a.system.phase_space;
    let gd2 = a.dirac_bracket(BracketVariant::Gd2).unwrap();
    let chi = gd2.second_class().to_vec();
    let cinv = gd2.inverse_matrix().clone();
    let two = a.universe().constant(Coeff::from_int(2));
    let predicted = |e: &Poly, f: &Poly, x: &Poly| -> Poly {
        let mut out = a.universe().zero();
        for b in 0..chi.len() {
            for b2 in 0..chi.len() {
                let c = cinv.get(b, b2);
                out = out
                    + (gpb(&chi[b2], f, ps).unwrap() * gpb(e, &chi[b], ps).unwrap() * x).scale(c);
            }
        }
        &two * out
    };
    let mut sampler = PolySampler::new(
        ps,
        SampleConfig {
            seed: 10,
            ..SampleConfig::default()
        },
    );
    let mut nonzero = 0;
    for _ in 0..200 {
        let (e, f, x) = (
            sampler.sample(Parity::Even),
            sampler.sample(Parity::Even),
            sampler.sample(Parity::Odd),
        );
        let residual = Identity::LeibnizEven
            .residual(&gd2, &[e.clone(), f.clone(), x.clone()])
            .unwrap();
        assert_eq!(residual, predicted(&e, &f, &x));
        nonzero += usize::from(!residual.is_zero());
    }
    assert!(nonzero > 20, "only {nonzero} samples exercised the failure");
    let report = verify_graded_algebra(&gd2, SampleConfig::default(), a.universe()).unwrap();
    assert!(!report.result(Identity::LeibnizEven).passed);
    assert!(report.result(Identity::Antisymmetry).passed);
}

#[test]
fn even_second_class_system_gives_textbook_dirac_bracket() {
    // p_x ≈ 0 and p_y − x ≈ 0 with C = [[0,1],[−1,0]]
    let a = analyze(&load_model("even x, y; L = x*dot(y) - (1/2)*(x^2 + y^2);").unwrap()).unwrap();
    let u = a.universe();
    let v = |n: &str| var(&a, n);
    assert!(a.constraints.iter().all(|c| c.class == ClassTag::Second));
    let gd = a.dirac_bracket(BracketVariant::Standard).unwrap();
    assert_eq!(
        gd.bracket(&v("x"), &v("y")).unwrap(),
        u.constant(Coeff::from_int(-1))
    );
    assert_eq!(gd.bracket(&v("y"), &v("p_y")).unwrap(), u.one());
    assert!(gd.bracket(&v("x"), &v("p_x")).unwrap().is_zero());
    // reduced dynamics: ẏ ≈ x, ẋ ≈ −y
    let r = a.reducer().unwrap();
    assert!(r
        .weakly_equal(&gd.bracket(&v("y"), &a.suite.total).unwrap(), &v("x"))
        .unwrap());
    assert!(r
        .weakly_equal(&gd.bracket(&v("x"), &a.suite.total).unwrap(), &-v("y"))
        .unwrap());
    let report = verify_graded_algebra(&gd, SampleConfig::default(), u).unwrap();
    assert!(report.all_passed());
}
