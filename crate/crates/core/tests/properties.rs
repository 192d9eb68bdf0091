//! Randomized and exhaustive properties of the Grassmann algebra, the
//! graded bracket and the model-language printer.

use grassmann_dirac::bracket::{gpb, CanonicalPair, PairKind, PhaseSpace};
use grassmann_dirac::coeff::Coeff;
use grassmann_dirac::dsl::{parse, parse_expr, print_expr, print_spec, Expr, ExprKind, Span};
use grassmann_dirac::grassmann::{
    check_mixed_derivative_identities, Generator, Parity, Poly, Side, Universe,
};
use proptest::prelude::*;

struct Algebra {
    u: Universe,
    gens: Vec<Generator>,
}

/// Three even and four odd generators.
fn algebra() -> Algebra {
    let mut u = Universe::new();
    let mut gens = Vec::new();
    for k in 0..3 {
        gens.push(u.add(&format!("q{k}"), Parity::Even).unwrap());
    }
    for k in 0..4 {
        gens.push(u.add(&format!("t{k}"), Parity::Odd).unwrap());
    }
    Algebra { u, gens }
}

type Terms = Vec<(Vec<usize>, (i8, i8))>;

fn terms() -> impl Strategy<Value = Terms> {
    prop::collection::vec(
        (prop::collection::vec(0usize..7, 0..4), (-3i8..4, -2i8..3)),
        0..5,
    )
}

fn build(alg: &Algebra, t: &Terms) -> Poly {
    t.iter().fold(alg.u.zero(), |acc, (idx, (re, im))| {
        let gens: Vec<Generator> = idx.iter().map(|&i| alg.gens[i]).collect();
        let c = Coeff::from_int(*re as i64) + Coeff::i() * Coeff::from_int(*im as i64);
        acc + Poly::product_of(alg.u.id(), &gens).scale(&c)
    })
}

fn homogeneous_parts(p: &Poly) -> [(Poly, bool); 2] {
    let (e, o) = p.parity_split();
    [(e, false), (o, true)]
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, ..ProptestConfig::default() })]

    #[test]
    fn multiplication_is_associative(a in terms(), b in terms(), c in terms()) {
        let alg = algebra();
        let (a, b, c) = (build(&alg, &a), build(&alg, &b), build(&alg, &c));
        prop_assert_eq!((&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn multiplication_is_graded_commutative(a in terms(), b in terms()) {
        let alg = algebra();
        let (a, b) = (build(&alg, &a), build(&alg, &b));
        for (x, xo) in homogeneous_parts(&a) {
            for (y, yo) in homogeneous_parts(&b) {
                let swapped = &y * &x;
                let want = if xo && yo { -swapped } else { swapped };
                prop_assert_eq!(&x * &y, want);
            }
        }
    }

    #[test]
    fn odd_generators_square_to_zero(k in 3usize..7, a in terms()) {
        let alg = algebra();
        let t = Poly::var(alg.gens[k]);
        prop_assert!((&t * &t).is_zero());
        let p = &build(&alg, &a) * &t;
        prop_assert!((&p * &t).is_zero());
    }

    #[test]
    fn product_order_only_changes_the_sign(perm in Just((3usize..7).collect::<Vec<_>>()).prop_shuffle()) {
        let alg = algebra();
        let shuffled: Vec<Generator> = perm.iter().map(|&i| alg.gens[i]).collect();
        let sorted: Vec<Generator> = (3..7).map(|i| alg.gens[i]).collect();
        let mut inversions = 0;
        for i in 0..perm.len() {
            for j in i + 1..perm.len() {
                inversions += usize::from(perm[i] > perm[j]);
            }
        }
        let base = Poly::product_of(alg.u.id(), &sorted);
        let want = if inversions % 2 == 1 { -base } else { base };
        prop_assert_eq!(Poly::product_of(alg.u.id(), &shuffled), want);
    }

    #[test]
    fn left_and_right_derivatives_differ_by_parity(a in terms(), k in 3usize..7) {
        let alg = algebra();
        let g = alg.gens[k];
        for (x, odd) in homogeneous_parts(&build(&alg, &a)) {
            let l = x.derivative(g, Side::Left).unwrap();
            let r = x.derivative(g, Side::Right).unwrap();
            prop_assert_eq!(l, if odd { r } else { -r });
        }
    }

    #[test]
    fn mixed_derivative_identities_on_random_polys(a in terms(), k in 3usize..7, l in 3usize..7) {
        let alg = algebra();
        let f = build(&alg, &a);
        let report = check_mixed_derivative_identities(&f, alg.gens[k], alg.gens[l], &alg.u).unwrap();
        prop_assert!(report.passed, "{:?}", report.violation);
    }

    #[test]
    fn bracket_parity_and_even_slot_derivation(a in terms(), b in terms(), c in terms()) {
        let (alg, ps) = phase_space();
        let (a, b, c) = (build(&alg, &a), build(&alg, &b), build(&alg, &c));
        for (x, xo) in homogeneous_parts(&a) {
            for (y, yo) in homogeneous_parts(&b) {
                let br = gpb(&x, &y, &ps).unwrap();
                if !br.is_zero() {
                    let want = if xo ^ yo { Parity::Odd } else { Parity::Even };
                    prop_assert_eq!(br.parity(), Some(want));
                }
            }
        }
        let (e, _) = a.parity_split();
        let lhs = gpb(&e, &(&b * &c), &ps).unwrap();
        let rhs = gpb(&e, &b, &ps).unwrap() * &c + &b * gpb(&e, &c, &ps).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

/// The seven generators arranged as (q0,q1) even, (t0,t1) θ-type and
/// (t2,t3) θ̄-type pairs, with q2 a central parameter.
fn phase_space() -> (Algebra, PhaseSpace) {
    let alg = algebra();
    let g = &alg.gens;
    let pairs = vec![
        CanonicalPair::new(g[0], g[1], PairKind::Even),
        CanonicalPair::new(g[3], g[4], PairKind::OddRight),
        CanonicalPair::new(g[5], g[6], PairKind::OddLeft),
    ];
    let ps = PhaseSpace::new(alg.u.id(), pairs, vec![g[2]]).unwrap();
    (alg, ps)
}

#[test]
fn mixed_derivative_identities_exhaustive_over_six_odd_generators() {
    let mut u = Universe::new();
    let q = u.add("q", Parity::Even).unwrap();
    let odd: Vec<Generator> = (0..6)
        .map(|k| u.add(&format!("t{k}"), Parity::Odd).unwrap())
        .collect();
    let mut checked = 0;
    for mask in 0u32..64 {
        let factors: Vec<Generator> = (0..6)
            .filter(|b| mask & (1 << b) != 0)
            .map(|b| odd[b])
            .collect();
        let mono = Poly::product_of(u.id(), &factors);
        for f in [mono.clone(), Poly::var(q).pow(2) * &mono] {
            for &k in &odd {
                for &l in &odd {
                    let r = check_mixed_derivative_identities(&f, k, l, &u).unwrap();
                    assert!(
                        r.passed,
                        "{} ({}, {}): {:?}",
                        f.display(&u),
                        u.name(k),
                        u.name(l),
                        r.violation
                    );
                    checked += 1;
                }
            }
        }
    }
    assert_eq!(checked, 64 * 2 * 36);
}

fn atom() -> impl Strategy<Value = ExprKind> {
    prop_oneof![
        prop::sample::select(vec!["1", "2", "3", "0.5", "0.25", "7"])
            .prop_map(|s| ExprKind::Number(s.into())),
        Just(ExprKind::ImaginaryUnit),
        prop::sample::select(vec!["q", "theta", "thetabar", "m"])
            .prop_map(|s| ExprKind::Var(s.into())),
        prop::sample::select(vec!["q", "theta", "thetabar"])
            .prop_map(|s| ExprKind::Velocity(s.into())),
    ]
}

fn expr() -> impl Strategy<Value = Expr> {
    let e = |k| Expr::new(k, Span::default());
    atom().prop_map(e).prop_recursive(4, 24, 2, move |inner| {
        let b = |x: Expr| Box::new(x);
        prop_oneof![
            inner.clone().prop_map(move |x| e(ExprKind::Neg(b(x)))),
            (inner.clone(), inner.clone()).prop_map(move |(x, y)| e(ExprKind::Add(b(x), b(y)))),
            (inner.clone(), inner.clone()).prop_map(move |(x, y)| e(ExprKind::Sub(b(x), b(y)))),
            (inner.clone(), inner.clone()).prop_map(move |(x, y)| e(ExprKind::Mul(b(x), b(y)))),
            (inner.clone(), prop::sample::select(vec!["2", "3", "4"]))
                .prop_map(move |(x, d)| e(ExprKind::Div(b(x), d.into()))),
            (inner, 0u32..4).prop_map(move |(x, n)| e(ExprKind::Pow(b(x), n))),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 300, ..ProptestConfig::default() })]

    #[test]
    fn printed_expressions_parse_back_to_the_same_tree(x in expr()) {
        let text = print_expr(&x);
        let back = parse_expr(&text).map_err(|e| TestCaseError::fail(format!("{text}: {e}")))?;
        prop_assert_eq!(back.without_spans(), x.without_spans(), "{}", text);
    }

    #[test]
    fn spec_round_trip_is_stable(x in expr()) {
        let src = format!("even q; odd theta, thetabar; param m; L = {};", print_expr(&x));
        let once = parse(&src).unwrap();
        let twice = parse(&print_spec(&once)).unwrap();
        prop_assert_eq!(once.without_spans(), twice.without_spans());
    }
}
