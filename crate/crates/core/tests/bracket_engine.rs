//! Bracket engine against independent oracles: a hand-rolled commutative
//! Poisson bracket, uniqueness of the odd-odd bracket within its natural
//! ansatz, and exhaustive identity checks over small phase spaces.

use std::collections::BTreeMap;

use grassmann_dirac::bracket::{
    gpb, monomial_basis, time_derivative, verify_graded_algebra_exhaustive, BracketError,
    CanonicalPair, PairKind, PhaseSpace, PoissonBracket, PolySampler, SampleConfig,
};
use grassmann_dirac::coeff::Coeff;
use grassmann_dirac::grassmann::{Generator, Parity, Poly, Side, Universe};
use grassmann_dirac::linalg::ExactMatrix;

struct Space {
    u: Universe,
    ps: PhaseSpace,
    even: Vec<(Generator, Generator)>,
    right: Vec<(Generator, Generator)>,
    left: Vec<(Generator, Generator)>,
}

/// `n_even` (q,p) pairs, `n_right` θ-type and `n_left` θ̄-type odd pairs.
fn space(n_even: usize, n_right: usize, n_left: usize) -> Space {
    let mut u = Universe::new();
    let mut pairs = Vec::new();
    let mut add = |u: &mut Universe, q: String, p: String, kind: PairKind| {
        let par = kind.parity();
        let (q, p) = (u.add(&q, par).unwrap(), u.add(&p, par).unwrap());
        pairs.push(CanonicalPair::new(q, p, kind));
        (q, p)
    };
    let even = (0..n_even)
        .map(|k| add(&mut u, format!("q{k}"), format!("p{k}"), PairKind::Even))
        .collect();
    let right = (0..n_right)
        .map(|k| {
            add(
                &mut u,
                format!("th{k}"),
                format!("pi{k}"),
                PairKind::OddRight,
            )
        })
        .collect();
    let left = (0..n_left)
        .map(|k| {
            add(
                &mut u,
                format!("tb{k}"),
                format!("pb{k}"),
                PairKind::OddLeft,
            )
        })
        .collect();
    let ps = PhaseSpace::new(u.id(), pairs, vec![]).unwrap();
    Space {
        u,
        ps,
        even,
        right,
        left,
    }
}

/// Commutative polynomials as exponent vectors, with their own derivative.
type Dense = BTreeMap<Vec<u32>, Coeff>;

fn to_dense(f: &Poly, vars: &[Generator]) -> Dense {
    let mut out = Dense::new();
    for (m, c) in f.terms() {
        let exps: Vec<u32> = vars.iter().map(|&g| m.exponent(g)).collect();
        *out.entry(exps).or_insert_with(Coeff::zero) += c;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn dense_derivative(f: &Dense, k: usize) -> Dense {
    let mut out = Dense::new();
    for (e, c) in f {
        if e[k] == 0 {
            continue;
        }
        let mut e2 = e.clone();
        e2[k] -= 1;
        *out.entry(e2).or_insert_with(Coeff::zero) += &(c.clone() * Coeff::from_int(e[k] as i64));
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn dense_mul(a: &Dense, b: &Dense) -> Dense {
    let mut out = Dense::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            *out.entry(e).or_insert_with(Coeff::zero) += &(ca.clone() * cb.clone());
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn dense_sub(a: &Dense, b: &Dense) -> Dense {
    let mut out = a.clone();
    for (e, c) in b {
        *out.entry(e.clone()).or_insert_with(Coeff::zero) -= c;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn textbook_pb(f: &Dense, g: &Dense, n: usize) -> Dense {
    let mut out = Dense::new();
    for i in 0..n {
        let (q, p) = (2 * i, 2 * i + 1);
        let t = dense_sub(
            &dense_mul(&dense_derivative(f, q), &dense_derivative(g, p)),
            &dense_mul(&dense_derivative(f, p), &dense_derivative(g, q)),
        );
        for (e, c) in t {
            *out.entry(e).or_insert_with(Coeff::zero) += &c;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

#[test]
fn matches_textbook_poisson_bracket_without_odd_pairs() {
    for n in 1..=3 {
        let s = space(n, 0, 0);
        let vars: Vec<Generator> = s.even.iter().flat_map(|&(q, p)| [q, p]).collect();
        let mut sampler = PolySampler::new(
            &s.ps,
            SampleConfig {
                seed: 11 + n as u64,
                max_degree: 4,
                max_terms: 4,
                ..SampleConfig::default()
            },
        );
        for _ in 0..150 {
            let (f, g) = (sampler.sample(Parity::Even), sampler.sample(Parity::Even));
            let got = to_dense(&gpb(&f, &g, &s.ps).unwrap(), &vars);
            let want = textbook_pb(&to_dense(&f, &vars), &to_dense(&g, &vars), n);
            assert_eq!(
                got,
                want,
                "f = {}, g = {}",
                f.display(&s.u),
                g.display(&s.u)
            );
        }
    }
}

#[test]
fn canonical_pair_brackets() {
    let s = space(1, 1, 1);
    let v = Poly::var;
    let (q, p) = s.even[0];
    let (th, pi) = s.right[0];
    let (tb, pb) = s.left[0];
    let one = s.u.one();
    assert_eq!(gpb(&v(q), &v(p), &s.ps).unwrap(), one);
    assert_eq!(gpb(&v(th), &v(pi), &s.ps).unwrap(), one);
    assert_eq!(gpb(&v(pi), &v(th), &s.ps).unwrap(), one);
    assert_eq!(gpb(&v(tb), &v(pb), &s.ps).unwrap(), -&one);
    assert_eq!(gpb(&v(pb), &v(tb), &s.ps).unwrap(), -&one);
    for (a, b) in [(th, tb), (th, pb), (pi, tb), (q, th), (p, pb)] {
        assert!(gpb(&v(a), &v(b), &s.ps).unwrap().is_zero());
    }
}

#[test]
fn time_derivative_cases() {
    let s = space(1, 1, 1);
    let mut u = s.u.clone();
    let m = u.add("m", Parity::Even).unwrap();
    let mut ps = s.ps.clone();
    ps.add_central(m).unwrap();
    let v = Poly::var;
    let (q, p) = s.even[0];
    let (th, pi) = s.right[0];
    let (tb, pb) = s.left[0];

    let free = v(p).pow(2).scale(&Coeff::ratio(1, 2));
    assert_eq!(time_derivative(&v(q), &free, &ps).unwrap(), v(p));
    assert!(time_derivative(&u.constant(Coeff::from_int(3)), &free, &ps)
        .unwrap()
        .is_zero());

    // H = i m θ̄θ against the even-argument formula written out by hand
    let h = (v(m) * v(tb) * v(th)).scale(&Coeff::i());
    let hand = |f: &Poly| -> Poly {
        let d = |x: &Poly, g, side| x.derivative(g, side).unwrap();
        d(f, q, Side::Left) * d(&h, p, Side::Left) - d(f, p, Side::Left) * d(&h, q, Side::Left)
            + d(f, th, Side::Right) * d(&h, pi, Side::Left)
            + d(&h, pb, Side::Right) * d(f, tb, Side::Left)
            - d(&h, th, Side::Right) * d(f, pi, Side::Left)
            - d(f, pb, Side::Right) * d(&h, tb, Side::Left)
    };
    for f in [
        v(th),
        v(tb),
        v(pi),
        v(pb),
        v(th) * v(pb),
        v(q) * v(pi) * v(tb),
    ] {
        assert_eq!(time_derivative(&f, &h, &ps).unwrap(), hand(&f));
    }
    assert_eq!(
        time_derivative(&v(pi), &h, &ps).unwrap(),
        (v(m) * v(tb)).scale(&-Coeff::i())
    );
    assert_eq!(
        time_derivative(&v(pb), &h, &ps).unwrap(),
        (v(m) * v(th)).scale(&-Coeff::i())
    );
    assert_eq!(
        time_derivative(&v(q), &v(th), &ps),
        Err(BracketError::OddHamiltonian)
    );
}

/// The odd-odd bracket is fixed by symmetry, the odd Leibniz rule and the
/// even-argument formula once it is assumed bilinear in first derivatives.
#[test]
fn odd_bracket_unique_within_first_derivative_ansatz() {
    let s = space(1, 1, 1);
    let (q, p) = s.even[0];
    let (th, pi) = s.right[0];
    let (tb, pb) = s.left[0];
    let d = |x: &Poly, g, side| x.derivative(g, side).unwrap();
    // c, d, a, f, b, g
    let terms = |a: &Poly, b: &Poly| -> [Poly; 6] {
        [
            d(a, q, Side::Left) * d(b, p, Side::Left),
            d(a, p, Side::Left) * d(b, q, Side::Left),
            d(a, th, Side::Right) * d(b, pi, Side::Left),
            d(b, th, Side::Right) * d(a, pi, Side::Left),
            d(b, pb, Side::Right) * d(a, tb, Side::Left),
            d(a, pb, Side::Right) * d(b, tb, Side::Left),
        ]
    };

    // each condition: Σ_k x_k P_k = R, one linear equation per monomial
    let mut rows: Vec<(Vec<Coeff>, Coeff)> = Vec::new();
    let mut push = |ps: [Poly; 6], r: Poly| {
        let mut monos: Vec<_> = r.terms().map(|(m, _)| m.clone()).collect();
        for p in &ps {
            monos.extend(p.terms().map(|(m, _)| m.clone()));
        }
        monos.sort();
        monos.dedup();
        for m in monos {
            rows.push((
                ps.iter().map(|p| p.coefficient(&m)).collect(),
                r.coefficient(&m),
            ));
        }
    };
    let mut sampler = PolySampler::new(
        &s.ps,
        SampleConfig {
            seed: 3,
            max_degree: 3,
            max_terms: 3,
            ..SampleConfig::default()
        },
    );
    for _ in 0..40 {
        let (a, b, c) = (
            sampler.sample(Parity::Odd),
            sampler.sample(Parity::Odd),
            sampler.sample(Parity::Odd),
        );
        // [A,B] − [B,A] = 0
        let (ab, ba) = (terms(&a, &b), terms(&b, &a));
        push(std::array::from_fn(|k| &ab[k] - &ba[k]), s.u.zero());
        // [A,B]C − B[A,C] = [A,BC] with BC even, using the fixed even-argument bracket
        let ac = terms(&a, &c);
        let lhs: [Poly; 6] = std::array::from_fn(|k| &ab[k] * &c - &b * &ac[k]);
        push(lhs, gpb(&a, &(&b * &c), &s.ps).unwrap());
    }

    let m = ExactMatrix::from_fn(rows.len(), 6, |r, k| rows[r].0[k].clone());
    let aug = ExactMatrix::from_fn(rows.len(), 7, |r, k| {
        if k < 6 {
            rows[r].0[k].clone()
        } else {
            rows[r].1.clone()
        }
    });
    assert_eq!(m.rank(), 6, "solution is unique");
    assert_eq!(aug.rank(), 6, "system is consistent");

    let sol = [1, -1, 1, 1, -1, -1].map(Coeff::from_int);
    for (lhs, rhs) in &rows {
        let val = lhs
            .iter()
            .zip(&sol)
            .fold(Coeff::zero(), |acc, (x, y)| acc + x.clone() * y.clone());
        assert_eq!(&val, rhs);
    }
    // and that solution is the engine's odd-odd bracket
    for _ in 0..30 {
        let (a, b) = (sampler.sample(Parity::Odd), sampler.sample(Parity::Odd));
        let t = terms(&a, &b);
        let ansatz = t
            .iter()
            .zip(&sol)
            .fold(s.u.zero(), |acc, (p, c)| acc + p.scale(c));
        assert_eq!(ansatz, gpb(&a, &b, &s.ps).unwrap());
    }
}

fn exhaustive(n_even: usize, n_odd: usize, degree: u32) {
    let s = space(n_even, n_odd.div_ceil(2), n_odd / 2);
    let basis = monomial_basis(&s.ps, degree);
    let report =
        verify_graded_algebra_exhaustive(&PoissonBracket::new(&s.ps), &basis, &s.u).unwrap();
    for r in &report.results {
        assert!(
            r.passed,
            "{} failed on {n_even}+{n_odd} pairs, degree {degree}: {:?}",
            r.label, r.counterexample
        );
        assert!(r.checked > 0);
    }
}

#[test]
fn identities_exhaustive_one_even_one_odd_degree_three() {
    exhaustive(1, 1, 3);
}

#[test]
fn identities_exhaustive_odd_only_degree_three() {
    exhaustive(0, 2, 3);
}

#[test]
fn identities_exhaustive_two_and_two_degree_two() {
    exhaustive(2, 2, 2);
}

#[test]
fn identities_exhaustive_three_and_three_degree_one() {
    exhaustive(3, 3, 1);
}
