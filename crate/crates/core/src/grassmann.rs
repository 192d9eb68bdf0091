//! Polynomials over graded generators.
//!
//! A [`Poly`] is a finite sum of monomials `c · x₁^e₁ ⋯ · θ_a θ_b ⋯` with
//! exact complex-rational coefficients. Even generators carry integer
//! exponents; odd generators appear at most once and are stored in ascending
//! id order, the reordering sign being folded into the coefficient.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::atomic::{AtomicU64, Ordering};

use thiserror::Error;

use crate::coeff::Coeff;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GrassmannError {
    #[error("operands belong to different generator universes")]
    UniverseMismatch,
    #[error("generator `{0}` is not part of this universe")]
    UnknownGenerator(String),
    #[error("generator name `{0}` is already declared")]
    DuplicateName(String),
    #[error("generator `{0}` must be odd")]
    NotOdd(String),
    #[error("substituting `{name}` requires a replacement of the same parity")]
    ParityMismatch { name: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_count(n: usize) -> Parity {
        if n % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    /// Parity of a product.
    pub fn combine(self, other: Parity) -> Parity {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn as_bit(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }
}

/// Which side the variation increment stands on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UniverseId(u64);

static NEXT_UNIVERSE: AtomicU64 = AtomicU64::new(1);

/// Handle to a generator. Cheap to copy; the name lives in the [`Universe`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    universe: UniverseId,
    id: u32,
    parity: Parity,
}

impl Generator {
    pub fn id(&self) -> u32 {
        self.id
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn universe(&self) -> UniverseId {
        self.universe
    }
}

/// Append-only registry of generators. Ids are assigned in declaration
/// order and fix the canonical ordering of odd factors.
#[derive(Debug, Clone)]
pub struct Universe {
    id: UniverseId,
    names: Vec<String>,
    parities: Vec<Parity>,
    by_name: HashMap<String, u32>,
}

impl Default for Universe {
    fn default() -> Self {
        Self::new()
    }
}

impl Universe {
    pub fn new() -> Self {
        Universe {
            id: UniverseId(NEXT_UNIVERSE.fetch_add(1, Ordering::Relaxed)),
            names: Vec::new(),
            parities: Vec::new(),
            by_name: HashMap::new(),
        }
    }

    pub fn id(&self) -> UniverseId {
        self.id
    }

    pub fn add(&mut self, name: &str, parity: Parity) -> Result<Generator, GrassmannError> {
        if self.by_name.contains_key(name) {
            return Err(GrassmannError::DuplicateName(name.to_string()));
        }
        let id = self.names.len() as u32;
        self.names.push(name.to_string());
        self.parities.push(parity);
        self.by_name.insert(name.to_string(), id);
        Ok(Generator {
            universe: self.id,
            id,
            parity,
        })
    }

    /// Adds a generator with a name derived from `stem` that is not yet taken.
    pub fn fresh(&mut self, stem: &str, parity: Parity) -> Generator {
        if !self.by_name.contains_key(stem) {
            return self.add(stem, parity).expect("name checked");
        }
        let mut k = 1usize;
        loop {
            let name = format!("{stem}_{k}");
            if !self.by_name.contains_key(&name) {
                return self.add(&name, parity).expect("name checked");
            }
            k += 1;
        }
    }

    pub fn find(&self, name: &str) -> Option<Generator> {
        self.by_name.get(name).map(|&id| Generator {
            universe: self.id,
            id,
            parity: self.parities[id as usize],
        })
    }

    pub fn lookup(&self, name: &str) -> Result<Generator, GrassmannError> {
        self.find(name)
            .ok_or_else(|| GrassmannError::UnknownGenerator(name.to_string()))
    }

    pub fn name(&self, g: Generator) -> &str {
        &self.names[g.id as usize]
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn generators(&self) -> impl Iterator<Item = Generator> + '_ {
        (0..self.names.len() as u32).map(move |id| Generator {
            universe: self.id,
            id,
            parity: self.parities[id as usize],
        })
    }

    pub fn contains(&self, g: Generator) -> bool {
        g.universe == self.id && (g.id as usize) < self.names.len()
    }

    pub fn zero(&self) -> Poly {
        Poly::zero(self.id)
    }

    pub fn constant(&self, c: Coeff) -> Poly {
        Poly::constant(self.id, c)
    }

    pub fn one(&self) -> Poly {
        Poly::constant(self.id, Coeff::one())
    }
}

/// A monomial without its coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    even: Vec<(u32, u32)>,
    odd: Vec<u32>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    /// The degree-one monomial of a single generator.
    pub fn linear(g: Generator) -> Self {
        match g.parity {
            Parity::Even => Monomial {
                even: vec![(g.id, 1)],
                odd: Vec::new(),
            },
            Parity::Odd => Monomial {
                even: Vec::new(),
                odd: vec![g.id],
            },
        }
    }

    /// Builds a monomial from odd factors in the given order; returns the
    /// permutation sign (`0` when a factor repeats).
    pub fn from_odd_sequence(factors: &[u32]) -> (i8, Monomial) {
        let mut v = factors.to_vec();
        let mut sign = 1i8;
        // insertion sort, counting transpositions
        for i in 1..v.len() {
            let mut j = i;
            while j > 0 && v[j - 1] > v[j] {
                v.swap(j - 1, j);
                sign = -sign;
                j -= 1;
            }
        }
        if v.windows(2).any(|w| w[0] == w[1]) {
            return (0, Monomial::default());
        }
        (
            sign,
            Monomial {
                even: Vec::new(),
                odd: v,
            },
        )
    }

    pub fn even_factors(&self) -> &[(u32, u32)] {
        &self.even
    }

    pub fn odd_factors(&self) -> &[u32] {
        &self.odd
    }

    pub fn degree(&self) -> u32 {
        self.even.iter().map(|&(_, e)| e).sum::<u32>() + self.odd.len() as u32
    }

    pub fn parity(&self) -> Parity {
        Parity::from_count(self.odd.len())
    }

    pub fn exponent(&self, g: Generator) -> u32 {
        match g.parity {
            Parity::Even => self
                .even
                .iter()
                .find(|&&(id, _)| id == g.id)
                .map_or(0, |&(_, e)| e),
            Parity::Odd => u32::from(self.odd.contains(&g.id)),
        }
    }

    pub fn mentions(&self, id: u32) -> bool {
        self.odd.contains(&id) || self.even.iter().any(|&(g, _)| g == id)
    }

    /// Product `self · other` with the sign from bringing the odd factors
    /// into canonical order, or `None` when an odd factor repeats.
    fn times(&self, other: &Monomial) -> Option<(bool, Monomial)> {
        let mut odd = Vec::with_capacity(self.odd.len() + other.odd.len());
        let mut negative = false;
        let (mut i, mut j) = (0, 0);
        while i < self.odd.len() && j < other.odd.len() {
            match self.odd[i].cmp(&other.odd[j]) {
                std::cmp::Ordering::Less => {
                    odd.push(self.odd[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    // other.odd[j] passes the remaining factors of self
                    if (self.odd.len() - i) % 2 == 1 {
                        negative = !negative;
                    }
                    odd.push(other.odd[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => return None,
            }
        }
        odd.extend_from_slice(&self.odd[i..]);
        odd.extend_from_slice(&other.odd[j..]);

        let mut even = Vec::with_capacity(self.even.len() + other.even.len());
        let (mut i, mut j) = (0, 0);
        while i < self.even.len() && j < other.even.len() {
            let (a, ea) = self.even[i];
            let (b, eb) = other.even[j];
            match a.cmp(&b) {
                std::cmp::Ordering::Less => {
                    even.push((a, ea));
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    even.push((b, eb));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    even.push((a, ea + eb));
                    i += 1;
                    j += 1;
                }
            }
        }
        even.extend_from_slice(&self.even[i..]);
        even.extend_from_slice(&other.even[j..]);
        Some((negative, Monomial { even, odd }))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.odd.cmp(&other.odd))
            .then_with(|| self.even.cmp(&other.even))
    }
}

/// Polynomial in graded generators with exact coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    universe: UniverseId,
    terms: BTreeMap<Monomial, Coeff>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

impl Poly {
    pub fn zero(universe: UniverseId) -> Poly {
        Poly {
            universe,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(universe: UniverseId, c: Coeff) -> Poly {
        Poly::from_term(universe, Monomial::one(), c)
    }

    pub fn from_term(universe: UniverseId, m: Monomial, c: Coeff) -> Poly {
        let mut p = Poly::zero(universe);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn var(g: Generator) -> Poly {
        let m = match g.parity {
            Parity::Even => Monomial {
                even: vec![(g.id, 1)],
                odd: Vec::new(),
            },
            Parity::Odd => Monomial {
                even: Vec::new(),
                odd: vec![g.id],
            },
        };
        Poly::from_term(g.universe, m, Coeff::one())
    }

    /// Ordered product of generators, e.g. `[θ₂, θ₁]` gives `−θ₁θ₂`.
    pub fn product_of(universe: UniverseId, gens: &[Generator]) -> Poly {
        gens.iter()
            .fold(Poly::constant(universe, Coeff::one()), |acc, &g| {
                &acc * &Poly::var(g)
            })
    }

    pub fn universe(&self) -> UniverseId {
        self.universe
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coeff)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Coeff {
        self.terms.get(m).cloned().unwrap_or_else(Coeff::zero)
    }

    /// The value if the polynomial is a constant (zero included).
    pub fn as_constant(&self) -> Option<Coeff> {
        match self.terms.len() {
            0 => Some(Coeff::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().expect("one term");
                (m.degree() == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn constant_term(&self) -> Coeff {
        self.coefficient(&Monomial::one())
    }

    /// Parity if every term shares it; zero counts as even.
    pub fn parity(&self) -> Option<Parity> {
        let mut it = self.terms.keys().map(Monomial::parity);
        match it.next() {
            None => Some(Parity::Even),
            Some(first) => it.all(|p| p == first).then_some(first),
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.parity().is_some()
    }

    pub fn max_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn mentions(&self, g: Generator) -> bool {
        self.terms.keys().any(|m| m.mentions(g.id))
    }

    /// Ids of every generator that occurs.
    pub fn support(&self) -> Vec<u32> {
        let mut ids: Vec<u32> = self
            .terms
            .keys()
            .flat_map(|m| m.odd.iter().copied().chain(m.even.iter().map(|&(g, _)| g)))
            .collect();
        ids.sort_unstable();
        ids.dedup();
        ids
    }

    fn add_term(&mut self, m: Monomial, c: &Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Coeff) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.universe);
        }
        Poly {
            universe: self.universe,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly, GrassmannError> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    /// Graded product.
    pub fn multiply(&self, other: &Poly) -> Result<Poly, GrassmannError> {
        self.check(other)?;
        let mut out = Poly::zero(self.universe);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some((negative, m)) = ma.times(mb) {
                    let c = ca * cb;
                    out.add_term(m, &if negative { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    fn check(&self, other: &Poly) -> Result<(), GrassmannError> {
        if self.universe == other.universe {
            Ok(())
        } else {
            Err(GrassmannError::UniverseMismatch)
        }
    }

    fn check_gen(&self, g: Generator) -> Result<(), GrassmannError> {
        if g.universe == self.universe {
            Ok(())
        } else {
            Err(GrassmannError::UnknownGenerator(format!("#{}", g.id)))
        }
    }

    /// Splits into even and odd parts.
    pub fn parity_split(&self) -> (Poly, Poly) {
        let mut even = Poly::zero(self.universe);
        let mut odd = Poly::zero(self.universe);
        for (m, c) in &self.terms {
            match m.parity() {
                Parity::Even => even.terms.insert(m.clone(), c.clone()),
                Parity::Odd => odd.terms.insert(m.clone(), c.clone()),
            };
        }
        (even, odd)
    }

    /// Left or right derivative. For even generators the side is irrelevant.
    pub fn derivative(&self, g: Generator, side: Side) -> Result<Poly, GrassmannError> {
        self.check_gen(g)?;
        let mut out = Poly::zero(self.universe);
        for (m, c) in &self.terms {
            match g.parity {
                Parity::Even => {
                    if let Some(pos) = m.even.iter().position(|&(id, _)| id == g.id) {
                        let e = m.even[pos].1;
                        let mut rest = m.clone();
                        if e == 1 {
                            rest.even.remove(pos);
                        } else {
                            rest.even[pos].1 = e - 1;
                        }
                        out.add_term(rest, &(c * &Coeff::from_int(e as i64)));
                    }
                }
                Parity::Odd => {
                    if let Some(pos) = m.odd.iter().position(|&id| id == g.id) {
                        let passes = match side {
                            Side::Left => pos,
                            Side::Right => m.odd.len() - 1 - pos,
                        };
                        let mut rest = m.clone();
                        rest.odd.remove(pos);
                        let c = if passes % 2 == 1 { -c } else { c.clone() };
                        out.add_term(rest, &c);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Replaces every occurrence of `g` by `replacement`, keeping factor order.
    pub fn substitute(&self, g: Generator, replacement: &Poly) -> Result<Poly, GrassmannError> {
        self.check_gen(g)?;
        self.check(replacement)?;
        if g.parity == Parity::Odd
            && replacement.parity().is_some_and(|p| p == Parity::Even)
            && !replacement.is_zero()
        {
            return Err(GrassmannError::ParityMismatch {
                name: format!("#{}", g.id),
            });
        }
        let u = self.universe;
        let mut out = Poly::zero(u);
        for (m, c) in &self.terms {
            if !m.mentions(g.id) {
                out.add_term(m.clone(), c);
                continue;
            }
            let mut acc = Poly::constant(u, c.clone());
            for &(id, e) in &m.even {
                let factor = if id == g.id {
                    replacement.clone()
                } else {
                    Poly::from_term(
                        u,
                        Monomial {
                            even: vec![(id, 1)],
                            odd: vec![],
                        },
                        Coeff::one(),
                    )
                };
                for _ in 0..e {
                    acc = acc.multiply(&factor)?;
                }
            }
            for &id in &m.odd {
                let factor = if id == g.id {
                    replacement.clone()
                } else {
                    Poly::from_term(
                        u,
                        Monomial {
                            even: vec![],
                            odd: vec![id],
                        },
                        Coeff::one(),
                    )
                };
                acc = acc.multiply(&factor)?;
                if acc.is_zero() {
                    break;
                }
            }
            out = out.try_add(&acc)?;
        }
        Ok(out)
    }

    /// Applies several substitutions simultaneously.
    pub fn substitute_all(&self, subs: &[(Generator, Poly)]) -> Result<Poly, GrassmannError> {
        if subs.is_empty() {
            return Ok(self.clone());
        }
        let u = self.universe;
        let lookup: HashMap<u32, &Poly> = subs.iter().map(|(g, p)| (g.id, p)).collect();
        let mut out = Poly::zero(u);
        for (m, c) in &self.terms {
            if !m
                .odd
                .iter()
                .chain(m.even.iter().map(|(g, _)| g))
                .any(|id| lookup.contains_key(id))
            {
                out.add_term(m.clone(), c);
                continue;
            }
            let mut acc = Poly::constant(u, c.clone());
            for &(id, e) in &m.even {
                let factor = match lookup.get(&id) {
                    Some(p) => (*p).clone(),
                    None => Poly::from_term(
                        u,
                        Monomial {
                            even: vec![(id, 1)],
                            odd: vec![],
                        },
                        Coeff::one(),
                    ),
                };
                for _ in 0..e {
                    acc = acc.multiply(&factor)?;
                }
            }
            for &id in &m.odd {
                let factor = match lookup.get(&id) {
                    Some(p) => (*p).clone(),
                    None => Poly::from_term(
                        u,
                        Monomial {
                            even: vec![],
                            odd: vec![id],
                        },
                        Coeff::one(),
                    ),
                };
                acc = acc.multiply(&factor)?;
                if acc.is_zero() {
                    break;
                }
            }
            out = out.try_add(&acc)?;
        }
        Ok(out)
    }

    /// Drops every term containing one of the given generators.
    pub fn set_to_zero(&self, ids: &[u32]) -> Poly {
        Poly {
            universe: self.universe,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| !ids.iter().any(|&id| m.mentions(id)))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut acc = Poly::constant(self.universe, Coeff::one());
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn display<'a>(&'a self, universe: &'a Universe) -> PolyDisplay<'a> {
        PolyDisplay {
            poly: self,
            universe,
        }
    }
}

macro_rules! poly_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl $trait<&Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                let f: fn(&Poly, &Poly) -> Poly = $body;
                f(self, rhs)
            }
        }
        impl $trait<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                (&self).$method(rhs)
            }
        }
        impl $trait<Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                self.$method(&rhs)
            }
        }
    };
}

// Operator forms panic on mixed universes; the `try_*`/`multiply` methods
// report it as an error instead.
poly_binop!(Add, add, |a, b| a
    .try_add(b)
    .expect("universe mismatch in +"));
poly_binop!(Sub, sub, |a, b| a
    .try_add(&-b)
    .expect("universe mismatch in -"));
poly_binop!(Mul, mul, |a, b| a
    .multiply(b)
    .expect("universe mismatch in *"));

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Coeff::one())
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl Mul<&Coeff> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Coeff) -> Poly {
        self.scale(rhs)
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a Poly,
    universe: &'a Universe,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.poly.terms.iter().enumerate() {
            let mut factors: Vec<String> = Vec::new();
            for &(id, e) in &m.even {
                let name = &self.universe.names[id as usize];
                if e == 1 {
                    factors.push(name.clone());
                } else {
                    factors.push(format!("{name}^{e}"));
                }
            }
            for &id in &m.odd {
                factors.push(self.universe.names[id as usize].clone());
            }
            let body = factors.join("*");
            let (neg, mag) = if c.reads_negative() {
                (true, -c)
            } else {
                (false, c.clone())
            };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if body.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{body}")?;
            } else {
                write!(f, "{mag}*{body}")?;
            }
        }
        Ok(())
    }
}

/// Which of the mixed second-derivative identities failed.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub enum MixedIdentity {
    /// `∂ᴸκ ∂ᴿλ f = ∂ᴿλ ∂ᴸκ f`
    LeftRightCommute,
    /// `∂ᴸκ ∂ᴸλ f = −∂ᴸλ ∂ᴸκ f`
    LeftLeftAnticommute,
    /// `∂ᴿκ ∂ᴿλ f = −∂ᴿλ ∂ᴿκ f`
    RightRightAnticommute,
    /// `∂ᴸκ ∂ᴸκ f = ∂ᴿκ ∂ᴿκ f = 0`
    RepeatedVanishes,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct MixedDerivativeReport {
    pub passed: bool,
    /// First violated identity and the residual rendered as text.
    pub violation: Option<(MixedIdentity, String)>,
}

/// Checks the four second-derivative identities for odd `kappa`, `lambda`.
pub fn check_mixed_derivative_identities(
    f: &Poly,
    kappa: Generator,
    lambda: Generator,
    universe: &Universe,
) -> Result<MixedDerivativeReport, GrassmannError> {
    for g in [kappa, lambda] {
        if g.parity != Parity::Odd {
            return Err(GrassmannError::NotOdd(universe.name(g).to_string()));
        }
    }
    let d = |p: &Poly, g: Generator, s: Side| p.derivative(g, s);
    let checks: [(MixedIdentity, Poly); 5] = [
        (
            MixedIdentity::LeftRightCommute,
            d(&d(f, lambda, Side::Right)?, kappa, Side::Left)?
                - d(&d(f, kappa, Side::Left)?, lambda, Side::Right)?,
        ),
        (
            MixedIdentity::LeftLeftAnticommute,
            d(&d(f, lambda, Side::Left)?, kappa, Side::Left)?
                + d(&d(f, kappa, Side::Left)?, lambda, Side::Left)?,
        ),
        (
            MixedIdentity::RightRightAnticommute,
            d(&d(f, lambda, Side::Right)?, kappa, Side::Right)?
                + d(&d(f, kappa, Side::Right)?, lambda, Side::Right)?,
        ),
        (
            MixedIdentity::RepeatedVanishes,
            d(&d(f, kappa, Side::Left)?, kappa, Side::Left)?,
        ),
        (
            MixedIdentity::RepeatedVanishes,
            d(&d(f, kappa, Side::Right)?, kappa, Side::Right)?,
        ),
    ];
    for (which, residual) in checks {
        if !residual.is_zero() {
            return Ok(MixedDerivativeReport {
                passed: false,
                violation: Some((which, residual.display(universe).to_string())),
            });
        }
    }
    Ok(MixedDerivativeReport {
        passed: true,
        violation: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup() -> (Universe, Generator, Generator, Generator, Generator) {
        let mut u = Universe::new();
        let q = u.add("q", Parity::Even).unwrap();
        let t1 = u.add("t1", Parity::Odd).unwrap();
        let t2 = u.add("t2", Parity::Odd).unwrap();
        let t3 = u.add("t3", Parity::Odd).unwrap();
        (u, q, t1, t2, t3)
    }

    #[test]
    fn nilpotent_and_anticommuting() {
        let (_u, q, t1, t2, _) = setup();
        let (a, b, x) = (Poly::var(t1), Poly::var(t2), Poly::var(q));
        assert!((&a * &a).is_zero());
        assert!((&a * &b + &b * &a).is_zero());
        assert!((&x * &a - &a * &x).is_zero());
    }

    #[test]
    fn mixed_universes_rejected() {
        let (_u, _, t1, _, _) = setup();
        let mut other = Universe::new();
        let s = other.add("s", Parity::Odd).unwrap();
        assert_eq!(
            Poly::var(t1).multiply(&Poly::var(s)),
            Err(GrassmannError::UniverseMismatch)
        );
    }

    #[test]
    fn duplicate_names_rejected() {
        let mut u = Universe::new();
        u.add("x", Parity::Even).unwrap();
        assert!(matches!(
            u.add("x", Parity::Odd),
            Err(GrassmannError::DuplicateName(_))
        ));
    }

    #[test]
    fn parity_split_cases() {
        let (u, _, t1, t2, _) = setup();
        let one = u.one();
        let (e, o) = (&one + &Poly::var(t1)).parity_split();
        assert_eq!(e, one);
        assert_eq!(o, Poly::var(t1));
        let t12 = Poly::var(t1) * Poly::var(t2);
        let (e, o) = t12.parity_split();
        assert_eq!(e, t12);
        assert!(o.is_zero());
        let (e, o) = u.zero().parity_split();
        assert!(e.is_zero() && o.is_zero());
    }

    #[test]
    fn left_and_right_derivatives() {
        let (_u, q, t1, t2, _) = setup();
        let t12 = Poly::var(t1) * Poly::var(t2);
        assert_eq!(t12.derivative(t1, Side::Left).unwrap(), Poly::var(t2));
        assert_eq!(t12.derivative(t1, Side::Right).unwrap(), -Poly::var(t2));
        let qt = Poly::var(q) * Poly::var(t1);
        assert_eq!(qt.derivative(q, Side::Left).unwrap(), Poly::var(t1));
        assert_eq!(qt.derivative(q, Side::Right).unwrap(), Poly::var(t1));
    }

    #[test]
    fn even_exponent_derivative() {
        let (_u, q, t1, _, _) = setup();
        let f = Poly::var(q).pow(3) * Poly::var(t1);
        let df = f.derivative(q, Side::Left).unwrap();
        assert_eq!(
            df,
            Poly::var(q).pow(2).scale(&Coeff::from_int(3)) * Poly::var(t1)
        );
    }

    #[test]
    fn unknown_generator_in_derivative() {
        let (_u, _, t1, _, _) = setup();
        let mut other = Universe::new();
        let s = other.add("s", Parity::Odd).unwrap();
        assert!(Poly::var(t1).derivative(s, Side::Left).is_err());
    }

    #[test]
    fn canonical_order_is_construction_independent() {
        let (_u, q, t1, t2, t3) = setup();
        let a = Poly::var(t3) * Poly::var(q) * Poly::var(t1) * Poly::var(t2);
        let b = Poly::var(t1) * (Poly::var(t2) * (Poly::var(q) * Poly::var(t3)));
        assert_eq!(a, b);
        let (sign, m) = Monomial::from_odd_sequence(&[t3.id(), t1.id(), t2.id()]);
        assert_eq!(sign, 1);
        assert_eq!(m.odd_factors(), &[t1.id(), t2.id(), t3.id()]);
        let (sign, _) = Monomial::from_odd_sequence(&[t2.id(), t1.id()]);
        assert_eq!(sign, -1);
        assert_eq!(Monomial::from_odd_sequence(&[t1.id(), t1.id()]).0, 0);
    }

    #[test]
    fn substitution_keeps_factor_order() {
        let (u, _, t1, t2, t3) = setup();
        // t1*t2 with t1 -> t3 gives t3*t2 = -t2*t3
        let f = Poly::var(t1) * Poly::var(t2);
        let g = f.substitute(t1, &Poly::var(t3)).unwrap();
        assert_eq!(g, -(Poly::var(t2) * Poly::var(t3)));
        assert_eq!(f.substitute(t1, &u.zero()).unwrap(), u.zero());
    }

    #[test]
    fn mixed_derivative_identities_on_triple_product() {
        let (u, _, t1, t2, t3) = setup();
        let f = Poly::product_of(u.id(), &[t1, t2, t3]);
        let r = check_mixed_derivative_identities(&f, t1, t2, &u).unwrap();
        assert!(r.passed, "{r:?}");
        let r = check_mixed_derivative_identities(&Poly::var(t1), t1, t1, &u).unwrap();
        assert!(r.passed);
    }

    #[test]
    fn mixed_derivative_rejects_even() {
        let (u, q, t1, _, _) = setup();
        assert!(matches!(
            check_mixed_derivative_identities(&Poly::var(t1), q, t1, &u),
            Err(GrassmannError::NotOdd(_))
        ));
    }

    #[test]
    fn display_is_readable() {
        let (u, q, t1, t2, _) = setup();
        let f = Poly::var(q).scale(&Coeff::ratio(1, 2))
            - Poly::var(t1) * Poly::var(t2).scale(&Coeff::i());
        assert_eq!(f.display(&u).to_string(), "1/2*q - i*t1*t2");
    }
}
