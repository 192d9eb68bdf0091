use crate::bracket::PairKind;
use crate::coeff::Coeff;
use crate::grassmann::{Generator, Parity, Poly, Universe};

use super::ConstraintError;

/// A configuration variable and its velocity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Coordinate {
    pub position: Generator,
    pub velocity: Generator,
    pub kind: PairKind,
}

/// An even Lagrangian in positions, velocities and central parameters.
#[derive(Debug, Clone)]
pub struct LagrangianModel {
    pub universe: Universe,
    pub coordinates: Vec<Coordinate>,
    pub parameters: Vec<Generator>,
    pub lagrangian: Poly,
}

impl LagrangianModel {
    pub fn new(
        universe: Universe,
        coordinates: Vec<Coordinate>,
        parameters: Vec<Generator>,
        lagrangian: Poly,
    ) -> Result<Self, ConstraintError> {
        if lagrangian.universe() != universe.id() {
            return Err(crate::grassmann::GrassmannError::UniverseMismatch.into());
        }
        let (_, odd) = lagrangian.parity_split();
        if !odd.is_zero() {
            let (m, c) = odd.terms().next().expect("nonzero");
            let term = Poly::from_term(universe.id(), m.clone(), c.clone());
            return Err(ConstraintError::OddLagrangian(
                term.display(&universe).to_string(),
            ));
        }
        let declared: Vec<u32> = coordinates
            .iter()
            .flat_map(|c| [c.position.id(), c.velocity.id()])
            .chain(parameters.iter().map(|g| g.id()))
            .collect();
        if let Some(id) = lagrangian
            .support()
            .into_iter()
            .find(|id| !declared.contains(id))
        {
            let name = universe
                .generators()
                .find(|g| g.id() == id)
                .map(|g| universe.name(g).to_string());
            return Err(crate::grassmann::GrassmannError::UnknownGenerator(
                name.unwrap_or_default(),
            )
            .into());
        }
        Ok(LagrangianModel {
            universe,
            coordinates,
            parameters,
            lagrangian,
        })
    }

    pub fn coordinate_named(&self, name: &str) -> Option<&Coordinate> {
        self.coordinates
            .iter()
            .find(|c| self.universe.name(c.position) == name)
    }
}

/// Declares variables one by one; velocities are named `dot(x)`.
#[derive(Debug, Default)]
pub struct ModelBuilder {
    universe: Universe,
    coordinates: Vec<Coordinate>,
    parameters: Vec<Generator>,
}

impl ModelBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn coordinate(&mut self, name: &str, kind: PairKind) -> Result<Generator, ConstraintError> {
        let parity = kind.parity();
        let position = self.universe.add(name, parity)?;
        let velocity = self.universe.add(&format!("dot({name})"), parity)?;
        self.coordinates.push(Coordinate {
            position,
            velocity,
            kind,
        });
        Ok(position)
    }

    pub fn even(&mut self, name: &str) -> Result<Generator, ConstraintError> {
        self.coordinate(name, PairKind::Even)
    }

    pub fn odd_right(&mut self, name: &str) -> Result<Generator, ConstraintError> {
        self.coordinate(name, PairKind::OddRight)
    }

    pub fn odd_left(&mut self, name: &str) -> Result<Generator, ConstraintError> {
        self.coordinate(name, PairKind::OddLeft)
    }

    pub fn param(&mut self, name: &str) -> Result<Generator, ConstraintError> {
        let g = self.universe.add(name, Parity::Even)?;
        self.parameters.push(g);
        Ok(g)
    }

    pub fn velocity(&self, position: Generator) -> Poly {
        let c = self
            .coordinates
            .iter()
            .find(|c| c.position == position)
            .expect("declared coordinate");
        Poly::var(c.velocity)
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn constant(&self, c: Coeff) -> Poly {
        self.universe.constant(c)
    }

    pub fn build(self, lagrangian: Poly) -> Result<LagrangianModel, ConstraintError> {
        LagrangianModel::new(self.universe, self.coordinates, self.parameters, lagrangian)
    }
}

/// Bundled textbook models used by tests, examples and the command line.
pub mod library {
    use super::*;

    fn v(g: Generator) -> Poly {
        Poly::var(g)
    }

    /// `L = (i/2)(θ̄θ̇ − θ̄̇θ) − m θ̄θ`.
    pub fn fermionic_oscillator() -> LagrangianModel {
        let mut b = ModelBuilder::new();
        let th = b.odd_right("theta").unwrap();
        let tb = b.odd_left("thetabar").unwrap();
        let m = b.param("m").unwrap();
        let (dth, dtb) = (b.velocity(th), b.velocity(tb));
        let half_i = Coeff::i() * Coeff::ratio(1, 2);
        let kinetic = (v(tb) * dth - dtb * v(th)).scale(&half_i);
        let l = kinetic - v(m) * v(tb) * v(th);
        b.build(l).unwrap()
    }

    /// `L = i θ̄θ̇ − m θ̄θ`.
    pub fn simple_fermion() -> LagrangianModel {
        let mut b = ModelBuilder::new();
        let th = b.odd_right("theta").unwrap();
        let tb = b.odd_left("thetabar").unwrap();
        let m = b.param("m").unwrap();
        let dth = b.velocity(th);
        let l = (v(tb) * dth).scale(&Coeff::i()) - v(m) * v(tb) * v(th);
        b.build(l).unwrap()
    }

    /// `L = ½(q̇₁ − q₂)²`.
    pub fn gauge_toy() -> LagrangianModel {
        let mut b = ModelBuilder::new();
        let q1 = b.even("q1").unwrap();
        let q2 = b.even("q2").unwrap();
        let d = b.velocity(q1) - v(q2);
        let l = d.pow(2).scale(&Coeff::ratio(1, 2));
        b.build(l).unwrap()
    }

    /// `L = ½q̇² − ½ω q²`.
    pub fn harmonic_oscillator() -> LagrangianModel {
        let mut b = ModelBuilder::new();
        let q = b.even("q").unwrap();
        let w = b.param("w").unwrap();
        let l = b.velocity(q).pow(2).scale(&Coeff::ratio(1, 2))
            - (v(w) * v(q).pow(2)).scale(&Coeff::ratio(1, 2));
        b.build(l).unwrap()
    }
}
