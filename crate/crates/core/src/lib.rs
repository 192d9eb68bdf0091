pub mod bracket;
pub mod cli;
pub mod coeff;
pub mod constraints;
pub mod dsl;
pub mod grassmann;
pub mod lattice;
pub mod linalg;
