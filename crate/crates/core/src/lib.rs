//! Exact invariants and existence criteria for Sasaki fiber joins over
//! products of Riemann surfaces and projective spaces.

pub mod admissible;
pub mod classify;
pub mod einstein;
pub mod exactalg;
pub mod model;
pub mod topology;
