//! Transversal conics and certified Poincaré–Bendixson regions for planar
//! polynomial differential systems, computed in exact rational arithmetic.

pub mod exactalg;
pub mod sysparse;
pub mod localseries;
pub mod conicfit;
pub mod transversal;
pub mod bandsearch;
pub mod equilibria;
pub mod infinity;
pub mod regions;
pub mod numoracle;
pub mod report;
pub mod pipeline;
