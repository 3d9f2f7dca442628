//! Exact cluster scattering diagrams: the order-by-order construction,
//! broken lines and theta functions, mutation, chambers and g-vectors.

#![allow(clippy::needless_range_loop)]

pub mod cone_geom;
pub mod error;
pub mod io;
pub mod lattice_seed;
pub mod linalg;
pub mod poly_ring;
pub mod rational;
pub mod scattering;
pub mod theta;

pub use error::{Error, Result};
pub use lattice_seed::{FixedData, Seed};
pub use rational::Q;
