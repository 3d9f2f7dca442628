//! Scattering diagrams: construction, path-ordered products, mutation,
//! equivalence and chambers.

pub mod chambers;
pub mod construct;
pub mod diagram;
pub mod mutation;
pub mod product;

pub use chambers::{cluster_chambers, Chamber};
pub use construct::{extend, initial_diagram, joint_cells, scatter, JointCell};
pub use diagram::{Diagram, Shear, Wall, EXACT};
pub use mutation::{equivalent, mutate_diagram, Mismatch};
pub use product::{check_consistency, path_ordered_product, segment_crossings, ConsistencyReport};
