//! Broken lines, theta functions, structure constants, g-vectors and the
//! cluster-monomial oracle.

pub mod broken;
pub mod cluster;
pub mod convexity;
pub mod function;
pub mod structure;

pub use broken::{broken_lines, BrokenLine, Segment};
pub use cluster::{
    cluster_monomial_laurent, cluster_variables, compare_theta_with_cluster_monomial, g_vector, theta_equals_cluster_monomial,
    ClusterComparison,
};
pub use convexity::{min_convexity_check, min_convexity_witness, MinOfLinear};
pub use function::{
    generic_basepoint, is_polynomial_up_to_order, theta_function, theta_in, theta_mutation_invariance, theta_path_invariance,
    ThetaExpansion, Verdict,
};
pub use structure::{expand_in_theta_basis, product_identity, structure_constant, theta_product};
