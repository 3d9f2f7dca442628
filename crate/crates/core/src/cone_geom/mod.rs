//! Exact polyhedral geometry: cones, hyperplane arrangements, segment
//! crossings and the planar picture around codimension two cones.

pub mod arrangement;
pub mod cone;
pub mod joint;
pub mod lp;
pub mod path;

pub use arrangement::refine;
pub use cone::Cone;
pub use joint::{cmp_angle, crossing_sign, Quotient, P2};
pub use path::{segment_hit, Hit};
