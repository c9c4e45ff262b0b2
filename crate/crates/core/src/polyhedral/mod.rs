//! Exact rational polyhedral cones.

pub mod cone;
pub mod hnf;
pub mod linalg;
pub mod quotient;
pub mod vector;

pub use cone::{dual_cone, face_lattice, intersect, membership, project_cone, Membership, RatCone};
pub use quotient::{quotient_by_span, QuotientMap};
pub use vector::{int, parse_vectors, rat, Rat, RatVec};
