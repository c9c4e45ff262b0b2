//! Combinatorics and valuations for tropicalizing spherical varieties.
//!
//! * [`polyhedral`]: exact rational cones, duality, faces and quotients.
//! * [`fan`]: Luna–Vust colored cones and colored fans, `Star(tau)` and the
//!   support condition.
//! * [`registry`]: spherical data for tori, `SL_2/U` and `GL_2`, with
//!   evaluators for their B-semi-invariants.
//! * [`puiseux`]: Puiseux series, tropicalization maps, and the retraction
//!   seminorm families on tori.
//! * [`compactify`]: strata of the tropicalization, extended functionals and
//!   canonical compactifications.

pub mod compactify;
mod cursor;
pub mod error;
pub mod fan;
pub mod polyhedral;
pub mod puiseux;
pub mod registry;
pub mod value;

pub use error::{Error, Result};
pub use polyhedral::{Rat, RatCone, RatVec};
pub use value::Val;
