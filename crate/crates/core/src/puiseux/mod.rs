//! Puiseux series, tropicalization maps and the retraction seminorm families.

mod laurent;
mod retraction;
mod series;
mod trop;

pub use laurent::LaurentPoly;
pub use retraction::{
    monomial_value, retract_point, retraction_value, Family, MonomialDescriptor, SeminormSample,
};
pub use series::{PuiseuxPoint, PuiseuxSeries};
pub use trop::{reunit, trp_generic, trp_generic_with, trp_toric_extended, trp_torus, SamplerConfig};
