//! Luna–Vust colored cones and colored fans.

mod colored;
mod colored_fan;
mod spherical;

pub use colored::{colored_faces, validate_colored_cone, ColoredCone, ColoredConeReport};
pub use colored_fan::{
    check_star, star_fan, validate_colored_fan, ColoredFan, ColoredFanReport, StarFan,
};
pub use spherical::{Color, SphericalData};
