use std::collections::BTreeSet;
use std::fmt;

use super::spherical::SphericalData;
use crate::error::{Error, Result};
use crate::polyhedral::{RatCone, RatVec};

/// A cone of `N_R` paired with a set of colors (by name).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ColoredCone {
    pub cone: RatCone,
    pub colors: BTreeSet<String>,
}

impl ColoredCone {
    pub fn new<S: Into<String>>(cone: RatCone, colors: impl IntoIterator<Item = S>) -> Self {
        ColoredCone {
            cone,
            colors: colors.into_iter().map(Into::into).collect(),
        }
    }

    pub fn uncolored(cone: RatCone) -> Self {
        ColoredCone {
            cone,
            colors: BTreeSet::new(),
        }
    }
}

impl fmt::Display for ColoredCone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {{", self.cone)?;
        for (i, c) in self.colors.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}})")
    }
}

/// Outcome of checking the colored cone axioms.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ColoredConeReport {
    /// The cone is generated by `rho(F)` and rational points of `V`.
    pub cc1: bool,
    /// The relative interior of the cone meets `V`.
    pub cc2: bool,
    /// `0` is not in `rho(F)`.
    pub cc3: bool,
    pub strictly_convex: bool,
}

impl ColoredConeReport {
    pub fn is_valid(&self) -> bool {
        self.cc1 && self.cc2 && self.cc3 && self.strictly_convex
    }

    /// Names of the failed conditions.
    pub fn failures(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.cc1 {
            out.push("CC1");
        }
        if !self.cc2 {
            out.push("CC2");
        }
        if !self.cc3 {
            out.push("CC3");
        }
        if !self.strictly_convex {
            out.push("strict convexity");
        }
        out
    }
}

fn color_rhos<'a>(sd: &'a SphericalData, cc: &ColoredCone) -> Result<Vec<&'a RatVec>> {
    if cc.cone.dim() != sd.dim() {
        return Err(Error::DimensionMismatch {
            expected: sd.dim(),
            found: cc.cone.dim(),
        });
    }
    cc.colors.iter().map(|name| sd.rho(name)).collect()
}

pub fn validate_colored_cone(sd: &SphericalData, cc: &ColoredCone) -> Result<ColoredConeReport> {
    let rhos = color_rhos(sd, cc)?;
    let vcone = sd.vcone();

    // CC1: the hull of rho(F) and the rays of cone ∩ V is the cone itself.
    let inside = cc.cone.intersect(vcone)?;
    let mut gens: Vec<RatVec> = rhos.iter().map(|r| (*r).clone()).collect();
    gens.extend(inside.generators());
    let hull = RatCone::from_generators(sd.dim(), &gens, &[])?;
    let cc1 = hull == cc.cone;

    let cc2 = cc.cone.relative_interior_meets(vcone);
    let cc3 = rhos.iter().all(|r| !r.is_zero());

    Ok(ColoredConeReport {
        cc1,
        cc2,
        cc3,
        strictly_convex: cc.cone.is_strictly_convex(),
    })
}

/// Colored faces `(tau, F')`: faces whose relative interior meets `V`, with
/// `F' = {D in F : rho(D) in tau}`.
pub fn colored_faces(sd: &SphericalData, cc: &ColoredCone) -> Result<Vec<ColoredCone>> {
    let rhos = color_rhos(sd, cc)?;
    Ok(cc
        .cone
        .face_lattice()
        .into_iter()
        .filter(|tau| tau.relative_interior_meets(sd.vcone()))
        .map(|tau| {
            let colors = cc
                .colors
                .iter()
                .zip(&rhos)
                .filter(|(_, rho)| tau.contains_point(rho))
                .map(|(name, _)| name.clone())
                .collect();
            ColoredCone { cone: tau, colors }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::spherical::Color;

    fn v(e: &[i64]) -> RatVec {
        RatVec::from_ints(e)
    }

    fn gl2() -> SphericalData {
        SphericalData::new(
            2,
            &[v(&[1, -1])],
            vec![Color::new("D", v(&[-1, 1]))],
            vec![],
        )
        .unwrap()
    }

    fn sl2() -> SphericalData {
        SphericalData::new(1, &[], vec![Color::new("D", v(&[1]))], vec![]).unwrap()
    }

    fn x_cone() -> ColoredCone {
        let c = RatCone::from_generators(2, &[v(&[-1, 1]), v(&[1, 0])], &[]).unwrap();
        ColoredCone::new(c, ["D"])
    }

    #[test]
    fn gl2_matrix_cone_is_valid() {
        let r = validate_colored_cone(&gl2(), &x_cone()).unwrap();
        assert!(r.is_valid(), "{r:?}");
    }

    #[test]
    fn sl2_affine_plane_cone_is_valid() {
        let cc = ColoredCone::new(RatCone::ray(v(&[1])), ["D"]);
        assert!(validate_colored_cone(&sl2(), &cc).unwrap().is_valid());
    }

    #[test]
    fn uncolored_ray_outside_v_fails_cc2() {
        let cc = ColoredCone::uncolored(RatCone::ray(v(&[-1, 1])));
        let r = validate_colored_cone(&gl2(), &cc).unwrap();
        assert!(!r.cc2);
        assert!(r.failures().contains(&"CC2"));
    }

    #[test]
    fn zero_color_fails_cc3() {
        let sd = SphericalData::new(1, &[], vec![Color::new("Z", v(&[0]))], vec![]).unwrap();
        let cc = ColoredCone::new(RatCone::ray(v(&[1])), ["Z"]);
        let r = validate_colored_cone(&sd, &cc).unwrap();
        assert!(!r.cc3);
    }

    #[test]
    fn non_strictly_convex_cone_flagged() {
        let cc = ColoredCone::uncolored(RatCone::full(1));
        let r = validate_colored_cone(&sl2(), &cc).unwrap();
        assert!(!r.strictly_convex);
    }

    #[test]
    fn unknown_color_is_an_error() {
        let cc = ColoredCone::new(RatCone::ray(v(&[1])), ["E"]);
        assert_eq!(
            validate_colored_cone(&sl2(), &cc),
            Err(Error::UnknownColor("E".into()))
        );
    }

    #[test]
    fn gl2_colored_faces() {
        let faces = colored_faces(&gl2(), &x_cone()).unwrap();
        assert_eq!(faces.len(), 3);
        assert!(faces.contains(&ColoredCone::uncolored(RatCone::zero(2))));
        assert!(faces.contains(&ColoredCone::uncolored(RatCone::ray(v(&[1, 0])))));
        assert!(faces.contains(&x_cone()));
        assert!(!faces.iter().any(|f| f.cone == RatCone::ray(v(&[-1, 1]))));
    }

    #[test]
    fn sl2_ray_faces_and_zero_faces() {
        let cc = ColoredCone::new(RatCone::ray(v(&[1])), ["D"]);
        let faces = colored_faces(&sl2(), &cc).unwrap();
        assert_eq!(faces, vec![ColoredCone::uncolored(RatCone::zero(1)), cc]);

        let zero = ColoredCone::uncolored(RatCone::zero(1));
        assert_eq!(colored_faces(&sl2(), &zero).unwrap(), vec![zero]);
    }
}
