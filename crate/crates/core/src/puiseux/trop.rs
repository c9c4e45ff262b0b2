use num::Zero;

use super::series::PuiseuxPoint;
use crate::compactify::ExtendedPoint;
use crate::error::{Error, Result};
use crate::fan::{ColoredCone, ColoredFan};
use crate::polyhedral::{hnf, quotient_by_span, Rat, RatCone, RatVec};
use crate::registry::{RegistryEntry, DEFAULT_RANGE};
use crate::value::Val;

/// Coordinatewise valuation of a point of the torus.
pub fn trp_torus(x: &PuiseuxPoint) -> Result<RatVec> {
    x.coords()
        .iter()
        .enumerate()
        .map(|(i, c)| match c.val() {
            Val::Finite(v) => Ok(v),
            Val::Infinity => Err(Error::ZeroCoordinate(i)),
        })
        .collect::<Result<Vec<_>>>()
        .map(RatVec::new)
}

/// Tropicalization of a point of the toric variety of `fan`, given in the
/// coordinates of the affine chart `U_chart`.
///
/// The chart must be smooth. Its rays, in decreasing lexicographic order
/// `b_1..b_k` (so the positive orthant gets the standard coordinates), are
/// completed to a lattice basis `b_1..b_n`; coordinate `j` is the character dual to `b_j`, so the
/// first `k` coordinates may vanish and the rest are torus coordinates. The
/// vanishing coordinates `Z` select the orbit of `tau = cone(b_j : j in Z)`.
pub fn trp_toric_extended(
    fan: &ColoredFan,
    chart: &RatCone,
    x: &PuiseuxPoint,
) -> Result<ExtendedPoint> {
    let n = chart.dim();
    if x.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: x.dim(),
        });
    }
    if !fan.cones.iter().any(|cc| &cc.cone == chart) {
        return Err(Error::NotInFan);
    }
    if !chart.is_strictly_convex() {
        return Err(Error::NotStrictlyConvex);
    }
    let rays: Vec<_> = chart
        .rays()
        .iter()
        .rev()
        .map(|r| r.to_integers().expect("rays are primitive"))
        .collect();
    let basis: Vec<RatVec> = hnf::complete_to_basis(&rays, n)
        .ok_or(Error::NonSmoothChart)?
        .iter()
        .map(|r| RatVec::from_integers(r))
        .collect();
    let k = rays.len();

    let zero: Vec<usize> = (0..n).filter(|&j| x.coords()[j].is_zero()).collect();
    if zero.iter().any(|&j| j >= k) {
        return Err(Error::ZeroPatternOutsideFan);
    }
    let tau_rays: Vec<RatVec> = zero.iter().map(|&j| basis[j].clone()).collect();
    let tau = RatCone::from_generators(n, &tau_rays, &[])?;
    let member: &ColoredCone = fan
        .cones
        .iter()
        .find(|cc| cc.cone == tau)
        .ok_or(Error::ZeroPatternOutsideFan)?;

    let mut v = RatVec::zeros(n);
    for (j, c) in x.coords().iter().enumerate() {
        if let Val::Finite(e) = c.val() {
            v = v.add_scaled(&e, &basis[j]);
        }
    }
    let quotient = quotient_by_span(&tau);
    Ok(ExtendedPoint {
        sigma: chart.clone(),
        stratum: member.cone.clone(),
        functional: quotient.apply(&v),
        quotient,
    })
}

/// Parameters of the generic-position sampler.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SamplerConfig {
    /// Number of group elements drawn.
    pub samples: usize,
    /// Entries are drawn from `[-range, range]`.
    pub range: i64,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        SamplerConfig {
            samples: 8,
            range: DEFAULT_RANGE,
        }
    }
}

/// `ϱ(|.|_x)`: for each semi-invariant `f_i`, the least valuation of `g·f_i`
/// at `x` over the sampled `g`, mapped into `N_R`.
pub fn trp_generic(
    entry: &RegistryEntry,
    x: &PuiseuxPoint,
    samples: usize,
    seed: u64,
) -> Result<RatVec> {
    let cfg = SamplerConfig {
        samples,
        ..SamplerConfig::default()
    };
    trp_generic_with(entry, x, &cfg, seed)
}

pub fn trp_generic_with(
    entry: &RegistryEntry,
    x: &PuiseuxPoint,
    cfg: &SamplerConfig,
    seed: u64,
) -> Result<RatVec> {
    let elements = entry.sample_elements(cfg.samples, seed, cfg.range);
    let mut vals: Vec<Rat> = Vec::with_capacity(entry.characters.len());
    for ch in &entry.characters {
        let mut best = Val::Infinity;
        for g in &elements {
            best = best.min(entry.eval(ch, g, x)?.val());
        }
        // Evaluate once at the identity so domain errors surface even with
        // no samples.
        if elements.is_empty() {
            entry.eval(ch, &entry.identity(), x)?;
        }
        match best {
            Val::Finite(v) => vals.push(v),
            Val::Infinity => return Err(Error::SamplingDegenerate),
        }
    }
    Ok(entry.to_lattice(&vals))
}

/// Replaces each coefficient `c` of `x` by `c * w` for a nonzero unit `w`,
/// leaving every coordinate valuation unchanged.
pub fn reunit(x: &PuiseuxPoint, mut w: impl FnMut(usize, &Rat) -> Rat) -> PuiseuxPoint {
    PuiseuxPoint::new(
        x.coords()
            .iter()
            .enumerate()
            .map(|(i, s)| {
                s.map_coefficients(|_, c| {
                    let k = w(i, c);
                    debug_assert!(!k.is_zero());
                    c * k
                })
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyhedral::{int, rat};
    use crate::registry::registry_get;

    fn pt(s: &str) -> PuiseuxPoint {
        s.parse().unwrap()
    }

    #[test]
    fn torus_map() {
        assert_eq!(trp_torus(&pt("(u, u^2)")).unwrap(), RatVec::from_ints(&[1, 2]));
        assert_eq!(
            trp_torus(&pt("(1 + u, u^(-1/2))")).unwrap(),
            RatVec::new(vec![int(0), rat(-1, 2)])
        );
        assert_eq!(trp_torus(&pt("(3, 5 + u)")).unwrap(), RatVec::zeros(2));
        assert_eq!(trp_torus(&pt("(u, 0)")), Err(Error::ZeroCoordinate(1)));
    }

    #[test]
    fn toric_extended_on_affine_charts() {
        let a1 = registry_get("torus(1)").unwrap();
        let fan = a1.fan("affine").unwrap();
        let ray = RatCone::ray(RatVec::from_ints(&[1]));
        let p = trp_toric_extended(fan, &ray, &pt("(0)")).unwrap();
        assert_eq!(p.stratum, ray);
        assert_eq!(p.functional.dim(), 0);

        let a2 = registry_get("torus(2)").unwrap();
        let fan = a2.fan("affine").unwrap();
        let quadrant = RatCone::from_generators(
            2,
            &[RatVec::from_ints(&[1, 0]), RatVec::from_ints(&[0, 1])],
            &[],
        )
        .unwrap();
        let p = trp_toric_extended(fan, &quadrant, &pt("(u^3, 0)")).unwrap();
        assert_eq!(p.stratum, RatCone::ray(RatVec::from_ints(&[0, 1])));
        assert_eq!(p.functional, RatVec::from_ints(&[3]));
        let p = trp_toric_extended(fan, &quadrant, &pt("(u, u)")).unwrap();
        assert_eq!(p.stratum, RatCone::zero(2));
        assert_eq!(p.functional, RatVec::from_ints(&[1, 1]));
    }

    #[test]
    fn toric_extended_errors() {
        let a2 = registry_get("torus(2)").unwrap();
        let fan = a2.fan("affine").unwrap();
        let e1 = RatCone::ray(RatVec::from_ints(&[1, 0]));
        assert_eq!(
            trp_toric_extended(fan, &e1, &pt("(u, 0)")).unwrap_err(),
            Error::ZeroPatternOutsideFan
        );
        let other = RatCone::ray(RatVec::from_ints(&[1, 1]));
        assert_eq!(
            trp_toric_extended(fan, &other, &pt("(u, u)")).unwrap_err(),
            Error::NotInFan
        );
        let singular = RatCone::from_generators(
            2,
            &[RatVec::from_ints(&[1, 0]), RatVec::from_ints(&[1, 2])],
            &[],
        )
        .unwrap();
        let fan = ColoredFan::new(vec![ColoredCone::uncolored(singular.clone())]);
        assert_eq!(
            trp_toric_extended(&fan, &singular, &pt("(u, u)")).unwrap_err(),
            Error::NonSmoothChart
        );
    }

    #[test]
    fn generic_examples() {
        let sl2 = registry_get("sl2_h").unwrap();
        assert_eq!(
            trp_generic(&sl2, &pt("(u^2, u^3)"), 8, 1).unwrap(),
            RatVec::from_ints(&[2])
        );
        assert_eq!(
            trp_generic(&sl2, &pt("(1, u)"), 8, 1).unwrap(),
            RatVec::from_ints(&[0])
        );
        assert!(matches!(
            trp_generic(&sl2, &pt("(0, 0)"), 8, 1),
            Err(Error::OutsideDomain(_))
        ));
        let gl2 = registry_get("gl2").unwrap();
        assert_eq!(
            trp_generic(&gl2, &pt("(u, 0, 0, 1)"), 8, 1).unwrap(),
            RatVec::from_ints(&[1, 0])
        );
    }

    #[test]
    fn reunit_keeps_valuations() {
        let x = pt("(1 + u, 2*u^(1/2) - u^3)");
        let y = reunit(&x, |i, _| int(i as i64 + 2));
        assert_ne!(x, y);
        assert_eq!(x.vals(), y.vals());
    }
}
