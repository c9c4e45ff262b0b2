use std::collections::BTreeSet;

use proptest::prelude::*;
use sphtrop::fan::{
    check_star, colored_faces, star_fan, validate_colored_cone, validate_colored_fan, ColoredCone,
    ColoredFan, SphericalData,
};
use sphtrop::polyhedral::{QuotientMap, RatCone, RatVec};
use sphtrop::registry::registry_get;

fn v(e: &[i64]) -> RatVec {
    RatVec::from_ints(e)
}

fn gl2() -> SphericalData {
    registry_get("gl2").unwrap().data
}

/// Valid colored cones for the GL_2 data: two random rays, optionally
/// colored by D.
fn gl2_colored_cone() -> impl Strategy<Value = ColoredCone> {
    (
        prop::collection::vec(prop::collection::vec(-3i64..=3, 2), 1..=2),
        any::<bool>(),
    )
        .prop_filter_map("valid colored cone", |(rays, colored)| {
            let rays: Vec<RatVec> = rays.iter().map(|r| v(r)).collect();
            let cone = RatCone::from_generators(2, &rays, &[]).ok()?;
            let cc = if colored {
                // D must be a ray; adjoin ρ(D) to the generators.
                let mut with_d = rays.clone();
                with_d.push(v(&[-1, 1]));
                ColoredCone::new(RatCone::from_generators(2, &with_d, &[]).ok()?, ["D"])
            } else {
                ColoredCone::uncolored(cone)
            };
            validate_colored_cone(&gl2(), &cc)
                .ok()?
                .is_valid()
                .then_some(cc)
        })
}

/// Strictly convex cones of the torus of rank 3.
fn torus_cone() -> impl Strategy<Value = ColoredCone> {
    prop::collection::vec(prop::collection::vec(-2i64..=2, 3), 1..=4).prop_filter_map(
        "strictly convex",
        |rays| {
            let rays: Vec<RatVec> = rays.iter().map(|r| v(r)).collect();
            let c = RatCone::from_generators(3, &rays, &[]).ok()?;
            (c.is_strictly_convex() && !c.is_zero()).then(|| ColoredCone::uncolored(c))
        },
    )
}

fn registry_fans() -> Vec<(SphericalData, String, ColoredFan)> {
    let mut out = Vec::new();
    for name in ["torus(2)", "torus(3)", "sl2_h", "gl2"] {
        let e = registry_get(name).unwrap();
        for (fname, fan) in &e.fans {
            out.push((e.data.clone(), format!("{name}/{fname}"), fan.clone()));
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn colored_faces_are_closed(cc in gl2_colored_cone()) {
        let sd = gl2();
        let faces: BTreeSet<ColoredCone> = colored_faces(&sd, &cc).unwrap().into_iter().collect();
        prop_assert!(faces.contains(&cc));
        for f in &faces {
            prop_assert!(validate_colored_cone(&sd, f).unwrap().is_valid());
            for g in colored_faces(&sd, f).unwrap() {
                prop_assert!(faces.contains(&g));
            }
        }
    }

    #[test]
    fn face_closure_is_a_fixpoint(cc in gl2_colored_cone(), t in torus_cone()) {
        for (sd, cc) in [(gl2(), cc), (SphericalData::torus(3), t)] {
            let fan = ColoredFan::new(vec![cc]).face_closure(&sd).unwrap();
            prop_assert!(validate_colored_fan(&sd, &fan).unwrap().is_valid());
            prop_assert_eq!(fan.face_closure(&sd).unwrap(), fan.clone());
        }
    }

    #[test]
    fn star_of_the_origin_is_the_identity(cc in gl2_colored_cone()) {
        let sd = gl2();
        let fan = ColoredFan::new(vec![cc]).face_closure(&sd).unwrap();
        let zero = ColoredCone::uncolored(RatCone::zero(2));
        let star = star_fan(&sd, &fan, &zero, None).unwrap();
        prop_assert_eq!(star.quotient, QuotientMap::identity(2));
        prop_assert_eq!(star.fan, fan.canonical());
        prop_assert_eq!(star.data.vcone(), sd.vcone());
    }

    #[test]
    fn support_condition_is_hereditary(cc in gl2_colored_cone()) {
        let sd = gl2();
        let fan = ColoredFan::new(vec![cc.clone()]).face_closure(&sd).unwrap();
        if check_star(&sd, &ColoredFan::new(vec![cc])) {
            prop_assert!(check_star(&sd, &fan));
            for tau in &fan.cones {
                let star = star_fan(&sd, &fan, tau, None).unwrap();
                prop_assert!(check_star(&star.data, &star.fan));
            }
        }
    }
}

#[test]
fn registry_fans_satisfy_the_invariants() {
    for (sd, name, fan) in registry_fans() {
        let report = validate_colored_fan(&sd, &fan).unwrap();
        assert!(report.is_valid(), "{name}: {report:?}");
        let closed = fan.face_closure(&sd).unwrap();
        assert_eq!(closed, fan.canonical(), "{name}");
        let zero = ColoredCone::uncolored(RatCone::zero(sd.dim()));
        let id = star_fan(&sd, &fan, &zero, None).unwrap();
        assert_eq!(id.fan, fan.canonical(), "{name}");
        if check_star(&sd, &fan) {
            for tau in &fan.cones {
                let star = star_fan(&sd, &fan, tau, None).unwrap();
                assert!(check_star(&star.data, &star.fan), "{name} at {tau}");
                let r = validate_colored_fan(&star.data, &star.fan).unwrap();
                assert!(r.is_valid(), "{name} at {tau}: {r:?}");
            }
        }
    }
}

#[test]
fn torus_projective_plane() {
    let e = registry_get("torus(2)").unwrap();
    let p2 = e.fan("projective").unwrap();
    assert_eq!(p2.len(), 7);
    assert!(validate_colored_fan(&e.data, p2).unwrap().is_valid());
    assert!(check_star(&e.data, p2));

    let e1 = ColoredCone::uncolored(RatCone::ray(v(&[1, 0])));
    let star = star_fan(&e.data, p2, &e1, None).unwrap();
    assert_eq!(star.data.dim(), 1);
    let expected = ColoredFan::new(vec![
        ColoredCone::uncolored(RatCone::zero(1)),
        ColoredCone::uncolored(RatCone::ray(v(&[-1]))),
        ColoredCone::uncolored(RatCone::ray(v(&[1]))),
    ])
    .canonical();
    assert_eq!(star.fan, expected);
    assert_eq!(star.data.basis_names(), &["t2".to_string()]);
}

#[test]
fn gl2_star_at_the_uncolored_ray() {
    let e = registry_get("gl2").unwrap();
    let x = e.fan("X").unwrap();
    let tau = ColoredCone::uncolored(RatCone::ray(v(&[1, 0])));
    // F_φ = ∅, i.e. the complement is {D}.
    let dominant = BTreeSet::new();
    let star = star_fan(&e.data, x, &tau, Some(&dominant)).unwrap();
    assert_eq!(star.data.dim(), 1);
    assert_eq!(star.data.vcone(), &RatCone::full(1));
    assert_eq!(star.data.rho("D").unwrap(), &v(&[1]));
    let expected = ColoredFan::new(vec![
        ColoredCone::uncolored(RatCone::zero(1)),
        ColoredCone::new(RatCone::ray(v(&[1])), ["D"]),
    ])
    .canonical();
    assert_eq!(star.fan, expected);
    assert!(validate_colored_fan(&star.data, &star.fan).unwrap().is_valid());
    // The default reading recovers the same colors.
    assert_eq!(star_fan(&e.data, x, &tau, None).unwrap().fan, expected);
}

#[test]
fn validation_reports() {
    let sd = registry_get("sl2_h").unwrap().data;
    let dup = ColoredFan::new(vec![
        ColoredCone::new(RatCone::ray(v(&[1])), ["D"]),
        ColoredCone::uncolored(RatCone::ray(v(&[1]))),
        ColoredCone::uncolored(RatCone::zero(1)),
    ]);
    let r = validate_colored_fan(&sd, &dup).unwrap();
    assert!(r.face_closed());
    assert!(r.cones_valid());
    assert_eq!(r.overlaps, vec![(0, 1)]);

    let gl2 = gl2();
    let bad = ColoredFan::new(vec![ColoredCone::uncolored(RatCone::ray(v(&[-1, 1])))]);
    let r = validate_colored_fan(&gl2, &bad).unwrap();
    assert!(!r.cone_reports[0].cc2);
}
