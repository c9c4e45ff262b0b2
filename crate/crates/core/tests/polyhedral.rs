use std::collections::BTreeSet;

use num::Zero;
use proptest::prelude::*;
use sphtrop::polyhedral::{
    dual_cone, face_lattice, intersect, linalg, membership, project_cone, quotient_by_span,
    Membership, QuotientMap, Rat, RatCone, RatVec,
};

fn vec_strategy(dim: usize) -> impl Strategy<Value = RatVec> {
    prop::collection::vec(-3i64..=3, dim).prop_map(|e| RatVec::from_ints(&e))
}

fn cone_strategy() -> impl Strategy<Value = RatCone> {
    (1usize..=4).prop_flat_map(|dim| {
        prop::collection::vec(vec_strategy(dim), 1..=6)
            .prop_map(move |rays| RatCone::from_generators(dim, &rays, &[]).unwrap())
    })
}

fn simplicial_strategy() -> impl Strategy<Value = RatCone> {
    (1usize..=4)
        .prop_flat_map(|dim| prop::collection::vec(vec_strategy(dim), dim).prop_map(move |r| (dim, r)))
        .prop_filter("independent rays", |(dim, rays)| linalg::rank(rays, *dim) == *dim)
        .prop_map(|(dim, rays)| RatCone::from_generators(dim, &rays, &[]).unwrap())
}

fn pair_strategy() -> impl Strategy<Value = (RatCone, RatCone, usize)> {
    (1usize..=4).prop_flat_map(|dim| {
        let c = || {
            prop::collection::vec(vec_strategy(dim), 1..=5)
                .prop_map(move |rays| RatCone::from_generators(dim, &rays, &[]).unwrap())
        };
        (c(), c(), 0..dim)
    })
}

/// Whether `u` pairs nonnegatively with every generator of `c`.
fn nonneg_on(u: &RatVec, c: &RatCone) -> bool {
    c.rays().iter().all(|r| u.dot(r) >= Rat::zero())
        && c.lines().iter().all(|l| u.dot(l).is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn dual_is_an_involution(c in cone_strategy()) {
        let d = dual_cone(&c);
        prop_assert_eq!(dual_cone(&d), c.clone());
        for g in d.generators() {
            prop_assert!(nonneg_on(&g, &c));
        }
    }

    #[test]
    fn dual_rays_are_extreme(c in cone_strategy()) {
        // Rank test: u is extreme modulo the lineality of the dual iff the
        // generators of c vanishing at u have rank dim - lin - 1.
        let d = dual_cone(&c);
        let lin = d.lines().len();
        for u in d.rays() {
            let tight: Vec<RatVec> = c
                .generators()
                .into_iter()
                .filter(|g| u.dot(g).is_zero())
                .collect();
            prop_assert_eq!(linalg::rank(&tight, c.dim()), c.dim() - lin - 1);
        }
    }

    #[test]
    fn canonical_forms_are_idempotent(c in cone_strategy()) {
        let again = RatCone::from_generators(c.dim(), c.rays(), c.lines()).unwrap();
        prop_assert_eq!(&again, &c);
        let from_h = RatCone::from_halfspaces(c.dim(), c.halfspaces(), c.equations()).unwrap();
        prop_assert_eq!(&from_h, &c);
    }

    #[test]
    fn faces_are_closed_under_intersection(c in cone_strategy()) {
        // Faces are determined by the rays of c they contain, and the meet of
        // two faces contains exactly their common rays.
        let faces = face_lattice(&c);
        prop_assert!(faces.contains(&c));
        let incidence = |f: &RatCone| -> BTreeSet<usize> {
            (0..c.rays().len()).filter(|&i| f.contains_point(&c.rays()[i])).collect()
        };
        let sets: BTreeSet<BTreeSet<usize>> = faces.iter().map(incidence).collect();
        prop_assert_eq!(sets.len(), faces.len());
        for f in &faces {
            prop_assert!(f.is_face_of(&c));
        }
        for a in &sets {
            for b in &sets {
                prop_assert!(sets.contains(&a.intersection(b).cloned().collect::<BTreeSet<_>>()));
            }
        }
        if faces.len() <= 8 {
            for a in &faces {
                for b in &faces {
                    prop_assert!(faces.contains(&a.intersect(b).unwrap()));
                }
            }
        }
    }

    #[test]
    fn simplicial_cones_have_two_to_the_d_faces(c in simplicial_strategy()) {
        prop_assert_eq!(face_lattice(&c).len(), 1usize << c.dim());
    }

    #[test]
    fn relative_interior_avoids_proper_faces(c in cone_strategy(), coeffs in prop::collection::vec(1i64..=4, 12)) {
        let gens = c.generators();
        let mut p = RatVec::zeros(c.dim());
        for (g, k) in gens.iter().zip(coeffs.iter().cycle()) {
            p = p.add_scaled(&Rat::from_integer((*k).into()), g);
        }
        prop_assert_eq!(membership(&c, &p).unwrap(), Membership::RelativeInterior);
        for f in face_lattice(&c) {
            if f != c {
                prop_assert_eq!(membership(&f, &p).unwrap(), Membership::Outside);
            }
        }
    }

    #[test]
    fn projection_of_intersection_is_contained((a, b, k) in pair_strategy()) {
        let tau = RatCone::ray(RatVec::unit(a.dim(), k));
        let q: QuotientMap = quotient_by_span(&tau);
        let lhs = project_cone(&intersect(&a, &b).unwrap(), &q).unwrap();
        let rhs = intersect(&project_cone(&a, &q).unwrap(), &project_cone(&b, &q).unwrap()).unwrap();
        prop_assert!(rhs.contains(&lhs));
    }

    #[test]
    fn quotient_kernel_is_the_span(c in cone_strategy()) {
        let q = quotient_by_span(&c);
        prop_assert_eq!(q.target_dim(), c.dim() - c.span_basis().len());
        for g in c.generators() {
            prop_assert!(q.apply(&g).is_zero());
        }
        let k = q.kernel();
        prop_assert_eq!(
            linalg::canonical_span_basis(&k, c.dim()),
            linalg::canonical_span_basis(&c.span_basis(), c.dim())
        );
    }
}

#[test]
fn documented_examples() {
    let v = |e: &[i64]| RatVec::from_ints(e);
    let quadrant = RatCone::from_generators(2, &[v(&[1, 0]), v(&[0, 1])], &[]).unwrap();
    assert_eq!(dual_cone(&quadrant), quadrant);

    let halfplane =
        RatCone::from_generators(2, &[v(&[1, 1]), v(&[-1, -1]), v(&[1, -1])], &[]).unwrap();
    assert_eq!(dual_cone(&halfplane), RatCone::ray(v(&[1, -1])));

    let x = RatCone::from_generators(2, &[v(&[-1, 1]), v(&[1, 0])], &[]).unwrap();
    let xd = RatCone::from_generators(2, &[v(&[0, 1]), v(&[1, 1])], &[]).unwrap();
    assert_eq!(dual_cone(&x), xd);
    assert_eq!(face_lattice(&x).len(), 4);
    assert_eq!(membership(&x, &v(&[1, 1])).unwrap(), Membership::RelativeInterior);

    let vcone = RatCone::from_halfspaces(2, &[v(&[1, -1])], &[]).unwrap();
    let pink = RatCone::from_generators(2, &[v(&[1, 0]), v(&[1, 1])], &[]).unwrap();
    assert_eq!(intersect(&x, &vcone).unwrap(), pink);

    let second = QuotientMap::from_rows(2, vec![v(&[0, 1])]);
    assert_eq!(project_cone(&vcone, &second).unwrap(), RatCone::full(1));
    assert_eq!(project_cone(&x, &second).unwrap(), RatCone::ray(v(&[1])));

    let diag = quotient_by_span(&RatCone::ray(v(&[1, 1])));
    assert_eq!(diag.target_dim(), 1);
    assert!(diag.apply(&v(&[1, 1])).is_zero());
}
