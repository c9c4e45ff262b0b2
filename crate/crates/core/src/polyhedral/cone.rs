use std::collections::BTreeSet;
use std::fmt;

use num::{Signed, Zero};

use super::linalg;
use super::quotient::QuotientMap;
use super::vector::RatVec;
use crate::error::{Error, Result};

/// Position of a vector relative to a closed cone.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Membership {
    Outside,
    Boundary,
    RelativeInterior,
}

/// A closed rational polyhedral cone in `Q^dim`, held in both
/// representations.
///
/// The cone is `cone(rays) + span(lines)` and also
/// `{v : <h, v> >= 0 for h in halfspaces, <e, v> = 0 for e in equations}`.
/// Both sides are canonical, so structural equality is set equality:
///
/// * `lines` is the RREF basis of the lineality space, scaled to primitive
///   integer rows; `equations` is the same for the orthogonal complement of
///   the linear span.
/// * `rays` are the extreme rays modulo lineality, projected onto the
///   orthogonal complement of the lineality space and made primitive;
///   `halfspaces` are the facet normals, projected into the linear span.
///   Both lists are sorted lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct RatCone {
    dim: usize,
    rays: Vec<RatVec>,
    lines: Vec<RatVec>,
    halfspaces: Vec<RatVec>,
    equations: Vec<RatVec>,
}

fn check_dims<'a>(dim: usize, vs: impl IntoIterator<Item = &'a RatVec>) -> Result<()> {
    for v in vs {
        if v.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: v.dim(),
            });
        }
    }
    Ok(())
}

/// Keeps the extreme rays of the cone cut out by `constraints`, reduced
/// modulo the lineality space `lines`.
fn prune(rays: Vec<RatVec>, lines: &[RatVec], constraints: &[RatVec], dim: usize) -> Vec<RatVec> {
    let Some(target_rank) = dim.checked_sub(lines.len() + 1) else {
        return Vec::new();
    };
    let canonical: BTreeSet<RatVec> = rays
        .iter()
        .map(|r| linalg::project_off(r, lines).primitive())
        .filter(|r| !r.is_zero())
        .collect();
    canonical
        .into_iter()
        .filter(|r| {
            let tight: Vec<RatVec> = constraints
                .iter()
                .filter(|c| c.dot(r).is_zero())
                .cloned()
                .collect();
            linalg::rank(&tight, dim) == target_rank
        })
        .collect()
}

/// Double description: generators `(rays, lines)` of
/// `{x : <a, x> >= 0 for a in ineqs, <e, x> = 0 for e in eqs}`.
///
/// Constraints are processed equations first, then inequalities, each
/// group in lexicographic order.
fn generators_of(dim: usize, ineqs: &[RatVec], eqs: &[RatVec]) -> (Vec<RatVec>, Vec<RatVec>) {
    let mut lines: Vec<RatVec> = (0..dim).map(|i| RatVec::unit(dim, i)).collect();
    let mut rays: Vec<RatVec> = Vec::new();
    let mut processed: Vec<RatVec> = Vec::new();

    let mut eq_sorted: Vec<&RatVec> = eqs.iter().collect();
    eq_sorted.sort();
    let mut ineq_sorted: Vec<&RatVec> = ineqs.iter().collect();
    ineq_sorted.sort();
    let ordered = eq_sorted
        .into_iter()
        .map(|a| (a, true))
        .chain(ineq_sorted.into_iter().map(|a| (a, false)));

    for (a, is_eq) in ordered {
        if a.is_zero() {
            continue;
        }
        if let Some(pos) = lines.iter().position(|l| !a.dot(l).is_zero()) {
            let mut l0 = lines.remove(pos);
            let mut al0 = a.dot(&l0);
            if al0.is_negative() {
                l0 = -l0;
                al0 = -al0;
            }
            let push_into_hyperplane = |v: &RatVec| {
                let c = a.dot(v) / &al0;
                v.add_scaled(&-c, &l0)
            };
            lines = lines.iter().map(push_into_hyperplane).collect();
            rays = rays.iter().map(push_into_hyperplane).collect();
            if !is_eq {
                rays.push(l0);
            }
        } else {
            let mut next = Vec::new();
            let mut positive = Vec::new();
            let mut negative = Vec::new();
            for r in rays {
                let s = a.dot(&r);
                if s.is_zero() {
                    next.push(r);
                } else if s.is_positive() {
                    positive.push((s, r));
                } else {
                    negative.push((s, r));
                }
            }
            for (sp, p) in &positive {
                for (sn, n) in &negative {
                    next.push(n.scale(sp).add_scaled(&-sn.clone(), p));
                }
            }
            if !is_eq {
                next.extend(positive.into_iter().map(|(_, r)| r));
            }
            rays = next;
        }
        processed.push(a.clone());
        lines = linalg::canonical_span_basis(&lines, dim);
        rays = prune(rays, &lines, &processed, dim);
    }
    (rays, linalg::canonical_span_basis(&lines, dim))
}

impl RatCone {
    /// The cone `cone(rays) + span(lines)`.
    pub fn from_generators(dim: usize, rays: &[RatVec], lines: &[RatVec]) -> Result<Self> {
        check_dims(dim, rays.iter().chain(lines))?;
        let (halfspaces, equations) = generators_of(dim, rays, lines);
        let (rays, lines) = generators_of(dim, &halfspaces, &equations);
        Ok(RatCone {
            dim,
            rays,
            lines,
            halfspaces,
            equations,
        })
    }

    /// The cone `{v : <h, v> >= 0, <e, v> = 0}`.
    pub fn from_halfspaces(dim: usize, halfspaces: &[RatVec], equations: &[RatVec]) -> Result<Self> {
        check_dims(dim, halfspaces.iter().chain(equations))?;
        let (rays, lines) = generators_of(dim, halfspaces, equations);
        let (halfspaces, equations) = generators_of(dim, &rays, &lines);
        Ok(RatCone {
            dim,
            rays,
            lines,
            halfspaces,
            equations,
        })
    }

    pub fn zero(dim: usize) -> Self {
        Self::from_generators(dim, &[], &[]).unwrap()
    }

    pub fn full(dim: usize) -> Self {
        Self::from_halfspaces(dim, &[], &[]).unwrap()
    }

    pub fn ray(v: RatVec) -> Self {
        Self::from_generators(v.dim(), &[v], &[]).unwrap()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[RatVec] {
        &self.rays
    }

    pub fn lines(&self) -> &[RatVec] {
        &self.lines
    }

    pub fn halfspaces(&self) -> &[RatVec] {
        &self.halfspaces
    }

    pub fn equations(&self) -> &[RatVec] {
        &self.equations
    }

    /// Rays followed by both orientations of every line.
    pub fn generators(&self) -> Vec<RatVec> {
        let mut g = self.rays.clone();
        for l in &self.lines {
            g.push(l.clone());
            g.push(-l.clone());
        }
        g
    }

    /// Dimension of the linear span.
    pub fn cone_dim(&self) -> usize {
        self.dim - self.equations.len()
    }

    pub fn is_strictly_convex(&self) -> bool {
        self.lines.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.rays.is_empty() && self.lines.is_empty()
    }

    /// Canonical basis of the linear span.
    pub fn span_basis(&self) -> Vec<RatVec> {
        let mut g = self.rays.clone();
        g.extend(self.lines.iter().cloned());
        linalg::canonical_span_basis(&g, self.dim)
    }

    pub fn membership(&self, v: &RatVec) -> Result<Membership> {
        check_dims(self.dim, [v])?;
        if self.equations.iter().any(|e| !e.dot(v).is_zero()) {
            return Ok(Membership::Outside);
        }
        let mut interior = true;
        for h in &self.halfspaces {
            let s = h.dot(v);
            if s.is_negative() {
                return Ok(Membership::Outside);
            }
            if s.is_zero() {
                interior = false;
            }
        }
        Ok(if interior {
            Membership::RelativeInterior
        } else {
            Membership::Boundary
        })
    }

    pub fn contains_point(&self, v: &RatVec) -> bool {
        matches!(
            self.membership(v),
            Ok(Membership::Boundary | Membership::RelativeInterior)
        )
    }

    pub fn contains(&self, other: &RatCone) -> bool {
        other.dim == self.dim && other.generators().iter().all(|g| self.contains_point(g))
    }

    /// A point of the relative interior: the sum of the rays.
    pub fn relative_interior_point(&self) -> RatVec {
        self.rays
            .iter()
            .fold(RatVec::zeros(self.dim), |acc, r| &acc + r)
    }

    /// Whether the relative interior of `self` meets the closed cone `other`.
    ///
    /// `self ∩ other` is convex, so it meets `relint(self)` exactly when its
    /// own relative interior point does.
    pub fn relative_interior_meets(&self, other: &RatCone) -> bool {
        match self.intersect(other) {
            Ok(meet) => matches!(
                self.membership(&meet.relative_interior_point()),
                Ok(Membership::RelativeInterior)
            ),
            Err(_) => false,
        }
    }

    /// Whether `relint(self) ∩ relint(other) ∩ within` is nonempty.
    pub fn relative_interiors_meet(&self, other: &RatCone, within: &RatCone) -> bool {
        let Ok(meet) = self.intersect(other).and_then(|m| m.intersect(within)) else {
            return false;
        };
        let p = meet.relative_interior_point();
        matches!(self.membership(&p), Ok(Membership::RelativeInterior))
            && matches!(other.membership(&p), Ok(Membership::RelativeInterior))
    }

    /// `{u : <u, v> >= 0 for all v in self}`.
    pub fn dual(&self) -> RatCone {
        RatCone::from_generators(self.dim, &self.halfspaces, &self.equations)
            .expect("dimensions agree")
    }

    pub fn intersect(&self, other: &RatCone) -> Result<RatCone> {
        if other.dim != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        let hs: Vec<RatVec> = self.halfspaces.iter().chain(&other.halfspaces).cloned().collect();
        let eqs: Vec<RatVec> = self.equations.iter().chain(&other.equations).cloned().collect();
        RatCone::from_halfspaces(self.dim, &hs, &eqs)
    }

    /// Image under a linear surjection.
    pub fn project(&self, q: &QuotientMap) -> Result<RatCone> {
        if q.source_dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: q.source_dim(),
            });
        }
        let rays: Vec<RatVec> = self.rays.iter().map(|r| q.apply(r)).collect();
        let lines: Vec<RatVec> = self.lines.iter().map(|l| q.apply(l)).collect();
        RatCone::from_generators(q.target_dim(), &rays, &lines)
    }

    /// Every face, from the lineality space up to the cone itself, ordered
    /// by dimension and then canonically.
    pub fn face_lattice(&self) -> Vec<RatCone> {
        let incidence: Vec<BTreeSet<usize>> = self
            .halfspaces
            .iter()
            .map(|h| {
                (0..self.rays.len())
                    .filter(|&i| h.dot(&self.rays[i]).is_zero())
                    .collect()
            })
            .collect();
        let mut sets: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
        sets.insert((0..self.rays.len()).collect());
        let mut frontier: Vec<BTreeSet<usize>> = sets.iter().cloned().collect();
        while let Some(s) = frontier.pop() {
            for z in &incidence {
                let meet: BTreeSet<usize> = s.intersection(z).copied().collect();
                if sets.insert(meet.clone()) {
                    frontier.push(meet);
                }
            }
        }
        let mut faces: Vec<RatCone> = sets
            .into_iter()
            .map(|s| {
                let rays: Vec<RatVec> = s.into_iter().map(|i| self.rays[i].clone()).collect();
                self.face_from_rays(rays)
            })
            .collect();
        faces.sort_by(|a, b| a.cone_dim().cmp(&b.cone_dim()).then_with(|| a.cmp(b)));
        faces
    }

    /// The face spanned by a subset of the (canonical, sorted) rays. Such a
    /// subset is already the canonical ray list of the face, so only the
    /// outer description needs computing.
    fn face_from_rays(&self, rays: Vec<RatVec>) -> RatCone {
        let (halfspaces, equations) = generators_of(self.dim, &rays, &self.lines);
        RatCone {
            dim: self.dim,
            rays,
            lines: self.lines.clone(),
            halfspaces,
            equations,
        }
    }

    /// Whether `self` is a face of `sigma`: the rays of `sigma` on which
    /// every facet normal vanishing on `self` vanishes are exactly the rays
    /// of `self`.
    pub fn is_face_of(&self, sigma: &RatCone) -> bool {
        if self.dim != sigma.dim || self.lines != sigma.lines {
            return false;
        }
        let gens = self.generators();
        let tight: Vec<&RatVec> = sigma
            .halfspaces
            .iter()
            .filter(|h| gens.iter().all(|g| h.dot(g).is_zero()))
            .collect();
        let face_rays: Vec<&RatVec> = sigma
            .rays
            .iter()
            .filter(|r| tight.iter().all(|h| h.dot(r).is_zero()))
            .collect();
        face_rays.len() == self.rays.len() && face_rays.into_iter().eq(self.rays.iter())
    }
}

impl fmt::Display for RatCone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cone[")?;
        for (i, r) in self.rays.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, "]")?;
        if !self.lines.is_empty() {
            write!(f, " + span[")?;
            for (i, l) in self.lines.iter().enumerate() {
                if i > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{l}")?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

/// Free-function form of [`RatCone::dual`].
pub fn dual_cone(c: &RatCone) -> RatCone {
    c.dual()
}

pub fn face_lattice(c: &RatCone) -> Vec<RatCone> {
    c.face_lattice()
}

pub fn membership(c: &RatCone, v: &RatVec) -> Result<Membership> {
    c.membership(v)
}

pub fn intersect(a: &RatCone, b: &RatCone) -> Result<RatCone> {
    a.intersect(b)
}

pub fn project_cone(c: &RatCone, q: &QuotientMap) -> Result<RatCone> {
    c.project(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyhedral::quotient::quotient_by_span;

    fn v(e: &[i64]) -> RatVec {
        RatVec::from_ints(e)
    }

    fn cone(rays: &[&[i64]]) -> RatCone {
        let rays: Vec<RatVec> = rays.iter().map(|r| v(r)).collect();
        RatCone::from_generators(2, &rays, &[]).unwrap()
    }

    fn quadrant() -> RatCone {
        cone(&[&[1, 0], &[0, 1]])
    }

    #[test]
    fn quadrant_is_self_dual() {
        let q = quadrant();
        assert_eq!(q.dual(), q);
        assert_eq!(q.halfspaces(), &[v(&[0, 1]), v(&[1, 0])]);
    }

    #[test]
    fn halfplane_dual_is_a_ray() {
        let h = cone(&[&[1, 1], &[-1, -1], &[1, -1]]);
        assert_eq!(h.lines(), &[v(&[1, 1])]);
        assert_eq!(h.rays(), &[v(&[1, -1])]);
        let d = h.dual();
        assert_eq!(d.rays(), &[v(&[1, -1])]);
        assert!(d.lines().is_empty());
    }

    #[test]
    fn dual_of_obtuse_cone() {
        let c = cone(&[&[-1, 1], &[1, 0]]);
        assert_eq!(c.dual().rays(), &[v(&[0, 1]), v(&[1, 1])]);
        for u in c.dual().rays() {
            for r in c.rays() {
                assert!(!u.dot(r).is_negative());
            }
        }
    }

    #[test]
    fn redundant_generators_are_dropped() {
        let c = cone(&[&[1, 0], &[0, 1], &[1, 1], &[2, 0]]);
        assert_eq!(c.rays(), &[v(&[0, 1]), v(&[1, 0])]);
    }

    #[test]
    fn face_counts() {
        assert_eq!(quadrant().face_lattice().len(), 4);
        assert_eq!(RatCone::ray(v(&[3, 1])).face_lattice().len(), 2);
        let faces = cone(&[&[-1, 1], &[1, 0]]).face_lattice();
        assert_eq!(faces.len(), 4);
        assert!(faces[0].is_zero());
        assert_eq!(RatCone::full(2).face_lattice().len(), 1);
        let h = cone(&[&[1, 1], &[-1, -1], &[1, -1]]);
        assert_eq!(h.face_lattice().len(), 2);
    }

    #[test]
    fn membership_examples() {
        let q = quadrant();
        assert_eq!(q.membership(&v(&[1, 1])).unwrap(), Membership::RelativeInterior);
        assert_eq!(q.membership(&v(&[1, 0])).unwrap(), Membership::Boundary);
        assert_eq!(q.membership(&v(&[-1, 0])).unwrap(), Membership::Outside);
        let c = cone(&[&[-1, 1], &[1, 0]]);
        assert_eq!(c.membership(&v(&[1, 1])).unwrap(), Membership::RelativeInterior);
        assert!(matches!(
            q.membership(&v(&[1, 1, 1])),
            Err(Error::DimensionMismatch { .. })
        ));
        let z = RatCone::zero(2);
        assert_eq!(z.membership(&v(&[0, 0])).unwrap(), Membership::RelativeInterior);
    }

    #[test]
    fn intersections() {
        let q = quadrant();
        assert_eq!(q.intersect(&q).unwrap(), q);
        let halfplane = RatCone::from_halfspaces(2, &[v(&[1, -1])], &[]).unwrap();
        let c = cone(&[&[-1, 1], &[1, 0]]);
        assert_eq!(c.intersect(&halfplane).unwrap(), cone(&[&[1, 0], &[1, 1]]));
        let a = RatCone::ray(v(&[1, 0]));
        let b = RatCone::ray(v(&[0, 1]));
        assert!(a.intersect(&b).unwrap().is_zero());
    }

    #[test]
    fn projections() {
        let to_second = quotient_by_span(&RatCone::ray(v(&[1, 0])));
        let ray = RatCone::ray(RatVec::from_ints(&[1]));
        assert_eq!(quadrant().project(&to_second).unwrap(), ray);
        let halfplane = RatCone::from_halfspaces(2, &[v(&[1, -1])], &[]).unwrap();
        assert_eq!(halfplane.project(&to_second).unwrap(), RatCone::full(1));
        assert_eq!(cone(&[&[-1, 1], &[1, 0]]).project(&to_second).unwrap(), ray);
    }

    #[test]
    fn faces_recognised() {
        let c = cone(&[&[-1, 1], &[1, 0]]);
        assert!(RatCone::ray(v(&[1, 0])).is_face_of(&c));
        assert!(RatCone::zero(2).is_face_of(&c));
        assert!(c.is_face_of(&c));
        assert!(!RatCone::ray(v(&[1, 1])).is_face_of(&c));
    }
}
