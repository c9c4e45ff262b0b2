//! Stratified tropicalizations and canonical compactifications.
//!
//! A point of `hom(σ^∨, [0, ∞])` is stored as a face `τ` of `σ` together with
//! a functional `α` on `N(τ) = N_R / span(τ)`; its value at `u ∈ σ^∨` is
//! `α(u)` when `u ∈ τ^⊥` and `∞` otherwise.

use std::collections::BTreeSet;

use num::Zero;

use crate::error::{Error, Result};
use crate::fan::{check_star, validate_colored_fan, ColoredCone, ColoredFan, SphericalData};
use crate::polyhedral::{linalg, quotient_by_span, Membership, QuotientMap, Rat, RatCone, RatVec};
use crate::value::Val;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ExtendedPoint {
    /// The cone whose compactification contains the point.
    pub sigma: RatCone,
    /// The face `τ` labelling the stratum.
    pub stratum: RatCone,
    /// `N_R -> N(τ)`; its rows form a basis of `τ^⊥`.
    pub quotient: QuotientMap,
    /// `α ∈ N(τ)`.
    pub functional: RatVec,
}

fn pairs_nonnegatively(u: &RatVec, c: &RatCone) -> bool {
    c.rays().iter().all(|r| u.dot(r) >= Rat::zero())
        && c.lines().iter().all(|l| u.dot(l) == Rat::zero())
}

fn is_perp(u: &RatVec, c: &RatCone) -> bool {
    c.generators().iter().all(|g| u.dot(g) == Rat::zero())
}

impl ExtendedPoint {
    /// `α̃(u)`; errors unless `u ∈ σ^∨`.
    pub fn evaluate(&self, u: &RatVec) -> Result<Val> {
        if u.dim() != self.sigma.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.sigma.dim(),
                found: u.dim(),
            });
        }
        if !pairs_nonnegatively(u, &self.sigma) {
            return Err(Error::NotInDualCone);
        }
        if !is_perp(u, &self.stratum) {
            return Ok(Val::Infinity);
        }
        let c = linalg::coordinates_in_span(self.quotient.rows(), u)
            .expect("quotient rows span the annihilator of the face");
        Ok(Val::Finite(
            c.iter().zip(self.functional.iter()).map(|(a, b)| a * b).sum(),
        ))
    }
}

/// `α ↦ α̃` for a face `tau` of `sigma`.
pub fn extend_functional(sigma: &RatCone, tau: &RatCone, alpha: RatVec) -> Result<ExtendedPoint> {
    if !tau.is_face_of(sigma) {
        return Err(Error::NotAFace);
    }
    let quotient = quotient_by_span(tau);
    if alpha.dim() != quotient.target_dim() {
        return Err(Error::DimensionMismatch {
            expected: quotient.target_dim(),
            found: alpha.dim(),
        });
    }
    Ok(ExtendedPoint {
        sigma: sigma.clone(),
        stratum: tau.clone(),
        quotient,
        functional: alpha,
    })
}

pub fn evaluate_extended(p: &ExtendedPoint, u: &RatVec) -> Result<Val> {
    p.evaluate(u)
}

/// One stratum `V(τ) ⊆ N(τ)` of a tropicalization.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Stratum {
    pub face: ColoredCone,
    pub quotient: QuotientMap,
    pub cone: RatCone,
}

/// `trop_G(X) = ⊔_{(τ, F) ∈ 𝔉(X)} V(τ)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TropSpace {
    pub base: SphericalData,
    pub fan: ColoredFan,
    pub strata: Vec<Stratum>,
}

impl TropSpace {
    pub fn stratum(&self, face: &ColoredCone) -> Option<&Stratum> {
        self.strata.iter().find(|s| &s.face == face)
    }
}

fn require_valid(sd: &SphericalData, fan: &ColoredFan) -> Result<()> {
    let report = validate_colored_fan(sd, fan)?;
    if report.is_valid() {
        return Ok(());
    }
    let mut why = Vec::new();
    for (i, r) in report.cone_reports.iter().enumerate() {
        if !r.is_valid() {
            why.push(format!("cone {i} fails {}", r.failures().join(", ")));
        }
    }
    for (i, face) in &report.missing_faces {
        why.push(format!("cone {i} lacks face {face}"));
    }
    for (i, j) in &report.overlaps {
        why.push(format!("cones {i} and {j} share relative interior points in V"));
    }
    Err(Error::InvalidFan(why.join("; ")))
}

pub fn build_trop_space(sd: &SphericalData, fan: &ColoredFan) -> Result<TropSpace> {
    require_valid(sd, fan)?;
    let fan = fan.canonical();
    let strata = fan
        .cones
        .iter()
        .map(|cc| {
            let q = quotient_by_span(&cc.cone);
            let cone = sd.vcone().project(&q)?;
            Ok(Stratum {
                face: cc.clone(),
                quotient: q,
                cone,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TropSpace {
        base: sd.clone(),
        fan,
        strata,
    })
}

#[derive(Clone, Copy, Debug)]
pub enum CompactifyMode<'a> {
    /// Strata over every face.
    Toric,
    /// Strata over faces whose relative interior meets `V`.
    Colored(&'a SphericalData),
}

/// The piece of a compactification lying over the face `face`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Piece {
    pub face: RatCone,
    pub quotient: QuotientMap,
    pub cone: RatCone,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CompactifiedCone {
    pub sigma: RatCone,
    /// Pieces ordered as the face lattice.
    pub strata: Vec<Piece>,
}

impl CompactifiedCone {
    pub fn piece(&self, face: &RatCone) -> Option<&Piece> {
        self.strata.iter().find(|p| &p.face == face)
    }

    pub fn len(&self) -> usize {
        self.strata.len()
    }

    pub fn is_empty(&self) -> bool {
        self.strata.is_empty()
    }

    pub fn faces(&self) -> impl Iterator<Item = &RatCone> {
        self.strata.iter().map(|p| &p.face)
    }
}

fn pieces_over(
    sigma: &RatCone,
    body: &RatCone,
    keep: impl Fn(&RatCone) -> bool,
) -> Result<CompactifiedCone> {
    let strata = sigma
        .face_lattice()
        .into_iter()
        .filter(|tau| keep(tau))
        .map(|tau| {
            let q = quotient_by_span(&tau);
            let cone = body.project(&q)?;
            Ok(Piece {
                face: tau,
                quotient: q,
                cone,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CompactifiedCone {
        sigma: sigma.clone(),
        strata,
    })
}

/// The canonical compactification `σ̄ = hom(σ^∨, [0, ∞])`, piece by piece.
pub fn compactify_cone(sigma: &RatCone, mode: CompactifyMode<'_>) -> Result<CompactifiedCone> {
    if !sigma.is_strictly_convex() {
        return Err(Error::NotStrictlyConvex);
    }
    match mode {
        CompactifyMode::Toric => pieces_over(sigma, sigma, |_| true),
        CompactifyMode::Colored(sd) => {
            if sd.dim() != sigma.dim() {
                return Err(Error::DimensionMismatch {
                    expected: sd.dim(),
                    found: sigma.dim(),
                });
            }
            pieces_over(sigma, sigma, |tau| tau.relative_interior_meets(sd.vcone()))
        }
    }
}

/// Closure of `σ ∩ V` inside `σ̄`: pieces `(σ ∩ V) / span(τ)` over faces `τ`
/// whose relative interior meets `V`.
pub fn closure_of_valuations(sd: &SphericalData, sigma: &RatCone) -> Result<CompactifiedCone> {
    if !sigma.is_strictly_convex() {
        return Err(Error::NotStrictlyConvex);
    }
    let body = sigma.intersect(sd.vcone())?;
    pieces_over(sigma, &body, |tau| tau.relative_interior_meets(sd.vcone()))
}

/// The image of the retraction, one compactified piece per maximal cone.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PImage {
    /// Whether every cone lies in `V`.
    pub star: bool,
    pub cones: Vec<(ColoredCone, CompactifiedCone)>,
    /// `V` when pieces are clipped to it, `None` under the support condition.
    clip: Option<RatCone>,
}

impl PImage {
    /// Strata after gluing: distinct faces over all maximal cones.
    pub fn glued_strata(&self) -> Vec<RatCone> {
        self.cones
            .iter()
            .flat_map(|(_, c)| c.faces().cloned())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    pub fn piece_count(&self) -> usize {
        self.cones.iter().map(|(_, c)| c.len()).sum()
    }

    /// For every pair of maximal cones and every face both carry, the two
    /// pieces meet exactly in the piece contributed by `σ_1 ∩ σ_2`.
    pub fn gluing_consistent(&self) -> Result<bool> {
        for (i, (_, a)) in self.cones.iter().enumerate() {
            for (_, b) in &self.cones[i + 1..] {
                let mut common = a.sigma.intersect(&b.sigma)?;
                if let Some(v) = &self.clip {
                    common = common.intersect(v)?;
                }
                for pa in &a.strata {
                    let Some(pb) = b.piece(&pa.face) else { continue };
                    let meet = pa.cone.intersect(&pb.cone)?;
                    if meet != common.project(&pa.quotient)? {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }
}

fn p_image_impl(sd: &SphericalData, fan: &ColoredFan, clip: bool) -> Result<PImage> {
    require_valid(sd, fan)?;
    let star = check_star(sd, fan);
    let canon = fan.canonical();
    let cones = canon
        .maximal_cones()
        .into_iter()
        .map(|cc| {
            let piece = if clip {
                closure_of_valuations(sd, &cc.cone)?
            } else {
                compactify_cone(&cc.cone, CompactifyMode::Colored(sd))?
            };
            Ok((cc.clone(), piece))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PImage {
        star,
        cones,
        clip: clip.then(|| sd.vcone().clone()),
    })
}

/// `p(X^ℶ)`: under the support condition each maximal cone contributes its
/// canonical compactification, otherwise the closure of `σ ∩ V` in it.
pub fn p_image(sd: &SphericalData, fan: &ColoredFan) -> Result<PImage> {
    let star = check_star(sd, fan);
    p_image_impl(sd, fan, !star)
}

/// The closure-of-`σ ∩ V` description for every fan, with or without the
/// support condition.
pub fn p_image_closure(sd: &SphericalData, fan: &ColoredFan) -> Result<PImage> {
    p_image_impl(sd, fan, true)
}

/// `lim_{s→∞} <v0 + s w, u>`; `u` must be nonnegative on `w`.
pub fn ray_limit(v0: &RatVec, w: &RatVec, u: &RatVec) -> Result<Val> {
    let slope = u.dot(w);
    let zero = Rat::zero();
    if slope > zero {
        Ok(Val::Infinity)
    } else if slope == zero {
        Ok(Val::Finite(u.dot(v0)))
    } else {
        Err(Error::NotInDualCone)
    }
}

/// The limit of `v0 + s w` in `σ̄` as `s → ∞`.
pub fn limit_of_ray(space: &CompactifiedCone, v0: &RatVec, w: &RatVec) -> Result<ExtendedPoint> {
    let n = space.sigma.dim();
    for v in [v0, w] {
        if v.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: v.dim(),
            });
        }
    }
    if w.is_zero() {
        return Err(Error::NoStratum);
    }
    if !space.sigma.contains_point(v0) {
        return Err(Error::PointOutsideCone);
    }
    let piece = space
        .strata
        .iter()
        .find(|p| matches!(p.face.membership(w), Ok(Membership::RelativeInterior)))
        .ok_or(Error::NoStratum)?;
    Ok(ExtendedPoint {
        sigma: space.sigma.clone(),
        stratum: piece.face.clone(),
        quotient: piece.quotient.clone(),
        functional: piece.quotient.apply(v0),
    })
}

/// Checks `p` against `lim <v0 + s w, u>` on the rays of `σ^∨` and their
/// pairwise sums.
pub fn certify_limit(p: &ExtendedPoint, v0: &RatVec, w: &RatVec) -> Result<bool> {
    let dual = p.sigma.dual();
    let mut gens = dual.generators();
    let base = gens.clone();
    for (i, a) in base.iter().enumerate() {
        for b in &base[i + 1..] {
            gens.push(a + b);
        }
    }
    for u in &gens {
        if p.evaluate(u)? != ray_limit(v0, w, u)? {
            return Ok(false);
        }
    }
    Ok(true)
}
