use std::collections::BTreeSet;

use num::{One, Zero};

use super::colored::{colored_faces, validate_colored_cone, ColoredCone, ColoredConeReport};
use super::spherical::{Color, SphericalData};
use crate::error::{Error, Result};
use crate::polyhedral::{quotient_by_span, QuotientMap};

/// A finite family of colored cones. Members are kept in the order given so
/// that validation can point at duplicates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct ColoredFan {
    pub cones: Vec<ColoredCone>,
}

impl ColoredFan {
    pub fn new(cones: Vec<ColoredCone>) -> Self {
        ColoredFan { cones }
    }

    /// Sorted, deduplicated copy; equal fans have equal canonical forms.
    pub fn canonical(&self) -> ColoredFan {
        let set: BTreeSet<ColoredCone> = self.cones.iter().cloned().collect();
        ColoredFan {
            cones: set.into_iter().collect(),
        }
    }

    /// Adds every colored face of every member, then canonicalizes.
    pub fn face_closure(&self, sd: &SphericalData) -> Result<ColoredFan> {
        let mut set: BTreeSet<ColoredCone> = BTreeSet::new();
        for cc in &self.cones {
            set.extend(colored_faces(sd, cc)?);
            set.insert(cc.clone());
        }
        Ok(ColoredFan {
            cones: set.into_iter().collect(),
        })
    }

    pub fn contains(&self, cc: &ColoredCone) -> bool {
        self.cones.contains(cc)
    }

    pub fn len(&self) -> usize {
        self.cones.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cones.is_empty()
    }

    /// Members whose cone is not a proper face of another member's cone.
    pub fn maximal_cones(&self) -> Vec<&ColoredCone> {
        self.cones
            .iter()
            .filter(|a| {
                !self
                    .cones
                    .iter()
                    .any(|b| b.cone != a.cone && a.cone.is_face_of(&b.cone))
            })
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ColoredFanReport {
    /// One report per member, in member order.
    pub cone_reports: Vec<ColoredConeReport>,
    /// `(member index, colored face missing from the fan)`.
    pub missing_faces: Vec<(usize, ColoredCone)>,
    /// Pairs of members whose relative interiors meet inside `V`.
    pub overlaps: Vec<(usize, usize)>,
}

impl ColoredFanReport {
    pub fn face_closed(&self) -> bool {
        self.missing_faces.is_empty()
    }

    pub fn unique_interiors(&self) -> bool {
        self.overlaps.is_empty()
    }

    pub fn cones_valid(&self) -> bool {
        self.cone_reports.iter().all(ColoredConeReport::is_valid)
    }

    pub fn is_valid(&self) -> bool {
        self.face_closed() && self.unique_interiors() && self.cones_valid()
    }
}

pub fn validate_colored_fan(sd: &SphericalData, fan: &ColoredFan) -> Result<ColoredFanReport> {
    let mut cone_reports = Vec::with_capacity(fan.len());
    let mut missing_faces = Vec::new();
    for (i, cc) in fan.cones.iter().enumerate() {
        cone_reports.push(validate_colored_cone(sd, cc)?);
        for face in colored_faces(sd, cc)? {
            if !fan.contains(&face) {
                missing_faces.push((i, face));
            }
        }
    }
    let mut overlaps = Vec::new();
    for i in 0..fan.len() {
        for j in i + 1..fan.len() {
            if fan.cones[i]
                .cone
                .relative_interiors_meet(&fan.cones[j].cone, sd.vcone())
            {
                overlaps.push((i, j));
            }
        }
    }
    Ok(ColoredFanReport {
        cone_reports,
        missing_faces,
        overlaps,
    })
}

/// The support condition: every cone of the fan lies in `V`.
pub fn check_star(sd: &SphericalData, fan: &ColoredFan) -> bool {
    fan.cones
        .iter()
        .all(|cc| cc.cone.generators().iter().all(|g| sd.vcone().contains_point(g)))
}

/// Data and fan of the closure of the orbit attached to `tau`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StarFan {
    pub data: SphericalData,
    pub fan: ColoredFan,
    pub quotient: QuotientMap,
}

fn quotient_basis_names(sd: &SphericalData, q: &QuotientMap) -> Vec<String> {
    q.rows()
        .iter()
        .map(|row| {
            let support: Vec<usize> = (0..row.dim()).filter(|&i| !row[i].is_zero()).collect();
            match support.as_slice() {
                [i] if row[*i].is_one() => sd.basis_names()[*i].clone(),
                _ => row.to_string(),
            }
        })
        .collect()
}

/// `Star(tau)` projected to `N(tau)`.
///
/// `dominant` is the set of colors mapping dominantly onto the orbit of
/// `tau`; when absent, the colors surviving are those of the members having
/// `tau` as a colored face, minus the colors of `tau` (which contain the
/// orbit and so project to zero).
pub fn star_fan(
    sd: &SphericalData,
    fan: &ColoredFan,
    tau: &ColoredCone,
    dominant: Option<&BTreeSet<String>>,
) -> Result<StarFan> {
    if !fan.contains(tau) {
        return Err(Error::NotInFan);
    }
    let mut over_tau = Vec::new();
    for cc in &fan.cones {
        if colored_faces(sd, cc)?.contains(tau) {
            over_tau.push(cc);
        }
    }
    let surviving: BTreeSet<String> = match dominant {
        Some(d) => sd
            .colors()
            .iter()
            .map(|c| c.name.clone())
            .filter(|n| !d.contains(n))
            .collect(),
        None => over_tau
            .iter()
            .flat_map(|cc| cc.colors.iter().cloned())
            .filter(|c| !tau.colors.contains(c))
            .collect(),
    };

    let q = quotient_by_span(&tau.cone);
    let vcone = sd.vcone().project(&q)?;
    let colors: Vec<Color> = sd
        .colors()
        .iter()
        .filter(|c| surviving.contains(&c.name))
        .map(|c| Color::new(c.name.clone(), q.apply(&c.rho)))
        .collect();
    let data = SphericalData::with_vcone(vcone, colors, quotient_basis_names(sd, &q))?;

    let mut cones = BTreeSet::new();
    for cc in over_tau {
        cones.insert(ColoredCone {
            cone: cc.cone.project(&q)?,
            colors: cc.colors.intersection(&surviving).cloned().collect(),
        });
    }
    Ok(StarFan {
        data,
        fan: ColoredFan::new(cones.into_iter().collect()),
        quotient: q,
    })
}
