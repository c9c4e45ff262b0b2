use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::polyhedral::{linalg, RatCone, RatVec};

/// A color `D` of `G/H` together with its image `rho(D)` in `N_R`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Color {
    pub name: String,
    pub rho: RatVec,
}

impl Color {
    pub fn new(name: impl Into<String>, rho: RatVec) -> Self {
        Color {
            name: name.into(),
            rho,
        }
    }
}

/// The data attached to a spherical homogeneous space: `N_R`, the valuation
/// cone and the colors.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SphericalData {
    dim: usize,
    vcone: RatCone,
    colors: Vec<Color>,
    basis_names: Vec<String>,
}

impl SphericalData {
    /// `vcone_halfspaces` are the inner normals cutting out the valuation cone.
    pub fn new(
        dim: usize,
        vcone_halfspaces: &[RatVec],
        colors: Vec<Color>,
        basis_names: Vec<String>,
    ) -> Result<Self> {
        let vcone = RatCone::from_halfspaces(dim, vcone_halfspaces, &[])?;
        Self::with_vcone(vcone, colors, basis_names)
    }

    pub fn with_vcone(vcone: RatCone, colors: Vec<Color>, basis_names: Vec<String>) -> Result<Self> {
        let dim = vcone.dim();
        if !vcone.equations().is_empty() {
            return Err(Error::InvalidSphericalData(
                "valuation cone does not span N_R".into(),
            ));
        }
        if linalg::rank(vcone.halfspaces(), dim) != vcone.halfspaces().len() {
            return Err(Error::InvalidSphericalData(
                "valuation cone is not cosimplicial".into(),
            ));
        }
        let mut seen = BTreeSet::new();
        for c in &colors {
            if c.rho.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: c.rho.dim(),
                });
            }
            if !seen.insert(c.name.as_str()) {
                return Err(Error::InvalidSphericalData(format!(
                    "duplicate color `{}`",
                    c.name
                )));
            }
        }
        let basis_names = if basis_names.is_empty() {
            (1..=dim).map(|i| format!("e{i}")).collect()
        } else if basis_names.len() == dim {
            basis_names
        } else {
            return Err(Error::InvalidSphericalData(format!(
                "{} basis names for rank {dim}",
                basis_names.len()
            )));
        };
        Ok(SphericalData {
            dim,
            vcone,
            colors,
            basis_names,
        })
    }

    /// Spherical data of a torus of rank `dim`: `V = N_R`, no colors.
    pub fn torus(dim: usize) -> Self {
        Self::with_vcone(RatCone::full(dim), Vec::new(), Vec::new()).unwrap()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vcone(&self) -> &RatCone {
        &self.vcone
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    pub fn color(&self, name: &str) -> Option<&Color> {
        self.colors.iter().find(|c| c.name == name)
    }

    pub fn rho(&self, name: &str) -> Result<&RatVec> {
        self.color(name)
            .map(|c| &c.rho)
            .ok_or_else(|| Error::UnknownColor(name.to_string()))
    }
}
