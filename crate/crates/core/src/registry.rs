//! Spherical data, fans and B-semi-invariants for the worked examples: tori,
//! `SL_2/U` (the punctured plane) and `GL_2` under `GL_2 × GL_2`.

use num::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::fan::{Color, ColoredCone, ColoredFan, SphericalData};
use crate::polyhedral::{int, Rat, RatCone, RatVec};
use crate::puiseux::{PuiseuxPoint, PuiseuxSeries};

/// Default half-width of the integer range group entries are drawn from.
pub const DEFAULT_RANGE: i64 = 9;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Group {
    /// `(k^*)^n` acting on itself.
    Torus(usize),
    /// `SL_2` acting linearly on `k^2 \ {0}`.
    Sl2,
    /// `GL_2 × GL_2` acting on `GL_2` by `(g, h)·x = g x h^{-1}`.
    Gl2Pair,
}

/// A `k`-point of the group. Matrices are row-major.
// Elements are sampled a few at a time, so the unboxed matrices are fine.
#[allow(clippy::large_enum_variant)]
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum GroupElement {
    Torus(Vec<Rat>),
    Sl2([Rat; 4]),
    Gl2Pair { left: [Rat; 4], right: [Rat; 4] },
}

fn det2(m: &[Rat; 4]) -> Rat {
    &m[0] * &m[3] - &m[1] * &m[2]
}

fn inv2(m: &[Rat; 4]) -> [Rat; 4] {
    let d = det2(m);
    [
        &m[3] / &d,
        -&m[1] / &d,
        -&m[2] / &d,
        &m[0] / &d,
    ]
}

fn ints4(e: [i64; 4]) -> [Rat; 4] {
    e.map(int)
}

#[derive(Clone, Debug)]
pub struct RegistryEntry {
    pub name: String,
    pub data: SphericalData,
    pub fans: Vec<(String, ColoredFan)>,
    pub group: Group,
    /// Names of the B-semi-invariants `f_i`, in the order of `bridge` columns.
    pub characters: Vec<String>,
    /// Integer matrix taking `(ν(f_i))_i` to coordinates of `N_R`.
    pub bridge: Vec<RatVec>,
    /// Number of coordinates of a point of the open orbit.
    pub point_dim: usize,
}

impl RegistryEntry {
    pub fn fan(&self, name: &str) -> Result<&ColoredFan> {
        self.fans
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, f)| f)
            .ok_or_else(|| Error::UnknownFan(name.to_string()))
    }

    pub fn fan_names(&self) -> Vec<&str> {
        self.fans.iter().map(|(n, _)| n.as_str()).collect()
    }

    pub fn identity(&self) -> GroupElement {
        match self.group {
            Group::Torus(n) => GroupElement::Torus(vec![Rat::one(); n]),
            Group::Sl2 => GroupElement::Sl2(ints4([1, 0, 0, 1])),
            Group::Gl2Pair => GroupElement::Gl2Pair {
                left: ints4([1, 0, 0, 1]),
                right: ints4([1, 0, 0, 1]),
            },
        }
    }

    /// A random element with integer entries in `[-range, range]`; for
    /// `SL_2` the last entry is solved for from the determinant.
    pub fn sample_group(&self, rng: &mut impl Rng, range: i64) -> GroupElement {
        let range = range.max(1);
        let mut draw = |nonzero: bool| loop {
            let x = rng.gen_range(-range..=range);
            if !nonzero || x != 0 {
                return int(x);
            }
        };
        match self.group {
            Group::Torus(n) => GroupElement::Torus((0..n).map(|_| draw(true)).collect()),
            Group::Sl2 => {
                let p = draw(true);
                let q = draw(false);
                let r = draw(false);
                let s = (Rat::one() + &q * &r) / &p;
                GroupElement::Sl2([p, q, r, s])
            }
            Group::Gl2Pair => {
                let mut matrix = || loop {
                    let m = [draw(false), draw(false), draw(false), draw(false)];
                    if !det2(&m).is_zero() {
                        return m;
                    }
                };
                let left = matrix();
                let right = matrix();
                GroupElement::Gl2Pair { left, right }
            }
        }
    }

    /// `count` elements from a ChaCha stream seeded by `seed`.
    pub fn sample_elements(&self, count: usize, seed: u64, range: i64) -> Vec<GroupElement> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..count).map(|_| self.sample_group(&mut rng, range)).collect()
    }

    fn check_element(&self, g: &GroupElement) -> Result<()> {
        let ok = match (self.group, g) {
            (Group::Torus(n), GroupElement::Torus(t)) => {
                t.len() == n && t.iter().all(|c| !c.is_zero())
            }
            (Group::Sl2, GroupElement::Sl2(m)) => det2(m).is_one(),
            (Group::Gl2Pair, GroupElement::Gl2Pair { left, right }) => {
                !det2(left).is_zero() && !det2(right).is_zero()
            }
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidGroupElement(format!("{g:?} for `{}`", self.name)))
        }
    }

    fn check_point(&self, x: &PuiseuxPoint) -> Result<()> {
        if x.dim() != self.point_dim {
            return Err(Error::DimensionMismatch {
                expected: self.point_dim,
                found: x.dim(),
            });
        }
        let c = x.coords();
        match self.group {
            Group::Torus(_) => match c.iter().position(PuiseuxSeries::is_zero) {
                Some(i) => Err(Error::ZeroCoordinate(i)),
                None => Ok(()),
            },
            Group::Sl2 if c.iter().all(PuiseuxSeries::is_zero) => {
                Err(Error::OutsideDomain("the origin is not in SL_2/U".into()))
            }
            Group::Gl2Pair if (&(&c[0] * &c[3]) - &(&c[1] * &c[2])).is_zero() => {
                Err(Error::OutsideDomain("matrix is singular".into()))
            }
            _ => Ok(()),
        }
    }

    /// `(g·f)(x) = f(g^{-1}·x)` for the semi-invariant `f` named `character`.
    pub fn eval(&self, character: &str, g: &GroupElement, x: &PuiseuxPoint) -> Result<PuiseuxSeries> {
        let idx = self
            .characters
            .iter()
            .position(|c| c == character)
            .ok_or_else(|| Error::UnknownCharacter(character.to_string()))?;
        self.check_element(g)?;
        self.check_point(x)?;
        let c = x.coords();
        Ok(match g {
            GroupElement::Torus(t) => c[idx].scale(&t[idx].recip()),
            GroupElement::Sl2(m) => {
                // Second row of g^{-1} is (-r, p).
                &c[0].scale(&-&m[2]) + &c[1].scale(&m[0])
            }
            GroupElement::Gl2Pair { left, right } => {
                let gi = inv2(left);
                if character == "det" {
                    let xdet = &(&c[0] * &c[3]) - &(&c[1] * &c[2]);
                    xdet.scale(&(det2(right) / det2(left)))
                } else {
                    let mut acc = PuiseuxSeries::zero();
                    for i in 0..2 {
                        for j in 0..2 {
                            let w = &gi[2 + i] * &right[2 * j + 1];
                            acc = &acc + &c[2 * i + j].scale(&w);
                        }
                    }
                    acc
                }
            }
        })
    }

    /// Coordinates in `N_R` of the valuation with `ν(f_i) = vals[i]`.
    pub fn to_lattice(&self, vals: &[Rat]) -> RatVec {
        RatVec::new(
            self.bridge
                .iter()
                .map(|row| row.iter().zip(vals).map(|(a, b)| a * b).sum())
                .collect(),
        )
    }
}

pub fn semiinvariant_eval(
    entry: &RegistryEntry,
    character: &str,
    g: &GroupElement,
    x: &PuiseuxPoint,
) -> Result<PuiseuxSeries> {
    entry.eval(character, g, x)
}

/// Names accepted by [`registry_get`]; `torus(n)` takes any `n >= 1`.
pub const REGISTRY_NAMES: [&str; 3] = ["torus(n)", "sl2_h", "gl2"];

pub fn registry_get(name: &str) -> Result<RegistryEntry> {
    let unknown = || Error::UnknownEntry(name.to_string());
    match name {
        "sl2_h" => Ok(sl2_h()),
        "gl2" => Ok(gl2()),
        _ => {
            let n: usize = name
                .strip_prefix("torus(")
                .and_then(|r| r.strip_suffix(')'))
                .and_then(|n| n.trim().parse().ok())
                .ok_or_else(unknown)?;
            if n == 0 || n > 8 {
                return Err(unknown());
            }
            Ok(torus(n))
        }
    }
}

fn identity_rows(n: usize) -> Vec<RatVec> {
    (0..n).map(|i| RatVec::unit(n, i)).collect()
}

fn closed(sd: &SphericalData, cones: Vec<ColoredCone>) -> ColoredFan {
    ColoredFan::new(cones)
        .face_closure(sd)
        .expect("registry cones match their data")
}

fn torus(n: usize) -> RegistryEntry {
    let names: Vec<String> = (1..=n).map(|i| format!("t{i}")).collect();
    let data = SphericalData::with_vcone(RatCone::full(n), vec![], names.clone())
        .expect("torus data");
    let units: Vec<RatVec> = identity_rows(n);
    let orthant = RatCone::from_generators(n, &units, &[]).expect("orthant");
    let mut gens = units.clone();
    gens.push(RatVec::new(vec![int(-1); n]));
    let projective: Vec<ColoredCone> = (0..gens.len())
        .map(|skip| {
            let rays: Vec<RatVec> = gens
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != skip)
                .map(|(_, r)| r.clone())
                .collect();
            ColoredCone::uncolored(RatCone::from_generators(n, &rays, &[]).expect("cone"))
        })
        .collect();
    let fans = vec![
        (
            "affine".to_string(),
            closed(&data, vec![ColoredCone::uncolored(orthant)]),
        ),
        ("projective".to_string(), closed(&data, projective)),
    ];
    RegistryEntry {
        name: format!("torus({n})"),
        data,
        fans,
        group: Group::Torus(n),
        characters: names,
        bridge: identity_rows(n),
        point_dim: n,
    }
}

fn sl2_h() -> RegistryEntry {
    let data = SphericalData::new(
        1,
        &[],
        vec![Color::new("D", RatVec::from_ints(&[1]))],
        vec!["y".into()],
    )
    .expect("SL_2/U data");
    let zero = ColoredCone::uncolored(RatCone::zero(1));
    let pos = RatCone::ray(RatVec::from_ints(&[1]));
    let neg = RatCone::ray(RatVec::from_ints(&[-1]));
    let fan = |cones: Vec<ColoredCone>| closed(&data, cones);
    let fans = vec![
        ("A2-minus-O".to_string(), fan(vec![zero.clone()])),
        ("Bl_O-A2".to_string(), fan(vec![ColoredCone::uncolored(pos.clone())])),
        ("P2-minus-O".to_string(), fan(vec![ColoredCone::uncolored(neg.clone())])),
        (
            "Bl_O-P2".to_string(),
            fan(vec![
                ColoredCone::uncolored(pos.clone()),
                ColoredCone::uncolored(neg.clone()),
            ]),
        ),
        ("A2".to_string(), fan(vec![ColoredCone::new(pos.clone(), ["D"])])),
        (
            "P2".to_string(),
            fan(vec![
                ColoredCone::new(pos, ["D"]),
                ColoredCone::uncolored(neg),
            ]),
        ),
    ];
    RegistryEntry {
        name: "sl2_h".into(),
        data,
        fans,
        group: Group::Sl2,
        characters: vec!["y".into()],
        bridge: identity_rows(1),
        point_dim: 2,
    }
}

fn gl2() -> RegistryEntry {
    // Figure basis: v1 pairs with det/x22 and v2 with x22, so
    // (ν(x22), ν(det)) = (m, d) lands at (d - m, m).
    let data = SphericalData::new(
        2,
        &[RatVec::from_ints(&[1, -1])],
        vec![Color::new("D", RatVec::from_ints(&[-1, 1]))],
        vec!["det/x22".into(), "x22".into()],
    )
    .expect("GL_2 data");
    let x = RatCone::from_generators(
        2,
        &[RatVec::from_ints(&[-1, 1]), RatVec::from_ints(&[1, 0])],
        &[],
    )
    .expect("cone");
    let x_prime = RatCone::ray(RatVec::from_ints(&[1, 0]));
    let fans = vec![
        ("X".to_string(), closed(&data, vec![ColoredCone::new(x, ["D"])])),
        (
            "X'".to_string(),
            closed(&data, vec![ColoredCone::uncolored(x_prime)]),
        ),
    ];
    RegistryEntry {
        name: "gl2".into(),
        data,
        fans,
        group: Group::Gl2Pair,
        characters: vec!["x22".into(), "det".into()],
        bridge: vec![RatVec::from_ints(&[-1, 1]), RatVec::from_ints(&[1, 0])],
        point_dim: 4,
    }
}
