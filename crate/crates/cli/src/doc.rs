//! Input and output documents.
//!
//! Every number is exact: rationals are `{"num": n, "den": d}` with `d > 0`
//! in lowest terms, and a Puiseux term is `[exp_num, exp_den, coeff_num,
//! coeff_den]`. Parsing rejects anything but the canonical encoding, so
//! serializing a parsed document reproduces it.

use std::fmt;
use std::str::FromStr;

use num::{BigInt, Integer, One, Signed, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeMap, SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};
use serde_json::value::RawValue;
use serde_json::Number;

use sphtrop::fan::{Color, ColoredCone, ColoredFan, SphericalData};
use sphtrop::puiseux::{PuiseuxPoint, PuiseuxSeries};
use sphtrop::registry::RegistryEntry;
use sphtrop::{Rat, RatCone, RatVec};

fn big_from_number<E: de::Error>(n: &Number) -> Result<BigInt, E> {
    BigInt::from_str(&n.to_string()).map_err(|_| E::custom(format!("expected an integer, found {n}")))
}

fn number(k: &BigInt) -> Number {
    Number::from_str(&k.to_string()).expect("integers are JSON numbers")
}

/// A rational in the `{"num", "den"}` encoding.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct JRat(pub Rat);

impl Serialize for JRat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(2))?;
        m.serialize_entry("num", &number(self.0.numer()))?;
        m.serialize_entry("den", &number(self.0.denom()))?;
        m.end()
    }
}

impl<'de> Deserialize<'de> for JRat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Raw {
            num: Number,
            den: Number,
        }
        let raw = Raw::deserialize(d)?;
        let num: BigInt = big_from_number(&raw.num)?;
        let den: BigInt = big_from_number(&raw.den)?;
        if !den.is_positive() {
            return Err(de::Error::custom("denominator must be positive"));
        }
        if !num.gcd(&den).is_one() {
            return Err(de::Error::custom(format!("{num}/{den} is not in lowest terms")));
        }
        Ok(JRat(Rat::new_raw(num, den)))
    }
}

/// A Puiseux term `[exp_num, exp_den, coeff_num, coeff_den]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct JTerm {
    pub exp: Rat,
    pub coeff: Rat,
}

impl Serialize for JTerm {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut q = s.serialize_seq(Some(4))?;
        for k in [
            self.exp.numer(),
            self.exp.denom(),
            self.coeff.numer(),
            self.coeff.denom(),
        ] {
            q.serialize_element(&number(k))?;
        }
        q.end()
    }
}

impl<'de> Deserialize<'de> for JTerm {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = <[Number; 4]>::deserialize(d)?;
        let mut k = Vec::with_capacity(4);
        for n in &raw {
            k.push(big_from_number::<D::Error>(n)?);
        }
        let rat = |n: &BigInt, d: &BigInt| -> Result<Rat, D::Error> {
            if !d.is_positive() {
                return Err(de::Error::custom("denominator must be positive"));
            }
            if !n.gcd(d).is_one() {
                return Err(de::Error::custom(format!("{n}/{d} is not in lowest terms")));
            }
            Ok(Rat::new_raw(n.clone(), d.clone()))
        };
        let exp = rat(&k[0], &k[1])?;
        let coeff = rat(&k[2], &k[3])?;
        if coeff.is_zero() {
            return Err(de::Error::custom("term coefficient must be nonzero"));
        }
        Ok(JTerm { exp, coeff })
    }
}

pub type JVec = Vec<JRat>;

pub fn jvec(v: &RatVec) -> JVec {
    v.iter().cloned().map(JRat).collect()
}

pub fn ratvec(v: &[JRat]) -> RatVec {
    RatVec::new(v.iter().map(|r| r.0.clone()).collect())
}

/// A coordinate: terms with strictly increasing exponents.
pub fn jseries(s: &PuiseuxSeries) -> Vec<JTerm> {
    s.terms()
        .iter()
        .map(|(e, c)| JTerm {
            exp: e.clone(),
            coeff: c.clone(),
        })
        .collect()
}

pub fn jpoint(x: &PuiseuxPoint) -> Vec<Vec<JTerm>> {
    x.coords().iter().map(jseries).collect()
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
#[serde(deny_unknown_fields)]
pub struct ColorDoc {
    pub name: String,
    pub rho: JVec,
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
#[serde(deny_unknown_fields)]
pub struct DataDoc {
    pub kind: String,
    pub dim: usize,
    pub vcone_halfspaces: Vec<JVec>,
    pub colors: Vec<ColorDoc>,
    pub basis_names: Vec<String>,
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
#[serde(deny_unknown_fields)]
pub struct ConeDoc {
    pub rays: Vec<JVec>,
    pub colors: Vec<String>,
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
#[serde(deny_unknown_fields)]
pub struct FanDoc {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub cones: Vec<ConeDoc>,
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
#[serde(deny_unknown_fields)]
pub struct PointsDoc {
    pub kind: String,
    pub entries: Vec<Vec<Vec<JTerm>>>,
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
#[serde(deny_unknown_fields)]
pub struct EntryDoc {
    pub kind: String,
    pub name: String,
    pub data: DataDoc,
    pub fans: Vec<FanDoc>,
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
#[serde(deny_unknown_fields)]
pub struct ScriptDoc {
    pub kind: String,
    /// Each command is an argument vector, e.g. `["check-star", "X"]`.
    pub commands: Vec<Vec<String>>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Document {
    SphericalData(DataDoc),
    Fan(FanDoc),
    Points(PointsDoc),
    RegistryEntry(EntryDoc),
    CommandScript(ScriptDoc),
}

pub const KINDS: [&str; 5] = [
    "spherical_data",
    "fan",
    "points",
    "registry_entry",
    "command_script",
];

impl Document {
    pub fn kind(&self) -> &str {
        match self {
            Document::SphericalData(d) => &d.kind,
            Document::Fan(d) => &d.kind,
            Document::Points(d) => &d.kind,
            Document::RegistryEntry(d) => &d.kind,
            Document::CommandScript(d) => &d.kind,
        }
    }

    pub fn to_json(&self) -> String {
        let r = match self {
            Document::SphericalData(d) => serde_json::to_string_pretty(d),
            Document::Fan(d) => serde_json::to_string_pretty(d),
            Document::Points(d) => serde_json::to_string_pretty(d),
            Document::RegistryEntry(d) => serde_json::to_string_pretty(d),
            Document::CommandScript(d) => serde_json::to_string_pretty(d),
        };
        r.expect("documents serialize")
    }
}

/// A parse failure with a 1-based line and column in the named source.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ParseError {
    pub source: String,
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "parse error at {}:{}:{}: {}",
            self.source, self.line, self.column, self.message
        )
    }
}

impl std::error::Error for ParseError {}

/// Line and column (1-based, columns in characters) of a byte offset.
pub fn line_column(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let start = before.rfind('\n').map_or(0, |i| i + 1);
    (line, before[start..].chars().count() + 1)
}

fn json_error(source: &str, text: &str, base: usize, e: &serde_json::Error) -> ParseError {
    // Translate the position inside the slice `text[base..]` to one in `text`.
    let slice = &text[base..];
    let mut offset = 0;
    for (i, l) in slice.split_inclusive('\n').enumerate() {
        if i + 1 == e.line() {
            let col = e.column().saturating_sub(1);
            offset += l.char_indices().nth(col).map_or(l.len(), |(b, _)| b);
            break;
        }
        offset += l.len();
    }
    let (line, column) = line_column(text, base + offset);
    let message = e.to_string();
    // serde_json appends " at line L column C"; the caller's position replaces it.
    let message = match message.rfind(" at line ") {
        Some(i) => message[..i].to_string(),
        None => message,
    };
    ParseError {
        source: source.to_string(),
        line,
        column,
        message,
    }
}

fn parse_one<T: for<'a> Deserialize<'a>>(source: &str, text: &str, base: usize, raw: &str) -> Result<T, ParseError> {
    serde_json::from_str(raw).map_err(|e| json_error(source, text, base, &e))
}

/// Parses a stream of JSON documents.
pub fn parse_documents(source: &str, text: &str) -> Result<Vec<Document>, ParseError> {
    #[derive(Deserialize)]
    struct Kinded {
        kind: Option<String>,
    }
    let mut out = Vec::new();
    let stream = serde_json::Deserializer::from_str(text).into_iter::<&RawValue>();
    for item in stream {
        let raw = item.map_err(|e| json_error(source, text, 0, &e))?;
        let raw = raw.get();
        let base = raw.as_ptr() as usize - text.as_ptr() as usize;
        let at = |message: String| {
            let (line, column) = line_column(text, base);
            ParseError {
                source: source.to_string(),
                line,
                column,
                message,
            }
        };
        let kinded: Kinded = parse_one(source, text, base, raw)
            .map_err(|e: ParseError| at(format!("expected a document object ({})", e.message)))?;
        let doc = match kinded.kind.as_deref() {
            Some("spherical_data") => Document::SphericalData(parse_one(source, text, base, raw)?),
            Some("fan") => Document::Fan(parse_one(source, text, base, raw)?),
            Some("points") => Document::Points(parse_one(source, text, base, raw)?),
            Some("registry_entry") => {
                let e: EntryDoc = parse_one(source, text, base, raw)?;
                if e.data.kind != "spherical_data" || e.fans.iter().any(|f| f.kind != "fan") {
                    return Err(at("nested documents must have kinds spherical_data and fan".into()));
                }
                Document::RegistryEntry(e)
            }
            Some("command_script") => Document::CommandScript(parse_one(source, text, base, raw)?),
            Some(other) => {
                return Err(at(format!(
                    "unknown document kind `{other}`, expected one of {}",
                    KINDS.join(", ")
                )))
            }
            None => return Err(at("document has no `kind` field".into())),
        };
        out.push(doc);
    }
    Ok(out)
}

// Conversions to and from library values. These can fail semantically (a
// ray of the wrong length, invalid spherical data); such failures are
// reported as plain messages.

pub fn data_doc(sd: &SphericalData) -> DataDoc {
    DataDoc {
        kind: "spherical_data".into(),
        dim: sd.dim(),
        vcone_halfspaces: sd.vcone().halfspaces().iter().map(jvec).collect(),
        colors: sd
            .colors()
            .iter()
            .map(|c| ColorDoc {
                name: c.name.clone(),
                rho: jvec(&c.rho),
            })
            .collect(),
        basis_names: sd.basis_names().to_vec(),
    }
}

fn check_len(what: &str, v: &[JRat], dim: usize) -> Result<(), String> {
    if v.len() == dim {
        Ok(())
    } else {
        Err(format!("{what} has {} entries, expected {dim}", v.len()))
    }
}

pub fn to_data(d: &DataDoc) -> Result<SphericalData, String> {
    for h in &d.vcone_halfspaces {
        check_len("halfspace", h, d.dim)?;
    }
    let hs: Vec<RatVec> = d.vcone_halfspaces.iter().map(|h| ratvec(h)).collect();
    let mut colors = Vec::new();
    for c in &d.colors {
        check_len(&format!("rho of color `{}`", c.name), &c.rho, d.dim)?;
        colors.push(Color::new(c.name.clone(), ratvec(&c.rho)));
    }
    SphericalData::new(d.dim, &hs, colors, d.basis_names.clone()).map_err(|e| e.to_string())
}

pub fn cone_doc(cc: &ColoredCone) -> ConeDoc {
    ConeDoc {
        rays: cc.cone.rays().iter().map(jvec).collect(),
        colors: cc.colors.iter().cloned().collect(),
    }
}

pub fn to_cone(dim: usize, c: &ConeDoc) -> Result<ColoredCone, String> {
    for r in &c.rays {
        check_len("ray", r, dim)?;
    }
    let rays: Vec<RatVec> = c.rays.iter().map(|r| ratvec(r)).collect();
    let cone = RatCone::from_generators(dim, &rays, &[]).map_err(|e| e.to_string())?;
    Ok(ColoredCone::new(cone, c.colors.iter().cloned()))
}

pub fn fan_doc(name: Option<&str>, fan: &ColoredFan) -> FanDoc {
    FanDoc {
        kind: "fan".into(),
        name: name.map(str::to_string),
        cones: fan.cones.iter().map(cone_doc).collect(),
    }
}

pub fn to_fan(dim: usize, f: &FanDoc) -> Result<ColoredFan, String> {
    let cones = f
        .cones
        .iter()
        .map(|c| to_cone(dim, c))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ColoredFan::new(cones))
}

pub fn to_series(terms: &[JTerm]) -> Result<PuiseuxSeries, String> {
    if terms.windows(2).any(|w| w[0].exp >= w[1].exp) {
        return Err("term exponents must be strictly increasing".into());
    }
    Ok(PuiseuxSeries::from_terms(
        terms.iter().map(|t| (t.exp.clone(), t.coeff.clone())),
    ))
}

pub fn to_point(coords: &[Vec<JTerm>]) -> Result<PuiseuxPoint, String> {
    coords
        .iter()
        .map(|c| to_series(c))
        .collect::<Result<Vec<_>, _>>()
        .map(PuiseuxPoint::new)
}

pub fn points_doc(points: &[PuiseuxPoint]) -> PointsDoc {
    PointsDoc {
        kind: "points".into(),
        entries: points.iter().map(jpoint).collect(),
    }
}

pub fn entry_doc(e: &RegistryEntry) -> EntryDoc {
    EntryDoc {
        kind: "registry_entry".into(),
        name: e.name.clone(),
        data: data_doc(&e.data),
        fans: e
            .fans
            .iter()
            .map(|(n, f)| fan_doc(Some(n), f))
            .collect(),
    }
}
