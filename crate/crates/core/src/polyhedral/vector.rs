use std::fmt;
use std::ops::{Add, Index, Neg, Sub};
use std::str::FromStr;

use num::{BigInt, BigRational, Integer, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::cursor::Cursor;

/// Exact rational number used throughout the crate.
pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// A vector of exact rationals in `N_R` or `M_R`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct RatVec(Vec<Rat>);

impl RatVec {
    pub fn new(entries: Vec<Rat>) -> Self {
        RatVec(entries)
    }

    pub fn from_ints(entries: &[i64]) -> Self {
        RatVec(entries.iter().map(|&e| int(e)).collect())
    }

    pub fn zeros(dim: usize) -> Self {
        RatVec(vec![Rat::zero(); dim])
    }

    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[i] = Rat::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[Rat] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<Rat> {
        self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rat> {
        self.0.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &RatVec) -> Rat {
        debug_assert_eq!(self.dim(), other.dim());
        self.0
            .iter()
            .zip(&other.0)
            .fold(Rat::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn scale(&self, c: &Rat) -> RatVec {
        RatVec(self.0.iter().map(|a| a * c).collect())
    }

    /// `self + c * other`
    pub fn add_scaled(&self, c: &Rat, other: &RatVec) -> RatVec {
        RatVec(self.0.iter().zip(&other.0).map(|(a, b)| a + c * b).collect())
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|a| a.is_integer())
    }

    /// Scales by a positive rational so that the entries are coprime integers.
    /// The zero vector is returned unchanged.
    pub fn primitive(&self) -> RatVec {
        if self.is_zero() {
            return self.clone();
        }
        let lcm = self
            .0
            .iter()
            .fold(BigInt::one(), |acc, a| acc.lcm(a.denom()));
        let ints: Vec<BigInt> = self
            .0
            .iter()
            .map(|a| a.numer() * (&lcm / a.denom()))
            .collect();
        let gcd = ints
            .iter()
            .fold(BigInt::zero(), |acc, a| acc.gcd(a));
        RatVec(
            ints.into_iter()
                .map(|a| Rat::from_integer(a / &gcd))
                .collect(),
        )
    }

    /// Primitive with the first nonzero entry positive; the canonical
    /// representative of a line.
    pub fn primitive_line(&self) -> RatVec {
        let p = self.primitive();
        match p.0.iter().find(|a| !a.is_zero()) {
            Some(lead) if lead.is_negative() => -p,
            _ => p,
        }
    }

    pub fn to_integers(&self) -> Option<Vec<BigInt>> {
        self.0
            .iter()
            .map(|a| a.is_integer().then(|| a.to_integer()))
            .collect()
    }

    pub fn from_integers(entries: &[BigInt]) -> Self {
        RatVec(entries.iter().cloned().map(Rat::from_integer).collect())
    }
}

impl Index<usize> for RatVec {
    type Output = Rat;
    fn index(&self, i: usize) -> &Rat {
        &self.0[i]
    }
}

impl From<Vec<Rat>> for RatVec {
    fn from(v: Vec<Rat>) -> Self {
        RatVec(v)
    }
}

impl Add for &RatVec {
    type Output = RatVec;
    fn add(self, rhs: &RatVec) -> RatVec {
        RatVec(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &RatVec {
    type Output = RatVec;
    fn sub(self, rhs: &RatVec) -> RatVec {
        RatVec(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for RatVec {
    type Output = RatVec;
    fn neg(self) -> RatVec {
        RatVec(self.0.into_iter().map(|a| -a).collect())
    }
}

impl fmt::Display for RatVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

impl RatVec {
    pub(crate) fn parse_from(cur: &mut Cursor<'_>) -> Result<Self> {
        cur.expect('(')?;
        let mut entries = Vec::new();
        if !cur.eat(')') {
            loop {
                entries.push(cur.rational()?);
                if cur.eat(')') {
                    break;
                }
                cur.expect(',')?;
            }
        }
        Ok(RatVec(entries))
    }
}

/// Parses `(a, b/c, ...)`, the form written by `Display`.
impl FromStr for RatVec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut cur = Cursor::new(s);
        let v = RatVec::parse_from(&mut cur)?;
        cur.finish()?;
        Ok(v)
    }
}

/// Parses a list of vectors separated by whitespace or `;`, e.g.
/// `(1, 0); (0, 1)`. The empty string is the empty list.
pub fn parse_vectors(s: &str) -> Result<Vec<RatVec>> {
    let mut cur = Cursor::new(s);
    let mut out = Vec::new();
    while !cur.at_end() {
        out.push(RatVec::parse_from(&mut cur)?);
        cur.eat(';');
    }
    Ok(out)
}
