use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num::{One, Signed, Zero};

use crate::cursor::Cursor;
use crate::error::{Error, Result};
use crate::polyhedral::Rat;
use crate::value::Val;

/// A finite Puiseux series `sum c_e u^e` with rational exponents and
/// trivially valued rational coefficients.
///
/// Terms are kept sorted by strictly increasing exponent with nonzero
/// coefficients, so structural equality is equality of series.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct PuiseuxSeries {
    terms: Vec<(Rat, Rat)>,
}

impl PuiseuxSeries {
    pub fn zero() -> Self {
        PuiseuxSeries { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::monomial(c, Rat::zero())
    }

    /// `coeff * u^exp`.
    pub fn monomial(coeff: Rat, exp: Rat) -> Self {
        Self::from_terms([(exp, coeff)])
    }

    /// Collects `(exponent, coefficient)` pairs, merging equal exponents.
    pub fn from_terms(terms: impl IntoIterator<Item = (Rat, Rat)>) -> Self {
        let mut map: BTreeMap<Rat, Rat> = BTreeMap::new();
        for (e, c) in terms {
            *map.entry(e).or_insert_with(Rat::zero) += c;
        }
        PuiseuxSeries {
            terms: map.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn terms(&self) -> &[(Rat, Rat)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The u-adic valuation: the least exponent, `∞` for zero.
    pub fn val(&self) -> Val {
        match self.terms.first() {
            Some((e, _)) => Val::Finite(e.clone()),
            None => Val::Infinity,
        }
    }

    /// Coefficient of the least exponent.
    pub fn leading_coefficient(&self) -> Option<&Rat> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        PuiseuxSeries {
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect(),
        }
    }

    /// Multiplication by `u^e`.
    pub fn shift(&self, e: &Rat) -> Self {
        PuiseuxSeries {
            terms: self.terms.iter().map(|(f, a)| (f + e, a.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Inverse in the finite algebra; only monomials are invertible.
    pub fn inverse(&self) -> Option<Self> {
        match self.terms.as_slice() {
            [(e, c)] => Some(Self::monomial(c.recip(), -e)),
            _ => None,
        }
    }

    /// Replaces every coefficient `c` by `c * w(e)` for a nonzero unit
    /// weight; the valuation is unchanged.
    pub fn map_coefficients(&self, mut w: impl FnMut(&Rat, &Rat) -> Rat) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, c)| (e.clone(), w(e, c))))
    }

    pub(crate) fn parse_from(cur: &mut Cursor<'_>) -> Result<Self> {
        let mut terms = Vec::new();
        let mut first = true;
        loop {
            let neg = if cur.eat('-') {
                true
            } else if !first && cur.eat('+') {
                false
            } else if first {
                cur.eat('+');
                false
            } else {
                break;
            };
            first = false;
            let coeff = if cur.starts_with_digit() {
                let c = cur.rational()?;
                cur.eat('*');
                Some(c)
            } else {
                None
            };
            let exp = if cur.eat('u') {
                if cur.eat('^') {
                    cur.exponent()?
                } else {
                    Rat::one()
                }
            } else if coeff.is_some() {
                Rat::zero()
            } else {
                return cur.error("expected a coefficient or `u`");
            };
            let c = coeff.unwrap_or_else(Rat::one);
            terms.push((exp, if neg { -c } else { c }));
        }
        Ok(Self::from_terms(terms))
    }
}

impl FromStr for PuiseuxSeries {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut cur = Cursor::new(s);
        let f = Self::parse_from(&mut cur)?;
        cur.finish()?;
        Ok(f)
    }
}

impl fmt::Display for PuiseuxSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            if e.is_zero() {
                write!(f, "{mag}")?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            if e.is_one() {
                write!(f, "u")?;
            } else if e.is_integer() {
                write!(f, "u^{e}")?;
            } else {
                write!(f, "u^({e})")?;
            }
        }
        Ok(())
    }
}

impl Add for &PuiseuxSeries {
    type Output = PuiseuxSeries;
    fn add(self, rhs: &PuiseuxSeries) -> PuiseuxSeries {
        PuiseuxSeries::from_terms(self.terms.iter().chain(&rhs.terms).cloned())
    }
}

impl Neg for &PuiseuxSeries {
    type Output = PuiseuxSeries;
    fn neg(self) -> PuiseuxSeries {
        PuiseuxSeries {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Sub for &PuiseuxSeries {
    type Output = PuiseuxSeries;
    fn sub(self, rhs: &PuiseuxSeries) -> PuiseuxSeries {
        self + &(-rhs)
    }
}

impl Mul for &PuiseuxSeries {
    type Output = PuiseuxSeries;
    fn mul(self, rhs: &PuiseuxSeries) -> PuiseuxSeries {
        PuiseuxSeries::from_terms(self.terms.iter().flat_map(|(e, a)| {
            rhs.terms.iter().map(move |(f, b)| (e + f, a * b))
        }))
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for PuiseuxSeries {
            type Output = PuiseuxSeries;
            fn $m(self, rhs: PuiseuxSeries) -> PuiseuxSeries {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

/// A point over the Puiseux field: one series per ambient coordinate.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct PuiseuxPoint {
    coords: Vec<PuiseuxSeries>,
}

impl PuiseuxPoint {
    pub fn new(coords: Vec<PuiseuxSeries>) -> Self {
        PuiseuxPoint { coords }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[PuiseuxSeries] {
        &self.coords
    }

    pub fn vals(&self) -> Vec<Val> {
        self.coords.iter().map(PuiseuxSeries::val).collect()
    }

    /// `(u^{v_1}, ..., u^{v_n})`.
    pub fn monomial_point(v: &[Rat]) -> Self {
        PuiseuxPoint {
            coords: v
                .iter()
                .map(|e| PuiseuxSeries::monomial(Rat::one(), e.clone()))
                .collect(),
        }
    }
}

impl FromStr for PuiseuxPoint {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut cur = Cursor::new(s);
        cur.expect('(')?;
        let mut coords = Vec::new();
        if !cur.eat(')') {
            loop {
                coords.push(PuiseuxSeries::parse_from(&mut cur)?);
                if cur.eat(')') {
                    break;
                }
                cur.expect(',')?;
            }
        }
        cur.finish()?;
        Ok(PuiseuxPoint { coords })
    }
}

impl fmt::Display for PuiseuxPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyhedral::{int, rat};

    fn s(text: &str) -> PuiseuxSeries {
        text.parse().unwrap()
    }

    #[test]
    fn valuations() {
        assert_eq!(s("u^2 + 3u^5").val(), Val::Finite(int(2)));
        assert_eq!(PuiseuxSeries::zero().val(), Val::Infinity);
        assert_eq!(s("u^(-1/2) + 1").val(), Val::Finite(rat(-1, 2)));
    }

    #[test]
    fn arithmetic_cancels() {
        assert!((&s("u") + &s("-u")).is_zero());
        assert_eq!(&s("1+u") * &s("1-u"), s("1 - u^2"));
        assert_eq!(s("1+u").pow(3), s("1 + 3u + 3u^2 + u^3"));
        assert_eq!(s("2*u^(1/3)").inverse(), Some(s("1/2*u^(-1/3)")));
        assert_eq!(s("1+u").inverse(), None);
    }

    #[test]
    fn display_round_trips() {
        for text in ["0", "u^2 + 3*u^5", "-u^(-1/2) + 1", "1/2 - 7/3*u^(2/3) + u"] {
            let f = s(text);
            assert_eq!(s(&f.to_string()), f, "{text}");
        }
        assert_eq!(s("-u^(-1/2) + 1").to_string(), "-u^(-1/2) + 1");
    }

    #[test]
    fn parse_errors_have_positions() {
        match "u^".parse::<PuiseuxSeries>() {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 2),
            other => panic!("{other:?}"),
        }
        assert!("(u, 1/0)".parse::<PuiseuxPoint>().is_err());
        assert!("u + x".parse::<PuiseuxSeries>().is_err());
    }

    #[test]
    fn points() {
        let p: PuiseuxPoint = "(u^2, u^3)".parse().unwrap();
        assert_eq!(p.vals(), vec![Val::Finite(int(2)), Val::Finite(int(3))]);
        assert_eq!(p.to_string().parse::<PuiseuxPoint>().unwrap(), p);
        let z: PuiseuxPoint = "(0)".parse().unwrap();
        assert!(z.coords()[0].is_zero());
    }
}
