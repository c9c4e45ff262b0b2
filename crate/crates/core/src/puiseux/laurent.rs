use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul};

use num::{One, Signed, Zero};

use crate::cursor::Cursor;
use super::series::{PuiseuxPoint, PuiseuxSeries};
use crate::error::{Error, Result};
use crate::polyhedral::Rat;

/// A Laurent polynomial `sum a_I t^I` in `t_1, ..., t_n` with rational
/// coefficients. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Vec<i64>, Rat>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        Self::monomial(c, vec![0; nvars])
    }

    pub fn monomial(coeff: Rat, exps: Vec<i64>) -> Self {
        let nvars = exps.len();
        Self::from_terms(nvars, [(exps, coeff)])
    }

    /// The coordinate function `t_{i+1}`.
    pub fn variable(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(Rat::one(), e)
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<i64>, Rat)>) -> Self {
        let mut map: BTreeMap<Vec<i64>, Rat> = BTreeMap::new();
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent length");
            *map.entry(e).or_insert_with(Rat::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        LaurentPoly { nvars, terms: map }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &Rat)> {
        self.terms.iter()
    }

    /// Componentwise `min(0, min_I I_j)`: `t^{-R} f` is a polynomial.
    pub fn denominator_exponents(&self) -> Vec<i64> {
        let mut r = vec![0; self.nvars];
        for e in self.terms.keys() {
            for (rj, ej) in r.iter_mut().zip(e) {
                *rj = (*rj).min(*ej);
            }
        }
        r
    }

    /// `t^s f`.
    pub fn shift(&self, s: &[i64]) -> Self {
        LaurentPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(s).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    /// `f(x)`. Negative powers need invertible (monomial) coordinates.
    pub fn evaluate(&self, x: &PuiseuxPoint) -> Result<PuiseuxSeries> {
        if x.dim() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: x.dim(),
            });
        }
        let mut acc = PuiseuxSeries::zero();
        for (e, c) in &self.terms {
            let mut m = PuiseuxSeries::constant(c.clone());
            for (i, (&k, xi)) in e.iter().zip(x.coords()).enumerate() {
                let base = if k < 0 {
                    xi.inverse().ok_or(Error::NotInvertible(i))?
                } else {
                    xi.clone()
                };
                m = &m * &base.pow(k.unsigned_abs() as u32);
            }
            acc = &acc + &m;
        }
        Ok(acc)
    }

    /// Parses e.g. `3*t1^2*t2^-1 - 1/2`. With `nvars` absent the number of
    /// variables is the largest index that occurs.
    pub fn parse(s: &str, nvars: Option<usize>) -> Result<Self> {
        let mut cur = Cursor::new(s);
        let mut raw: Vec<(Vec<(usize, i64)>, Rat)> = Vec::new();
        let mut first = true;
        let mut max_var = 0usize;
        loop {
            let neg = if cur.eat('-') {
                true
            } else if cur.eat('+') || first {
                false
            } else {
                break;
            };
            first = false;
            let mut coeff = None;
            if cur.starts_with_digit() {
                coeff = Some(cur.rational()?);
            }
            let mut factors = Vec::new();
            loop {
                if coeff.is_some() || !factors.is_empty() {
                    let p = cur.pos();
                    if !cur.eat('*') {
                        break;
                    }
                    if cur.peek() != Some('t') {
                        return Err(Error::Parse {
                            position: p,
                            message: "expected a variable after `*`".into(),
                        });
                    }
                }
                if !cur.eat('t') {
                    if coeff.is_none() && factors.is_empty() {
                        return cur.error("expected a coefficient or variable");
                    }
                    break;
                }
                let at = cur.pos();
                let idx = cur.natural()?;
                let idx: usize = match idx.try_into() {
                    Ok(i) if i >= 1 => i,
                    _ => {
                        return Err(Error::Parse {
                            position: at,
                            message: "variables are t1, t2, ...".into(),
                        })
                    }
                };
                if let Some(n) = nvars {
                    if idx > n {
                        return Err(Error::Parse {
                            position: at,
                            message: format!("variable t{idx} out of range (n = {n})"),
                        });
                    }
                }
                max_var = max_var.max(idx);
                let k = if cur.eat('^') {
                    let neg_k = cur.eat('-');
                    let at = cur.pos();
                    let k: i64 = cur.natural()?.try_into().map_err(|_| Error::Parse {
                        position: at,
                        message: "exponent too large".into(),
                    })?;
                    if neg_k {
                        -k
                    } else {
                        k
                    }
                } else {
                    1
                };
                factors.push((idx - 1, k));
            }
            let c = coeff.unwrap_or_else(Rat::one);
            raw.push((factors, if neg { -c } else { c }));
        }
        cur.finish()?;
        let n = nvars.unwrap_or(max_var);
        Ok(Self::from_terms(
            n,
            raw.into_iter().map(|(factors, c)| {
                let mut e = vec![0; n];
                for (i, k) in factors {
                    e[i] += k;
                }
                (e, c)
            }),
        ))
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k != 0)
                .map(|(j, &k)| {
                    if k == 1 {
                        format!("t{}", j + 1)
                    } else {
                        format!("t{}^{k}", j + 1)
                    }
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{mag}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable count");
        LaurentPoly::from_terms(
            self.nvars,
            self.terms
                .iter()
                .chain(&rhs.terms)
                .map(|(e, c)| (e.clone(), c.clone())),
        )
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable count");
        LaurentPoly::from_terms(
            self.nvars,
            self.terms.iter().flat_map(|(e, a)| {
                rhs.terms.iter().map(move |(f, b)| {
                    (e.iter().zip(f).map(|(x, y)| x + y).collect(), a * b)
                })
            }),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyhedral::int;

    #[test]
    fn parse_and_display() {
        let f = LaurentPoly::parse("3*t1^2*t2^-1 - 1/2 + t2", None).unwrap();
        assert_eq!(f.nvars(), 2);
        let g = LaurentPoly::parse(&f.to_string(), Some(2)).unwrap();
        assert_eq!(f, g);
        assert_eq!(f.denominator_exponents(), vec![0, -1]);
        assert!(LaurentPoly::parse("t3", Some(2)).is_err());
        assert!(LaurentPoly::parse("t0", None).is_err());
        assert!(LaurentPoly::parse("2*", None).is_err());
    }

    #[test]
    fn products_and_evaluation() {
        let f = LaurentPoly::parse("t1 + t2", None).unwrap();
        let g = LaurentPoly::parse("t1 - t2", None).unwrap();
        assert_eq!(&f * &g, LaurentPoly::parse("t1^2 - t2^2", None).unwrap());
        let x: PuiseuxPoint = "(u, 1 + u)".parse().unwrap();
        assert_eq!(f.evaluate(&x).unwrap(), "1 + 2u".parse().unwrap());
        let inv = LaurentPoly::parse("t1^-1", Some(2)).unwrap();
        assert_eq!(inv.evaluate(&x).unwrap(), "u^-1".parse().unwrap());
        let bad = LaurentPoly::parse("t2^-1", Some(2)).unwrap();
        assert_eq!(bad.evaluate(&x), Err(Error::NotInvertible(1)));
        assert_eq!(
            LaurentPoly::constant(2, int(5)).evaluate(&x).unwrap(),
            PuiseuxSeries::constant(int(5))
        );
    }
}
