//! The two seminorm families joining a point of the torus to its retraction,
//! written additively: a seminorm `|.|` is recorded as `-log |.|`, and the
//! parameter `lambda` as `mu = -log lambda`, so `mu = 0` is `lambda = 1` and
//! `mu = ∞` is `lambda = 0`.

use std::collections::BTreeSet;

use num::{integer::binomial, BigInt, Signed, Zero};

use super::laurent::LaurentPoly;
use super::series::{PuiseuxPoint, PuiseuxSeries};
use super::trop::trp_torus;
use crate::error::{Error, Result};
use crate::polyhedral::{int, Rat, RatVec};
use crate::value::Val;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Family {
    /// `f ↦ min_I (ν(a_I x^I) + mu |I|)`.
    Monomial,
    /// `f(t x) = sum_J c_J(x) (t - 1)^J ↦ min_J (ν(c_J(x)) + mu |J|)`.
    Homotopy,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SeminormSample {
    pub family: Family,
    pub mu: Val,
    pub point: PuiseuxPoint,
}

impl SeminormSample {
    pub fn new(family: Family, mu: Val, point: PuiseuxPoint) -> Self {
        SeminormSample { family, mu, point }
    }
}

fn check_mu(mu: &Val) -> Result<()> {
    match mu {
        Val::Finite(m) if m.is_negative() => Err(Error::NegativeMu),
        _ => Ok(()),
    }
}

fn check_dim(f: &LaurentPoly, x: &PuiseuxPoint) -> Result<()> {
    if f.nvars() != x.dim() {
        return Err(Error::DimensionMismatch {
            expected: x.dim(),
            found: f.nvars(),
        });
    }
    Ok(())
}

fn weighted(mu: &Val, degree: i64) -> Result<Val> {
    match mu {
        Val::Infinity if degree < 0 => Err(Error::NegativeDegreeAtInfinity),
        _ => Ok(mu.times(&int(degree))),
    }
}

/// The monomial family evaluated from coordinate valuations alone.
pub fn monomial_value(vals: &RatVec, mu: &Val, f: &LaurentPoly) -> Result<Val> {
    check_mu(mu)?;
    if f.nvars() != vals.dim() {
        return Err(Error::DimensionMismatch {
            expected: vals.dim(),
            found: f.nvars(),
        });
    }
    let mut best = Val::Infinity;
    for (e, _) in f.terms() {
        let pairing: Rat = e.iter().zip(vals.iter()).map(|(k, v)| v * int(*k)).sum();
        let candidate = Val::Finite(pairing) + weighted(mu, e.iter().sum())?;
        best = best.min(candidate);
    }
    Ok(best)
}

fn homotopy_value(mu: &Val, x: &PuiseuxPoint, f: &LaurentPoly) -> Result<Val> {
    // f = t^R g with g a polynomial; the family is multiplicative and sends
    // t_i to ν(x_i) for every mu, so |f| = <R, ν(x)> + |g|.
    let r = f.denominator_exponents();
    let mut offset = Rat::zero();
    for (i, (&ri, xi)) in r.iter().zip(x.coords()).enumerate() {
        if ri < 0 {
            match xi.val() {
                Val::Finite(v) => offset += v * int(ri),
                Val::Infinity => return Err(Error::ZeroCoordinate(i)),
            }
        }
    }
    let neg_r: Vec<i64> = r.iter().map(|k| -k).collect();
    let g = f.shift(&neg_r);

    // b_I = a_I x^I and c_J = sum_{I >= J} b_I binom(I, J).
    let mut b: Vec<(Vec<i64>, PuiseuxSeries)> = Vec::new();
    let mut js: BTreeSet<Vec<i64>> = BTreeSet::new();
    for (e, a) in g.terms() {
        let mut m = PuiseuxSeries::constant(a.clone());
        for (xi, &k) in x.coords().iter().zip(e) {
            m = &m * &xi.pow(k as u32);
        }
        b.push((e.clone(), m));
        if mu.is_finite() {
            let mut below = vec![Vec::with_capacity(e.len())];
            for &k in e {
                below = below
                    .into_iter()
                    .flat_map(|p| {
                        (0..=k).map(move |j| {
                            let mut q = p.clone();
                            q.push(j);
                            q
                        })
                    })
                    .collect();
            }
            js.extend(below);
        }
    }
    js.insert(vec![0; g.nvars()]);

    let mut best = Val::Infinity;
    for j in &js {
        let mut c = PuiseuxSeries::zero();
        for (e, bi) in &b {
            if e.iter().zip(j).all(|(i, j)| i >= j) {
                let w: BigInt = e
                    .iter()
                    .zip(j)
                    .map(|(&i, &j)| binomial(BigInt::from(i), BigInt::from(j)))
                    .product();
                c = &c + &bi.scale(&Rat::from_integer(w));
            }
        }
        let degree: i64 = j.iter().sum();
        best = best.min(c.val() + mu.times(&int(degree)));
    }
    Ok(best + Val::Finite(offset))
}

/// The value `ν_mu(f)` of the chosen seminorm family at the sample point.
pub fn retraction_value(s: &SeminormSample, f: &LaurentPoly) -> Result<Val> {
    check_mu(&s.mu)?;
    check_dim(f, &s.point)?;
    match s.family {
        Family::Monomial => monomial_value(&trp_torus(&s.point)?, &s.mu, f),
        Family::Homotopy => homotopy_value(&s.mu, &s.point, f),
    }
}

/// A monomial (Gauss-type) valuation `t^I ↦ <I, v>`, the image of a point
/// under the retraction.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MonomialDescriptor {
    pub values: RatVec,
}

impl MonomialDescriptor {
    /// `(u^{v_1}, ..., u^{v_n})`, a point whose retraction is this descriptor.
    pub fn representative(&self) -> PuiseuxPoint {
        PuiseuxPoint::monomial_point(self.values.entries())
    }

    pub fn value(&self, f: &LaurentPoly) -> Result<Val> {
        monomial_value(&self.values, &Val::zero(), f)
    }
}

pub fn retract_point(x: &PuiseuxPoint) -> Result<MonomialDescriptor> {
    Ok(MonomialDescriptor {
        values: trp_torus(x)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(s: &str, n: usize) -> LaurentPoly {
        LaurentPoly::parse(s, Some(n)).unwrap()
    }

    fn pt(s: &str) -> PuiseuxPoint {
        s.parse().unwrap()
    }

    fn value(family: Family, mu: Val, x: &str, f: &str) -> Val {
        let x = pt(x);
        let f = poly(f, x.dim());
        retraction_value(&SeminormSample::new(family, mu, x), &f).unwrap()
    }

    #[test]
    fn homotopy_endpoints() {
        assert_eq!(
            value(Family::Homotopy, Val::Infinity, "(u)", "t1 + 1"),
            Val::zero()
        );
        assert_eq!(
            value(Family::Homotopy, Val::zero(), "(u, u^2)", "t1 + t2"),
            Val::Finite(int(1))
        );
        // Cancellation in f(x) is seen at lambda = 0 but not at lambda = 1.
        assert_eq!(
            value(Family::Homotopy, Val::Infinity, "(1 + u, 1)", "t1 - t2"),
            Val::Finite(int(1))
        );
        assert_eq!(
            value(Family::Homotopy, Val::zero(), "(1 + u, 1)", "t1 - t2"),
            Val::zero()
        );
    }

    #[test]
    fn monomial_family_formula() {
        assert_eq!(
            value(Family::Monomial, Val::Finite(int(1)), "(u, u^2)", "t1 + t2"),
            Val::Finite(int(2))
        );
        let x = pt("(u, u^2)");
        let neg = poly("t1^-1", 2);
        assert_eq!(
            retraction_value(&SeminormSample::new(Family::Monomial, Val::Infinity, x), &neg),
            Err(Error::NegativeDegreeAtInfinity)
        );
    }

    #[test]
    fn laurent_terms_in_homotopy_family() {
        // t1^{-1} is the inverse of t1 for every mu.
        for mu in [Val::zero(), Val::Finite(int(3)), Val::Infinity] {
            assert_eq!(
                value(Family::Homotopy, mu, "(u^2 + u^3)", "t1^-1"),
                Val::Finite(int(-2))
            );
        }
        let x = pt("(0, u)");
        let f = poly("t1^-1", 2);
        assert_eq!(
            retraction_value(&SeminormSample::new(Family::Homotopy, Val::zero(), x), &f),
            Err(Error::ZeroCoordinate(0))
        );
    }

    #[test]
    fn negative_mu_rejected() {
        let s = SeminormSample::new(Family::Homotopy, Val::Finite(int(-1)), pt("(u)"));
        assert_eq!(retraction_value(&s, &poly("t1", 1)), Err(Error::NegativeMu));
    }

    #[test]
    fn retraction_is_idempotent() {
        let d = retract_point(&pt("(u, u^2)")).unwrap();
        assert_eq!(d.values, RatVec::from_ints(&[1, 2]));
        assert_eq!(retract_point(&d.representative()).unwrap(), d);
        assert_eq!(d.value(&poly("t1^2*t2^-1 + 5", 2)).unwrap(), Val::zero());
    }
}
