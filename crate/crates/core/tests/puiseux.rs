use num::BigInt;
use proptest::prelude::*;
use sphtrop::polyhedral::{Rat, RatVec};
use sphtrop::puiseux::{
    monomial_value, retract_point, retraction_value, reunit, trp_generic, trp_torus, Family,
    LaurentPoly, PuiseuxPoint, PuiseuxSeries, SeminormSample,
};
use std::sync::LazyLock;

use sphtrop::registry::{registry_get, RegistryEntry};
use sphtrop::Val;

static ENTRIES: LazyLock<Vec<RegistryEntry>> = LazyLock::new(|| {
    ["torus(3)", "sl2_h", "gl2"]
        .into_iter()
        .map(|n| registry_get(n).unwrap())
        .collect()
});

fn entry(name: &str) -> &'static RegistryEntry {
    ENTRIES.iter().find(|e| e.name == name).unwrap()
}

fn q(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

fn nonzero_coeff() -> impl Strategy<Value = Rat> {
    (1i64..=5, any::<bool>(), 1i64..=3).prop_map(|(n, neg, d)| q(if neg { -n } else { n }, d))
}

/// Series with up to four terms whose exponents share a denominator.
fn series() -> impl Strategy<Value = PuiseuxSeries> {
    (1i64..=3, prop::collection::vec((-4i64..=6, nonzero_coeff()), 0..=4)).prop_map(|(den, ts)| {
        PuiseuxSeries::from_terms(ts.into_iter().map(|(e, c)| (q(e, den), c)))
    })
}

fn nonzero_series() -> impl Strategy<Value = PuiseuxSeries> {
    series().prop_filter("nonzero", |s| !s.is_zero())
}

fn torus_point(n: usize) -> impl Strategy<Value = PuiseuxPoint> {
    prop::collection::vec(nonzero_series(), n).prop_map(PuiseuxPoint::new)
}

fn laurent(n: usize) -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((prop::collection::vec(-2i64..=3, n), nonzero_coeff()), 1..=4)
        .prop_map(move |ts| LaurentPoly::from_terms(n, ts))
        .prop_filter("nonzero", |f| !f.is_zero())
}

fn finite_mu() -> impl Strategy<Value = Val> {
    (0i64..=8, 1i64..=2).prop_map(|(n, d)| Val::Finite(q(n, d)))
}

fn mu() -> impl Strategy<Value = Val> {
    prop_oneof![4 => finite_mu(), 1 => Just(Val::Infinity)]
}

fn family() -> impl Strategy<Value = Family> {
    prop_oneof![Just(Family::Monomial), Just(Family::Homotopy)]
}

fn gl2_point() -> impl Strategy<Value = PuiseuxPoint> {
    prop::collection::vec(series(), 4)
        .prop_map(PuiseuxPoint::new)
        .prop_filter("invertible", |x| {
            let c = x.coords();
            !(&(&c[0] * &c[3]) - &(&c[1] * &c[2])).is_zero()
        })
}

fn sl2_point() -> impl Strategy<Value = PuiseuxPoint> {
    prop::collection::vec(series(), 2)
        .prop_map(PuiseuxPoint::new)
        .prop_filter("nonzero", |x| x.coords().iter().any(|c| !c.is_zero()))
}

fn finite(v: Val) -> Rat {
    v.finite().cloned().expect("finite valuation")
}

/// Invariant factors of a 2x2 matrix over the valuation ring: `d1` is the
/// least entry valuation and `d1 + d2` the valuation of the determinant.
fn smith_oracle(x: &PuiseuxPoint) -> RatVec {
    let c = x.coords();
    let d1 = c.iter().map(PuiseuxSeries::val).min().unwrap();
    let det = (&(&c[0] * &c[3]) - &(&c[1] * &c[2])).val();
    let d1 = finite(d1);
    RatVec::new(vec![finite(det) - &d1, d1])
}

fn sample(family: Family, mu: Val, x: &PuiseuxPoint) -> SeminormSample {
    SeminormSample::new(family, mu, x.clone())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn valuation_axioms_for_series(f in series(), g in series()) {
        prop_assert_eq!((&f * &g).val(), f.val() + g.val());
        prop_assert!((&f + &g).val() >= f.val().min(g.val()));
        prop_assert!((&f - &f).is_zero());
        let back: PuiseuxSeries = f.to_string().parse().unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn retraction_is_a_valuation(
        family in family(),
        mu in mu(),
        x in torus_point(2),
        f in laurent(2),
        g in laurent(2),
    ) {
        let s = sample(family, mu, &x);
        let (vf, vg) = match (retraction_value(&s, &f), retraction_value(&s, &g)) {
            (Ok(a), Ok(b)) => (a, b),
            // Negative total degree at λ = 0 has no value in [0, ∞].
            _ => return Ok(()),
        };
        if let Ok(vfg) = retraction_value(&s, &(&f * &g)) {
            prop_assert_eq!(vfg, &vf + &vg);
        }
        if let Ok(vsum) = retraction_value(&s, &(&f + &g)) {
            prop_assert!(vsum >= vf.clone().min(vg.clone()));
        }
    }

    #[test]
    fn homotopy_endpoints(x in torus_point(3), f in laurent(3)) {
        let at_inf = retraction_value(&sample(Family::Homotopy, Val::Infinity, &x), &f).unwrap();
        // val f(x) = val (t^{-R} f)(x) + <R, val x>, with t^{-R} f a polynomial.
        let r = f.denominator_exponents();
        let neg: Vec<i64> = r.iter().map(|k| -k).collect();
        let vals = trp_torus(&x).unwrap();
        let shift: Rat = vals.iter().zip(&r).map(|(v, k)| v * q(*k, 1)).sum();
        let expected = f.shift(&neg).evaluate(&x).unwrap().val() + Val::Finite(shift);
        if let Ok(direct) = f.evaluate(&x) {
            prop_assert_eq!(&direct.val(), &expected);
        }
        prop_assert_eq!(at_inf, expected);
        let h0 = retraction_value(&sample(Family::Homotopy, Val::zero(), &x), &f).unwrap();
        let m0 = retraction_value(&sample(Family::Monomial, Val::zero(), &x), &f).unwrap();
        prop_assert_eq!(h0, m0);
    }

    #[test]
    fn retraction_is_monotone_in_mu(
        family in family(),
        x in torus_point(2),
        f in laurent(2),
        a in finite_mu(),
        b in finite_mu(),
    ) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let vlo = retraction_value(&sample(family, lo, &x), &f).unwrap();
        let vhi = retraction_value(&sample(family, hi, &x), &f).unwrap();
        // Nonnegative slopes hold only when every term has |I| >= 0.
        if f.terms().all(|(e, _)| e.iter().sum::<i64>() >= 0) || family == Family::Homotopy {
            prop_assert!(vlo <= vhi);
        }
    }

    #[test]
    fn retract_point_is_idempotent(x in torus_point(3), f in laurent(3)) {
        let d = retract_point(&x).unwrap();
        prop_assert_eq!(&d.values, &trp_torus(&x).unwrap());
        prop_assert_eq!(retract_point(&d.representative()).unwrap(), d.clone());
        let direct = retraction_value(&sample(Family::Monomial, Val::zero(), &x), &f).unwrap();
        prop_assert_eq!(d.value(&f).unwrap(), direct);
    }

    #[test]
    fn monomials_pair_with_the_valuation_vector(x in torus_point(3), e in prop::collection::vec(-3i64..=3, 3)) {
        let m = LaurentPoly::monomial(q(1, 1), e.clone());
        let vals = trp_torus(&x).unwrap();
        let expected: Rat = vals.iter().zip(&e).map(|(v, k)| v * q(*k, 1)).sum();
        prop_assert_eq!(monomial_value(&vals, &Val::zero(), &m).unwrap(), Val::Finite(expected));
    }

    #[test]
    fn torus_generic_position_is_coordinatewise(x in torus_point(3), seed in any::<u64>()) {
        let e = entry("torus(3)");
        prop_assert_eq!(trp_generic(e, &x, 8, seed).unwrap(), trp_torus(&x).unwrap());
    }

    #[test]
    fn sl2_matches_the_min_oracle(x in sl2_point(), seed in any::<u64>()) {
        let e = entry("sl2_h");
        let oracle = finite(x.coords()[0].val().min(x.coords()[1].val()));
        let got = trp_generic(e, &x, 8, seed).unwrap();
        prop_assert_eq!(&got, &RatVec::new(vec![oracle]));
        prop_assert_eq!(trp_generic(e, &x, 16, seed).unwrap(), got);
    }

    #[test]
    fn gl2_matches_the_smith_oracle(x in gl2_point(), seed in any::<u64>()) {
        let e = entry("gl2");
        let got = trp_generic(e, &x, 8, seed).unwrap();
        prop_assert_eq!(&got, &smith_oracle(&x));
        prop_assert_eq!(trp_generic(e, &x, 16, seed).unwrap(), got);
        // Points land in the valuation cone.
        prop_assert!(e.data.vcone().contains_point(&smith_oracle(&x)));
    }

    #[test]
    fn generic_trop_ignores_units(
        x in gl2_point(),
        y in sl2_point(),
        z in torus_point(3),
        ks in prop::collection::vec(nonzero_coeff(), 8),
        seed in any::<u64>(),
    ) {
        // Arbitrary coefficientwise units on SL_2/U and the torus.
        let mut it = ks.iter().cycle();
        let mut w = |_: usize, _: &Rat| it.next().unwrap().clone();
        for (name, p) in [("sl2_h", &y), ("torus(3)", &z)] {
            let e = entry(name);
            let p2 = reunit(p, &mut w);
            prop_assert_eq!(p2.vals(), p.vals());
            prop_assert_eq!(trp_generic(e, &p2, 8, seed).unwrap(), trp_generic(e, p, 8, seed).unwrap());
        }
        // On GL_2 entrywise units can create cancellation in the determinant,
        // so the units form a rank-one pattern r_i c_j.
        let e = entry("gl2");
        let p2 = reunit(&x, |i, _| &ks[i / 2] * &ks[2 + i % 2]);
        prop_assert_eq!(p2.vals(), x.vals());
        prop_assert_eq!(trp_generic(e, &p2, 8, seed).unwrap(), trp_generic(e, &x, 8, seed).unwrap());
        prop_assert_eq!(trp_generic(e, &p2, 8, seed).unwrap(), smith_oracle(&p2));
    }
}

#[test]
fn documented_retraction_values() {
    let x: PuiseuxPoint = "(u, u^2)".parse().unwrap();
    let f = LaurentPoly::parse("t1 + t2", Some(2)).unwrap();
    let at = |family, mu| retraction_value(&SeminormSample::new(family, mu, x.clone()), &f).unwrap();
    assert_eq!(at(Family::Homotopy, Val::zero()), Val::Finite(q(1, 1)));
    assert_eq!(at(Family::Monomial, Val::Finite(q(1, 1))), Val::Finite(q(2, 1)));

    let y: PuiseuxPoint = "(u)".parse().unwrap();
    let g = LaurentPoly::parse("t1 + 1", Some(1)).unwrap();
    let s = SeminormSample::new(Family::Homotopy, Val::Infinity, y);
    assert_eq!(retraction_value(&s, &g).unwrap(), Val::zero());
}

#[test]
fn documented_generic_values() {
    let sl2 = registry_get("sl2_h").unwrap();
    let gl2 = registry_get("gl2").unwrap();
    let p = |s: &str| -> PuiseuxPoint { s.parse().unwrap() };
    assert_eq!(trp_generic(&sl2, &p("(u^2, u^3)"), 8, 1).unwrap(), RatVec::from_ints(&[2]));
    assert_eq!(trp_generic(&sl2, &p("(1, u)"), 8, 1).unwrap(), RatVec::from_ints(&[0]));
    let diag = p("(u, 0, 0, 1)");
    assert_eq!(smith_oracle(&diag), RatVec::from_ints(&[1, 0]));
    assert_eq!(trp_generic(&gl2, &diag, 8, 1).unwrap(), RatVec::from_ints(&[1, 0]));
}
