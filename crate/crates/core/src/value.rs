use std::fmt;
use std::ops::Add;

use num::Zero;

use crate::polyhedral::Rat;

/// An element of `Q ∪ {+∞}`: additive valuations, extended functionals and
/// lambda exponents all live here. `∞ + r = ∞` and `min(∞, r) = r`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Val {
    Finite(Rat),
    Infinity,
}

impl Val {
    pub fn zero() -> Self {
        Val::Finite(Rat::zero())
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Val::Finite(_))
    }

    pub fn finite(&self) -> Option<&Rat> {
        match self {
            Val::Finite(r) => Some(r),
            Val::Infinity => None,
        }
    }

    /// `self * k` for an integer weight `k >= 0`, with `∞ * 0 = 0`.
    pub fn times(&self, k: &Rat) -> Val {
        match self {
            Val::Finite(r) => Val::Finite(r * k),
            Val::Infinity if k.is_zero() => Val::zero(),
            Val::Infinity => Val::Infinity,
        }
    }
}

impl From<Rat> for Val {
    fn from(r: Rat) -> Self {
        Val::Finite(r)
    }
}

impl Add for Val {
    type Output = Val;
    fn add(self, rhs: Val) -> Val {
        match (self, rhs) {
            (Val::Finite(a), Val::Finite(b)) => Val::Finite(a + b),
            _ => Val::Infinity,
        }
    }
}

impl Add for &Val {
    type Output = Val;
    fn add(self, rhs: &Val) -> Val {
        self.clone() + rhs.clone()
    }
}

impl fmt::Display for Val {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Val::Finite(r) => write!(f, "{r}"),
            Val::Infinity => write!(f, "inf"),
        }
    }
}
