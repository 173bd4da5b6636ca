//! Scalar abstraction and the extended line used for edge intervals.

use std::fmt;

use num_traits::{Num, Signed};

use crate::Rat;

/// Field-like scalar the geometric core is generic over.
///
/// The bounds come from `num-traits`; any ordered field type satisfies them
/// (`BigRational`, `Ratio<i64>`, ...). Division must be exact — integer types
/// technically satisfy the bounds but truncate, so don't use them.
pub trait Scalar: Num + Signed + Ord + Clone + fmt::Debug {
    fn two() -> Self {
        Self::one() + Self::one()
    }

    /// Exact midpoint of two values.
    fn midpoint(a: &Self, b: &Self) -> Self {
        (a.clone() + b.clone()) / Self::two()
    }
}

impl<T> Scalar for T where T: Num + Signed + Ord + Clone + fmt::Debug {}

/// A scalar extended with `-inf` and `+inf`, used for x-intervals of
/// unbounded edges and for wall extents. The derived ordering is the
/// natural one (`NegInf < Fin(_) < PosInf`).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Ext<T = Rat> {
    NegInf,
    Fin(T),
    PosInf,
}

impl<T> Ext<T> {
    pub fn finite(&self) -> Option<&T> {
        match self {
            Ext::Fin(v) => Some(v),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Ext::Fin(_))
    }

    pub fn map<U>(&self, f: impl FnOnce(&T) -> U) -> Ext<U> {
        match self {
            Ext::NegInf => Ext::NegInf,
            Ext::Fin(v) => Ext::Fin(f(v)),
            Ext::PosInf => Ext::PosInf,
        }
    }
}

impl<T: fmt::Display> fmt::Display for Ext<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ext::NegInf => write!(f, "-inf"),
            Ext::Fin(v) => write!(f, "{v}"),
            Ext::PosInf => write!(f, "inf"),
        }
    }
}

/// Shorthand for building a reduced rational from machine integers.
pub fn rat(numer: i64, denom: i64) -> Rat {
    Rat::new(numer.into(), denom.into())
}

/// Integer as a rational.
pub fn rat_int(value: i64) -> Rat {
    Rat::from_integer(value.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ext_ordering() {
        let lo: Ext = Ext::NegInf;
        let a = Ext::Fin(rat(1, 2));
        let b = Ext::Fin(rat(2, 3));
        let hi: Ext = Ext::PosInf;
        assert!(lo < a && a < b && b < hi);
    }

    #[test]
    fn midpoint_is_exact() {
        let m = Rat::midpoint(&rat(1, 3), &rat(1, 2));
        assert_eq!(m, rat(5, 12));
    }
}
