//! Distance scalars and their extension with an absorbing infinity.

use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;
use std::ops::Add;

use num_traits::{One, Zero};

/// A non-negative distance value.
///
/// The library never subtracts or divides distances; every derived value is a
/// finite sum of values that were supplied as input, or the unit used for
/// discrete metrics. Anything totally ordered
/// with an additive zero therefore works: exact rationals are the default
/// (see [`crate::Rational`]), and `ordered_float::NotNan<f64>` also satisfies
/// the bound for users who accept rounding.
pub trait Scalar:
    Clone + Ord + Hash + fmt::Debug + fmt::Display + Zero + One + Add<Output = Self>
{
}

impl<T> Scalar for T where
    T: Clone + Ord + Hash + fmt::Debug + fmt::Display + Zero + One + Add<Output = T>
{
}

/// A scalar extended with `∞`.
///
/// `∞` is larger than every finite value and absorbs addition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Extended<S> {
    Finite(S),
    Infinite,
}

impl<S: Scalar> Extended<S> {
    pub fn zero() -> Self {
        Extended::Finite(S::zero())
    }

    pub fn one() -> Self {
        Extended::Finite(S::one())
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Extended::Finite(v) if v.is_zero())
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Extended::Finite(_))
    }

    pub fn finite(&self) -> Option<&S> {
        match self {
            Extended::Finite(v) => Some(v),
            Extended::Infinite => None,
        }
    }

    /// `self ≤ bound` for a finite bound.
    pub fn within(&self, bound: &S) -> bool {
        match self {
            Extended::Finite(v) => v <= bound,
            Extended::Infinite => false,
        }
    }
}

impl<S: Ord> PartialOrd for Extended<S> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<S: Ord> Ord for Extended<S> {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Extended::Finite(a), Extended::Finite(b)) => a.cmp(b),
            (Extended::Finite(_), Extended::Infinite) => Ordering::Less,
            (Extended::Infinite, Extended::Finite(_)) => Ordering::Greater,
            (Extended::Infinite, Extended::Infinite) => Ordering::Equal,
        }
    }
}

impl<S: Scalar> Add for Extended<S> {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        match (self, rhs) {
            (Extended::Finite(a), Extended::Finite(b)) => Extended::Finite(a + b),
            _ => Extended::Infinite,
        }
    }
}

impl<S: Scalar> Add for &Extended<S> {
    type Output = Extended<S>;

    fn add(self, rhs: Self) -> Extended<S> {
        match (self, rhs) {
            (Extended::Finite(a), Extended::Finite(b)) => Extended::Finite(a.clone() + b.clone()),
            _ => Extended::Infinite,
        }
    }
}

impl<S> From<S> for Extended<S> {
    fn from(v: S) -> Self {
        Extended::Finite(v)
    }
}

impl<S: fmt::Display> fmt::Display for Extended<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extended::Finite(v) => write!(f, "{v}"),
            Extended::Infinite => f.write_str("inf"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn q(n: i64, d: i64) -> Extended<Rational> {
        Extended::Finite(Rational::new(n, d))
    }

    #[test]
    fn infinity_absorbs_and_dominates() {
        assert_eq!(q(1, 2) + Extended::Infinite, Extended::Infinite);
        assert!(q(1000, 1) < Extended::Infinite);
        assert_eq!(q(1, 2) + q(1, 3), q(5, 6));
        assert_eq!(std::cmp::min(Extended::Infinite, q(3, 1)), q(3, 1));
    }

    #[test]
    fn within_is_false_for_infinity() {
        assert!(!Extended::<Rational>::Infinite.within(&Rational::new(10, 1)));
        assert!(q(1, 2).within(&Rational::new(1, 2)));
        assert!(!q(3, 4).within(&Rational::new(1, 2)));
    }
}
