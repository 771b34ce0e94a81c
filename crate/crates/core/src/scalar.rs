//! Scalar abstraction shared by the configuration types.

use num_traits::Num;

/// Number types that can carry bead positions.
///
/// Everything that produces certificates runs over the exact [`crate::Rational`]
/// scalar, but the configuration types themselves only need ring operations,
/// cloning, and a partial order, so they are written against this trait and
/// also work over floats for approximate pipelines (transformed gap vectors,
/// for example). `is_comparable` lets constructors reject values that would
/// break the order; for exact scalars every value passes, for floats it
/// filters out NaN.
pub trait Scalar: Clone + PartialOrd + Num {
    fn is_comparable(&self) -> bool {
        true
    }
}

impl Scalar for num_rational::BigRational {}

impl Scalar for f64 {
    fn is_comparable(&self) -> bool {
        !self.is_nan()
    }
}

impl Scalar for f32 {
    fn is_comparable(&self) -> bool {
        !self.is_nan()
    }
}

pub(crate) fn half<S: Scalar>(x: S) -> S {
    x / (S::one() + S::one())
}

pub(crate) fn twice<S: Scalar>(x: S) -> S {
    x.clone() + x
}
