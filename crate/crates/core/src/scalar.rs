//! Exact scalar fields.
//!
//! Every computation in this crate is exact, so the scalar abstraction only
//! admits fields with exact division. Floating point types deliberately do
//! not implement [`Scalar`].

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

/// An exact field usable as coefficients of elements and matrices.
pub trait Scalar:
    Clone
    + Debug
    + Display
    + Eq
    + Hash
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// Embeds a machine integer.
    fn from_i64(n: i64) -> Self;

    /// Multiplicative inverse. Panics on zero.
    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        Self::one() / self.clone()
    }

    /// `true` if the value is an integer (used when rendering coefficients).
    fn is_integral(&self) -> bool;

    /// `true` if the value is strictly below zero.
    fn is_negative(&self) -> bool;
}

impl<T> Scalar for Ratio<T>
where
    T: Clone + Integer + Signed + Debug + Display + Hash + From<i64> + Send + Sync + 'static,
{
    fn from_i64(n: i64) -> Self {
        Ratio::from_integer(T::from(n))
    }

    fn is_integral(&self) -> bool {
        self.denom().is_one()
    }

    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
}

/// `(-1)^n` as a scalar.
pub fn sign<F: Scalar>(negative: bool) -> F {
    if negative {
        -F::one()
    } else {
        F::one()
    }
}
