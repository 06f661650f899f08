use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_traits::{Float, FromPrimitive, Signed, ToPrimitive};

/// Exact integer scalar for coordinates and slopes (`i64`, `i128`, `BigInt`).
pub trait Integral:
    num_integer::Integer
    + Signed
    + Clone
    + Debug
    + Display
    + FromStr
    + ToPrimitive
    + FromPrimitive
    + Hash
    + Send
    + Sync
    + 'static
{
}

impl<T> Integral for T where
    T: num_integer::Integer
        + Signed
        + Clone
        + Debug
        + Display
        + FromStr
        + ToPrimitive
        + FromPrimitive
        + Hash
        + Send
        + Sync
        + 'static
{
}

/// Floating scalar for volumes and ratios.
pub trait Real: Float + FromPrimitive + Debug + Display + Send + Sync + 'static {}

impl<T> Real for T where T: Float + FromPrimitive + Debug + Display + Send + Sync + 'static {}

pub(crate) fn to_i64<T: Integral>(x: &T) -> Option<i64> {
    x.to_i64()
}

pub(crate) fn from_i64<T: Integral>(x: i64) -> T {
    T::from_i64(x).expect("every integral scalar holds an i64")
}
