//! The integer rings the exact-arithmetic modules are generic over.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::Integer;
use num_traits::{FromPrimitive, Signed};

/// An exact integer type: machine integers for small, known-bounded inputs or
/// `BigInt` when coefficient growth is unbounded.
pub trait Scalar:
    Integer + Signed + FromPrimitive + Clone + Debug + Display + Hash + Send + Sync + 'static
{
    fn from_int(v: i64) -> Self {
        <Self as FromPrimitive>::from_i64(v).expect("value fits the scalar type")
    }
}

impl<T> Scalar for T where
    T: Integer + Signed + FromPrimitive + Clone + Debug + Display + Hash + Send + Sync + 'static
{
}
