use std::fmt::Debug;
use std::ops::{Div, Neg, Sub};

use num_traits::{One, Zero};

/// Field-like scalar the matrix layer is generic over.
///
/// `Zero`/`One` bring addition and multiplication; subtraction, negation and
/// division complete the field operations. Division is only ever invoked on
/// pivots already known to be nonzero, so exact types never divide by zero.
/// The blessed instantiation is [`crate::Rat`]; floating types satisfy the
/// bound as well but forfeit the exactness the validators rely on.
pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + Div<Output = Self>
{
}

impl<T> Scalar for T where
    T: Clone
        + PartialEq
        + Debug
        + Zero
        + One
        + Neg<Output = Self>
        + Sub<Output = Self>
        + Div<Output = Self>
{
}
