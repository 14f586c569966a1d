use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, FromPrimitive, Signed, ToPrimitive};

/// Exact integer scalar usable by the lattice routines.
///
/// Implemented for every signed primitive integer and for `BigInt`. Machine
/// words are fine for small inputs (points, homology boundary matrices); the
/// normal forms inside the model always run on `BigInt`.
pub trait Scalar:
    Integer
    + Signed
    + Clone
    + Ord
    + Hash
    + Debug
    + Display
    + FromPrimitive
    + ToPrimitive
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + Send
    + Sync
    + 'static
{
    /// Lossless conversion from a small integer.
    fn of(v: i64) -> Self {
        <Self as FromPrimitive>::from_i64(v).expect("small integer fits every scalar type")
    }

    /// Convert between scalar types, failing when the value does not fit.
    fn cast<U: Scalar>(&self) -> Option<U> {
        match self.to_i64() {
            Some(v) => U::from_i64(v),
            None => self.to_i128().and_then(U::from_i128),
        }
    }
}

impl<T> Scalar for T where
    T: Integer
        + Signed
        + Clone
        + Ord
        + Hash
        + Debug
        + Display
        + FromPrimitive
        + ToPrimitive
        + CheckedAdd
        + CheckedSub
        + CheckedMul
        + Send
        + Sync
        + 'static
{
}

/// Extended Euclid: returns `(g, s, t)` with `g = s*a + t*b` and `g >= 0`.
pub fn extended_gcd<T: Scalar>(a: &T, b: &T) -> (T, T, T) {
    let (mut old_r, mut r) = (a.clone(), b.clone());
    let (mut old_s, mut s) = (T::one(), T::zero());
    let (mut old_t, mut t) = (T::zero(), T::one());
    while !r.is_zero() {
        let q = old_r.div_floor(&r);
        let next_r = old_r - q.clone() * r.clone();
        old_r = std::mem::replace(&mut r, next_r);
        let next_s = old_s - q.clone() * s.clone();
        old_s = std::mem::replace(&mut s, next_s);
        let next_t = old_t - q * t.clone();
        old_t = std::mem::replace(&mut t, next_t);
    }
    if old_r.is_negative() {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn gcd_identity_holds() {
        for a in -12i64..=12 {
            for b in -12i64..=12 {
                let (g, s, t) = extended_gcd(&a, &b);
                assert_eq!(g, a.gcd(&b));
                assert_eq!(s * a + t * b, g);
            }
        }
    }

    #[test]
    fn cast_round_trips() {
        let big: BigInt = 17i64.cast().unwrap();
        assert_eq!(big.cast::<i32>(), Some(17));
        let huge: BigInt = BigInt::from(1u8) << 200u32;
        assert_eq!(huge.cast::<i64>(), None);
    }
}
