// SPDX-License-Identifier: Apache-2.0

//! Scalar abstraction shared by every numeric routine in the crate.
//!
//! All graph weights, membership values and similarity scores are generic over
//! [`Scalar`], which is implemented for `f32` and `f64`.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, ToPrimitive};
use serde::de::DeserializeOwned;
use serde::Serialize;

/// Floating point type usable as a weight.
pub trait Scalar:
    Float
    + FromPrimitive
    + ToPrimitive
    + Sum
    + Default
    + Debug
    + Display
    + Send
    + Sync
    + Serialize
    + DeserializeOwned
    + 'static
{
    /// Lossy conversion from `f64`, used for literals and configuration values.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }

    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count representable in scalar type")
    }

    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// Relative equality with tolerance `rel * |b|`.
    fn approx_eq_rel(self, b: Self, rel: Self) -> bool {
        (self - b).abs() <= rel * b.abs()
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Cosine of two equally long vectors. Zero vectors yield 0.
///
/// The norm product is taken as `sqrt(|a|^2 * |b|^2)` so that the cosine of a
/// vector with itself is exactly one.
pub fn cosine<T: Scalar>(a: &[T], b: &[T]) -> T {
    debug_assert_eq!(a.len(), b.len());
    let mut dot = T::zero();
    let mut na = T::zero();
    let mut nb = T::zero();
    for (&x, &y) in a.iter().zip(b) {
        dot = dot + x * y;
        na = na + x * x;
        nb = nb + y * y;
    }
    if na <= T::zero() || nb <= T::zero() {
        return T::zero();
    }
    let c = dot / (na * nb).sqrt();
    c.max(-T::one()).min(T::one())
}
