//! Scalar abstraction: all numerical kernels are generic over [`Real`],
//! instantiated in practice with `f32` or `f64`.

use num_traits::float::FloatConst;
use num_traits::{Float, FromPrimitive, NumCast};

/// Floating-point scalar usable throughout the crate.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + NumCast
    + std::iter::Sum
    + std::fmt::Debug
    + std::fmt::Display
    + std::fmt::LowerExp
    + Send
    + Sync
    + 'static
{
}

impl<T> Real for T where
    T: Float
        + FloatConst
        + FromPrimitive
        + NumCast
        + std::iter::Sum
        + std::fmt::Debug
        + std::fmt::Display
        + std::fmt::LowerExp
        + Send
        + Sync
        + 'static
{
}

/// Convert an `f64` constant into `T`. Panics only for non-representable
/// values, which never occur for the fixed constants used internally.
#[inline]
pub fn cast<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("constant not representable in scalar type")
}

/// A validation guard expressed relative to machine epsilon.
///
/// `guard::<f64>(x)` returns exactly `x`; other scalar types get the same
/// multiple of their own epsilon, so construction-time checks stay meaningful
/// in `f32`.
#[inline]
pub fn guard<T: Real>(f64_value: f64) -> T {
    T::epsilon() * cast(f64_value / f64::EPSILON)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn guard_is_identity_for_f64() {
        assert_eq!(guard::<f64>(1e-12), 1e-12);
        assert_eq!(guard::<f64>(1e-10), 1e-10);
    }

    #[test]
    fn guard_scales_for_f32() {
        let g = guard::<f32>(1e-12);
        // 1e-12/eps_f64 ~ 4.5e3; times eps_f32 ~ 1.19e-7 gives ~5.4e-4.
        assert!(g > 1e-4 && g < 1e-3, "guard = {g}");
    }
}
