//! Float math shim. With `std` the inherent `f64` methods are used; without
//! it the same call sites resolve to this trait, which forwards to `libm`.
//! Modules glob-import this (`use crate::num::*;`), which is a no-op on std.

#![allow(unused_imports)]

#[cfg(not(feature = "std"))]
#[allow(dead_code)]
pub(crate) trait FloatExt {
    fn abs(self) -> f64;
    fn sqrt(self) -> f64;
    fn cbrt(self) -> f64;
    fn exp(self) -> f64;
    fn ln(self) -> f64;
    fn powf(self, p: f64) -> f64;
    fn powi(self, p: i32) -> f64;
    fn sin(self) -> f64;
    fn cos(self) -> f64;
    fn floor(self) -> f64;
    fn ceil(self) -> f64;
    fn round(self) -> f64;
    fn max(self, other: f64) -> f64;
    fn min(self, other: f64) -> f64;
    fn hypot(self, other: f64) -> f64;
}

#[cfg(not(feature = "std"))]
impl FloatExt for f64 {
    #[inline]
    fn abs(self) -> f64 {
        libm::fabs(self)
    }
    #[inline]
    fn sqrt(self) -> f64 {
        libm::sqrt(self)
    }
    #[inline]
    fn cbrt(self) -> f64 {
        libm::cbrt(self)
    }
    #[inline]
    fn exp(self) -> f64 {
        libm::exp(self)
    }
    #[inline]
    fn ln(self) -> f64 {
        libm::log(self)
    }
    #[inline]
    fn powf(self, p: f64) -> f64 {
        libm::pow(self, p)
    }
    #[inline]
    fn powi(self, p: i32) -> f64 {
        match p {
            2 => self * self,
            3 => self * self * self,
            4 => {
                let s = self * self;
                s * s
            }
            _ => libm::pow(self, p as f64),
        }
    }
    #[inline]
    fn sin(self) -> f64 {
        libm::sin(self)
    }
    #[inline]
    fn cos(self) -> f64 {
        libm::cos(self)
    }
    #[inline]
    fn floor(self) -> f64 {
        libm::floor(self)
    }
    #[inline]
    fn ceil(self) -> f64 {
        libm::ceil(self)
    }
    #[inline]
    fn round(self) -> f64 {
        libm::round(self)
    }
    #[inline]
    fn max(self, other: f64) -> f64 {
        libm::fmax(self, other)
    }
    #[inline]
    fn min(self, other: f64) -> f64 {
        libm::fmin(self, other)
    }
    #[inline]
    fn hypot(self, other: f64) -> f64 {
        libm::hypot(self, other)
    }
}

