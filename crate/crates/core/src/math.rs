//! Scalar math backend plus folded evaluations of sin/cot at `pi * t`.

#[cfg(all(not(feature = "std"), not(feature = "libm")))]
compile_error!("lodesq-core needs a math backend: enable the `std` or the `libm` feature");

pub(crate) use backend::*;
use core::f64::consts::PI;

#[cfg(feature = "std")]
mod backend {
    #[inline]
    pub fn sin(x: f64) -> f64 {
        x.sin()
    }
    #[inline]
    pub fn cos(x: f64) -> f64 {
        x.cos()
    }
    #[inline]
    pub fn ln(x: f64) -> f64 {
        x.ln()
    }
    #[inline]
    pub fn floor(x: f64) -> f64 {
        x.floor()
    }
    #[inline]
    pub fn sqrt(x: f64) -> f64 {
        x.sqrt()
    }
    #[inline]
    pub fn pow(x: f64, y: f64) -> f64 {
        x.powf(y)
    }
    #[inline]
    pub fn abs(x: f64) -> f64 {
        x.abs()
    }
}

#[cfg(all(not(feature = "std"), feature = "libm"))]
mod backend {
    #[inline]
    pub fn sin(x: f64) -> f64 {
        libm::sin(x)
    }
    #[inline]
    pub fn cos(x: f64) -> f64 {
        libm::cos(x)
    }
    #[inline]
    pub fn ln(x: f64) -> f64 {
        libm::log(x)
    }
    #[inline]
    pub fn floor(x: f64) -> f64 {
        libm::floor(x)
    }
    #[inline]
    pub fn sqrt(x: f64) -> f64 {
        libm::sqrt(x)
    }
    #[inline]
    pub fn pow(x: f64, y: f64) -> f64 {
        libm::pow(x, y)
    }
    #[inline]
    pub fn abs(x: f64) -> f64 {
        libm::fabs(x)
    }
}

/// sin(pi t) for t in [0, 1], folded onto [0, 1/2].
///
/// sin(pi t) = sin(pi (1 - t)), and for t > 1/2 the difference 1 - t is exact
/// in IEEE arithmetic, so the folded argument is well conditioned near both
/// endpoints.
#[inline]
pub(crate) fn sin_pi(t: f64) -> f64 {
    let u = if t > 0.5 { 1.0 - t } else { t };
    sin(PI * u)
}

/// cot(pi t) for t in (0, 1), folded via cot(pi (1 - t)) = -cot(pi t).
#[inline]
pub(crate) fn cot_pi(t: f64) -> f64 {
    if t > 0.5 {
        let u = 1.0 - t;
        -cos(PI * u) / sin(PI * u)
    } else {
        cos(PI * t) / sin(PI * t)
    }
}

/// csc²(pi t) for t in (0, 1).
#[inline]
pub(crate) fn csc2_pi(t: f64) -> f64 {
    let s = sin_pi(t);
    1.0 / (s * s)
}
