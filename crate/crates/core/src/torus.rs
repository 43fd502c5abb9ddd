//! Arithmetic on the flat torus `R/Z`.

use crate::error::{Error, Result};
use crate::math;
use alloc::format;

/// Fractional part `x - floor(x)`, mapping any finite real into [0, 1).
///
/// Rejects non-finite input. `floor` can leave `x - floor(x)` rounded up to
/// exactly 1.0 for tiny negative inputs, so the result is folded back to 0.
pub fn wrap(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "wrap requires a finite input, got {x}"
        )));
    }
    Ok(wrap_unchecked(x))
}

/// `wrap` for values already known to be finite.
#[inline]
pub(crate) fn wrap_unchecked(x: f64) -> f64 {
    let f = x - math::floor(x);
    if f >= 1.0 {
        0.0
    } else {
        f
    }
}

/// Geodesic distance on R/Z between two values in [0, 1).
#[inline]
pub fn distance(a: f64, b: f64) -> f64 {
    let d = math::abs(a - b);
    if d > 0.5 {
        1.0 - d
    } else {
        d
    }
}
