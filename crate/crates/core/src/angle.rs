//! Angle wrapping helpers shared by the phase modules.

use std::f64::consts::{PI, TAU};

/// Wrap an angle to the half-open interval (-π, π].
#[inline]
pub fn wrap_to_pi(x: f64) -> f64 {
    let mut y = x % TAU;
    if y <= -PI {
        y += TAU;
    } else if y > PI {
        y -= TAU;
    }
    y
}

/// Four-quadrant phase of `value + i*transform`, in (-π, π].
///
/// Returns 0 when both arguments vanish; any finite value would be as
/// arbitrary, and 0 keeps the phase difference of two zero signals at 0.
#[inline]
pub fn phase_of(value: f64, transform: f64) -> f64 {
    if value == 0.0 && transform == 0.0 {
        return 0.0;
    }
    wrap_to_pi(transform.atan2(value))
}
