//! Shared fixtures for the unit tests.

use std::f64::consts::PI;

use crate::field::FieldND;
use crate::imaging::{synth_texture, TextureKind};

/// Band-limited noise with a smooth radial taper to zero before the
/// inscribed-circle rim, peak-normalized. Rotation-friendly: no hard
/// edges anywhere, so interpolation error stays at the smooth-field
/// level.
pub(crate) fn tapered_noise(n: usize, seed: u64, cutoff: f64) -> FieldND {
    let f = synth_texture(n, n, &TextureKind::FilteredNoise { cutoff }, seed).unwrap();
    let c = (n as f64 - 1.0) / 2.0;
    let r_max = n as f64 / 2.0;
    let r0 = 0.55 * r_max;
    let r1 = 0.95 * r_max;
    let mut values = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let r = ((i as f64 - c).powi(2) + (j as f64 - c).powi(2)).sqrt();
            let w = if r <= r0 {
                1.0
            } else if r >= r1 {
                0.0
            } else {
                let t = (r - r0) / (r1 - r0);
                0.5 * (1.0 + (PI * t).cos())
            };
            values.push(f.at2(i, j) * w);
        }
    }
    let peak = values.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    let values = values.iter().map(|v| v / peak).collect();
    FieldND::new(vec![n, n], values).unwrap()
}
