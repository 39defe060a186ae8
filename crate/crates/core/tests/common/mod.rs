//! Shared helpers for the integration suites: a direct-summation DFT
//! oracle that is independent of the library's FFT path, and fixture
//! generators.
#![allow(dead_code)]

use std::f64::consts::{PI, TAU};

use dpi_core::field::FieldND;
use dpi_core::imaging::{synth_texture, TextureKind};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// O(N^2) direct-summation n-dimensional DFT. Forward uses e^{-2πi k·t/N};
/// inverse uses the conjugate kernel and divides by the total sample count.
pub fn naive_dft_nd(shape: &[usize], input: &[Complex64], inverse: bool) -> Vec<Complex64> {
    let total: usize = shape.iter().product();
    assert_eq!(input.len(), total);
    let sign = if inverse { 1.0 } else { -1.0 };
    let mut out = Vec::with_capacity(total);
    for ko in 0..total {
        let ko_idx = decode(shape, ko);
        let mut acc = Complex64::new(0.0, 0.0);
        for (ki, v) in input.iter().enumerate() {
            let ki_idx = decode(shape, ki);
            let mut phase = 0.0;
            for a in 0..shape.len() {
                phase += (ko_idx[a] * ki_idx[a]) as f64 / shape[a] as f64;
            }
            let ang = sign * TAU * phase;
            acc += v * Complex64::new(ang.cos(), ang.sin());
        }
        if inverse {
            acc /= total as f64;
        }
        out.push(acc);
    }
    out
}

/// Multi-index of a flat row-major position.
pub fn decode(shape: &[usize], mut flat: usize) -> Vec<usize> {
    let mut idx = vec![0; shape.len()];
    for a in (0..shape.len()).rev() {
        idx[a] = flat % shape[a];
        flat /= shape[a];
    }
    idx
}

/// Signed DFT frequency of bin k on an axis of length n, in cycles/sample,
/// recomputed here so the oracle does not depend on the library's grid.
pub fn signed_freq(k: usize, n: usize) -> f64 {
    if 2 * k < n {
        k as f64 / n as f64
    } else {
        (k as f64 - n as f64) / n as f64
    }
}

/// Oracle realization of a multiplier operator: real part of the naive
/// inverse DFT of (symbol * naive DFT).
pub fn naive_apply(shape: &[usize], values: &[f64], symbol: &[Complex64]) -> Vec<f64> {
    let input: Vec<Complex64> = values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    let mut spectrum = naive_dft_nd(shape, &input, false);
    for (s, m) in spectrum.iter_mut().zip(symbol) {
        *s *= m;
    }
    naive_dft_nd(shape, &spectrum, true).iter().map(|c| c.re).collect()
}

pub fn random_field(shape: &[usize], seed: u64) -> FieldND {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let len = shape.iter().product();
    let values = (0..len).map(|_| rng.random::<f64>() * 2.0 - 1.0).collect();
    FieldND::new(shape.to_vec(), values).unwrap()
}

/// Band-limited noise with a smooth radial taper to zero before the
/// inscribed-circle rim, peak-normalized. No hard edges anywhere, so
/// rotations stay interpolation-limited.
pub fn tapered_noise(n: usize, seed: u64, cutoff: f64) -> FieldND {
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

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}
