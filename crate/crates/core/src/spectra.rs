//! Frequency grids and FFT-domain multiplier operators.
//!
//! Every transform in this crate is a pointwise multiplier on the DFT
//! spectrum of a field: build a [`FrequencyGrid`] for the field's shape,
//! construct a [`Multiplier`] over it, and run [`apply_multiplier`].
//! Frequencies are kept in cycles/sample throughout; physical units enter
//! only at call sites that know a sample rate.
//!
//! Conventions, fixed once here:
//! * the zero-frequency bin of the Hilbert and Riesz symbols is 0, so the
//!   transforms annihilate constants;
//! * the 1D Hilbert symbol is also 0 at the Nyquist bin of an even-length
//!   grid (the discrete sign function has no consistent value there),
//!   while the Riesz symbol keeps its value -i*sign there — the two
//!   operators agree everywhere else;
//! * `apply_multiplier` returns the real part of the inverse DFT, which
//!   discards the (conjugate-asymmetric) contribution of self-conjugate
//!   Nyquist bins where a symbol is purely imaginary.

use num_complex::Complex64;
use rustfft::{FftDirection, FftPlanner};

use crate::error::{Error, Result};
use crate::field::FieldND;

/// Signed DFT frequencies for every axis of a grid, in cycles/sample.
///
/// Standard DFT ordering per axis: the zero bin first, then positive
/// frequencies, then negative ones. For an even axis length the single
/// Nyquist bin carries the frequency -1/2.
#[derive(Debug, Clone)]
pub struct FrequencyGrid {
    shape: Vec<usize>,
    freqs: Vec<Vec<f64>>,
}

impl FrequencyGrid {
    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn ndim(&self) -> usize {
        self.shape.len()
    }

    /// Per-axis frequency arrays.
    pub fn freqs(&self) -> &[Vec<f64>] {
        &self.freqs
    }

    /// Frequencies along one axis.
    pub fn freq_axis(&self, axis: usize) -> &[f64] {
        &self.freqs[axis]
    }

    /// Total number of spectral bins.
    pub fn len(&self) -> usize {
        self.shape.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Pointwise spectral multiplier with the same shape as the target
/// field's spectrum. All bins have magnitude at most 1.
#[derive(Debug, Clone)]
pub struct Multiplier {
    shape: Vec<usize>,
    values: Vec<Complex64>,
}

impl Multiplier {
    /// Build a multiplier, validating the shape and the unit bound.
    pub fn new(shape: Vec<usize>, values: Vec<Complex64>) -> Result<Self> {
        let expected: usize = shape.iter().product();
        if shape.is_empty() || values.len() != expected {
            return Err(Error::invalid(format!(
                "multiplier value count {} does not match shape {:?}",
                values.len(),
                shape
            )));
        }
        if values.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::invalid("multiplier values must be finite"));
        }
        if values.iter().any(|v| v.norm_sqr() > 1.0 + 1e-12) {
            return Err(Error::invalid("multiplier bins must have magnitude at most 1"));
        }
        Ok(Self { shape, values })
    }

    /// Identity multiplier (all bins 1).
    pub fn ones(shape: &[usize]) -> Self {
        let len = shape.iter().product();
        Self {
            shape: shape.to_vec(),
            values: vec![Complex64::new(1.0, 0.0); len],
        }
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }
}

/// Per-axis signed DFT frequencies for the given shape, zero bin first.
pub fn frequency_grid(shape: &[usize]) -> Result<FrequencyGrid> {
    if shape.is_empty() || shape.len() > FieldND::MAX_DIMS {
        return Err(Error::invalid(format!(
            "frequency grid must have 1 to {} axes, got {}",
            FieldND::MAX_DIMS,
            shape.len()
        )));
    }
    if shape.contains(&0) {
        return Err(Error::invalid("frequency grid axes must have at least one bin"));
    }
    let freqs = shape.iter().map(|&n| signed_freqs(n)).collect();
    Ok(FrequencyGrid {
        shape: shape.to_vec(),
        freqs,
    })
}

fn signed_freqs(n: usize) -> Vec<f64> {
    (0..n)
        .map(|k| {
            if 2 * k < n {
                k as f64 / n as f64
            } else {
                (k as f64 - n as f64) / n as f64
            }
        })
        .collect()
}

/// 1D Hilbert transform symbol -i*sign(frequency), zero at the DC bin and
/// at the Nyquist bin of an even-length grid.
pub fn hilbert_multiplier(grid: &FrequencyGrid) -> Result<Multiplier> {
    if grid.ndim() != 1 {
        return Err(Error::invalid(format!(
            "hilbert multiplier requires a one-dimensional grid, got {} axes",
            grid.ndim()
        )));
    }
    let n = grid.shape()[0];
    let values = grid.freq_axis(0)
        .iter()
        .enumerate()
        .map(|(k, &f)| {
            let nyquist = n.is_multiple_of(2) && k == n / 2;
            if f == 0.0 || nyquist {
                Complex64::new(0.0, 0.0)
            } else {
                Complex64::new(0.0, -f.signum())
            }
        })
        .collect();
    Ok(Multiplier {
        shape: grid.shape().to_vec(),
        values,
    })
}

/// Riesz transform symbol for one axis: -i * xi_j / |xi|, zero at the
/// zero-frequency bin. Nyquist bins keep their value, unlike the 1D
/// Hilbert symbol.
pub fn riesz_multiplier(axis: usize, grid: &FrequencyGrid) -> Result<Multiplier> {
    let n = grid.ndim();
    if axis >= n {
        return Err(Error::invalid(format!(
            "riesz axis {axis} out of range for a {n}-dimensional grid"
        )));
    }
    let total = grid.len();
    let shape = grid.shape().to_vec();
    let mut values = Vec::with_capacity(total);
    let mut idx = vec![0usize; n];
    for _ in 0..total {
        let mut norm_sqr = 0.0;
        for (a, &k) in idx.iter().enumerate() {
            let f = grid.freq_axis(a)[k];
            norm_sqr += f * f;
        }
        if norm_sqr == 0.0 {
            values.push(Complex64::new(0.0, 0.0));
        } else {
            let f_axis = grid.freq_axis(axis)[idx[axis]];
            values.push(Complex64::new(0.0, -f_axis / norm_sqr.sqrt()));
        }
        // odometer increment over the multi-index
        for a in (0..n).rev() {
            idx[a] += 1;
            if idx[a] < shape[a] {
                break;
            }
            idx[a] = 0;
        }
    }
    Ok(Multiplier { shape, values })
}

/// Apply a spectral multiplier: real part of IDFT(m * DFT(field)).
pub fn apply_multiplier(field: &FieldND, m: &Multiplier) -> Result<FieldND> {
    if field.shape() != m.shape() {
        return Err(Error::invalid(format!(
            "field shape {:?} does not match multiplier shape {:?}",
            field.shape(),
            m.shape()
        )));
    }
    let mut buf: Vec<Complex64> = field
        .values()
        .iter()
        .map(|&v| Complex64::new(v, 0.0))
        .collect();
    fft_nd(field.shape(), &mut buf, FftDirection::Forward);
    for (b, mv) in buf.iter_mut().zip(m.values()) {
        *b *= mv;
    }
    fft_nd(field.shape(), &mut buf, FftDirection::Inverse);
    let values = buf.iter().map(|c| c.re).collect();
    Ok(FieldND::from_raw(field.shape().to_vec(), values))
}

/// In-place n-dimensional FFT over a row-major buffer, one axis at a time.
/// The inverse direction includes the 1/N normalization.
pub(crate) fn fft_nd(shape: &[usize], data: &mut [Complex64], direction: FftDirection) {
    debug_assert_eq!(data.len(), shape.iter().product::<usize>());
    let mut planner = FftPlanner::new();
    for axis in 0..shape.len() {
        let len = shape[axis];
        if len == 1 {
            continue;
        }
        let fft = planner.plan_fft(len, direction);
        let stride: usize = shape[axis + 1..].iter().product();
        let n_before: usize = shape[..axis].iter().product();
        let mut line = vec![Complex64::new(0.0, 0.0); len];
        let mut scratch = vec![Complex64::new(0.0, 0.0); fft.get_inplace_scratch_len()];
        for outer in 0..n_before {
            for inner in 0..stride {
                let base = outer * len * stride + inner;
                for (t, slot) in line.iter_mut().enumerate() {
                    *slot = data[base + t * stride];
                }
                fft.process_with_scratch(&mut line, &mut scratch);
                for (t, slot) in line.iter().enumerate() {
                    data[base + t * stride] = *slot;
                }
            }
        }
    }
    if direction == FftDirection::Inverse {
        let scale = 1.0 / (shape.iter().product::<usize>() as f64);
        for v in data.iter_mut() {
            *v *= scale;
        }
    }
}
