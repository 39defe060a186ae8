//! Image ingestion and synthesis: grayscale conversion, intensity
//! scaling, PNG raster I/O, plain-text matrix I/O, and deterministic
//! synthetic test textures.
//!
//! Raster values are normalized to [0, 1] doubles at the I/O boundary.
//! Grayscale images are written as 16-bit PNG and RGB as 8-bit PNG, which
//! keeps 8- and 16-bit grayscale round trips lossless.

use std::fmt::Write as _;
use std::path::Path;

use image::{DynamicImage, ImageBuffer, ImageFormat, Luma, Rgb};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::FieldND;
use crate::riesznd::require_2d;
use crate::spectra::{apply_multiplier, frequency_grid, Multiplier};

/// In-memory raster with 1 (gray) or 3 (RGB) channels and values in
/// [0, 1], interleaved row-major.
#[derive(Debug, Clone)]
pub struct RasterImage {
    height: usize,
    width: usize,
    channels: usize,
    values: Vec<f64>,
}

impl RasterImage {
    pub fn new(height: usize, width: usize, channels: usize, values: Vec<f64>) -> Result<Self> {
        if height == 0 || width == 0 {
            return Err(Error::invalid("image dimensions must be at least 1x1"));
        }
        if channels != 1 && channels != 3 {
            return Err(Error::invalid(format!(
                "unsupported channel count {channels}; expected 1 or 3"
            )));
        }
        if values.len() != height * width * channels {
            return Err(Error::invalid(format!(
                "value count {} does not match {height}x{width}x{channels}",
                values.len()
            )));
        }
        if !values.iter().all(|v| v.is_finite() && (0.0..=1.0).contains(v)) {
            return Err(Error::invalid("image values must lie in [0, 1]"));
        }
        Ok(Self {
            height,
            width,
            channels,
            values,
        })
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn channels(&self) -> usize {
        self.channels
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value(&self, row: usize, col: usize, channel: usize) -> f64 {
        self.values[(row * self.width + col) * self.channels + channel]
    }
}

/// Collapse an image to a 2D luminance field with the BT.601 weights
/// 0.299 R + 0.587 G + 0.114 B; single-channel images pass through.
pub fn to_grayscale(img: &RasterImage) -> Result<FieldND> {
    let (h, w) = (img.height(), img.width());
    match img.channels() {
        1 => Ok(FieldND::from_raw(vec![h, w], img.values().to_vec())),
        3 => {
            let mut values = Vec::with_capacity(h * w);
            for px in img.values().chunks_exact(3) {
                values.push(0.299 * px[0] + 0.587 * px[1] + 0.114 * px[2]);
            }
            Ok(FieldND::from_raw(vec![h, w], values))
        }
        c => Err(Error::invalid(format!("unsupported channel count {c}"))),
    }
}

/// Multiply a field pointwise by a positive factor.
pub fn scale_intensity(f: &FieldND, lambda: f64) -> Result<FieldND> {
    if !(lambda.is_finite() && lambda > 0.0) {
        return Err(Error::invalid(format!(
            "intensity factor must be positive and finite, got {lambda}"
        )));
    }
    let values = f.values().iter().map(|v| lambda * v).collect();
    Ok(FieldND::from_raw(f.shape().to_vec(), values))
}

/// Load a PNG (or any other decodable lossless raster) as gray or RGB.
pub fn load_image(path: &Path) -> Result<RasterImage> {
    let img = image::open(path).map_err(|e| match e {
        image::ImageError::IoError(source) => Error::Io {
            path: path.to_path_buf(),
            source,
        },
        other => Error::Image {
            path: path.to_path_buf(),
            message: other.to_string(),
        },
    })?;
    let (w, h) = (img.width() as usize, img.height() as usize);
    match img {
        DynamicImage::ImageLuma8(buf) => {
            let values = buf.pixels().map(|p| p.0[0] as f64 / 255.0).collect();
            RasterImage::new(h, w, 1, values)
        }
        DynamicImage::ImageLuma16(buf) => {
            let values = buf.pixels().map(|p| p.0[0] as f64 / 65535.0).collect();
            RasterImage::new(h, w, 1, values)
        }
        DynamicImage::ImageRgb8(buf) => {
            let values = buf
                .pixels()
                .flat_map(|p| p.0.iter().map(|&c| c as f64 / 255.0).collect::<Vec<_>>())
                .collect();
            RasterImage::new(h, w, 3, values)
        }
        DynamicImage::ImageRgb16(buf) => {
            let values = buf
                .pixels()
                .flat_map(|p| p.0.iter().map(|&c| c as f64 / 65535.0).collect::<Vec<_>>())
                .collect();
            RasterImage::new(h, w, 3, values)
        }
        other => Err(Error::Image {
            path: path.to_path_buf(),
            message: format!("unsupported pixel layout {:?}", other.color()),
        }),
    }
}

/// Write an image as PNG: 16-bit for grayscale, 8-bit for RGB.
pub fn save_image(img: &RasterImage, path: &Path) -> Result<()> {
    let (h, w) = (img.height() as u32, img.width() as u32);
    let result = match img.channels() {
        1 => {
            let buf = ImageBuffer::<Luma<u16>, Vec<u16>>::from_fn(w, h, |x, y| {
                let v = img.value(y as usize, x as usize, 0);
                Luma([(v * 65535.0).round() as u16])
            });
            buf.save_with_format(path, ImageFormat::Png)
        }
        _ => {
            let buf = ImageBuffer::<Rgb<u8>, Vec<u8>>::from_fn(w, h, |x, y| {
                Rgb([
                    (img.value(y as usize, x as usize, 0) * 255.0).round() as u8,
                    (img.value(y as usize, x as usize, 1) * 255.0).round() as u8,
                    (img.value(y as usize, x as usize, 2) * 255.0).round() as u8,
                ])
            });
            buf.save_with_format(path, ImageFormat::Png)
        }
    };
    result.map_err(|e| match e {
        image::ImageError::IoError(source) => Error::Io {
            path: path.to_path_buf(),
            source,
        },
        other => Error::Image {
            path: path.to_path_buf(),
            message: other.to_string(),
        },
    })
}

/// Normalize a 2D field to [0, 1] for export: min-max scaling, with a
/// constant field mapping to all zeros.
pub fn field_to_gray_image(f: &FieldND) -> Result<RasterImage> {
    let (h, w) = require_2d(f, "image export")?;
    let lo = f.values().iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = f.values().iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let span = hi - lo;
    let values = if span > 0.0 {
        f.values().iter().map(|v| (v - lo) / span).collect()
    } else {
        vec![0.0; f.len()]
    };
    RasterImage::new(h, w, 1, values)
}

/// Write a numeric matrix as plain text: one row per line, values
/// space-separated, given in row-major order.
pub fn save_matrix(path: &Path, rows: usize, cols: usize, values: &[f64]) -> Result<()> {
    if values.len() != rows * cols {
        return Err(Error::invalid(format!(
            "matrix value count {} does not match {rows}x{cols}",
            values.len()
        )));
    }
    let mut text = String::new();
    for r in 0..rows {
        for c in 0..cols {
            if c > 0 {
                text.push(' ');
            }
            let _ = write!(text, "{}", values[r * cols + c]);
        }
        text.push('\n');
    }
    std::fs::write(path, text).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Read a plain-text matrix written by [`save_matrix`].
pub fn load_matrix(path: &Path) -> Result<(usize, usize, Vec<f64>)> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let mut values = Vec::new();
    let mut cols = None;
    let mut rows = 0;
    for (lineno, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let row: Vec<f64> = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<f64>().map_err(|_| {
                    Error::invalid(format!(
                        "non-numeric token {tok:?} at line {} of {}",
                        lineno + 1,
                        path.display()
                    ))
                })
            })
            .collect::<Result<_>>()?;
        match cols {
            None => cols = Some(row.len()),
            Some(c) if c != row.len() => {
                return Err(Error::invalid(format!(
                    "ragged matrix row at line {} of {}",
                    lineno + 1,
                    path.display()
                )))
            }
            _ => {}
        }
        values.extend(row);
        rows += 1;
    }
    let cols = cols.ok_or_else(|| Error::invalid(format!("empty matrix file {}", path.display())))?;
    Ok((rows, cols, values))
}

/// Families of deterministic synthetic test textures.
#[derive(Debug, Clone, PartialEq)]
pub enum TextureKind {
    /// cos(2π(k1·row/H + k2·col/W)); integer k values put the wave on an
    /// exact DFT bin.
    PlaneWave { k1: f64, k2: f64 },
    /// Sum of randomly placed signed Gaussian bumps — smooth and mildly
    /// anisotropic.
    GaussianBlobs {
        count: usize,
        sigma_min: f64,
        sigma_max: f64,
    },
    /// White noise restricted to spatial frequencies |xi| <= cutoff
    /// (cycles/sample), then normalized to zero mean and unit RMS.
    FilteredNoise { cutoff: f64 },
}

/// Deterministic synthetic texture; the same (kind, size, seed) always
/// produces the same field.
pub fn synth_texture(height: usize, width: usize, kind: &TextureKind, seed: u64) -> Result<FieldND> {
    if height == 0 || width == 0 {
        return Err(Error::invalid("texture dimensions must be at least 1x1"));
    }
    match kind {
        TextureKind::PlaneWave { k1, k2 } => {
            if !(k1.is_finite() && k2.is_finite()) {
                return Err(Error::invalid("plane wave frequencies must be finite"));
            }
            FieldND::from_fn_2d(height, width, |i, j| {
                (std::f64::consts::TAU * (k1 * i as f64 / height as f64 + k2 * j as f64 / width as f64))
                    .cos()
            })
        }
        TextureKind::GaussianBlobs {
            count,
            sigma_min,
            sigma_max,
        } => {
            if *count == 0 {
                return Err(Error::invalid("blob count must be at least 1"));
            }
            if !(sigma_min.is_finite() && sigma_max.is_finite())
                || *sigma_min <= 0.0
                || sigma_max < sigma_min
            {
                return Err(Error::invalid(
                    "blob widths must satisfy 0 < sigma_min <= sigma_max",
                ));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut values = vec![0.0; height * width];
            for _ in 0..*count {
                let ci = rng.random::<f64>() * height as f64;
                let cj = rng.random::<f64>() * width as f64;
                let sigma = sigma_min + rng.random::<f64>() * (sigma_max - sigma_min);
                let amp = rng.random::<f64>() * 2.0 - 1.0;
                let inv = 1.0 / (2.0 * sigma * sigma);
                for i in 0..height {
                    let di = i as f64 - ci;
                    for j in 0..width {
                        let dj = j as f64 - cj;
                        values[i * width + j] += amp * (-(di * di + dj * dj) * inv).exp();
                    }
                }
            }
            FieldND::new(vec![height, width], values)
        }
        TextureKind::FilteredNoise { cutoff } => {
            if !(cutoff.is_finite() && *cutoff > 0.0) {
                return Err(Error::invalid("noise cutoff must be positive"));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let noise: Vec<f64> = (0..height * width)
                .map(|_| rng.random::<f64>() * 2.0 - 1.0)
                .collect();
            let field = FieldND::new(vec![height, width], noise)?;
            let grid = frequency_grid(field.shape())?;
            let mut mvals = Vec::with_capacity(field.len());
            for &fr in grid.freq_axis(0) {
                for &fc in grid.freq_axis(1) {
                    let keep = (fr * fr + fc * fc).sqrt() <= *cutoff;
                    mvals.push(if keep {
                        Complex64::new(1.0, 0.0)
                    } else {
                        Complex64::new(0.0, 0.0)
                    });
                }
            }
            let m = Multiplier::new(field.shape().to_vec(), mvals)?;
            let filtered = apply_multiplier(&field, &m)?;
            let n = filtered.len() as f64;
            let mean = filtered.values().iter().sum::<f64>() / n;
            let var = filtered
                .values()
                .iter()
                .map(|v| (v - mean) * (v - mean))
                .sum::<f64>()
                / n;
            if var == 0.0 {
                return Err(Error::degenerate(
                    "filtered noise is constant; increase the cutoff or grid size",
                ));
            }
            let inv_rms = 1.0 / var.sqrt();
            let values = filtered.values().iter().map(|v| (v - mean) * inv_rms).collect();
            Ok(FieldND::from_raw(vec![height, width], values))
        }
    }
}
