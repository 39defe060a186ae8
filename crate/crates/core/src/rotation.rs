//! Rotation estimation between two images by matching their Riesz vector
//! fields.
//!
//! Rotating an image rotates its Riesz transform as a vector field: the
//! components are spatially rotated and then mixed by the transposed
//! rotation matrix. The estimator exploits this: it computes both Riesz
//! fields once, rotates the reference field through a grid of candidate
//! angles, and scores each against the target field with a normalized
//! cross-correlation over the shared inscribed circle. Rotating the
//! reference (never the target) keeps interpolation error on one operand,
//! so an exactly-rotated target is compared symmetrically at the true
//! angle.

use crate::error::{Error, Result};
use crate::field::FieldND;
use crate::riesznd::{require_2d, riesz_transform, RieszField};

/// Result of an angle sweep: the best angle, its score, and the full
/// score-versus-angle curve.
#[derive(Debug, Clone)]
pub struct RotationEstimate {
    /// Best-matching angle in degrees, in [0, 360).
    pub angle_deg: f64,
    /// Normalized cross-correlation at the best angle, in [-1, 1].
    pub score: f64,
    /// (angle_deg, score) for every angle on the sweep grid.
    pub curve: Vec<(f64, f64)>,
}

/// Zero an image outside its inscribed circle (center = image center,
/// radius = half the smaller side). Returns the masked field together
/// with the keep-mask.
pub fn circular_mask(f: &FieldND) -> Result<(FieldND, Vec<bool>)> {
    let (h, w) = require_2d(f, "circular mask")?;
    let cr = (h as f64 - 1.0) / 2.0;
    let cc = (w as f64 - 1.0) / 2.0;
    let radius = h.min(w) as f64 / 2.0;
    let r2 = radius * radius;
    let mut values = Vec::with_capacity(h * w);
    let mut mask = Vec::with_capacity(h * w);
    for i in 0..h {
        let di = i as f64 - cr;
        for j in 0..w {
            let dj = j as f64 - cc;
            let keep = di * di + dj * dj <= r2;
            mask.push(keep);
            values.push(if keep { f.at2(i, j) } else { 0.0 });
        }
    }
    Ok((FieldND::from_raw(vec![h, w], values), mask))
}

/// Rotate a 2D field about the image center. Bilinear interpolation,
/// zeros outside the domain; multiples of 90 degrees on square grids use
/// the exact index permutation instead.
pub fn rotate_field(f: &FieldND, angle_deg: f64) -> Result<FieldND> {
    let (h, w) = require_2d(f, "rotation")?;
    if !angle_deg.is_finite() {
        return Err(Error::invalid("rotation angle must be finite"));
    }
    if h == w {
        let quarters = angle_deg / 90.0;
        if (quarters - quarters.round()).abs() < 1e-12 {
            return Ok(rotate_square_quarters(f, quarters.round() as i64));
        }
    }
    let (sin_t, cos_t) = angle_deg.to_radians().sin_cos();
    let cr = (h as f64 - 1.0) / 2.0;
    let cc = (w as f64 - 1.0) / 2.0;
    let vals = f.values();
    let mut out = vec![0.0; h * w];
    for i in 0..h {
        let di = i as f64 - cr;
        for j in 0..w {
            let dj = j as f64 - cc;
            let src_r = cr + cos_t * di - sin_t * dj;
            let src_c = cc + sin_t * di + cos_t * dj;
            out[i * w + j] = bilinear(vals, h, w, src_r, src_c);
        }
    }
    Ok(FieldND::from_raw(vec![h, w], out))
}

fn rotate_square_quarters(f: &FieldND, quarters: i64) -> FieldND {
    let n = f.rows();
    let q = quarters.rem_euclid(4);
    if q == 0 {
        return f.clone();
    }
    let vals = f.values();
    let mut out = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            out[i * n + j] = match q {
                1 => vals[(n - 1 - j) * n + i],
                2 => vals[(n - 1 - i) * n + (n - 1 - j)],
                _ => vals[j * n + (n - 1 - i)],
            };
        }
    }
    FieldND::from_raw(vec![n, n], out)
}

fn bilinear(vals: &[f64], h: usize, w: usize, r: f64, c: f64) -> f64 {
    if r < 0.0 || c < 0.0 || r > (h - 1) as f64 || c > (w - 1) as f64 {
        return 0.0;
    }
    let r0 = r.floor() as usize;
    let c0 = c.floor() as usize;
    let r1 = (r0 + 1).min(h - 1);
    let c1 = (c0 + 1).min(w - 1);
    let fr = r - r0 as f64;
    let fc = c - c0 as f64;
    let v00 = vals[r0 * w + c0];
    let v01 = vals[r0 * w + c1];
    let v10 = vals[r1 * w + c0];
    let v11 = vals[r1 * w + c1];
    v00 * (1.0 - fr) * (1.0 - fc) + v01 * (1.0 - fr) * fc + v10 * fr * (1.0 - fc) + v11 * fr * fc
}

/// Rotate a 2D Riesz field: rotate each component spatially, then mix the
/// components pointwise by the transposed rotation matrix of the same
/// angle. This is the discrete form of the identity relating the Riesz
/// transform of a rotated image to the rotated Riesz transform.
pub fn rotate_riesz_field(rf: &RieszField, angle_deg: f64) -> Result<RieszField> {
    if rf.ndim() != 2 {
        return Err(Error::invalid(format!(
            "riesz field rotation requires 2 components, got {}",
            rf.ndim()
        )));
    }
    let r1 = rotate_field(rf.component(0), angle_deg)?;
    let r2 = rotate_field(rf.component(1), angle_deg)?;
    let (sin_t, cos_t) = angle_deg.to_radians().sin_cos();
    let out1: Vec<f64> = r1
        .values()
        .iter()
        .zip(r2.values())
        .map(|(&a, &b)| cos_t * a + sin_t * b)
        .collect();
    let out2: Vec<f64> = r1
        .values()
        .iter()
        .zip(r2.values())
        .map(|(&a, &b)| -sin_t * a + cos_t * b)
        .collect();
    let shape = rf.shape().to_vec();
    Ok(RieszField::from_components(vec![
        FieldND::from_raw(shape.clone(), out1),
        FieldND::from_raw(shape, out2),
    ]))
}

/// Estimate the rotation of `target` relative to `reference` by sweeping
/// the angle grid {0, step, 2*step, ...} below 360 degrees.
///
/// Both images are masked to the shared inscribed circle before their
/// Riesz fields are computed, so content outside the circle cannot affect
/// the estimate. Each candidate angle rotates the reference field and
/// scores the match as the inner product of the stacked two-component
/// vector fields over the masked points, divided by the product of their
/// norms. Ties break toward the smallest angle.
pub fn estimate_rotation(
    reference: &FieldND,
    target: &FieldND,
    step_deg: f64,
) -> Result<RotationEstimate> {
    let (h, w) = require_2d(reference, "rotation estimation")?;
    if reference.shape() != target.shape() {
        return Err(Error::invalid(format!(
            "image shapes differ: {:?} vs {:?}",
            reference.shape(),
            target.shape()
        )));
    }
    if h != w {
        return Err(Error::invalid(format!(
            "rotation estimation requires square images, got {h}x{w}"
        )));
    }
    if !(step_deg.is_finite() && step_deg > 0.0 && step_deg <= 90.0) {
        return Err(Error::invalid(format!(
            "angle step must satisfy 0 < step <= 90, got {step_deg}"
        )));
    }

    let (ref_masked, mask) = circular_mask(reference)?;
    let (tgt_masked, _) = circular_mask(target)?;
    let ref_riesz = riesz_transform(&ref_masked);
    let tgt_riesz = riesz_transform(&tgt_masked);

    let kept: Vec<usize> = mask
        .iter()
        .enumerate()
        .filter_map(|(i, &k)| k.then_some(i))
        .collect();

    let tgt_norm = stacked_norm(&tgt_riesz, &kept);
    let ref_norm = stacked_norm(&ref_riesz, &kept);
    if ref_norm == 0.0 || tgt_norm == 0.0 {
        return Err(Error::degenerate(
            "a masked image has a vanishing Riesz field; rotation is undefined",
        ));
    }

    let mut curve = Vec::new();
    let mut best_angle = 0.0;
    let mut best_score = f64::NEG_INFINITY;
    let mut k = 0u32;
    loop {
        let angle = k as f64 * step_deg;
        if angle >= 360.0 - 1e-9 {
            break;
        }
        let rotated = rotate_riesz_field(&ref_riesz, angle)?;
        let mut dot = 0.0;
        let mut rot_norm_sq = 0.0;
        for comp in 0..2 {
            let rv = rotated.component(comp).values();
            let tv = tgt_riesz.component(comp).values();
            for &idx in &kept {
                dot += rv[idx] * tv[idx];
                rot_norm_sq += rv[idx] * rv[idx];
            }
        }
        let denom = rot_norm_sq.sqrt() * tgt_norm;
        let score = if denom > 0.0 {
            (dot / denom).clamp(-1.0, 1.0)
        } else {
            0.0
        };
        curve.push((angle, score));
        if score > best_score {
            best_score = score;
            best_angle = angle;
        }
        k += 1;
    }
    Ok(RotationEstimate {
        angle_deg: best_angle,
        score: best_score,
        curve,
    })
}

fn stacked_norm(rf: &RieszField, kept: &[usize]) -> f64 {
    let mut acc = 0.0;
    for comp in rf.components() {
        let v = comp.values();
        for &idx in kept {
            acc += v[idx] * v[idx];
        }
    }
    acc.sqrt()
}
