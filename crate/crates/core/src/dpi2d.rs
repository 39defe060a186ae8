//! The divergence phase index: pointwise phase-difference vectors and
//! norms, region means, blockwise matrices over uniform partitions, and
//! elbow-method binarization.
//!
//! Component differences are wrapped to (-π, π] before the norm is taken;
//! unwrapped differences would make the norm depend on branch cuts.
//! Blockwise comparison applies the transforms to each block restriction
//! independently (periodization per block), which makes cells independent:
//! blocks with identical restrictions score exactly zero.

use crate::angle::wrap_to_pi;
use crate::error::{Error, Result};
use crate::field::FieldND;
use crate::riesznd::{phase_vector, require_2d, PhaseVectorField};

/// Pixel rectangle of one partition cell, half-open bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockBounds {
    pub row_start: usize,
    pub row_end: usize,
    pub col_start: usize,
    pub col_end: usize,
}

impl BlockBounds {
    pub fn height(&self) -> usize {
        self.row_end - self.row_start
    }

    pub fn width(&self) -> usize {
        self.col_end - self.col_start
    }
}

/// ns-by-ns grid of nonnegative mean phase-difference values, one per
/// partition cell, with the pixel bounds of every cell.
#[derive(Debug, Clone)]
pub struct DPIMatrix {
    ns: usize,
    values: Vec<f64>,
    block_bounds: Vec<BlockBounds>,
}

impl DPIMatrix {
    pub fn ns(&self) -> usize {
        self.ns
    }

    /// Row-major cell values.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.ns + j]
    }

    /// Row-major cell rectangles.
    pub fn block_bounds(&self) -> &[BlockBounds] {
        &self.block_bounds
    }
}

/// Boolean significance mask over a [`DPIMatrix`], true where the cell
/// value strictly exceeds the recorded threshold.
#[derive(Debug, Clone)]
pub struct BinaryMask {
    ns: usize,
    flags: Vec<bool>,
    threshold: f64,
}

impl BinaryMask {
    pub fn ns(&self) -> usize {
        self.ns
    }

    pub fn flags(&self) -> &[bool] {
        &self.flags
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.flags[i * self.ns + j]
    }

    pub fn threshold(&self) -> f64 {
        self.threshold
    }
}

/// Wrapped per-axis phase differences between two fields of equal shape.
pub fn dpi_vector_field(f: &FieldND, g: &FieldND) -> Result<PhaseVectorField> {
    check_shapes(f, g)?;
    let pf = phase_vector(f);
    let pg = phase_vector(g);
    let components = pf
        .components()
        .iter()
        .zip(pg.components())
        .map(|(a, b)| {
            let values = a
                .values()
                .iter()
                .zip(b.values())
                .map(|(&x, &y)| wrap_to_pi(x - y))
                .collect();
            FieldND::from_raw(f.shape().to_vec(), values)
        })
        .collect();
    Ok(PhaseVectorField::from_components(components))
}

/// Pointwise Euclidean norm of the wrapped phase-difference vector.
pub fn dpi_norm_field(f: &FieldND, g: &FieldND) -> Result<FieldND> {
    let diff = dpi_vector_field(f, g)?;
    let mut norms = vec![0.0; f.len()];
    for component in diff.components() {
        for (n, &d) in norms.iter_mut().zip(component.values()) {
            *n += d * d;
        }
    }
    for n in norms.iter_mut() {
        *n = n.sqrt();
    }
    Ok(FieldND::from_raw(f.shape().to_vec(), norms))
}

/// Mean of the pointwise phase-difference norm over the whole grid.
pub fn mean_dpi(f: &FieldND, g: &FieldND) -> Result<f64> {
    let norm = dpi_norm_field(f, g)?;
    Ok(norm.values().iter().sum::<f64>() / norm.len() as f64)
}

/// Uniform ns-by-ns partition of a height-by-width image. Cell side
/// lengths differ by at most one; remainder pixels go to the leading
/// blocks. Returned row-major.
pub fn partition_blocks(height: usize, width: usize, ns: usize) -> Result<Vec<BlockBounds>> {
    if ns == 0 {
        return Err(Error::invalid("partition count must be at least 1"));
    }
    if ns > height.min(width) {
        return Err(Error::invalid(format!(
            "partition count {ns} exceeds the smaller image side {}",
            height.min(width)
        )));
    }
    let rows = split_axis(height, ns);
    let cols = split_axis(width, ns);
    let mut bounds = Vec::with_capacity(ns * ns);
    for &(r0, r1) in &rows {
        for &(c0, c1) in &cols {
            bounds.push(BlockBounds {
                row_start: r0,
                row_end: r1,
                col_start: c0,
                col_end: c1,
            });
        }
    }
    Ok(bounds)
}

fn split_axis(len: usize, ns: usize) -> Vec<(usize, usize)> {
    let base = len / ns;
    let rem = len % ns;
    let mut edges = Vec::with_capacity(ns);
    let mut start = 0;
    for k in 0..ns {
        let size = base + usize::from(k < rem);
        edges.push((start, start + size));
        start += size;
    }
    edges
}

/// Blockwise divergence phase index: cell (i, j) is the mean
/// phase-difference norm of the two fields restricted to partition cell
/// Q_ij, with transforms computed per block.
pub fn blockwise_dpi(f: &FieldND, g: &FieldND, ns: usize) -> Result<DPIMatrix> {
    check_shapes(f, g)?;
    let (h, w) = require_2d(f, "blockwise dpi")?;
    let block_bounds = partition_blocks(h, w, ns)?;
    let values = block_bounds
        .iter()
        .map(|b| {
            let fb = extract_block(f, b);
            let gb = extract_block(g, b);
            mean_dpi(&fb, &gb)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DPIMatrix {
        ns,
        values,
        block_bounds,
    })
}

fn extract_block(f: &FieldND, b: &BlockBounds) -> FieldND {
    let w = f.cols();
    let mut values = Vec::with_capacity(b.height() * b.width());
    for i in b.row_start..b.row_end {
        values.extend_from_slice(&f.values()[i * w + b.col_start..i * w + b.col_end]);
    }
    FieldND::from_raw(vec![b.height(), b.width()], values)
}

/// Elbow threshold over a value list: sort ascending, find the point of
/// maximum perpendicular distance to the chord from the first to the last
/// point of the sorted curve, and return the value there. Ties break
/// toward the smallest index (the more sensitive threshold). A list whose
/// spread is below 1e-12 returns its maximum, so that nothing is flagged
/// downstream.
pub fn elbow_threshold(values: &[f64]) -> Result<f64> {
    if values.len() < 2 {
        return Err(Error::invalid("elbow threshold needs at least 2 values"));
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::invalid("elbow threshold values must be finite"));
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let lo = sorted[0];
    let hi = sorted[sorted.len() - 1];
    if hi - lo < 1e-12 {
        return Ok(hi);
    }
    let span = (sorted.len() - 1) as f64;
    let rise = hi - lo;
    // distance to the chord is |cross((span, rise), (i, v - lo))| up to the
    // constant chord length, which cannot change the argmax
    let mut best_idx = 0;
    let mut best = f64::NEG_INFINITY;
    for (i, &v) in sorted.iter().enumerate() {
        let d = (span * (v - lo) - rise * i as f64).abs();
        if d > best {
            best = d;
            best_idx = i;
        }
    }
    Ok(sorted[best_idx])
}

/// Binarize a DPI matrix against its elbow threshold; flags are strict
/// exceedances.
pub fn binarize(m: &DPIMatrix) -> Result<BinaryMask> {
    let threshold = elbow_threshold(m.values())?;
    let flags = m.values().iter().map(|&v| v > threshold).collect();
    Ok(BinaryMask {
        ns: m.ns(),
        flags,
        threshold,
    })
}

fn check_shapes(f: &FieldND, g: &FieldND) -> Result<()> {
    if f.shape() != g.shape() {
        return Err(Error::invalid(format!(
            "field shapes differ: {:?} vs {:?}",
            f.shape(),
            g.shape()
        )));
    }
    Ok(())
}
