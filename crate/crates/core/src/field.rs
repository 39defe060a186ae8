//! Scalar fields on regular grids — the common currency of all transforms.

use crate::error::{Error, Result};

/// Real-valued scalar field on a regular grid of one to three axes,
/// stored row-major. Immutable after construction.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldND {
    shape: Vec<usize>,
    values: Vec<f64>,
}

impl FieldND {
    /// Highest supported dimensionality.
    pub const MAX_DIMS: usize = 3;

    /// Build a field, validating shape and finiteness.
    pub fn new(shape: Vec<usize>, values: Vec<f64>) -> Result<Self> {
        if shape.is_empty() || shape.len() > Self::MAX_DIMS {
            return Err(Error::invalid(format!(
                "field must have 1 to {} axes, got {}",
                Self::MAX_DIMS,
                shape.len()
            )));
        }
        if shape.contains(&0) {
            return Err(Error::invalid("every field axis must have at least one sample"));
        }
        let expected: usize = shape.iter().product();
        if values.len() != expected {
            return Err(Error::invalid(format!(
                "value count {} does not match shape {:?}",
                values.len(),
                shape
            )));
        }
        if !values.iter().all(|v| v.is_finite()) {
            return Err(Error::invalid("field values must be finite"));
        }
        Ok(Self { shape, values })
    }

    /// All-zero field of the given shape.
    pub fn zeros(shape: Vec<usize>) -> Result<Self> {
        let len = shape.iter().product();
        Self::new(shape, vec![0.0; len])
    }

    /// Build a 2D field from a per-pixel closure over (row, col).
    pub fn from_fn_2d(height: usize, width: usize, f: impl Fn(usize, usize) -> f64) -> Result<Self> {
        let mut values = Vec::with_capacity(height * width);
        for i in 0..height {
            for j in 0..width {
                values.push(f(i, j));
            }
        }
        Self::new(vec![height, width], values)
    }

    // Internal constructor for transform outputs that are finite by
    // construction.
    pub(crate) fn from_raw(shape: Vec<usize>, values: Vec<f64>) -> Self {
        debug_assert_eq!(values.len(), shape.iter().product::<usize>());
        debug_assert!(values.iter().all(|v| v.is_finite()));
        Self { shape, values }
    }

    pub fn ndim(&self) -> usize {
        self.shape.len()
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    /// Row count of a 2D field. Panics if the field is not 2D.
    pub fn rows(&self) -> usize {
        assert_eq!(self.ndim(), 2, "rows() requires a 2D field");
        self.shape[0]
    }

    /// Column count of a 2D field. Panics if the field is not 2D.
    pub fn cols(&self) -> usize {
        assert_eq!(self.ndim(), 2, "cols() requires a 2D field");
        self.shape[1]
    }

    /// Value at (row, col) of a 2D field.
    pub fn at2(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.cols() + j]
    }
}
