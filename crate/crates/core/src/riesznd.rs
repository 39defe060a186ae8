//! n-dimensional Riesz transforms, pointwise phase vectors, and steered
//! transforms.
//!
//! The Riesz transforms generalize the Hilbert transform: component `j`
//! applies the spectral symbol `-i * xi_j / |xi|`. The per-axis angle of
//! `(f, R_j f)` gives a pointwise phase vector whose differences between
//! two fields are the raw material of the divergence phase index.
//!
//! Two conventions worth knowing:
//! * where `R_j f = 0` and `f < 0` the phase component is π (not 0) — a
//!   direct consequence of the four-quadrant arctangent; phase
//!   differences between fields with matching sign patterns cancel it;
//! * energy at self-conjugate Nyquist bins (even axis lengths) is
//!   annihilated by the real-part step of the transform, so Parseval-type
//!   identities hold exactly only on fields free of such bins.

use crate::angle::{phase_of, wrap_to_pi};
use crate::error::{Error, Result};
use crate::field::FieldND;
use crate::spectra::{apply_multiplier, frequency_grid, riesz_multiplier};

/// The n components (R_1 f, ..., R_n f) of a field's Riesz transform.
#[derive(Debug, Clone)]
pub struct RieszField {
    components: Vec<FieldND>,
}

impl RieszField {
    pub(crate) fn from_components(components: Vec<FieldND>) -> Self {
        debug_assert!(!components.is_empty());
        debug_assert!(components.iter().all(|c| c.shape() == components[0].shape()));
        debug_assert_eq!(components.len(), components[0].ndim());
        Self { components }
    }

    pub fn components(&self) -> &[FieldND] {
        &self.components
    }

    pub fn component(&self, j: usize) -> &FieldND {
        &self.components[j]
    }

    pub fn ndim(&self) -> usize {
        self.components.len()
    }

    pub fn shape(&self) -> &[usize] {
        self.components[0].shape()
    }
}

/// Per-axis pointwise phases, each value in (-π, π].
#[derive(Debug, Clone)]
pub struct PhaseVectorField {
    components: Vec<FieldND>,
}

impl PhaseVectorField {
    pub(crate) fn from_components(components: Vec<FieldND>) -> Self {
        Self { components }
    }

    pub fn components(&self) -> &[FieldND] {
        &self.components
    }

    pub fn component(&self, j: usize) -> &FieldND {
        &self.components[j]
    }

    pub fn ndim(&self) -> usize {
        self.components.len()
    }

    pub fn shape(&self) -> &[usize] {
        self.components[0].shape()
    }
}

/// All n Riesz transform components of a field.
pub fn riesz_transform(f: &FieldND) -> RieszField {
    let grid = frequency_grid(f.shape()).expect("field shapes are valid grids");
    let components = (0..f.ndim())
        .map(|j| {
            let m = riesz_multiplier(j, &grid).expect("axis index is in range");
            apply_multiplier(f, &m).expect("shapes match by construction")
        })
        .collect();
    RieszField::from_components(components)
}

/// Pointwise phase vector: component `j` is the four-quadrant angle of
/// `(f, R_j f)` at each grid point, 0 where both vanish.
pub fn phase_vector(f: &FieldND) -> PhaseVectorField {
    let rf = riesz_transform(f);
    let components = rf
        .components()
        .iter()
        .map(|r| {
            let values = f
                .values()
                .iter()
                .zip(r.values())
                .map(|(&v, &rv)| phase_of(v, rv))
                .collect();
            FieldND::from_raw(f.shape().to_vec(), values)
        })
        .collect();
    PhaseVectorField::from_components(components)
}

/// Steered Riesz transform of a 2D field:
/// `cos(theta) * R_1 f + sin(theta) * R_2 f`.
pub fn steered_riesz(f: &FieldND, theta: f64) -> Result<FieldND> {
    require_2d(f, "steered riesz transform")?;
    let rf = riesz_transform(f);
    let (sin_t, cos_t) = theta.sin_cos();
    let values = rf
        .component(0)
        .values()
        .iter()
        .zip(rf.component(1).values())
        .map(|(&r1, &r2)| cos_t * r1 + sin_t * r2)
        .collect();
    Ok(FieldND::from_raw(f.shape().to_vec(), values))
}

/// Root-mean-square over the grid of the wrapped difference between the
/// steered phases of two 2D fields.
///
/// The steered phase of a field `h` is the angle of `(h, R_theta h)`.
/// RMS (rather than an unnormalized norm) makes the scalar independent of
/// grid size and comparable across images.
pub fn steered_phase_difference(f: &FieldND, g: &FieldND, theta: f64) -> Result<f64> {
    if f.shape() != g.shape() {
        return Err(Error::invalid(format!(
            "field shapes differ: {:?} vs {:?}",
            f.shape(),
            g.shape()
        )));
    }
    let sf = steered_riesz(f, theta)?;
    let sg = steered_riesz(g, theta)?;
    let mut acc = 0.0;
    for (((&fv, &sfv), &gv), &sgv) in f
        .values()
        .iter()
        .zip(sf.values())
        .zip(g.values())
        .zip(sg.values())
    {
        let d = wrap_to_pi(phase_of(fv, sfv) - phase_of(gv, sgv));
        acc += d * d;
    }
    Ok((acc / f.len() as f64).sqrt())
}

pub(crate) fn require_2d(f: &FieldND, what: &str) -> Result<(usize, usize)> {
    if f.ndim() != 2 {
        return Err(Error::invalid(format!(
            "{what} requires a 2D field, got {} axes",
            f.ndim()
        )));
    }
    Ok((f.shape()[0], f.shape()[1]))
}
