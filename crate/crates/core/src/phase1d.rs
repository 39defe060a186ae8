//! 1D instantaneous-phase analysis: Hilbert transform, phase series,
//! absolute/mean phase differences, ideal bandpass, and pairwise-channel
//! phase-difference matrices.
//!
//! The instantaneous phase of a signal is the four-quadrant angle of its
//! analytic companion `f + i*Hf`. A principal-branch arctangent of `Hf/f`
//! cannot produce a full-period linear phase for a pure cosine, so the
//! four-quadrant form is used throughout; where both `f` and `Hf` vanish
//! the phase is defined as 0.

use crate::angle::{phase_of, wrap_to_pi};
use crate::error::{Error, Result};
use crate::field::FieldND;
use crate::spectra::{apply_multiplier, frequency_grid, hilbert_multiplier, Multiplier};

/// Uniformly sampled real time series.
#[derive(Debug, Clone, PartialEq)]
pub struct Signal1D {
    samples: Vec<f64>,
    sample_rate_hz: f64,
}

impl Signal1D {
    pub fn new(samples: Vec<f64>, sample_rate_hz: f64) -> Result<Self> {
        if samples.len() < 2 {
            return Err(Error::invalid("signal must have at least 2 samples"));
        }
        if !samples.iter().all(|v| v.is_finite()) {
            return Err(Error::invalid("signal samples must be finite"));
        }
        if !(sample_rate_hz.is_finite() && sample_rate_hz > 0.0) {
            return Err(Error::invalid("sample rate must be positive and finite"));
        }
        Ok(Self {
            samples,
            sample_rate_hz,
        })
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn sample_rate_hz(&self) -> f64 {
        self.sample_rate_hz
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }
}

/// Phase values in radians, each in (-π, π].
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseSeries {
    values: Vec<f64>,
}

impl PhaseSeries {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// A set of equally long channels sharing one sample rate, with unique
/// labels.
#[derive(Debug, Clone)]
pub struct ChannelSet {
    channels: Vec<Signal1D>,
    labels: Vec<String>,
}

impl ChannelSet {
    pub fn new(channels: Vec<Signal1D>, labels: Vec<String>) -> Result<Self> {
        if channels.is_empty() {
            return Err(Error::invalid("channel set must not be empty"));
        }
        if channels.len() != labels.len() {
            return Err(Error::invalid(format!(
                "{} channels but {} labels",
                channels.len(),
                labels.len()
            )));
        }
        let len = channels[0].len();
        let rate = channels[0].sample_rate_hz();
        for (k, ch) in channels.iter().enumerate() {
            if ch.len() != len {
                return Err(Error::invalid(format!(
                    "channel {k} has {} samples, expected {len}",
                    ch.len()
                )));
            }
            if ch.sample_rate_hz() != rate {
                return Err(Error::invalid(format!(
                    "channel {k} has sample rate {} Hz, expected {rate} Hz",
                    ch.sample_rate_hz()
                )));
            }
        }
        for (a, la) in labels.iter().enumerate() {
            if labels[..a].contains(la) {
                return Err(Error::invalid(format!("duplicate channel label {la:?}")));
            }
        }
        Ok(Self { channels, labels })
    }

    pub fn channels(&self) -> &[Signal1D] {
        &self.channels
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.channels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.channels.is_empty()
    }
}

/// Symmetric nonnegative matrix of mean phase differences per channel
/// pair, zero diagonal, entries in [0, π].
#[derive(Debug, Clone)]
pub struct PairwiseDPIMatrix {
    labels: Vec<String>,
    values: Vec<f64>,
}

impl PairwiseDPIMatrix {
    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Row-major flat entries.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.size() + j]
    }
}

/// Hilbert transform via the -i*sign(frequency) spectral symbol.
///
/// The DC bin and (for even lengths) the Nyquist bin are zeroed, so the
/// output has zero mean and `hilbert(hilbert(f)) == -f` holds exactly on
/// signals without DC/Nyquist energy.
pub fn hilbert(f: &Signal1D) -> Signal1D {
    let n = f.len();
    let grid = frequency_grid(&[n]).expect("signal length is positive");
    let m = hilbert_multiplier(&grid).expect("grid is one-dimensional");
    let field = FieldND::from_raw(vec![n], f.samples().to_vec());
    let out = apply_multiplier(&field, &m).expect("shapes match by construction");
    Signal1D {
        samples: out.into_values(),
        sample_rate_hz: f.sample_rate_hz(),
    }
}

/// Instantaneous phase: the angle of the analytic signal `f + i*Hf` at
/// each sample, in (-π, π].
pub fn instantaneous_phase(f: &Signal1D) -> PhaseSeries {
    let h = hilbert(f);
    let values = f
        .samples()
        .iter()
        .zip(h.samples())
        .map(|(&v, &hv)| phase_of(v, hv))
        .collect();
    PhaseSeries { values }
}

/// Absolute instantaneous phase difference per sample, wrapped to [0, π].
pub fn phase_difference(f: &Signal1D, g: &Signal1D) -> Result<Vec<f64>> {
    check_compatible(f, g)?;
    let pf = instantaneous_phase(f);
    let pg = instantaneous_phase(g);
    Ok(pf
        .values()
        .iter()
        .zip(pg.values())
        .map(|(&a, &b)| wrap_to_pi(a - b).abs())
        .collect())
}

/// Arithmetic mean of the absolute phase difference, in [0, π].
pub fn mean_phase_difference(f: &Signal1D, g: &Signal1D) -> Result<f64> {
    let d = phase_difference(f, g)?;
    Ok(d.iter().sum::<f64>() / d.len() as f64)
}

/// Zero-phase ideal bandpass: spectrum bins with |frequency| in
/// [lo_hz, hi_hz] (inclusive on both edges) are kept, all others zeroed.
pub fn bandpass(f: &Signal1D, lo_hz: f64, hi_hz: f64) -> Result<Signal1D> {
    let rate = f.sample_rate_hz();
    if !(lo_hz.is_finite() && hi_hz.is_finite()) || lo_hz < 0.0 || lo_hz >= hi_hz || hi_hz > rate / 2.0 {
        return Err(Error::invalid(format!(
            "band [{lo_hz}, {hi_hz}] Hz is not within 0 <= lo < hi <= {}",
            rate / 2.0
        )));
    }
    let n = f.len();
    let grid = frequency_grid(&[n]).expect("signal length is positive");
    let values = grid
        .freq_axis(0)
        .iter()
        .map(|&fc| {
            let f_hz = fc.abs() * rate;
            if (lo_hz..=hi_hz).contains(&f_hz) {
                num_complex::Complex64::new(1.0, 0.0)
            } else {
                num_complex::Complex64::new(0.0, 0.0)
            }
        })
        .collect();
    let m = Multiplier::new(vec![n], values).expect("indicator bins are unit bounded");
    let field = FieldND::from_raw(vec![n], f.samples().to_vec());
    let out = apply_multiplier(&field, &m).expect("shapes match by construction");
    Ok(Signal1D {
        samples: out.into_values(),
        sample_rate_hz: rate,
    })
}

/// Mean phase difference for every channel pair after bandpass filtering.
///
/// Entry (i, j) equals `mean_phase_difference(bandpass(ch_i), bandpass(ch_j))`;
/// the diagonal is zero. Phases are computed once per channel.
pub fn pairwise_dpi_matrix(cs: &ChannelSet, lo_hz: f64, hi_hz: f64) -> Result<PairwiseDPIMatrix> {
    let c = cs.len();
    if c < 2 {
        return Err(Error::invalid("pairwise matrix needs at least 2 channels"));
    }
    let phases: Vec<PhaseSeries> = cs
        .channels()
        .iter()
        .map(|ch| Ok(instantaneous_phase(&bandpass(ch, lo_hz, hi_hz)?)))
        .collect::<Result<_>>()?;
    let n = cs.channels()[0].len() as f64;
    let mut values = vec![0.0; c * c];
    for i in 0..c {
        for j in (i + 1)..c {
            let sum: f64 = phases[i]
                .values()
                .iter()
                .zip(phases[j].values())
                .map(|(&a, &b)| wrap_to_pi(a - b).abs())
                .sum();
            let mean = sum / n;
            values[i * c + j] = mean;
            values[j * c + i] = mean;
        }
    }
    Ok(PairwiseDPIMatrix {
        labels: cs.labels().to_vec(),
        values,
    })
}

fn check_compatible(f: &Signal1D, g: &Signal1D) -> Result<()> {
    if f.len() != g.len() {
        return Err(Error::invalid(format!(
            "signal lengths differ: {} vs {}",
            f.len(),
            g.len()
        )));
    }
    if f.sample_rate_hz() != g.sample_rate_hz() {
        return Err(Error::invalid(format!(
            "sample rates differ: {} Hz vs {} Hz",
            f.sample_rate_hz(),
            g.sample_rate_hz()
        )));
    }
    Ok(())
}
