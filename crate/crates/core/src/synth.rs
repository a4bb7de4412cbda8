//! Synthetic signals with controlled Fourier structure.
//!
//! All randomness comes from ChaCha8 seeded with [`SynthSpec::seed`]
//! (`rand_chacha::ChaCha8Rng::seed_from_u64`), so a spec always produces the
//! same samples bit for bit. Stream 0 drives the base signal; stream 1 drives
//! the additive noise of a mixture.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::signal::{inverse_dft, Signal};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SynthKind {
    /// `χ(kx) = exp(2πi·k·x/N)`.
    Character { frequency: usize },
    /// 1 at `position`, 0 elsewhere.
    Delta { position: usize },
    /// Spectrum supported on `frequencies` with the given magnitudes and
    /// seeded uniform phases.
    SparseFourier {
        frequencies: Vec<usize>,
        magnitudes: Vec<f64>,
    },
    /// Indicator function of a subset of Z_N.
    Indicator { subset: Vec<usize> },
    /// Standard circular complex Gaussian (E|z|² = 1), or real N(0, 1).
    GaussianNoise { real_only: bool },
    /// `base + noise_amplitude · noise`.
    Mixture {
        base: Box<SynthKind>,
        noise_amplitude: f64,
        real_only: bool,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SynthSpec {
    #[serde(flatten)]
    pub kind: SynthKind,
    pub n: usize,
    pub seed: u64,
}

impl SynthSpec {
    pub fn new(kind: SynthKind, n: usize, seed: u64) -> Self {
        Self { kind, n, seed }
    }
}

fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

/// Deterministic signal for `spec`.
pub fn generate(spec: &SynthSpec) -> Result<Signal> {
    if spec.n == 0 {
        return Err(invalid("n must be positive"));
    }
    let values = samples(&spec.kind, spec.n, spec.seed)?;
    Signal::new(values)
}

fn samples(kind: &SynthKind, n: usize, seed: u64) -> Result<Vec<Complex64>> {
    match kind {
        SynthKind::Character { frequency } => {
            if *frequency >= n {
                return Err(invalid(format!("frequency {frequency} not in Z_{n}")));
            }
            Ok((0..n)
                .map(|x| {
                    let t = (frequency * x) % n;
                    Complex64::from_polar(1.0, 2.0 * PI * t as f64 / n as f64)
                })
                .collect())
        }
        SynthKind::Delta { position } => {
            if *position >= n {
                return Err(invalid(format!("position {position} not in Z_{n}")));
            }
            let mut v = vec![Complex64::new(0.0, 0.0); n];
            v[*position] = Complex64::new(1.0, 0.0);
            Ok(v)
        }
        SynthKind::SparseFourier {
            frequencies,
            magnitudes,
        } => {
            if frequencies.is_empty() || frequencies.len() > n {
                return Err(invalid(format!(
                    "need 1 ≤ k ≤ {n} frequencies, got {}",
                    frequencies.len()
                )));
            }
            if magnitudes.len() != frequencies.len() {
                return Err(invalid("one magnitude per frequency is required"));
            }
            if magnitudes.iter().any(|m| !(m.is_finite() && *m >= 0.0)) {
                return Err(invalid("magnitudes must be finite and non-negative"));
            }
            let mut spectrum = vec![Complex64::new(0.0, 0.0); n];
            let mut seen = vec![false; n];
            let mut r = rng(seed, 0);
            for (&k, &m) in frequencies.iter().zip(magnitudes) {
                if k >= n {
                    return Err(invalid(format!("frequency {k} not in Z_{n}")));
                }
                if std::mem::replace(&mut seen[k], true) {
                    return Err(invalid(format!("duplicate frequency {k}")));
                }
                let phase: f64 = r.random::<f64>() * 2.0 * PI;
                spectrum[k] = Complex64::from_polar(m, phase);
            }
            let spectrum = Signal::new(spectrum)?;
            Ok(inverse_dft(&spectrum).values().to_vec())
        }
        SynthKind::Indicator { subset } => {
            let mut v = vec![Complex64::new(0.0, 0.0); n];
            for &a in subset {
                if a >= n {
                    return Err(invalid(format!("element {a} not in Z_{n}")));
                }
                if v[a].re != 0.0 {
                    return Err(invalid(format!("duplicate element {a}")));
                }
                v[a] = Complex64::new(1.0, 0.0);
            }
            Ok(v)
        }
        SynthKind::GaussianNoise { real_only } => Ok(noise(n, &mut rng(seed, 0), *real_only)),
        SynthKind::Mixture {
            base,
            noise_amplitude,
            real_only,
        } => {
            if !(noise_amplitude.is_finite() && *noise_amplitude >= 0.0) {
                return Err(invalid("noise amplitude must be finite and non-negative"));
            }
            let mut v = samples(base, n, seed)?;
            for (x, e) in v.iter_mut().zip(noise(n, &mut rng(seed, 1), *real_only)) {
                *x += e * *noise_amplitude;
            }
            Ok(v)
        }
    }
}

fn noise(n: usize, r: &mut ChaCha8Rng, real_only: bool) -> Vec<Complex64> {
    (0..n)
        .map(|_| {
            if real_only {
                Complex64::new(r.sample(StandardNormal), 0.0)
            } else {
                let re: f64 = r.sample(StandardNormal);
                let im: f64 = r.sample(StandardNormal);
                Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
            }
        })
        .collect()
}

/// A seeded uniformly random `size`-element subset of Z_N, ascending.
pub fn random_subset(n: usize, size: usize, seed: u64) -> Result<Vec<usize>> {
    if size > n {
        return Err(invalid(format!("cannot draw {size} elements from Z_{n}")));
    }
    let mut v = sample(&mut rng(seed, 0), n, size).into_vec();
    v.sort_unstable();
    Ok(v)
}

/// `k` distinct seeded frequencies with unit magnitudes.
pub fn equal_sparse_fourier(n: usize, k: usize, seed: u64) -> Result<SynthSpec> {
    let frequencies = random_subset(n, k, seed ^ 0x5eed)?;
    Ok(SynthSpec::new(
        SynthKind::SparseFourier {
            magnitudes: vec![1.0; frequencies.len()],
            frequencies,
        },
        n,
        seed,
    ))
}
