//! Complex signals on the cyclic group Z_N.
//!
//! The transform used throughout is the unitary DFT
//!
//! ```text
//! f̂(m) = N^{-1/2} Σ_x f(x) · exp(-2πi·x·m / N)
//! ```
//!
//! evaluated directly in O(N²). Lengths of interest (hundreds to a few
//! thousand samples, arbitrary factorisation) make the direct sum cheap, and
//! an exact integer reduction of `x·m mod N` into a twiddle table keeps the
//! result accurate to a few ulps per term.

use std::f64::consts::{E, PI};
use std::sync::OnceLock;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

/// A finite complex-valued function on Z_N.
#[derive(Debug, Clone)]
pub struct Signal {
    values: Vec<Complex64>,
    norms: OnceLock<NormSet>,
}

/// The p-norms of a signal used by the analysis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NormSet {
    /// `Σ |f(x)|`
    pub l1: f64,
    /// `(Σ |f(x)|²)^{1/2}`
    pub l2: f64,
    /// `l2 / √N`, the root-mean-square under the uniform probability measure.
    pub l2_mu: f64,
    /// `‖f‖_p` at `p = ln N / (ln N − 1)`; `None` for N ≤ 2.
    pub lp_log: Option<f64>,
}

impl Signal {
    pub fn new(values: Vec<Complex64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptySignal);
        }
        if let Some(index) = values
            .iter()
            .position(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::NonFinite { index });
        }
        Ok(Self {
            values,
            norms: OnceLock::new(),
        })
    }

    /// Real samples stored with zero imaginary part.
    pub fn from_real(values: &[f64]) -> Result<Self> {
        Self::new(values.iter().map(|&v| Complex64::new(v, 0.0)).collect())
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    /// Always false: a signal holds at least one sample.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn get(&self, x: usize) -> Complex64 {
        self.values[x]
    }

    /// Magnitudes `|f(x)|` in index order.
    pub fn magnitudes(&self) -> Vec<f64> {
        self.values.iter().map(|z| z.norm()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|z| z.re == 0.0 && z.im == 0.0)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn mean(&self) -> Complex64 {
        self.values.iter().sum::<Complex64>() / self.values.len() as f64
    }

    /// Norms of this signal, computed once and cached.
    pub fn norms(&self) -> NormSet {
        *self.norms.get_or_init(|| compute_norms(&self.values))
    }

    pub fn scale(&self, c: Complex64) -> Result<Signal> {
        Signal::new(self.values.iter().map(|z| z * c).collect())
    }

    /// Cyclic shift: `g(x) = f(x − shift mod N)`.
    pub fn shift(&self, shift: usize) -> Signal {
        let n = self.len();
        let mut values = self.values.clone();
        values.rotate_right(shift % n);
        Signal {
            values,
            norms: OnceLock::new(),
        }
    }

    fn from_trusted(values: Vec<Complex64>) -> Signal {
        Signal {
            values,
            norms: OnceLock::new(),
        }
    }
}

impl PartialEq for Signal {
    fn eq(&self, other: &Self) -> bool {
        self.values == other.values
    }
}

/// Exponent `ln N / (ln N − 1)` of the log-norm.
///
/// `None` when `ln N ≤ 1` (N ≤ 2): the exponent is then non-positive or
/// undefined and does not give a norm.
pub fn log_norm_exponent(n: usize) -> Option<f64> {
    let ln = (n as f64).ln();
    if ln <= 1.0 {
        return None;
    }
    Some(ln / (ln - 1.0))
}

fn compute_norms(values: &[Complex64]) -> NormSet {
    let n = values.len();
    let mut l1 = 0.0;
    let mut sq = 0.0;
    for z in values {
        let a = z.norm();
        l1 += a;
        sq += a * a;
    }
    let l2 = sq.sqrt();
    let lp_log = log_norm_exponent(n).map(|p| p_norm(values, p));
    NormSet {
        l1,
        l2,
        // sqrt(Σ/N) rather than l2/√N: exact for constant signals, so a
        // constant sits exactly on the η = 1 threshold.
        l2_mu: (sq / n as f64).sqrt(),
        lp_log,
    }
}

/// `(Σ |f(x)|^p)^{1/p}`.
pub fn p_norm(values: &[Complex64], p: f64) -> f64 {
    values
        .iter()
        .map(|z| z.norm().powf(p))
        .sum::<f64>()
        .powf(1.0 / p)
}

fn twiddles(n: usize, sign: f64) -> Vec<Complex64> {
    (0..n)
        .map(|j| {
            let (s, c) = (2.0 * PI * j as f64 / n as f64).sin_cos();
            Complex64::new(c, sign * s)
        })
        .collect()
}

fn transform(values: &[Complex64], sign: f64) -> Vec<Complex64> {
    let n = values.len();
    let table = twiddles(n, sign);
    let norm = 1.0 / (n as f64).sqrt();
    (0..n)
        .map(|m| {
            let mut acc = Complex64::new(0.0, 0.0);
            let mut idx = 0usize;
            for &v in values {
                acc += v * table[idx];
                idx += m;
                if idx >= n {
                    idx -= n;
                }
            }
            acc * norm
        })
        .collect()
}

/// Unitary forward transform `f̂(m) = N^{-1/2} Σ_x χ(−xm) f(x)`.
pub fn dft(f: &Signal) -> Signal {
    Signal::from_trusted(transform(&f.values, -1.0))
}

/// Inverse of [`dft`], using `χ(+xm)`.
pub fn inverse_dft(g: &Signal) -> Signal {
    Signal::from_trusted(transform(&g.values, 1.0))
}

/// Fourier ratio `‖f̂‖₁ / ‖f̂‖₂`, a value in `[1, √N]`.
pub fn fourier_ratio(f: &Signal) -> Result<f64> {
    if f.is_zero() {
        return Err(Error::ZeroSignal);
    }
    let spectrum = dft(f).norms();
    Ok(spectrum.l1 / spectrum.l2)
}

/// `f − mean(f)`.
pub fn mean_center(f: &Signal) -> Signal {
    let mean = f.mean();
    Signal::from_trusted(f.values.iter().map(|z| z - mean).collect())
}

/// `√N / e`, the largest Fourier ratio for which the sharper bound applies.
pub fn strong_regime_limit(n: usize) -> f64 {
    (n as f64).sqrt() / E
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn rejects_empty_and_non_finite() {
        assert!(matches!(Signal::new(vec![]), Err(Error::EmptySignal)));
        assert!(matches!(
            Signal::from_real(&[1.0, f64::NAN]),
            Err(Error::NonFinite { index: 1 })
        ));
        assert!(matches!(
            Signal::from_real(&[f64::INFINITY]),
            Err(Error::NonFinite { index: 0 })
        ));
    }

    #[test]
    fn delta_transforms_to_constant() {
        let f = Signal::from_real(&[1.0, 0.0, 0.0, 0.0]).unwrap();
        for v in dft(&f).values() {
            assert!(close(*v, c(0.5), 1e-15));
        }
    }

    #[test]
    fn constant_transforms_to_delta() {
        let f = Signal::from_real(&[1.0; 4]).unwrap();
        let expected = [c(2.0), c(0.0), c(0.0), c(0.0)];
        for (v, e) in dft(&f).values().iter().zip(expected) {
            assert!(close(*v, e, 1e-15));
        }
    }

    #[test]
    fn inverse_of_delta_spectrum() {
        let g = Signal::from_real(&[2.0, 0.0, 0.0, 0.0]).unwrap();
        for v in inverse_dft(&g).values() {
            assert!(close(*v, c(1.0), 1e-15));
        }
        let zeros = Signal::from_real(&[0.0; 8]).unwrap();
        assert!(inverse_dft(&zeros).values().iter().all(|z| *z == c(0.0)));
    }

    #[test]
    fn hand_norms() {
        let f = Signal::from_real(&[3.0, 4.0]).unwrap();
        let n = f.norms();
        assert_eq!(n.l1, 7.0);
        assert_eq!(n.l2, 5.0);
        assert!((n.l2_mu - 5.0 / 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn delta_norms_all_one() {
        for n in [3usize, 10, 64, 526] {
            let mut v = vec![0.0; n];
            v[0] = 1.0;
            let norms = Signal::from_real(&v).unwrap().norms();
            assert_eq!(norms.l1, 1.0);
            assert_eq!(norms.l2, 1.0);
            assert!((norms.lp_log.unwrap() - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn single_sample_has_no_log_norm() {
        let f = Signal::from_real(&[2.0]).unwrap();
        assert_eq!(f.norms().lp_log, None);
        assert_eq!(log_norm_exponent(1), None);
        assert_eq!(log_norm_exponent(2), None);
        assert!(log_norm_exponent(3).unwrap() > 2.0);
    }

    #[test]
    fn zero_signal_fourier_ratio_is_an_error() {
        let f = Signal::from_real(&[0.0; 5]).unwrap();
        assert!(matches!(fourier_ratio(&f), Err(Error::ZeroSignal)));
    }

    #[test]
    fn delta_and_character_extremes() {
        let mut v = vec![0.0; 16];
        v[5] = 1.0;
        let delta = Signal::from_real(&v).unwrap();
        assert!((fourier_ratio(&delta).unwrap() - 4.0).abs() < 1e-12);

        for k in [0usize, 1, 7, 15] {
            let chi = Signal::new(
                (0..16)
                    .map(|x| Complex64::from_polar(1.0, 2.0 * PI * (k * x) as f64 / 16.0))
                    .collect(),
            )
            .unwrap();
            assert!((fourier_ratio(&chi).unwrap() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn mean_centering() {
        let f = Signal::from_real(&[1.0, 2.0, 3.0]).unwrap();
        let g = mean_center(&f);
        for (v, e) in g.values().iter().zip([-1.0, 0.0, 1.0]) {
            assert!(close(*v, c(e), 1e-15));
        }
        let constant = Signal::from_real(&[5.0; 10]).unwrap();
        let z = mean_center(&constant);
        assert!(z.is_zero());
        assert!(fourier_ratio(&z).is_err());
    }

    #[test]
    fn shift_rotates_right() {
        let f = Signal::from_real(&[1.0, 2.0, 3.0, 4.0]).unwrap();
        let g = f.shift(1);
        assert_eq!(g.values()[0], c(4.0));
        assert_eq!(g.values()[1], c(1.0));
        assert_eq!(f.shift(5), g);
    }

    #[test]
    fn regime_limit_at_reference_sizes() {
        assert!((strong_regime_limit(526) - 8.4371).abs() < 1e-3);
        assert!((strong_regime_limit(1576) - 14.6046).abs() < 1e-3);
    }
}
