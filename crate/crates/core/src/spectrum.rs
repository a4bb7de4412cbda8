//! Large-value sets: indices where `|f(x)| ≥ η · ‖f‖₂ / √N`.

use std::cmp::Ordering;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::signal::Signal;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectrumEntry {
    pub index: usize,
    pub magnitude: f64,
}

/// The large spectrum Γ of a signal at threshold η.
///
/// Entries are ordered by decreasing magnitude; equal magnitudes are ordered
/// by ascending index so that the greedy construction downstream is
/// reproducible.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Spectrum {
    n: usize,
    eta: f64,
    threshold_value: f64,
    gamma: Vec<SpectrumEntry>,
}

impl Spectrum {
    /// Builds a spectrum from explicit entries (indices reduced mod `n`),
    /// sorting them into greedy order. Used for hand-built instances.
    pub fn from_entries(
        n: usize,
        eta: f64,
        threshold_value: f64,
        entries: impl IntoIterator<Item = (usize, f64)>,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroModulus);
        }
        let mut gamma: Vec<SpectrumEntry> = entries
            .into_iter()
            .map(|(index, magnitude)| SpectrumEntry {
                index: index % n,
                magnitude,
            })
            .collect();
        sort_greedy_order(&mut gamma);
        Ok(Self {
            n,
            eta,
            threshold_value,
            gamma,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn threshold_value(&self) -> f64 {
        self.threshold_value
    }

    pub fn entries(&self) -> &[SpectrumEntry] {
        &self.gamma
    }

    pub fn len(&self) -> usize {
        self.gamma.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gamma.is_empty()
    }

    /// Indices in greedy order.
    pub fn indices(&self) -> Vec<usize> {
        self.gamma.iter().map(|e| e.index).collect()
    }

    /// Indices in ascending order.
    pub fn sorted_indices(&self) -> Vec<usize> {
        let mut v = self.indices();
        v.sort_unstable();
        v
    }
}

fn sort_greedy_order(gamma: &mut [SpectrumEntry]) {
    gamma.sort_by(|a, b| {
        b.magnitude
            .partial_cmp(&a.magnitude)
            .unwrap_or(Ordering::Equal)
            .then(a.index.cmp(&b.index))
    });
}

/// Extracts Γ = {x : |f(x)| ≥ η‖f‖_{L²(μ)}} from the values of `f` itself.
///
/// The comparison is inclusive and exact; no tolerance is applied at the
/// threshold.
pub fn large_spectrum(f: &Signal, eta: f64) -> Result<Spectrum> {
    if !(eta.is_finite() && eta > 0.0) {
        return Err(Error::InvalidEta(eta));
    }
    if f.is_zero() {
        return Err(Error::ZeroSignal);
    }
    let threshold_value = eta * f.norms().l2_mu;
    let mut gamma: Vec<SpectrumEntry> = f
        .values()
        .iter()
        .enumerate()
        .filter_map(|(index, z)| {
            let magnitude = z.norm();
            (magnitude >= threshold_value).then_some(SpectrumEntry { index, magnitude })
        })
        .collect();
    sort_greedy_order(&mut gamma);
    Ok(Spectrum {
        n: f.len(),
        eta,
        threshold_value,
        gamma,
    })
}
