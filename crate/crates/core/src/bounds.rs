//! Chang-type ceilings on the size of a spanning set, divided by their
//! unknown absolute constants.
//!
//! With FR the Fourier ratio of `f`, η the threshold and natural logs:
//!
//! * simple bound (strong regime only, FR ≤ √N/e): `η⁻² FR² ln(N / FR²)`
//! * general bound: `η⁻² FR² ln N` (its constant is `C′ = C e⁻²`)
//! * log-norm bound on `f̂`: `η⁻² (‖f̂‖_p / ‖f̂‖₂)² ln N`, `p = ln N / (ln N − 1)`
//!
//! The constants themselves are never estimated.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::signal::{dft, fourier_ratio, strong_regime_limit, Signal};

/// Why the simple bound is or is not reported.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SimpleBoundStatus {
    Applied,
    OutsideStrongRegime,
    /// `FR² ≥ N`: the log factor is not positive.
    Degenerate,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundReport {
    pub n: usize,
    pub fr: f64,
    pub eta: f64,
    pub strong_regime: bool,
    pub bound_simple_over_c: Option<f64>,
    pub simple_bound_status: SimpleBoundStatus,
    pub bound_general_over_cprime: f64,
    /// Absent for N ≤ 2, where the log-norm exponent is undefined.
    pub bound_lognorm_over_c: Option<f64>,
}

/// `fr ≤ √n / e`, compared exactly.
pub fn regime_check(fr: f64, n: usize) -> bool {
    fr <= strong_regime_limit(n)
}

/// `η⁻² FR² ln(N / FR²)` with its applicability, from FR and N alone.
pub fn simple_bound_over_c(fr: f64, n: usize, eta: f64) -> (Option<f64>, SimpleBoundStatus) {
    if !regime_check(fr, n) {
        return (None, SimpleBoundStatus::OutsideStrongRegime);
    }
    let fr2 = fr * fr;
    let log_arg = n as f64 / fr2;
    if log_arg <= 1.0 {
        return (None, SimpleBoundStatus::Degenerate);
    }
    (
        Some(fr2 * log_arg.ln() / (eta * eta)),
        SimpleBoundStatus::Applied,
    )
}

/// `η⁻² FR² ln N`.
pub fn general_bound_over_cprime(fr: f64, n: usize, eta: f64) -> f64 {
    fr * fr * (n as f64).ln() / (eta * eta)
}

/// `η⁻² (‖f̂‖_p / ‖f̂‖₂)² ln N` for a precomputed spectrum `f̂`.
pub fn lognorm_bound_over_c(spectrum: &Signal, eta: f64) -> Option<f64> {
    let norms = spectrum.norms();
    let ratio = norms.lp_log? / norms.l2;
    Some(ratio * ratio * (spectrum.len() as f64).ln() / (eta * eta))
}

/// Bounds assembled from FR and N, without the log-norm term.
pub fn bound_report_from_fr(fr: f64, n: usize, eta: f64) -> Result<BoundReport> {
    if !(eta.is_finite() && eta > 0.0) {
        return Err(Error::InvalidEta(eta));
    }
    if n == 0 {
        return Err(Error::ZeroModulus);
    }
    let (bound_simple_over_c, simple_bound_status) = simple_bound_over_c(fr, n, eta);
    Ok(BoundReport {
        n,
        fr,
        eta,
        strong_regime: regime_check(fr, n),
        bound_simple_over_c,
        simple_bound_status,
        bound_general_over_cprime: general_bound_over_cprime(fr, n, eta),
        bound_lognorm_over_c: None,
    })
}

/// Full bound report for `f` at threshold `eta`.
pub fn bound_report(f: &Signal, eta: f64) -> Result<BoundReport> {
    let fr = fourier_ratio(f)?;
    let mut report = bound_report_from_fr(fr, f.len(), eta)?;
    report.bound_lognorm_over_c = lognorm_bound_over_c(&dft(f), eta);
    Ok(report)
}
