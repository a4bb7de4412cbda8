//! Additive structure of the large values of a time series.
//!
//! The pipeline: load a series ([`ingest`]), compute its Fourier ratio
//! ([`signal`]), extract the indices of its large values at a threshold η
//! ([`spectrum`]), build a small set Λ whose {-1,0,1}-combinations mod N
//! cover those indices ([`spanner`]), and compare |Λ| with the Chang-type
//! ceilings ([`bounds`]). [`report`] and [`figures`] turn η-sweeps into
//! JSON, markdown and SVG; [`synth`] generates test signals.

pub mod bounds;
pub mod error;
pub mod figures;
pub mod ingest;
pub mod report;
pub mod signal;
pub mod spanner;
pub mod spectrum;
pub mod synth;

pub use bounds::{bound_report, regime_check, BoundReport};
pub use error::{Error, Result};
pub use ingest::{load_series, ColumnRef, MissingPolicy, SeriesFile};
pub use report::{run_analyze, run_sweep, sweep_signal, AnalyzeReport, SweepReport, SweepRow};
pub use signal::{dft, fourier_ratio, inverse_dft, mean_center, NormSet, Signal};
pub use spanner::{greedy_span, minimal_lambda, verify_span, ReachSet, SpanResult};
pub use spectrum::{large_spectrum, Spectrum};
pub use synth::{generate, SynthKind, SynthSpec};

pub use num_complex::Complex64;
