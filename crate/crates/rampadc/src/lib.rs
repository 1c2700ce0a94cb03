//! Behavioral simulator and analytic model of ramp-counter ADCs.
//!
//! A ramp-counter ADC converts by stepping a register until its DAC output
//! meets the held input sample. The conventional controller clears the
//! register to zero before every conversion, so the cost of a conversion
//! grows with the input amplitude. Because consecutive samples of a
//! continuous signal tend to sit close together, a controller that keeps the
//! register and counts up or down from the retained code pays only for the
//! *difference* between samples. This crate models both architectures
//! cycle-accurately, evaluates the closed-form timing and figure-of-merit
//! expressions for them, and measures the resulting speed-up on a set of
//! benchmark signals.
//!
//! Everything runs in a normalized frame: time spans `[0, 1]`, amplitudes
//! span `[0, s_ref]` (default `1.0`), and the clock is given as cycles per
//! frame. All timing is exact integer cycle counting; frame time shows up
//! only at reporting boundaries.
//!
//! Modules:
//! - [`signal`] — benchmark input signals (DC, sine, exponential, tables,
//!   synthetic ECG).
//! - [`adc`] — the cycle-accurate state machine for both architectures.
//! - [`analytic`] — closed-form conversion-time and figure-of-merit
//!   expressions, usable as an independent oracle for the simulator.
//! - [`metrics`] — sample counts, reconstruction distortion, the
//!   minimum-clock search, and paired comparison reports.

pub mod adc;
pub mod analytic;
pub mod metrics;
pub mod signal;

pub use adc::{
    conversion_cost, dac, quantize, run_frame, AdcConfig, AdcError, Architecture, ConversionRecord,
    Trace,
};
pub use metrics::{compare, count_samples, distortion_rmse, min_clock_search, ComparisonReport};
pub use signal::{SignalError, SignalSource};
