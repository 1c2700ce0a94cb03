//! Figures of merit measured from simulated traces.
//!
//! Sample counts, the reconstruction-distortion measure, the minimum-clock
//! search behind the clock-frequency study, and the per-signal comparison
//! report pairing both architectures.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::adc::{dac, quantize, run_frame, AdcConfig, AdcError, Architecture, Trace};
use crate::signal::{SignalError, SignalSource};

/// Errors from trace measurements.
#[derive(Debug)]
pub enum MetricsError {
    /// The trace holds no completed conversions.
    EmptyTrace,
    /// The trace never reaches a steady tracking state with at least one
    /// further conversion to measure, so distortion is undefined.
    NoSteadyWindow,
    /// The distortion threshold must be positive.
    InvalidThreshold {
        value: f64,
    },
    /// The clock ladder is empty.
    EmptyLadder,
    /// The clock ladder must be strictly ascending.
    LadderNotAscending,
    Signal(SignalError),
    Adc(AdcError),
}

impl fmt::Display for MetricsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MetricsError::EmptyTrace => write!(f, "trace holds no completed conversions"),
            MetricsError::NoSteadyWindow => {
                write!(f, "trace has no steady tracking window to measure")
            }
            MetricsError::InvalidThreshold { value } => {
                write!(f, "distortion threshold must be positive, got {value}")
            }
            MetricsError::EmptyLadder => write!(f, "clock ladder is empty"),
            MetricsError::LadderNotAscending => {
                write!(f, "clock ladder must be strictly ascending")
            }
            MetricsError::Signal(e) => write!(f, "{e}"),
            MetricsError::Adc(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for MetricsError {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            MetricsError::Signal(e) => Some(e),
            MetricsError::Adc(e) => Some(e),
            _ => None,
        }
    }
}

impl From<SignalError> for MetricsError {
    fn from(e: SignalError) -> Self {
        MetricsError::Signal(e)
    }
}

impl From<AdcError> for MetricsError {
    fn from(e: AdcError) -> Self {
        MetricsError::Adc(e)
    }
}

/// Number of conversions completed within the frame.
pub fn count_samples(trace: &Trace) -> u64 {
    trace.records.len() as u64
}

/// First clock tick of the steady-state distortion window: the completion of
/// the first conversion whose output code equals the input's quantized value
/// at that same instant, i.e. the first time the register has actually
/// caught the signal. Everything before it is the power-on acquisition ramp
/// (the register starts at code 0 regardless of the input), which says
/// nothing about tracking quality. Falls back to the first completion when
/// the register never catches up within the frame.
fn steady_window_start(trace: &Trace, sig: &SignalSource) -> Option<u64> {
    let cpf = trace.config.clocks_per_frame() as f64;
    let locked = trace.records.iter().find(|r| {
        let t = r.end_clock as f64 / cpf;
        let now = sig
            .evaluate(t)
            .expect("record clocks stay within the frame");
        quantize(now, &trace.config) == r.output_code
    });
    match locked {
        Some(r) => Some(r.end_clock),
        None => trace.records.first().map(|r| r.end_clock),
    }
}

/// Root-mean-square reconstruction error in LSB units.
///
/// The zero-order-hold readback is compared against the input at every clock
/// tick of the steady-state window (see [`steady_window_start`]) through the
/// end of the frame, and the result is normalized by one quantization step.
/// The window must contain at least one further completed conversion;
/// otherwise the trace never settled and the measure is reported as
/// undefined rather than as a number dominated by the acquisition ramp.
pub fn distortion_rmse(trace: &Trace, sig: &SignalSource) -> Result<f64, MetricsError> {
    if trace.records.is_empty() {
        return Err(MetricsError::EmptyTrace);
    }
    let start = steady_window_start(trace, sig).expect("non-empty trace has a window start");
    let cpf = trace.config.clocks_per_frame();
    let settled = trace.records.iter().any(|r| r.end_clock > start);
    if !settled || start >= cpf {
        return Err(MetricsError::NoSteadyWindow);
    }

    let lsb = trace.config.lsb();
    let cpf_f = cpf as f64;
    let mut level = 0.0;
    let mut cursor = 0;
    let mut sum_sq = 0.0;
    for tick in start..cpf {
        while cursor < trace.records.len() && trace.records[cursor].end_clock <= tick {
            level = dac(trace.records[cursor].output_code, &trace.config)
                .expect("trace codes are in range");
            cursor += 1;
        }
        let t = tick as f64 / cpf_f;
        let err = (level - sig.evaluate(t)?) / lsb;
        sum_sq += err * err;
    }
    Ok((sum_sq / (cpf - start) as f64).sqrt())
}

/// One evaluated rung of the minimum-clock ladder.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LadderPoint {
    pub clocks_per_frame: u64,
    /// Steady-state RMSE in LSB, or `None` when the run never settled.
    pub rmse: Option<f64>,
}

/// Outcome of a minimum-clock search.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MinClockReport {
    pub threshold_lsb: f64,
    pub points: Vec<LadderPoint>,
    /// Smallest ladder value whose distortion met the threshold.
    pub minimum: Option<u64>,
}

/// Default search ladder: powers of two from 2^4 to 2^20 clocks per frame.
pub fn default_clock_ladder() -> Vec<u64> {
    (4..=20).map(|p| 1u64 << p).collect()
}

/// Find the smallest clocks-per-frame on `ladder` at which the architecture
/// tracks `sig` with steady-state distortion at or below `threshold_lsb`.
/// Every rung is evaluated so the full (clock, RMSE) curve can be reported.
pub fn min_clock_search(
    sig: &SignalSource,
    arch: Architecture,
    bits: u32,
    threshold_lsb: f64,
    ladder: &[u64],
) -> Result<MinClockReport, MetricsError> {
    if !threshold_lsb.is_finite() || threshold_lsb <= 0.0 {
        return Err(MetricsError::InvalidThreshold {
            value: threshold_lsb,
        });
    }
    if ladder.is_empty() {
        return Err(MetricsError::EmptyLadder);
    }
    if ladder.windows(2).any(|w| w[1] <= w[0]) {
        return Err(MetricsError::LadderNotAscending);
    }

    let mut points = Vec::with_capacity(ladder.len());
    for &clocks in ladder {
        let cfg = AdcConfig::new(bits, clocks)?;
        let trace = run_frame(sig, arch, &cfg);
        let rmse = match distortion_rmse(&trace, sig) {
            Ok(v) => Some(v),
            Err(MetricsError::EmptyTrace | MetricsError::NoSteadyWindow) => None,
            Err(e) => return Err(e),
        };
        points.push(LadderPoint {
            clocks_per_frame: clocks,
            rmse,
        });
    }
    let minimum = points
        .iter()
        .find(|p| p.rmse.is_some_and(|v| v <= threshold_lsb))
        .map(|p| p.clocks_per_frame);
    Ok(MinClockReport {
        threshold_lsb,
        points,
        minimum,
    })
}

/// Paired per-signal metrics for both architectures under one configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub signal_name: String,
    pub ns_typical: u64,
    pub ns_proposed: u64,
    pub mean_cycles_typical: f64,
    pub mean_cycles_proposed: f64,
    pub speed_up: f64,
    pub reduction_percent: f64,
    pub rmse_typical: f64,
    pub rmse_proposed: f64,
}

/// Run both architectures on `sig` under `cfg` and assemble the comparison
/// report. `speed_up` is the sample-count ratio and `reduction_percent` is
/// derived from it as `(1 − 1/speed_up)·100`, so the two fields are
/// consistent by construction.
pub fn compare(
    signal_name: &str,
    sig: &SignalSource,
    cfg: &AdcConfig,
) -> Result<ComparisonReport, MetricsError> {
    let typical = run_frame(sig, Architecture::Typical, cfg);
    let proposed = run_frame(sig, Architecture::Proposed, cfg);
    let ns_typical = count_samples(&typical);
    let ns_proposed = count_samples(&proposed);
    if ns_typical == 0 || ns_proposed == 0 {
        return Err(MetricsError::EmptyTrace);
    }
    let speed_up = ns_proposed as f64 / ns_typical as f64;
    Ok(ComparisonReport {
        signal_name: signal_name.to_string(),
        ns_typical,
        ns_proposed,
        mean_cycles_typical: typical.frame_clocks_used as f64 / ns_typical as f64,
        mean_cycles_proposed: proposed.frame_clocks_used as f64 / ns_proposed as f64,
        speed_up,
        reduction_percent: (1.0 - 1.0 / speed_up) * 100.0,
        rmse_typical: distortion_rmse(&typical, sig)?,
        rmse_proposed: distortion_rmse(&proposed, sig)?,
    })
}
