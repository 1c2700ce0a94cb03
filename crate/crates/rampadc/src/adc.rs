//! Cycle-accurate state machine for both converter architectures.
//!
//! A conversion spends `m_sample` cycles in the sample-and-hold window,
//! `k_count` cycles per register step while counting toward the quantized
//! target, and `n_finalize` cycles latching the result. The typical
//! architecture clears the register before counting, so it always climbs
//! from code 0; the proposed architecture keeps the last code and the
//! controller picks the counting direction from the sign of the difference,
//! so it pays only for the code distance. Counting stops at exact code
//! equality, which is well-defined because the target and the register live
//! on the same integer grid.
//!
//! All timing arithmetic is exact integer cycle counting. Normalized frame
//! time appears only at reporting boundaries (sampling instants and trace
//! readback).

use std::fmt;
use std::io::{self, Write};

use crate::signal::SignalSource;

/// Errors from converter configuration and trace readback.
#[derive(Debug, Clone, PartialEq)]
pub enum AdcError {
    /// A configuration field violates its invariant.
    InvalidConfig { what: String },
    /// A code exceeds the configuration's top code.
    CodeOutOfRange { code: u64, max: u64 },
    /// Readback time outside the unit frame.
    TimeOutOfRange { t: f64 },
    /// Readback from a trace with no completed conversions.
    EmptyTrace,
}

impl fmt::Display for AdcError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AdcError::InvalidConfig { what } => write!(f, "invalid ADC configuration: {what}"),
            AdcError::CodeOutOfRange { code, max } => {
                write!(f, "code {code} is outside [0, {max}]")
            }
            AdcError::TimeOutOfRange { t } => {
                write!(f, "time {t} is outside the unit frame [0, 1]")
            }
            AdcError::EmptyTrace => write!(f, "trace holds no completed conversions"),
        }
    }
}

impl std::error::Error for AdcError {}

/// Hardware parameters of one converter instance.
///
/// `bits` is the output width, `s_ref` the full-scale input, and
/// `clocks_per_frame` the clock rate expressed as cycles per unit frame.
/// `m_sample` (M) and `n_finalize` (N) are the fixed per-conversion overhead
/// cycles, together `L = M + N`; `k_count` (K) is the cycles spent per
/// register step. Defaults: `s_ref = 1`, `M = 2`, `N = 1`, `K = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct AdcConfig {
    bits: u32,
    s_ref: f64,
    clocks_per_frame: u64,
    m_sample: u64,
    n_finalize: u64,
    k_count: u64,
}

/// Bounds that keep every cycle sum comfortably inside `u64`.
const MAX_BITS: u32 = 32;
const MAX_OVERHEAD: u64 = 1 << 20;
const MAX_CLOCKS: u64 = 1 << 40;

impl AdcConfig {
    /// Configuration with the default overheads (M=2, N=1, K=1) and
    /// `s_ref = 1`.
    pub fn new(bits: u32, clocks_per_frame: u64) -> Result<Self, AdcError> {
        let cfg = Self {
            bits,
            s_ref: 1.0,
            clocks_per_frame,
            m_sample: 2,
            n_finalize: 1,
            k_count: 1,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Replace the overhead cycle counts M, N, and K.
    pub fn with_overheads(mut self, m: u64, n: u64, k: u64) -> Result<Self, AdcError> {
        self.m_sample = m;
        self.n_finalize = n;
        self.k_count = k;
        self.validate()?;
        Ok(self)
    }

    /// Replace the full-scale reference level.
    pub fn with_s_ref(mut self, s_ref: f64) -> Result<Self, AdcError> {
        self.s_ref = s_ref;
        self.validate()?;
        Ok(self)
    }

    fn validate(&self) -> Result<(), AdcError> {
        let fail = |what: String| Err(AdcError::InvalidConfig { what });
        if self.bits == 0 || self.bits > MAX_BITS {
            return fail(format!("bits {} must lie in 1..={MAX_BITS}", self.bits));
        }
        if !self.s_ref.is_finite() || self.s_ref <= 0.0 {
            return fail(format!(
                "s_ref {} must be a positive finite value",
                self.s_ref
            ));
        }
        if self.clocks_per_frame == 0 || self.clocks_per_frame > MAX_CLOCKS {
            return fail(format!(
                "clocks_per_frame {} must lie in 1..={MAX_CLOCKS}",
                self.clocks_per_frame
            ));
        }
        for (name, v) in [
            ("m_sample", self.m_sample),
            ("n_finalize", self.n_finalize),
            ("k_count", self.k_count),
        ] {
            if v == 0 || v > MAX_OVERHEAD {
                return fail(format!("{name} {v} must lie in 1..={MAX_OVERHEAD}"));
            }
        }
        Ok(())
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn s_ref(&self) -> f64 {
        self.s_ref
    }

    pub fn clocks_per_frame(&self) -> u64 {
        self.clocks_per_frame
    }

    pub fn m_sample(&self) -> u64 {
        self.m_sample
    }

    pub fn n_finalize(&self) -> u64 {
        self.n_finalize
    }

    pub fn k_count(&self) -> u64 {
        self.k_count
    }

    /// Total fixed overhead cycles per conversion, `L = M + N`.
    pub fn overhead_cycles(&self) -> u64 {
        self.m_sample + self.n_finalize
    }

    /// Top output code, `2^bits − 1`.
    pub fn max_code(&self) -> u64 {
        (1u64 << self.bits) - 1
    }

    /// One quantization step in amplitude, `s_ref / (2^bits − 1)`.
    pub fn lsb(&self) -> f64 {
        self.s_ref / self.max_code() as f64
    }

    /// Duration of one clock cycle in frames, `1 / clocks_per_frame`.
    pub fn tick(&self) -> f64 {
        1.0 / self.clocks_per_frame as f64
    }
}

/// Which controller drives the counting register.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Architecture {
    /// Register cleared to zero after every conversion; counts up from 0.
    Typical,
    /// Register retains the last code; counts up or down toward the target.
    Proposed,
}

impl fmt::Display for Architecture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Architecture::Typical => write!(f, "typical"),
            Architecture::Proposed => write!(f, "proposed"),
        }
    }
}

/// One completed conversion.
#[derive(Debug, Clone, PartialEq)]
pub struct ConversionRecord {
    /// Ordinal within the trace.
    pub index: u64,
    /// Clock cycle at which the sample-and-hold window opened.
    pub start_clock: u64,
    /// Clock cycle at which the output code latched; equals the next
    /// record's `start_clock`.
    pub end_clock: u64,
    /// Total cycles spent: `m_sample + k_count·steps + n_finalize`.
    pub cycles: u64,
    /// Held sample amplitude.
    pub sample_value: f64,
    /// Register code when counting began (always 0 for the typical
    /// architecture).
    pub start_code: u64,
    /// Latched output code, `quantize(sample_value)`.
    pub output_code: u64,
}

/// One frame's worth of conversions under a single configuration and
/// architecture.
#[derive(Debug, Clone, PartialEq)]
pub struct Trace {
    pub config: AdcConfig,
    pub architecture: Architecture,
    pub records: Vec<ConversionRecord>,
    /// Clock at which the last completed conversion ended (0 if none
    /// completed); the remainder of the frame held a discarded partial
    /// conversion.
    pub frame_clocks_used: u64,
}

impl Trace {
    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Zero-order-hold readback at normalized time `t`: the DAC value of the
    /// last code latched at or before `t`, and the power-on value `dac(0)`
    /// before the first conversion completes.
    pub fn reconstruct(&self, t: f64) -> Result<f64, AdcError> {
        if self.records.is_empty() {
            return Err(AdcError::EmptyTrace);
        }
        if !(0.0..=1.0).contains(&t) {
            return Err(AdcError::TimeOutOfRange { t });
        }
        let cpf = self.config.clocks_per_frame() as f64;
        let n = self
            .records
            .partition_point(|r| r.end_clock as f64 / cpf <= t);
        let code = if n == 0 {
            0
        } else {
            self.records[n - 1].output_code
        };
        dac(code, &self.config)
    }

    /// Write the trace as CSV: a fixed header, then one row per record with
    /// clocks as integers and amplitudes as decimal floats.
    pub fn write_csv<W: Write>(&self, w: &mut W) -> io::Result<()> {
        writeln!(
            w,
            "index,start_clock,end_clock,cycles,sample_value,start_code,output_code"
        )?;
        for r in &self.records {
            writeln!(
                w,
                "{},{},{},{},{},{},{}",
                r.index,
                r.start_clock,
                r.end_clock,
                r.cycles,
                r.sample_value,
                r.start_code,
                r.output_code
            )?;
        }
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut out = Vec::new();
        self.write_csv(&mut out)
            .expect("writing to a Vec cannot fail");
        String::from_utf8(out).expect("CSV output is ASCII")
    }
}

/// Quantize an amplitude onto the output grid:
/// `floor(clamp(s, 0, s_ref)·(2^bits − 1)/s_ref)`, clamped to the top code.
/// Total: out-of-range and non-finite inputs saturate. `s = s_ref` maps to
/// the top code exactly.
pub fn quantize(s: f64, cfg: &AdcConfig) -> u64 {
    let ratio = s.clamp(0.0, cfg.s_ref()) / cfg.s_ref();
    let code = (ratio * cfg.max_code() as f64).floor() as u64;
    code.min(cfg.max_code())
}

/// DAC output for a code: `code·s_ref/(2^bits − 1)`. `dac ∘ quantize` is
/// idempotent on codes.
pub fn dac(code: u64, cfg: &AdcConfig) -> Result<f64, AdcError> {
    if code > cfg.max_code() {
        return Err(AdcError::CodeOutOfRange {
            code,
            max: cfg.max_code(),
        });
    }
    Ok(code as f64 / cfg.max_code() as f64 * cfg.s_ref())
}

/// Cycles one conversion takes to reach `target_code`.
///
/// Typical: `M + K·target + N` (the start code is ignored; the register was
/// cleared). Proposed: `M + K·|target − start| + N`. Codes must be in range
/// for the configuration.
pub fn conversion_cost(
    arch: Architecture,
    start_code: u64,
    target_code: u64,
    cfg: &AdcConfig,
) -> u64 {
    let steps = match arch {
        Architecture::Typical => target_code,
        Architecture::Proposed => target_code.abs_diff(start_code),
    };
    cfg.m_sample() + cfg.k_count() * steps + cfg.n_finalize()
}

/// Run one frame: starting at clock 0 with the register at the power-on
/// value 0, repeatedly sample the signal at the first clock of the
/// sample-and-hold window, count to the quantized target, and emit a record.
/// A conversion still in flight when the frame ends is discarded.
///
/// Pure in `(sig, arch, cfg)`: identical inputs produce bit-identical
/// traces.
pub fn run_frame(sig: &SignalSource, arch: Architecture, cfg: &AdcConfig) -> Trace {
    let cpf = cfg.clocks_per_frame();
    let mut records = Vec::with_capacity(((cpf / cfg.overhead_cycles()).min(1 << 22)) as usize);
    let mut clock: u64 = 0;
    let mut register: u64 = 0; // power-on state
    loop {
        let t = clock as f64 / cpf as f64;
        let sample = sig
            .evaluate(t)
            .expect("sampling instants stay within the unit frame");
        let target = quantize(sample, cfg);
        let start_code = match arch {
            Architecture::Typical => 0,
            Architecture::Proposed => register,
        };
        let cycles = conversion_cost(arch, start_code, target, cfg);
        let end = clock + cycles;
        if end > cpf {
            break; // discard the partial conversion at the frame edge
        }
        records.push(ConversionRecord {
            index: records.len() as u64,
            start_clock: clock,
            end_clock: end,
            cycles,
            sample_value: sample,
            start_code,
            output_code: target,
        });
        register = target;
        clock = end;
    }
    Trace {
        config: cfg.clone(),
        architecture: arch,
        records,
        frame_clocks_used: clock,
    }
}
