//! Benchmark input signals.
//!
//! A [`SignalSource`] is a deterministic map from normalized time
//! `t ∈ [0, 1]` to an amplitude. The closed-form kinds (DC, sine,
//! exponential) produce values in `[0, 1]` by construction and evaluate
//! bit-identically on every call. Table kinds interpolate linearly between
//! knots and clamp to the nearest endpoint outside the knot range; file
//! loading rescales knot times affinely onto `[0, 1]` and min-max normalizes
//! amplitudes onto `[0, 1]`.

use std::f64::consts::{E, TAU};
use std::fmt;
use std::fs;
use std::path::Path;

/// Errors from signal construction, evaluation, and table loading.
#[derive(Debug)]
pub enum SignalError {
    /// Evaluation time outside the unit frame.
    TimeOutOfRange { t: f64 },
    /// Constructor parameters violate the signal's invariants.
    InvalidParams { what: String },
    /// Table file could not be read.
    Io(std::io::Error),
    /// Table file has a malformed record (1-based line number).
    TableParse { line: usize, what: String },
    /// Table file contains no data records.
    EmptyTable,
}

impl fmt::Display for SignalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SignalError::TimeOutOfRange { t } => {
                write!(f, "time {t} is outside the unit frame [0, 1]")
            }
            SignalError::InvalidParams { what } => write!(f, "invalid signal parameters: {what}"),
            SignalError::Io(e) => write!(f, "cannot read signal table: {e}"),
            SignalError::TableParse { line, what } => {
                write!(f, "signal table line {line}: {what}")
            }
            SignalError::EmptyTable => write!(f, "signal table holds no data records"),
        }
    }
}

impl std::error::Error for SignalError {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            SignalError::Io(e) => Some(e),
            _ => None,
        }
    }
}

impl From<std::io::Error> for SignalError {
    fn from(e: std::io::Error) -> Self {
        SignalError::Io(e)
    }
}

/// Synthetic ECG morphology: Gaussian bumps per beat as
/// `(amplitude, center, width)` in beat phase. The S dip sets the waveform
/// minimum, so after min-max normalization the baseline sits near 0.2 of
/// full scale with the R peak at 1.
const ECG_BUMPS: [(f64, f64, f64); 5] = [
    (0.12, 0.16, 0.028),  // P
    (-0.10, 0.37, 0.012), // Q
    (1.00, 0.40, 0.012),  // R
    (-0.25, 0.43, 0.013), // S
    (0.35, 0.60, 0.045),  // T
];

/// Grid resolution of the synthetic ECG table. A power of two keeps the
/// per-beat phase arithmetic exact, so beats are bit-identical.
const ECG_SAMPLES_PER_BEAT: u32 = 2048;

const ECG_MAX_BEATS: u32 = 4096;

/// A deterministic input signal on the unit frame.
///
/// Immutable after construction; safe to share across concurrent simulation
/// runs.
#[derive(Debug, Clone, PartialEq)]
pub struct SignalSource {
    kind: Kind,
}

#[derive(Debug, Clone, PartialEq)]
enum Kind {
    Dc {
        level: f64,
    },
    Sine {
        offset: f64,
        amplitude: f64,
        cycles: f64,
    },
    Exponential,
    Table {
        knots: Vec<(f64, f64)>,
    },
}

impl SignalSource {
    /// Constant signal at `level`, which must lie in `[0, 1]`.
    pub fn dc(level: f64) -> Result<Self, SignalError> {
        if !level.is_finite() || !(0.0..=1.0).contains(&level) {
            return Err(SignalError::InvalidParams {
                what: format!("dc level {level} must lie in [0, 1]"),
            });
        }
        Ok(Self {
            kind: Kind::Dc { level },
        })
    }

    /// `offset + amplitude·sin(2π·cycles·t)`.
    ///
    /// The swing must stay inside `[0, 1]`: `offset - amplitude ≥ 0` and
    /// `offset + amplitude ≤ 1`, with `amplitude ≥ 0` and `cycles > 0`.
    pub fn sine(offset: f64, amplitude: f64, cycles: f64) -> Result<Self, SignalError> {
        if !offset.is_finite() || !amplitude.is_finite() || !cycles.is_finite() {
            return Err(SignalError::InvalidParams {
                what: "sine parameters must be finite".to_string(),
            });
        }
        if amplitude < 0.0 {
            return Err(SignalError::InvalidParams {
                what: format!("sine amplitude {amplitude} must be non-negative"),
            });
        }
        if cycles <= 0.0 {
            return Err(SignalError::InvalidParams {
                what: format!("sine cycles {cycles} must be positive"),
            });
        }
        if offset - amplitude < 0.0 || offset + amplitude > 1.0 {
            return Err(SignalError::InvalidParams {
                what: format!(
                    "sine swing [{}, {}] must stay inside [0, 1]",
                    offset - amplitude,
                    offset + amplitude
                ),
            });
        }
        Ok(Self {
            kind: Kind::Sine {
                offset,
                amplitude,
                cycles,
            },
        })
    }

    /// Slow full-scale ramp `(e^t − 1)/(e − 1)`, rising from 0 to exactly 1
    /// over the frame.
    pub fn exponential() -> Self {
        Self {
            kind: Kind::Exponential,
        }
    }

    /// Table signal from explicit knots. Times must be finite and strictly
    /// increasing, values finite. Evaluation interpolates linearly between
    /// knots and clamps to the nearest endpoint outside the knot range.
    pub fn table(knots: Vec<(f64, f64)>) -> Result<Self, SignalError> {
        if knots.is_empty() {
            return Err(SignalError::EmptyTable);
        }
        for (i, &(t, v)) in knots.iter().enumerate() {
            if !t.is_finite() || !v.is_finite() {
                return Err(SignalError::InvalidParams {
                    what: format!("table knot {i} is not finite"),
                });
            }
            if i > 0 && t <= knots[i - 1].0 {
                return Err(SignalError::InvalidParams {
                    what: format!("table knot times must be strictly increasing (knot {i})"),
                });
            }
        }
        Ok(Self {
            kind: Kind::Table { knots },
        })
    }

    /// Load a table signal from a text file.
    ///
    /// One record per line, either `value` (implied uniform spacing) or
    /// `t,value`; `#`-prefixed comment lines and blank lines are ignored.
    /// Times are rescaled affinely onto `[0, 1]` and amplitudes min-max
    /// normalized onto `[0, 1]`; a constant input normalizes to midscale 0.5.
    pub fn load_table<P: AsRef<Path>>(path: P) -> Result<Self, SignalError> {
        let text = fs::read_to_string(path)?;
        Self::parse_table(&text)
    }

    /// Parse table text in the [`load_table`](Self::load_table) format.
    pub fn parse_table(text: &str) -> Result<Self, SignalError> {
        let mut rows: Vec<(usize, Option<f64>, f64)> = Vec::new();
        let mut columns: Option<usize> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = trimmed.split(',').map(str::trim).collect();
            if fields.len() > 2 {
                return Err(SignalError::TableParse {
                    line,
                    what: format!(
                        "expected `value` or `t,value`, found {} fields",
                        fields.len()
                    ),
                });
            }
            match columns {
                None => columns = Some(fields.len()),
                Some(c) if c != fields.len() => {
                    return Err(SignalError::TableParse {
                        line,
                        what: "mixed 1-column and 2-column records".to_string(),
                    })
                }
                Some(_) => {}
            }
            let parse = |s: &str| -> Result<f64, SignalError> {
                let v: f64 = s.parse().map_err(|_| SignalError::TableParse {
                    line,
                    what: format!("`{s}` is not a number"),
                })?;
                if !v.is_finite() {
                    return Err(SignalError::TableParse {
                        line,
                        what: format!("`{s}` is not finite"),
                    });
                }
                Ok(v)
            };
            if fields.len() == 2 {
                rows.push((line, Some(parse(fields[0])?), parse(fields[1])?));
            } else {
                rows.push((line, None, parse(fields[0])?));
            }
        }
        if rows.is_empty() {
            return Err(SignalError::EmptyTable);
        }
        if columns == Some(2) {
            for w in rows.windows(2) {
                if w[1].1 <= w[0].1 {
                    return Err(SignalError::TableParse {
                        line: w[1].0,
                        what: "timestamps must be strictly increasing".to_string(),
                    });
                }
            }
        }

        let n = rows.len();
        let times: Vec<f64> = if columns == Some(2) {
            let t0 = rows[0].1.unwrap();
            let t1 = rows[n - 1].1.unwrap();
            if t1 > t0 {
                rows.iter()
                    .map(|r| (r.1.unwrap() - t0) / (t1 - t0))
                    .collect()
            } else {
                vec![0.0] // single explicit timestamp
            }
        } else if n == 1 {
            vec![0.0]
        } else {
            (0..n).map(|i| i as f64 / (n - 1) as f64).collect()
        };
        let lo = rows.iter().map(|r| r.2).fold(f64::INFINITY, f64::min);
        let hi = rows.iter().map(|r| r.2).fold(f64::NEG_INFINITY, f64::max);
        let values: Vec<f64> = if hi > lo {
            rows.iter().map(|r| (r.2 - lo) / (hi - lo)).collect()
        } else {
            vec![0.5; n] // degenerate min = max: midscale by convention
        };
        Self::table(times.into_iter().zip(values).collect())
    }

    /// Deterministic synthetic ECG: `beats` identical PQRST beats per frame,
    /// built from Gaussian bumps, sampled on a fixed grid, and min-max
    /// normalized so the frame minimum is exactly 0 and the maximum exactly 1.
    ///
    /// A stand-in for a real record when none is supplied; no randomness.
    pub fn synthetic_ecg(beats: u32) -> Result<Self, SignalError> {
        if beats == 0 {
            return Err(SignalError::InvalidParams {
                what: "ecg beats must be at least 1".to_string(),
            });
        }
        if beats > ECG_MAX_BEATS {
            return Err(SignalError::InvalidParams {
                what: format!("ecg beats {beats} exceeds the supported maximum {ECG_MAX_BEATS}"),
            });
        }
        let spb = ECG_SAMPLES_PER_BEAT as usize;
        let n = beats as usize * spb;
        let mut raw = Vec::with_capacity(n);
        for i in 0..n {
            // Integer modulus keeps every beat's phase grid bit-identical.
            let u = (i % spb) as f64 / spb as f64;
            let v: f64 = ECG_BUMPS
                .iter()
                .map(|&(a, c, w)| {
                    let x = (u - c) / w;
                    a * (-0.5 * x * x).exp()
                })
                .sum();
            raw.push(v);
        }
        let lo = raw.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = raw.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let knots: Vec<(f64, f64)> = raw
            .into_iter()
            .enumerate()
            .map(|(i, v)| (i as f64 / n as f64, (v - lo) / (hi - lo)))
            .collect();
        Self::table(knots)
    }

    /// Amplitude at normalized time `t ∈ [0, 1]`.
    ///
    /// Pure: repeated calls agree bit-for-bit.
    pub fn evaluate(&self, t: f64) -> Result<f64, SignalError> {
        if !(0.0..=1.0).contains(&t) {
            return Err(SignalError::TimeOutOfRange { t });
        }
        Ok(self.eval_unchecked(t))
    }

    fn eval_unchecked(&self, t: f64) -> f64 {
        match &self.kind {
            Kind::Dc { level } => *level,
            Kind::Sine {
                offset,
                amplitude,
                cycles,
            } => offset + amplitude * (TAU * cycles * t).sin(),
            Kind::Exponential => (t.exp() - 1.0) / (E - 1.0),
            Kind::Table { knots } => interpolate(knots, t),
        }
    }

    /// Signal slope at `t`, in amplitude per frame.
    ///
    /// Closed-form kinds return the exact analytic derivative and ignore
    /// `step`. Table kinds return a central finite difference with the given
    /// step (the consuming configuration's clock tick, `1/clocks_per_frame`),
    /// falling back to one-sided differences at the frame edges.
    pub fn slope(&self, t: f64, step: f64) -> Result<f64, SignalError> {
        if !(0.0..=1.0).contains(&t) {
            return Err(SignalError::TimeOutOfRange { t });
        }
        match &self.kind {
            Kind::Dc { .. } => Ok(0.0),
            Kind::Sine {
                amplitude, cycles, ..
            } => Ok(TAU * cycles * amplitude * (TAU * cycles * t).cos()),
            Kind::Exponential => Ok(t.exp() / (E - 1.0)),
            Kind::Table { knots } => {
                if !step.is_finite() || step <= 0.0 {
                    return Err(SignalError::InvalidParams {
                        what: format!("finite-difference step {step} must be positive"),
                    });
                }
                let hi = (t + step).min(1.0);
                let lo = (t - step).max(0.0);
                Ok((interpolate(knots, hi) - interpolate(knots, lo)) / (hi - lo))
            }
        }
    }

    /// True for table-backed kinds (file tables and the synthetic ECG).
    pub fn is_table(&self) -> bool {
        matches!(self.kind, Kind::Table { .. })
    }
}

impl fmt::Display for SignalSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            Kind::Dc { level } => write!(f, "dc:{level}"),
            Kind::Sine {
                offset,
                amplitude,
                cycles,
            } => {
                write!(f, "sine:offset={offset},amp={amplitude},cycles={cycles}")
            }
            Kind::Exponential => write!(f, "exp"),
            Kind::Table { knots } => write!(f, "table[{} knots]", knots.len()),
        }
    }
}

/// Piecewise-linear interpolation with endpoint clamping. Exact at knot
/// times: the blend `v0·(1−w) + v1·w` reproduces stored values bit-for-bit
/// at `w = 0` and `w = 1`.
fn interpolate(knots: &[(f64, f64)], t: f64) -> f64 {
    let first = knots[0];
    let last = knots[knots.len() - 1];
    if t <= first.0 {
        return first.1;
    }
    if t >= last.0 {
        return last.1;
    }
    let i = knots.partition_point(|k| k.0 <= t);
    let (t0, v0) = knots[i - 1];
    let (t1, v1) = knots[i];
    let w = (t - t0) / (t1 - t0);
    v0 * (1.0 - w) + v1 * w
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn dc_is_constant() {
        let sig = SignalSource::dc(0.0).unwrap();
        assert_eq!(sig.evaluate(0.5).unwrap(), 0.0);
        let sig = SignalSource::dc(0.1).unwrap();
        assert_eq!(sig.evaluate(0.0).unwrap(), 0.1);
        assert_eq!(sig.evaluate(1.0).unwrap(), 0.1);
    }

    #[test]
    fn dc_rejects_out_of_range_level() {
        assert!(SignalSource::dc(-0.1).is_err());
        assert!(SignalSource::dc(1.5).is_err());
        assert!(SignalSource::dc(f64::NAN).is_err());
    }

    #[test]
    fn sine_quarter_cycle_hits_full_scale() {
        let sig = SignalSource::sine(0.5, 0.5, 1.0).unwrap();
        assert_eq!(sig.evaluate(0.25).unwrap(), 1.0);
        assert_eq!(sig.evaluate(0.0).unwrap(), 0.5);
    }

    #[test]
    fn sine_rejects_swing_outside_unit_range() {
        assert!(SignalSource::sine(0.9, 0.5, 1.0).is_err());
        assert!(SignalSource::sine(0.3, 0.5, 1.0).is_err());
        assert!(SignalSource::sine(0.5, -0.1, 1.0).is_err());
        assert!(SignalSource::sine(0.5, 0.5, 0.0).is_err());
    }

    #[test]
    fn exponential_endpoints_are_exact() {
        let sig = SignalSource::exponential();
        assert_eq!(sig.evaluate(0.0).unwrap(), 0.0);
        assert_eq!(sig.evaluate(1.0).unwrap(), 1.0);
    }

    #[test]
    fn evaluate_rejects_time_outside_frame() {
        let sig = SignalSource::dc(0.5).unwrap();
        assert!(matches!(
            sig.evaluate(-0.01),
            Err(SignalError::TimeOutOfRange { .. })
        ));
        assert!(sig.evaluate(1.01).is_err());
        assert!(sig.evaluate(f64::NAN).is_err());
        assert!(sig.slope(2.0, 1e-6).is_err());
    }

    #[test]
    fn slope_matches_hand_derivatives() {
        let dc = SignalSource::dc(0.1).unwrap();
        assert_eq!(dc.slope(0.7, 1e-6).unwrap(), 0.0);

        let sine = SignalSource::sine(0.5, 0.5, 1.0).unwrap();
        let s = sine.slope(0.0, 1e-6).unwrap();
        assert!(
            (s - std::f64::consts::PI).abs() < 1e-12,
            "sine slope at 0: {s}"
        );

        let exp = SignalSource::exponential();
        let s = exp.slope(0.0, 1e-6).unwrap();
        assert!((s - 1.0 / (E - 1.0)).abs() < 1e-12, "exp slope at 0: {s}");
    }

    #[test]
    fn table_slope_uses_finite_difference() {
        // Ramp table: slope 1 everywhere, including one-sided edges.
        let sig = SignalSource::parse_table("0,0\n1,10\n").unwrap();
        let h = 1.0 / 262144.0;
        assert!((sig.slope(0.0, h).unwrap() - 1.0).abs() < 1e-9);
        assert!((sig.slope(0.5, h).unwrap() - 1.0).abs() < 1e-9);
        assert!((sig.slope(1.0, h).unwrap() - 1.0).abs() < 1e-9);
        assert!(sig.slope(0.5, 0.0).is_err());
    }

    #[test]
    fn parse_table_degenerate_constant_normalizes_to_midscale() {
        let sig = SignalSource::parse_table("0,2.0\n1,2.0\n").unwrap();
        assert_eq!(sig.evaluate(0.0).unwrap(), 0.5);
        assert_eq!(sig.evaluate(0.37).unwrap(), 0.5);
        assert_eq!(sig.evaluate(1.0).unwrap(), 0.5);
    }

    #[test]
    fn parse_table_min_max_normalizes_to_unit_ramp() {
        let sig = SignalSource::parse_table("0,0\n1,10\n").unwrap();
        for &t in &[0.0, 0.125, 0.5, 0.9, 1.0] {
            assert!((sig.evaluate(t).unwrap() - t).abs() < 1e-15);
        }
    }

    #[test]
    fn parse_table_single_column_and_comments() {
        let sig = SignalSource::parse_table("# header\n1\n\n2\n3\n").unwrap();
        assert_eq!(sig.evaluate(0.0).unwrap(), 0.0);
        assert_eq!(sig.evaluate(0.5).unwrap(), 0.5);
        assert_eq!(sig.evaluate(1.0).unwrap(), 1.0);
    }

    #[test]
    fn parse_table_errors() {
        assert!(matches!(
            SignalSource::parse_table(""),
            Err(SignalError::EmptyTable)
        ));
        assert!(matches!(
            SignalSource::parse_table("# only comments\n"),
            Err(SignalError::EmptyTable)
        ));
        match SignalSource::parse_table("0,1\nx,2\n") {
            Err(SignalError::TableParse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
        match SignalSource::parse_table("0,1\n0,2\n") {
            Err(SignalError::TableParse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected non-increasing error, got {other:?}"),
        }
        assert!(SignalSource::parse_table("1,2,3\n").is_err());
        assert!(SignalSource::parse_table("1\n2,3\n").is_err());
    }

    #[test]
    fn table_knots_reproduce_exactly() {
        let sig = SignalSource::parse_table("0,1\n0.25,4\n0.5,2\n1,3\n").unwrap();
        // Normalized values: (v - 1) / 3.
        assert_eq!(sig.evaluate(0.0).unwrap(), 0.0);
        assert_eq!(sig.evaluate(0.25).unwrap(), 1.0);
        assert_eq!(sig.evaluate(0.5).unwrap(), (2.0 - 1.0) / 3.0);
        assert_eq!(sig.evaluate(1.0).unwrap(), (3.0 - 1.0) / 3.0);
    }

    #[test]
    fn synthetic_ecg_rejects_zero_beats() {
        assert!(SignalSource::synthetic_ecg(0).is_err());
    }

    #[test]
    fn synthetic_ecg_spans_unit_range() {
        let sig = SignalSource::synthetic_ecg(1).unwrap();
        let n = 2048;
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let v = sig.evaluate(i as f64 / n as f64).unwrap();
            lo = lo.min(v);
            hi = hi.max(v);
        }
        assert_eq!(lo, 0.0);
        assert_eq!(hi, 1.0);
    }

    #[test]
    fn synthetic_ecg_is_beat_periodic() {
        let sig = SignalSource::synthetic_ecg(3).unwrap();
        let spb = ECG_SAMPLES_PER_BEAT as usize;
        let n = 3 * spb;
        for i in (0..spb).step_by(97) {
            let a = sig.evaluate(i as f64 / n as f64).unwrap();
            let b = sig.evaluate((i + spb) as f64 / n as f64).unwrap();
            assert_eq!(a, b, "knot {i} differs from its next-beat twin");
        }
    }

    #[test]
    fn synthetic_ecg_is_deterministic() {
        let a = SignalSource::synthetic_ecg(3).unwrap();
        let b = SignalSource::synthetic_ecg(3).unwrap();
        assert_eq!(a, b);
        let x = a.evaluate(0.123).unwrap();
        let y = a.evaluate(0.123).unwrap();
        assert_eq!(x.to_bits(), y.to_bits());
    }

    proptest! {
        #[test]
        fn generators_stay_in_unit_range(t in 0.0..=1.0f64, pick in 0usize..3) {
            let sig = match pick {
                0 => SignalSource::dc(0.3).unwrap(),
                1 => SignalSource::sine(0.5, 0.5, 1.0).unwrap(),
                _ => SignalSource::exponential(),
            };
            let v = sig.evaluate(t).unwrap();
            prop_assert!(v.is_finite());
            prop_assert!((0.0..=1.0).contains(&v), "value {v} at t={t}");
        }

        #[test]
        fn evaluation_is_referentially_transparent(t in 0.0..=1.0f64) {
            let sig = SignalSource::sine(0.5, 0.4, 3.0).unwrap();
            let a = sig.evaluate(t).unwrap();
            let b = sig.evaluate(t).unwrap();
            prop_assert_eq!(a.to_bits(), b.to_bits());
        }

        #[test]
        fn generator_slopes_match_central_differences(
            t in 0.01..=0.99f64,
            pick in 0usize..3,
        ) {
            let sig = match pick {
                0 => SignalSource::dc(0.4).unwrap(),
                1 => SignalSource::sine(0.5, 0.5, 1.0).unwrap(),
                _ => SignalSource::exponential(),
            };
            let h = 1e-6;
            let fd = (sig.evaluate(t + h).unwrap() - sig.evaluate(t - h).unwrap()) / (2.0 * h);
            let exact = sig.slope(t, h).unwrap();
            let scale = exact.abs().max(1.0);
            prop_assert!(
                (exact - fd).abs() <= 1e-4 * scale,
                "analytic {exact} vs central difference {fd} at t={t}"
            );
        }
    }
}
