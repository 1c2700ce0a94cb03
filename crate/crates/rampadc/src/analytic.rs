//! Closed-form conversion-time and figure-of-merit expressions.
//!
//! These evaluate the converter's timing directly from amplitudes and
//! configuration, independently of the frame simulator, so the two routes
//! can check each other. Each timing expression comes in an exact form on
//! the `2^bits − 1` quantizer grid (matching the simulator cycle for cycle)
//! and an approximate form on the `2^bits` grid with `K` folded to 1, whose
//! error is itself testable. Cycle counts are integers; the `*_time`
//! variants divide by `clocks_per_frame` to express the same quantity in
//! frames.

use std::fmt;

use crate::adc::{quantize, AdcConfig};

/// Errors from figure-of-merit expressions with constrained inputs.
#[derive(Debug, Clone, PartialEq)]
pub enum AnalyticError {
    /// An input that must be strictly positive was not.
    NonPositive { name: &'static str, value: f64 },
    /// A measurement window with `t1 ≤ t0`.
    BadWindow { t0: f64, t1: f64 },
}

impl fmt::Display for AnalyticError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnalyticError::NonPositive { name, value } => {
                write!(f, "{name} must be positive, got {value}")
            }
            AnalyticError::BadWindow { t0, t1 } => {
                write!(f, "measurement window [{t0}, {t1}] must have t1 > t0")
            }
        }
    }
}

impl std::error::Error for AnalyticError {}

fn levels(cfg: &AdcConfig) -> f64 {
    (1u64 << cfg.bits()) as f64
}

/// Exact typical-architecture conversion cost in cycles:
/// `M + K·quantize(s) + N`. Inputs clamp to `[0, s_ref]` like the quantizer.
pub fn typical_cycles_exact(s_sample: f64, cfg: &AdcConfig) -> u64 {
    cfg.m_sample() + cfg.k_count() * quantize(s_sample, cfg) + cfg.n_finalize()
}

/// [`typical_cycles_exact`] expressed in frames.
pub fn typical_time_exact(s_sample: f64, cfg: &AdcConfig) -> f64 {
    typical_cycles_exact(s_sample, cfg) as f64 / cfg.clocks_per_frame() as f64
}

/// Approximate typical cost in cycles on the `2^bits` grid with `K = 1`
/// folded in: `floor(s·2^bits/s_ref) + L`. At full scale this overshoots the
/// exact form by one cycle; that approximation error is deliberate and
/// observable.
pub fn typical_cycles_approx(s_sample: f64, cfg: &AdcConfig) -> u64 {
    let ratio = s_sample.clamp(0.0, cfg.s_ref()) / cfg.s_ref();
    (ratio * levels(cfg)).floor() as u64 + cfg.overhead_cycles()
}

/// [`typical_cycles_approx`] expressed in frames.
pub fn typical_time_approx(s_sample: f64, cfg: &AdcConfig) -> f64 {
    typical_cycles_approx(s_sample, cfg) as f64 / cfg.clocks_per_frame() as f64
}

/// Approximate proposed-architecture cost in cycles on the `2^bits` grid:
/// `floor(|s − s_last|·2^bits/s_ref) + L`, with `s_last` the DAC value of
/// the retained code. With `s_last = 0` this reduces to
/// [`typical_cycles_approx`].
pub fn proposed_cycles(s_sample: f64, s_last: f64, cfg: &AdcConfig) -> u64 {
    let a = s_sample.clamp(0.0, cfg.s_ref());
    let b = s_last.clamp(0.0, cfg.s_ref());
    let steps = ((a - b).abs() / cfg.s_ref() * levels(cfg)).floor() as u64;
    steps + cfg.overhead_cycles()
}

/// [`proposed_cycles`] expressed in frames.
pub fn proposed_time(s_sample: f64, s_last: f64, cfg: &AdcConfig) -> f64 {
    proposed_cycles(s_sample, s_last, cfg) as f64 / cfg.clocks_per_frame() as f64
}

/// Exact proposed cost in cycles on the `2^bits − 1` grid:
/// `M + K·|quantize(s) − quantize(s_last)| + N`.
///
/// Both amplitudes are placed on the quantizer grid before differencing —
/// that is what the register and the comparator see, and it is the only
/// evaluation that reproduces the simulator exactly in both counting
/// directions (flooring the amplitude difference instead undercounts every
/// down-count whose target sits between grid points).
pub fn proposed_cycles_exact(s_sample: f64, s_last: f64, cfg: &AdcConfig) -> u64 {
    let steps = quantize(s_sample, cfg).abs_diff(quantize(s_last, cfg));
    cfg.m_sample() + cfg.k_count() * steps + cfg.n_finalize()
}

/// [`proposed_cycles_exact`] expressed in frames.
pub fn proposed_time_exact(s_sample: f64, s_last: f64, cfg: &AdcConfig) -> f64 {
    proposed_cycles_exact(s_sample, s_last, cfg) as f64 / cfg.clocks_per_frame() as f64
}

/// Recursive proposed-architecture estimate in frames: the previous
/// conversion time sets the sampling gap, so
/// `(floor(|slope|·prev_time·2^bits/s_ref) + L) / clocks_per_frame`.
/// `prev_time` is in frames and should be at least the overhead bound.
pub fn proposed_time_recursive(slope: f64, prev_time: f64, cfg: &AdcConfig) -> f64 {
    let steps = (slope.abs() * prev_time * levels(cfg) / cfg.s_ref()).floor();
    (steps + cfg.overhead_cycles() as f64) / cfg.clocks_per_frame() as f64
}

/// Least possible conversion time in frames, `L / clocks_per_frame`; every
/// conversion in either architecture takes at least this long.
pub fn overhead_bound(cfg: &AdcConfig) -> f64 {
    cfg.overhead_cycles() as f64 / cfg.clocks_per_frame() as f64
}

/// Conversion-time reduction factor `1 − tc_proposed/tc_typical`.
/// Negative when the proposed architecture is slower.
pub fn reduction_factor(tc_proposed: f64, tc_typical: f64) -> Result<f64, AnalyticError> {
    if tc_typical <= 0.0 || !tc_typical.is_finite() {
        return Err(AnalyticError::NonPositive {
            name: "tc_typical",
            value: tc_typical,
        });
    }
    Ok(1.0 - tc_proposed / tc_typical)
}

/// Floorless reduction estimate
/// `1 − (|slope|·prev_time·2^bits/s_ref + L) / (s_mean·2^bits/s_ref + L)`,
/// where `s_mean` is the assumed average input level (half of `s_ref` gives
/// the `2^(bits−1)` denominator).
pub fn reduction_estimate(
    slope: f64,
    prev_time: f64,
    s_mean_assumption: f64,
    cfg: &AdcConfig,
) -> f64 {
    let l = cfg.overhead_cycles() as f64;
    let numer = slope.abs() * prev_time * levels(cfg) / cfg.s_ref() + l;
    let denom = s_mean_assumption / cfg.s_ref() * levels(cfg) + l;
    1.0 - numer / denom
}

/// Statistical ceiling on the reduction factor, `1 − L/2^(bits−1)`.
///
/// The floorless estimate at zero slope, `1 − L/(2^(bits−1) + L)`, sits
/// slightly *above* this ceiling; the ceiling caps the estimate only once
/// the slope term exceeds `L²/2^(bits−1)`. Measured reductions on real
/// signals sit well below both.
pub fn reduction_bound(cfg: &AdcConfig) -> f64 {
    let half_levels = (1u64 << (cfg.bits() - 1)) as f64;
    1.0 - cfg.overhead_cycles() as f64 / half_levels
}

/// Expected number of collected samples in a window: `(t1 − t0)/mean_tc`.
/// Real-valued; the simulator's integer count floors this.
pub fn sample_count(t0: f64, t1: f64, mean_tc: f64) -> Result<f64, AnalyticError> {
    if !t0.is_finite() || !t1.is_finite() || t1 <= t0 {
        return Err(AnalyticError::BadWindow { t0, t1 });
    }
    if mean_tc <= 0.0 || !mean_tc.is_finite() {
        return Err(AnalyticError::NonPositive {
            name: "mean_tc",
            value: mean_tc,
        });
    }
    Ok((t1 - t0) / mean_tc)
}

/// Speed-up ratio `ns_proposed / ns_typical`.
pub fn speed_up(ns_proposed: f64, ns_typical: f64) -> Result<f64, AnalyticError> {
    if ns_typical <= 0.0 || !ns_typical.is_finite() {
        return Err(AnalyticError::NonPositive {
            name: "ns_typical",
            value: ns_typical,
        });
    }
    Ok(ns_proposed / ns_typical)
}

/// Reduction factor implied by a speed-up ratio, in percent:
/// `(1 − 1/speed_up)·100`.
pub fn reduction_percent(speed_up: f64) -> Result<f64, AnalyticError> {
    if speed_up <= 0.0 || !speed_up.is_finite() {
        return Err(AnalyticError::NonPositive {
            name: "speed_up",
            value: speed_up,
        });
    }
    Ok((1.0 - 1.0 / speed_up) * 100.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adc::{conversion_cost, dac, Architecture};
    use proptest::prelude::*;

    fn cfg_8bit() -> AdcConfig {
        AdcConfig::new(8, 262_144).unwrap()
    }

    #[test]
    fn typical_exact_examples() {
        let cfg = cfg_8bit();
        assert_eq!(typical_cycles_exact(0.0, &cfg), 3);
        assert_eq!(typical_time_exact(0.0, &cfg), 3.0 / 262_144.0);
        assert_eq!(typical_cycles_exact(9.5 / 255.0, &cfg), 12);
        assert_eq!(typical_time_exact(9.5 / 255.0, &cfg), 12.0 / 262_144.0);
        assert_eq!(typical_cycles_exact(0.5, &cfg), 130);
    }

    #[test]
    fn typical_approx_examples() {
        let cfg = cfg_8bit();
        assert_eq!(typical_cycles_approx(0.5, &cfg), 131);
        assert_eq!(typical_cycles_approx(0.0, &cfg), 3);
        // Full scale overshoots the exact form by exactly the grid mismatch.
        assert_eq!(typical_cycles_approx(1.0, &cfg), 259);
        assert_eq!(typical_cycles_exact(1.0, &cfg), 258);
    }

    #[test]
    fn proposed_examples() {
        let cfg = cfg_8bit();
        assert_eq!(proposed_cycles(0.3, 0.3, &cfg), 3);
        assert_eq!(proposed_cycles(0.75, 0.25, &cfg), 131);
        // With a zero retained value the form reduces to the typical one.
        for s in [0.0, 0.2, 0.5, 0.99, 1.0] {
            assert_eq!(
                proposed_cycles(s, 0.0, &cfg),
                typical_cycles_approx(s, &cfg)
            );
        }
        assert_eq!(proposed_cycles_exact(0.3, 0.3, &cfg), 3);
    }

    #[test]
    fn recursive_form_examples() {
        let cfg = cfg_8bit();
        let l_frames = 3.0 / 262_144.0;
        assert_eq!(proposed_time_recursive(0.0, 1.0, &cfg), l_frames);
        // A full-scale sine slope over a 3-cycle gap moves less than one code.
        let t = proposed_time_recursive(std::f64::consts::PI, 3.0 / 262_144.0, &cfg);
        assert_eq!(t, l_frames);
    }

    #[test]
    fn recursive_form_converges_to_fixed_point() {
        let cfg = cfg_8bit();
        let slope = 2.0;
        let mut t = 1.0;
        for _ in 0..64 {
            t = proposed_time_recursive(slope, t, &cfg);
        }
        let fixed = proposed_time_recursive(slope, t, &cfg);
        assert_eq!(fixed, t, "iteration should have settled");
        // The fixed point obeys t* ≤ (slope·2^bits·t* + L)/clocks_per_frame.
        assert!(t <= (slope * 256.0 * t + 3.0) / 262_144.0 + f64::EPSILON);
        assert!(t >= overhead_bound(&cfg));
    }

    #[test]
    fn overhead_bound_examples() {
        assert_eq!(overhead_bound(&cfg_8bit()), 3.0 / 262_144.0);
        let cfg = AdcConfig::new(4, 1)
            .unwrap()
            .with_overheads(1, 1, 1)
            .unwrap();
        assert_eq!(overhead_bound(&cfg), 2.0);
        // The bound never exceeds any exact conversion time.
        let cfg = cfg_8bit();
        for s in [0.0, 0.1, 0.5, 1.0] {
            assert!(overhead_bound(&cfg) <= typical_time_exact(s, &cfg));
        }
    }

    #[test]
    fn reduction_factor_examples() {
        assert_eq!(reduction_factor(5.0, 5.0).unwrap(), 0.0);
        assert_eq!(reduction_factor(3.0, 12.0).unwrap(), 0.75);
        assert_eq!(reduction_factor(6.0, 3.0).unwrap(), -1.0);
        assert!(reduction_factor(1.0, 0.0).is_err());
    }

    #[test]
    fn reduction_estimate_examples() {
        let cfg = cfg_8bit();
        let e = reduction_estimate(0.0, 1.0, 0.5, &cfg);
        assert!((e - (1.0 - 3.0 / 131.0)).abs() < 1e-15);

        let cfg1 = AdcConfig::new(1, 262_144).unwrap();
        assert_eq!(reduction_estimate(0.0, 1.0, 0.5, &cfg1), 0.25);

        // Zero-slope estimate is independent of prev_time and sits just
        // above the statistical ceiling; one full code of slope term is
        // already enough to drop below it.
        let cfg = cfg_8bit();
        assert_eq!(
            reduction_estimate(0.0, 0.001, 0.5, &cfg),
            reduction_estimate(0.0, 123.0, 0.5, &cfg)
        );
        assert!(reduction_estimate(0.0, 1.0, 0.5, &cfg) > reduction_bound(&cfg));
        let one_code_slope = 1.0 / 256.0; // slope·prev_time·2^bits = 1
        assert!(reduction_estimate(one_code_slope, 1.0, 0.5, &cfg) < reduction_bound(&cfg));
    }

    #[test]
    fn reduction_bound_examples() {
        assert!((reduction_bound(&cfg_8bit()) - (1.0 - 3.0 / 128.0)).abs() < 1e-15);
        let cfg = AdcConfig::new(2, 16)
            .unwrap()
            .with_overheads(1, 1, 1)
            .unwrap();
        assert_eq!(reduction_bound(&cfg), 0.0);
        // The benchmark's headline ECG reduction stays under the ceiling.
        assert!(0.97 < reduction_bound(&cfg_8bit()));
    }

    #[test]
    fn sample_count_examples() {
        assert!((sample_count(0.0, 1.0, 3.0 / 262_144.0).unwrap() - 87_381.333).abs() < 1e-2);
        assert_eq!(sample_count(0.0, 1.0, 1.0).unwrap(), 1.0);
        assert!((sample_count(0.0, 1.0, 12.0 / 262_144.0).unwrap() - 21_845.333).abs() < 1e-2);
        assert!(sample_count(1.0, 1.0, 0.5).is_err());
        assert!(sample_count(0.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn speed_up_examples() {
        // 87378/21845 = 3.99991, agreeing with the benchmark's rounded 3.99.
        let su = speed_up(87_378.0, 21_845.0).unwrap();
        assert!((su - 4.0).abs() < 1e-3);
        assert!((su / 3.99 - 1.0).abs() < 0.005);
        assert_eq!(speed_up(10.0, 10.0).unwrap(), 1.0);
        assert!((speed_up(85_128.0, 2_378.0).unwrap() - 35.8).abs() < 0.01);
        assert!(speed_up(1.0, 0.0).is_err());
    }

    #[test]
    fn reduction_percent_examples() {
        assert_eq!(reduction_percent(1.0).unwrap(), 0.0);
        assert!((reduction_percent(3.99).unwrap() - 74.9).abs() < 0.05);
        assert!((reduction_percent(35.8).unwrap() - 97.2).abs() < 0.05);
        assert!(reduction_percent(0.0).is_err());
        assert!(reduction_percent(-1.0).is_err());
    }

    proptest! {
        /// The exact typical form and the simulator's cost are the same
        /// integer for any amplitude and any K=1 configuration.
        #[test]
        fn exact_form_matches_simulator_cost(
            s in 0.0..=1.0f64,
            bits in 1u32..=16,
            m in 1u64..=8,
            n in 1u64..=8,
        ) {
            let cfg = AdcConfig::new(bits, 262_144).unwrap().with_overheads(m, n, 1).unwrap();
            let cycles = typical_cycles_exact(s, &cfg);
            let sim = conversion_cost(Architecture::Typical, 0, quantize(s, &cfg), &cfg);
            prop_assert_eq!(cycles, sim);
        }

        /// Same equivalence for the proposed exact form against a retained
        /// code, in both counting directions.
        #[test]
        fn proposed_exact_form_matches_simulator_cost(
            s in 0.0..=1.0f64,
            last_code_frac in 0.0..=1.0f64,
            bits in 1u32..=16,
        ) {
            let cfg = AdcConfig::new(bits, 262_144).unwrap();
            let last_code = (last_code_frac * cfg.max_code() as f64).round() as u64;
            let s_last = dac(last_code, &cfg).unwrap();
            let cycles = proposed_cycles_exact(s, s_last, &cfg);
            let sim = conversion_cost(Architecture::Proposed, last_code, quantize(s, &cfg), &cfg);
            prop_assert_eq!(cycles, sim);
        }

        /// The 2^bits approximation never undershoots the exact K=1 form and
        /// overshoots by at most the grid mismatch (≤ 2 cycles).
        #[test]
        fn approx_error_is_bounded(s in 0.0..=1.0f64, bits in 2u32..=16) {
            let cfg = AdcConfig::new(bits, 262_144).unwrap();
            let exact = typical_cycles_exact(s, &cfg) as i64;
            let approx = typical_cycles_approx(s, &cfg) as i64;
            let diff = approx - exact;
            prop_assert!(diff >= 0, "approx undershot exact by {}", -diff);
            prop_assert!(diff <= 2, "approx overshot exact by {diff}");
        }

        /// reduction_percent(speed_up(a, b)) is the percent reduction
        /// 100·(1 − b/a), which equals 100·reduction_factor(1/a, 1/b).
        #[test]
        fn percent_identity(a in 1e-6..=1e6f64, b in 1e-6..=1e6f64) {
            let via_speed_up = reduction_percent(speed_up(a, b).unwrap()).unwrap();
            let via_times = 100.0 * reduction_factor(1.0 / a, 1.0 / b).unwrap();
            let scale = via_times.abs().max(1.0);
            prop_assert!((via_speed_up - via_times).abs() <= 1e-12 * scale);
        }
    }
}
