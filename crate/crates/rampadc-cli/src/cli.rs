//! Argument definitions for the `rampadc` binary.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rampadc::adc::Architecture;

#[derive(Parser, Debug)]
#[command(
    name = "rampadc",
    version,
    about = "Ramp-counter ADC simulator: clear-to-zero vs code-retaining up/down counting"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run one architecture over one frame and summarize the trace
    Simulate(SimulateArgs),
    /// Run the four-signal benchmark and emit the comparison report
    Bench(BenchArgs),
    /// Evaluate one closed-form timing or figure-of-merit expression
    Analytic(AnalyticArgs),
    /// Find the minimum clocks-per-frame meeting a distortion budget
    Minclock(MinclockArgs),
    /// Render the input and both reconstructions as an SVG plot
    Plot(PlotArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum ArchChoice {
    Typical,
    Proposed,
}

impl From<ArchChoice> for Architecture {
    fn from(choice: ArchChoice) -> Self {
        match choice {
            ArchChoice::Typical => Architecture::Typical,
            ArchChoice::Proposed => Architecture::Proposed,
        }
    }
}

#[derive(Args, Debug)]
pub struct SimulateArgs {
    /// Input signal: dc:<level> | sine:offset=<o>,amp=<a>,cycles=<c> | exp |
    /// ecg:synthetic,beats=<k> | ecg:<path>
    #[arg(long)]
    pub signal: String,
    #[arg(long, value_enum)]
    pub arch: ArchChoice,
    /// Output bit width
    #[arg(long)]
    pub bits: u32,
    /// Clock cycles per unit frame
    #[arg(long)]
    pub clocks: u64,
    /// Sampling overhead cycles (M)
    #[arg(long, default_value_t = 2)]
    pub m: u64,
    /// Finalizing overhead cycles (N)
    #[arg(long, default_value_t = 1)]
    pub n: u64,
    /// Cycles per counting step (K)
    #[arg(long, default_value_t = 1)]
    pub k: u64,
    /// Write the trace CSV here
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    /// ECG record file (`value` or `t,value` per line); defaults to the
    /// synthetic generator
    #[arg(long)]
    pub ecg: Option<PathBuf>,
    /// Beats per frame for the synthetic ECG
    #[arg(long, default_value_t = 8)]
    pub beats: u32,
    /// Write the JSON report array here (otherwise printed after the table)
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct AnalyticArgs {
    /// Which expression to evaluate: 1, 3, 5, 8, 9, 12, 13, 14, 15, or 17
    #[arg(long)]
    pub eq: u32,
    /// Held sample amplitude
    #[arg(long)]
    pub s: Option<f64>,
    /// Retained amplitude (DAC value of the last code)
    #[arg(long)]
    pub slast: Option<f64>,
    /// Signal slope in amplitude per frame
    #[arg(long)]
    pub slope: Option<f64>,
    /// Previous conversion time in frames
    #[arg(long = "prev-time")]
    pub prev_time: Option<f64>,
    #[arg(long)]
    pub bits: Option<u32>,
    /// Total overhead cycles L (at least 2; split internally as M = L-1, N = 1)
    #[arg(long)]
    pub l: Option<u64>,
    #[arg(long)]
    pub m: Option<u64>,
    #[arg(long)]
    pub n: Option<u64>,
    #[arg(long)]
    pub k: Option<u64>,
    /// Clocks per frame; timing expressions print frames when given, cycles
    /// otherwise
    #[arg(long)]
    pub clocks: Option<u64>,
    /// Full-scale reference level (default 1.0)
    #[arg(long)]
    pub sref: Option<f64>,
    /// Assumed mean input level (default sref/2)
    #[arg(long)]
    pub smean: Option<f64>,
    /// Measurement window start in frames
    #[arg(long)]
    pub t0: Option<f64>,
    /// Measurement window end in frames
    #[arg(long)]
    pub t1: Option<f64>,
    /// Mean conversion time in frames
    #[arg(long = "mean-tc")]
    pub mean_tc: Option<f64>,
    #[arg(long = "ns-proposed")]
    pub ns_proposed: Option<f64>,
    #[arg(long = "ns-typical")]
    pub ns_typical: Option<f64>,
    #[arg(long)]
    pub speedup: Option<f64>,
}

#[derive(Args, Debug)]
pub struct MinclockArgs {
    /// Input signal spec (same mini-language as `simulate`)
    #[arg(long)]
    pub signal: String,
    #[arg(long, value_enum)]
    pub arch: ArchChoice,
    #[arg(long)]
    pub bits: u32,
    /// Steady-state RMSE budget in LSB
    #[arg(long = "threshold-lsb")]
    pub threshold_lsb: f64,
    /// Lowest ladder rung to try (default 16)
    #[arg(long = "ladder-min")]
    pub ladder_min: Option<u64>,
    /// Highest ladder rung to try (default 1048576)
    #[arg(long = "ladder-max")]
    pub ladder_max: Option<u64>,
}

#[derive(Args, Debug)]
pub struct PlotArgs {
    /// Input signal spec (same mini-language as `simulate`)
    #[arg(long)]
    pub signal: String,
    #[arg(long)]
    pub bits: u32,
    #[arg(long)]
    pub clocks: u64,
    #[arg(long, default_value_t = 2)]
    pub m: u64,
    #[arg(long, default_value_t = 1)]
    pub n: u64,
    #[arg(long, default_value_t = 1)]
    pub k: u64,
    /// Output SVG path
    #[arg(long)]
    pub out: PathBuf,
}
