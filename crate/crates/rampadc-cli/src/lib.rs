//! Command-line front end for the converter simulator: single runs, the
//! four-signal benchmark, closed-form equation evaluation, the minimum-clock
//! study, and SVG plots.

pub mod cli;
pub mod commands;
pub mod render;
pub mod signal_spec;
pub mod svg;
