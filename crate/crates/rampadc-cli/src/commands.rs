//! Subcommand implementations. Each returns the process exit code; errors
//! bubble up as exit code 1, and a minimum-clock search that exhausts its
//! ladder exits with code 3.

use std::fs;
use std::io::BufWriter;

use anyhow::{bail, Context, Result};

use rampadc::adc::{run_frame, AdcConfig, Architecture};
use rampadc::analytic;
use rampadc::metrics::{compare, min_clock_search, ComparisonReport};
use rampadc::signal::SignalSource;

use crate::cli::{AnalyticArgs, BenchArgs, Cli, Command, MinclockArgs, PlotArgs, SimulateArgs};
use crate::render::{format_sig, render_table};
use crate::signal_spec::parse_signal_spec;
use crate::svg::render_comparison;

/// Exit code for a minimum-clock search that found no passing rung.
pub const EXIT_NOT_FOUND: i32 = 3;

pub fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Simulate(args) => simulate(args).map(|()| 0),
        Command::Bench(args) => bench(args).map(|()| 0),
        Command::Analytic(args) => analytic_cmd(args).map(|()| 0),
        Command::Minclock(args) => minclock(args),
        Command::Plot(args) => plot(args).map(|()| 0),
    }
}

fn parse_signal(spec: &str) -> Result<SignalSource> {
    parse_signal_spec(spec).map_err(|e| anyhow::anyhow!("{e}"))
}

fn simulate(args: SimulateArgs) -> Result<()> {
    let sig = parse_signal(&args.signal)?;
    let cfg = AdcConfig::new(args.bits, args.clocks)?.with_overheads(args.m, args.n, args.k)?;
    let trace = run_frame(&sig, args.arch.into(), &cfg);
    if let Some(path) = &args.out {
        let file =
            fs::File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
        let mut writer = BufWriter::new(file);
        trace
            .write_csv(&mut writer)
            .with_context(|| format!("cannot write trace CSV to {}", path.display()))?;
    }
    let mean_cycles = if trace.is_empty() {
        0.0
    } else {
        trace.frame_clocks_used as f64 / trace.len() as f64
    };
    println!("n_samples={} mean_cycles={}", trace.len(), mean_cycles);
    Ok(())
}

fn bench(args: BenchArgs) -> Result<()> {
    let cfg = AdcConfig::new(8, 262_144)?;
    let ecg = match &args.ecg {
        Some(path) => SignalSource::load_table(path)
            .with_context(|| format!("cannot load ECG record {}", path.display()))?,
        None => SignalSource::synthetic_ecg(args.beats)?,
    };
    let rows = [
        ("DC", SignalSource::dc(9.5 / 255.0)?),
        ("Sine", SignalSource::sine(0.5, 0.5, 1.0)?),
        ("Exponential", SignalSource::exponential()),
        ("ECG", ecg),
    ];
    let reports: Vec<ComparisonReport> = rows
        .iter()
        .map(|(name, sig)| compare(name, sig, &cfg))
        .collect::<Result<_, _>>()?;

    print!("{}", render_table(&reports));
    let mut json = serde_json::to_string_pretty(&reports)?;
    json.push('\n');
    match &args.out {
        Some(path) => fs::write(path, json)
            .with_context(|| format!("cannot write report to {}", path.display()))?,
        None => print!("{json}"),
    }
    Ok(())
}

/// Flag plumbing for `analytic`: which flags each equation requires and
/// which extras it accepts. Anything else provided is rejected.
struct EqSpec {
    required: &'static [&'static str],
    optional: &'static [&'static str],
}

fn eq_spec(eq: u32) -> Option<EqSpec> {
    let spec = match eq {
        1 => EqSpec {
            required: &["--s", "--bits"],
            optional: &["--m", "--n", "--k", "--sref", "--clocks"],
        },
        3 => EqSpec {
            required: &["--s", "--bits"],
            optional: &["--l", "--sref", "--clocks"],
        },
        5 => EqSpec {
            required: &["--s", "--slast", "--bits"],
            optional: &["--l", "--sref", "--clocks"],
        },
        8 => EqSpec {
            required: &["--slope", "--prev-time", "--bits", "--clocks"],
            optional: &["--l", "--sref"],
        },
        9 => EqSpec {
            required: &["--clocks"],
            optional: &["--m", "--n"],
        },
        12 => EqSpec {
            required: &["--slope", "--prev-time", "--bits"],
            optional: &["--l", "--sref", "--smean"],
        },
        13 => EqSpec {
            required: &["--bits"],
            optional: &["--l"],
        },
        14 => EqSpec {
            required: &["--t0", "--t1", "--mean-tc"],
            optional: &[],
        },
        15 => EqSpec {
            required: &["--ns-proposed", "--ns-typical"],
            optional: &[],
        },
        17 => EqSpec {
            required: &["--speedup"],
            optional: &[],
        },
        _ => return None,
    };
    Some(spec)
}

/// Build a configuration whose total overhead is `l`, split as M = l−1, N = 1.
/// Only the sum matters to the expressions that take `--l`.
fn cfg_from_l(bits: u32, clocks: u64, l: u64, sref: f64) -> Result<AdcConfig> {
    if l < 2 {
        bail!("--l must be at least 2 (L = M + N with M, N ≥ 1)");
    }
    Ok(AdcConfig::new(bits, clocks)?
        .with_overheads(l - 1, 1, 1)?
        .with_s_ref(sref)?)
}

fn analytic_cmd(args: AnalyticArgs) -> Result<()> {
    let spec = match eq_spec(args.eq) {
        Some(s) => s,
        None => bail!(
            "unsupported equation {} (supported: 1, 3, 5, 8, 9, 12, 13, 14, 15, 17)",
            args.eq
        ),
    };

    let provided: Vec<&'static str> = [
        ("--s", args.s.is_some()),
        ("--slast", args.slast.is_some()),
        ("--slope", args.slope.is_some()),
        ("--prev-time", args.prev_time.is_some()),
        ("--bits", args.bits.is_some()),
        ("--l", args.l.is_some()),
        ("--m", args.m.is_some()),
        ("--n", args.n.is_some()),
        ("--k", args.k.is_some()),
        ("--clocks", args.clocks.is_some()),
        ("--sref", args.sref.is_some()),
        ("--smean", args.smean.is_some()),
        ("--t0", args.t0.is_some()),
        ("--t1", args.t1.is_some()),
        ("--mean-tc", args.mean_tc.is_some()),
        ("--ns-proposed", args.ns_proposed.is_some()),
        ("--ns-typical", args.ns_typical.is_some()),
        ("--speedup", args.speedup.is_some()),
    ]
    .into_iter()
    .filter_map(|(name, given)| given.then_some(name))
    .collect();

    for required in spec.required {
        if !provided.contains(required) {
            bail!("--eq {} requires {required}", args.eq);
        }
    }
    for flag in &provided {
        if !spec.required.contains(flag) && !spec.optional.contains(flag) {
            bail!("unexpected flag {flag} for --eq {}", args.eq);
        }
    }

    let sref = args.sref.unwrap_or(1.0);
    let l = args.l.unwrap_or(3);
    let m = args.m.unwrap_or(2);
    let n = args.n.unwrap_or(1);
    let k = args.k.unwrap_or(1);

    // Timing expressions print frames when --clocks is given, cycles
    // otherwise.
    let value = match args.eq {
        1 => {
            let cfg = AdcConfig::new(args.bits.unwrap(), args.clocks.unwrap_or(1))?
                .with_overheads(m, n, k)?
                .with_s_ref(sref)?;
            let cycles = analytic::typical_cycles_exact(args.s.unwrap(), &cfg) as f64;
            match args.clocks {
                Some(clocks) => cycles / clocks as f64,
                None => cycles,
            }
        }
        3 => {
            let cfg = cfg_from_l(args.bits.unwrap(), args.clocks.unwrap_or(1), l, sref)?;
            let cycles = analytic::typical_cycles_approx(args.s.unwrap(), &cfg) as f64;
            match args.clocks {
                Some(clocks) => cycles / clocks as f64,
                None => cycles,
            }
        }
        5 => {
            let cfg = cfg_from_l(args.bits.unwrap(), args.clocks.unwrap_or(1), l, sref)?;
            let cycles =
                analytic::proposed_cycles(args.s.unwrap(), args.slast.unwrap(), &cfg) as f64;
            match args.clocks {
                Some(clocks) => cycles / clocks as f64,
                None => cycles,
            }
        }
        8 => {
            let cfg = cfg_from_l(args.bits.unwrap(), args.clocks.unwrap(), l, sref)?;
            analytic::proposed_time_recursive(args.slope.unwrap(), args.prev_time.unwrap(), &cfg)
        }
        9 => {
            let cfg = AdcConfig::new(8, args.clocks.unwrap())?.with_overheads(m, n, 1)?;
            analytic::overhead_bound(&cfg)
        }
        12 => {
            let cfg = cfg_from_l(args.bits.unwrap(), 1, l, sref)?;
            let s_mean = args.smean.unwrap_or(sref / 2.0);
            analytic::reduction_estimate(args.slope.unwrap(), args.prev_time.unwrap(), s_mean, &cfg)
        }
        13 => {
            let cfg = cfg_from_l(args.bits.unwrap(), 1, l, 1.0)?;
            analytic::reduction_bound(&cfg)
        }
        14 => analytic::sample_count(args.t0.unwrap(), args.t1.unwrap(), args.mean_tc.unwrap())?,
        15 => analytic::speed_up(args.ns_proposed.unwrap(), args.ns_typical.unwrap())?,
        17 => analytic::reduction_percent(args.speedup.unwrap())?,
        _ => unreachable!("eq_spec screened the equation number"),
    };
    println!("{}", format_sig(value, 12));
    Ok(())
}

fn minclock(args: MinclockArgs) -> Result<i32> {
    let sig = parse_signal(&args.signal)?;
    let lo = args.ladder_min.unwrap_or(16);
    let hi = args.ladder_max.unwrap_or(1 << 20);
    let ladder: Vec<u64> = (0..=40)
        .map(|p| 1u64 << p)
        .filter(|&c| c >= lo && c <= hi)
        .collect();
    if ladder.is_empty() {
        bail!("no power-of-two ladder rungs between {lo} and {hi}");
    }
    let report = min_clock_search(
        &sig,
        args.arch.into(),
        args.bits,
        args.threshold_lsb,
        &ladder,
    )?;
    println!("clocks,rmse");
    for point in &report.points {
        match point.rmse {
            Some(rmse) => println!("{},{}", point.clocks_per_frame, rmse),
            None => println!("{},", point.clocks_per_frame),
        }
    }
    match report.minimum {
        Some(minimum) => {
            println!("min_clocks={minimum}");
            Ok(0)
        }
        None => {
            println!("min_clocks=not_found");
            Ok(EXIT_NOT_FOUND)
        }
    }
}

fn plot(args: PlotArgs) -> Result<()> {
    let sig = parse_signal(&args.signal)?;
    let cfg = AdcConfig::new(args.bits, args.clocks)?.with_overheads(args.m, args.n, args.k)?;
    let typical = run_frame(&sig, Architecture::Typical, &cfg);
    let proposed = run_frame(&sig, Architecture::Proposed, &cfg);
    let svg = render_comparison(&sig, &typical, &proposed);
    fs::write(&args.out, svg)
        .with_context(|| format!("cannot write SVG to {}", args.out.display()))?;
    Ok(())
}
