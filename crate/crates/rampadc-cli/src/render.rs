//! Text rendering helpers: significant-digit formatting and the benchmark
//! table.

use rampadc::metrics::ComparisonReport;

/// Format `v` in plain decimal with the given number of significant digits,
/// keeping trailing zeros (e.g. `format_sig(1.0 - 3.0/128.0, 12)` is
/// `"0.976562500000"`).
pub fn format_sig(v: f64, digits: u32) -> String {
    if !v.is_finite() {
        return v.to_string();
    }
    if v == 0.0 {
        return format!("{:.*}", digits.saturating_sub(1) as usize, 0.0);
    }
    let exponent = v.abs().log10().floor() as i32;
    let decimals = (digits as i32 - 1 - exponent).max(0) as usize;
    format!("{v:.decimals$}")
}

/// Fixed-width benchmark table with figures of merit rounded to three
/// significant digits.
pub fn render_table(reports: &[ComparisonReport]) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{:<14} {:>12} {:>13} {:>9} {:>10} {:>14} {:>15}\n",
        "Signal",
        "N_S typical",
        "N_S proposed",
        "Speed-up",
        "Reduction",
        "RMSE typ [LSB]",
        "RMSE prop [LSB]"
    ));
    for r in reports {
        out.push_str(&format!(
            "{:<14} {:>12} {:>13} {:>9} {:>9}% {:>14} {:>15}\n",
            r.signal_name,
            r.ns_typical,
            r.ns_proposed,
            format_sig(r.speed_up, 3),
            format_sig(r.reduction_percent, 3),
            format_sig(r.rmse_typical, 3),
            format_sig(r.rmse_proposed, 3),
        ));
    }
    out
}
