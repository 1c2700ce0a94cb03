//! SVG rendering of one frame: the input curve in green, the typical
//! reconstruction staircase in red, and the proposed staircase in black,
//! on axes normalized to the unit frame and unit amplitude.

use rampadc::adc::{dac, Trace};
use rampadc::signal::SignalSource;

const WIDTH: f64 = 860.0;
const HEIGHT: f64 = 540.0;
const MARGIN_LEFT: f64 = 60.0;
const MARGIN_RIGHT: f64 = 20.0;
const MARGIN_TOP: f64 = 20.0;
const MARGIN_BOTTOM: f64 = 40.0;

/// Most points to spend on the input curve; the staircases keep every code
/// change.
const INPUT_POINTS: u64 = 2048;

fn plot_width() -> f64 {
    WIDTH - MARGIN_LEFT - MARGIN_RIGHT
}

fn plot_height() -> f64 {
    HEIGHT - MARGIN_TOP - MARGIN_BOTTOM
}

fn map_x(t: f64) -> f64 {
    MARGIN_LEFT + t * plot_width()
}

fn map_y(v: f64) -> f64 {
    MARGIN_TOP + (1.0 - v.clamp(0.0, 1.0)) * plot_height()
}

fn points_attr(points: &[(f64, f64)]) -> String {
    let mut s = String::with_capacity(points.len() * 14);
    for (i, &(t, v)) in points.iter().enumerate() {
        if i > 0 {
            s.push(' ');
        }
        s.push_str(&format!("{:.2},{:.2}", map_x(t), map_y(v)));
    }
    s
}

/// Zero-order-hold staircase vertices for a trace, starting at the power-on
/// level and coalescing runs of identical codes.
fn staircase_points(trace: &Trace) -> Vec<(f64, f64)> {
    let cpf = trace.config.clocks_per_frame() as f64;
    let mut level = 0.0;
    let mut pts = vec![(0.0, level)];
    for r in &trace.records {
        let v = dac(r.output_code, &trace.config).expect("trace codes are in range");
        if v != level {
            let t = r.end_clock as f64 / cpf;
            pts.push((t, level));
            pts.push((t, v));
            level = v;
        }
    }
    pts.push((1.0, level));
    pts
}

fn input_points(sig: &SignalSource, clocks: u64) -> Vec<(f64, f64)> {
    let n = clocks.min(INPUT_POINTS);
    (0..=n)
        .map(|i| {
            let t = i as f64 / n as f64;
            let v = sig.evaluate(t).expect("plot samples stay within the frame");
            (t, v)
        })
        .collect()
}

/// Render the comparison figure. Exactly three `<polyline>` elements: input
/// (green), typical staircase (red), proposed staircase (black).
pub fn render_comparison(sig: &SignalSource, typical: &Trace, proposed: &Trace) -> String {
    let clocks = typical.config.clocks_per_frame();
    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" \
         viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n"
    ));
    out.push_str(&format!(
        "  <rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"white\" stroke=\"#888\"/>\n",
        MARGIN_LEFT,
        MARGIN_TOP,
        plot_width(),
        plot_height()
    ));
    // Quarter-frame grid with labels on both axes.
    for i in 0..=4 {
        let frac = i as f64 / 4.0;
        let x = map_x(frac);
        let y = map_y(frac);
        out.push_str(&format!(
            "  <line x1=\"{x:.2}\" y1=\"{}\" x2=\"{x:.2}\" y2=\"{}\" stroke=\"#ddd\"/>\n",
            MARGIN_TOP,
            MARGIN_TOP + plot_height()
        ));
        out.push_str(&format!(
            "  <line x1=\"{}\" y1=\"{y:.2}\" x2=\"{}\" y2=\"{y:.2}\" stroke=\"#ddd\"/>\n",
            MARGIN_LEFT,
            MARGIN_LEFT + plot_width()
        ));
        out.push_str(&format!(
            "  <text x=\"{x:.2}\" y=\"{}\" font-size=\"12\" text-anchor=\"middle\">{frac}</text>\n",
            HEIGHT - MARGIN_BOTTOM + 16.0
        ));
        out.push_str(&format!(
            "  <text x=\"{}\" y=\"{:.2}\" font-size=\"12\" text-anchor=\"end\">{frac}</text>\n",
            MARGIN_LEFT - 6.0,
            y + 4.0
        ));
    }
    out.push_str(&format!(
        "  <text x=\"{:.2}\" y=\"{}\" font-size=\"13\" text-anchor=\"middle\">t (frames)</text>\n",
        map_x(0.5),
        HEIGHT - 6.0
    ));
    out.push_str(&format!(
        "  <text x=\"14\" y=\"{:.2}\" font-size=\"13\" text-anchor=\"middle\" \
         transform=\"rotate(-90 14 {:.2})\">amplitude</text>\n",
        map_y(0.5),
        map_y(0.5)
    ));

    out.push_str(&format!(
        "  <polyline fill=\"none\" stroke=\"green\" stroke-width=\"1.5\" points=\"{}\"/>\n",
        points_attr(&input_points(sig, clocks))
    ));
    out.push_str(&format!(
        "  <polyline fill=\"none\" stroke=\"red\" stroke-width=\"1\" points=\"{}\"/>\n",
        points_attr(&staircase_points(typical))
    ));
    out.push_str(&format!(
        "  <polyline fill=\"none\" stroke=\"black\" stroke-width=\"1\" points=\"{}\"/>\n",
        points_attr(&staircase_points(proposed))
    ));
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rampadc::adc::{run_frame, AdcConfig, Architecture};

    #[test]
    fn three_polylines_with_expected_colors() {
        let sig = SignalSource::sine(0.5, 0.5, 1.0).unwrap();
        let cfg = AdcConfig::new(6, 512).unwrap();
        let typ = run_frame(&sig, Architecture::Typical, &cfg);
        let prop = run_frame(&sig, Architecture::Proposed, &cfg);
        let svg = render_comparison(&sig, &typ, &prop);
        assert_eq!(svg.matches("<polyline").count(), 3);
        for color in ["green", "red", "black"] {
            assert!(svg.contains(&format!("stroke=\"{color}\"")));
        }
        assert!(svg.starts_with("<svg"));
        assert!(svg.trim_end().ends_with("</svg>"));
    }

    #[test]
    fn dc_staircases_are_single_steps() {
        let sig = SignalSource::dc(0.5).unwrap();
        let cfg = AdcConfig::new(8, 4096).unwrap();
        let typ = run_frame(&sig, Architecture::Typical, &cfg);
        let prop = run_frame(&sig, Architecture::Proposed, &cfg);
        // Constant after the first conversion: power-on level, one riser, done.
        assert_eq!(staircase_points(&typ).len(), 4);
        assert_eq!(staircase_points(&prop).len(), 4);
    }

    #[test]
    fn rendering_is_deterministic() {
        let sig = SignalSource::exponential();
        let cfg = AdcConfig::new(6, 1024).unwrap();
        let typ = run_frame(&sig, Architecture::Typical, &cfg);
        let prop = run_frame(&sig, Architecture::Proposed, &cfg);
        assert_eq!(
            render_comparison(&sig, &typ, &prop),
            render_comparison(&sig, &typ, &prop)
        );
    }
}
