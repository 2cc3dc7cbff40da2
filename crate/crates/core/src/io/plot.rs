//! Static SVG charts for batch results.

use std::fmt::Write as _;

use crate::metrics::Fit;

const W: f64 = 360.0;
const H: f64 = 360.0;
const PAD: f64 = 40.0;
const COLORS: [&str; 4] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

fn frame(s: &mut String, title: &str, xlabel: &str, ylabel: &str, max_x: f64, max_y: f64) {
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" font-family="sans-serif" font-size="11">"#
    );
    let _ = writeln!(
        s,
        r#"<text x="{}" y="16" text-anchor="middle">{}</text>"#,
        W / 2.0,
        escape(title)
    );
    let _ = writeln!(
        s,
        r#"<path d="M{PAD},{PAD} V{} H{}" fill="none" stroke="black"/>"#,
        H - PAD,
        W - PAD
    );
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#,
        W / 2.0,
        H - 8.0,
        escape(xlabel)
    );
    let _ = writeln!(
        s,
        r#"<text x="12" y="{}" text-anchor="middle" transform="rotate(-90 12 {})">{}</text>"#,
        H / 2.0,
        H / 2.0,
        escape(ylabel)
    );
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" text-anchor="end">{}</text>"#,
        W - PAD,
        H - PAD + 14.0,
        fmt_num(max_x)
    );
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" text-anchor="end">{}</text>"#,
        PAD - 4.0,
        PAD + 4.0,
        fmt_num(max_y)
    );
}

fn fmt_num(v: f64) -> String {
    if v.fract() == 0.0 && v.abs() < 1e9 {
        format!("{}", v as i64)
    } else {
        format!("{v:.3}")
    }
}

/// Scatter of paired values with the bisector and an optional trend line.
pub fn scatter_svg(
    title: &str,
    xlabel: &str,
    ylabel: &str,
    points: &[(f64, f64)],
    fit: Option<&Fit>,
) -> String {
    let max = points
        .iter()
        .flat_map(|&(x, y)| [x, y])
        .fold(0.0f64, f64::max)
        .max(1.0);
    let px = |v: f64| PAD + v / max * (W - 2.0 * PAD);
    let py = |v: f64| H - PAD - v / max * (H - 2.0 * PAD);
    let mut s = String::new();
    frame(&mut s, title, xlabel, ylabel, max, max);
    let _ = writeln!(
        s,
        r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="gray"/>"#,
        px(0.0),
        py(0.0),
        px(max),
        py(max)
    );
    for &(x, y) in points {
        let _ = writeln!(
            s,
            r#"<circle cx="{:.2}" cy="{:.2}" r="2.5" fill="{}" fill-opacity="0.6"/>"#,
            px(x),
            py(y),
            COLORS[0]
        );
    }
    if let Some(f) = fit {
        let steps = 50;
        let mut d = String::new();
        for i in 0..=steps {
            let x = max * i as f64 / steps as f64;
            let y = f.eval(x).clamp(0.0, max);
            let _ = write!(
                d,
                "{}{:.2},{:.2} ",
                if i == 0 { "M" } else { "L" },
                px(x),
                py(y)
            );
        }
        let _ = writeln!(
            s,
            r#"<path d="{}" fill="none" stroke="red" stroke-dasharray="5,3"/>"#,
            d.trim_end()
        );
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}">R² = {:.3}</text>"#,
            PAD + 6.0,
            PAD + 12.0,
            f.r_squared
        );
    }
    s.push_str("</svg>\n");
    s
}

/// Empirical cumulative distribution of each series.
pub fn cdf_svg(title: &str, xlabel: &str, series: &[(&str, Vec<f64>)]) -> String {
    let max = series
        .iter()
        .flat_map(|(_, v)| v.iter().copied())
        .fold(0.0f64, f64::max)
        .max(1e-9);
    let px = |v: f64| PAD + v / max * (W - 2.0 * PAD);
    let py = |f: f64| H - PAD - f * (H - 2.0 * PAD);
    let mut s = String::new();
    frame(&mut s, title, xlabel, "fraction", max, 1.0);
    for (i, (name, values)) in series.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let mut v = values.clone();
        v.sort_by(|a, b| a.total_cmp(b));
        let n = v.len().max(1) as f64;
        let mut d = format!("M{:.2},{:.2}", px(0.0), py(0.0));
        for (k, &x) in v.iter().enumerate() {
            let _ = write!(d, " H{:.2} V{:.2}", px(x), py((k + 1) as f64 / n));
        }
        let _ = write!(d, " H{:.2}", px(max));
        let _ = writeln!(s, r#"<path d="{d}" fill="none" stroke="{color}"/>"#);
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" fill="{color}">{}</text>"#,
            W - PAD - 80.0,
            H - PAD - 10.0 - 14.0 * i as f64,
            escape(name)
        );
    }
    s.push_str("</svg>\n");
    s
}
