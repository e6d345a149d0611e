//! Minimal SVG 1.1 line-plot emitter.

use std::fmt::Write;

const PANEL_W: f64 = 480.0;
const PANEL_H: f64 = 400.0;
const MARGIN_L: f64 = 70.0;
const MARGIN_R: f64 = 20.0;
const MARGIN_T: f64 = 40.0;
const MARGIN_B: f64 = 50.0;
const TICKS: usize = 5;

pub struct Panel<'a> {
    pub title: &'a str,
    pub x_label: &'a str,
    pub y_label: &'a str,
    pub points: Vec<(f64, f64)>,
    pub log_x: bool,
}

struct Axis {
    lo: f64,
    hi: f64,
    log: bool,
}

impl Axis {
    fn fit(values: impl Iterator<Item = f64>, log: bool) -> Self {
        let (mut lo, mut hi) = values
            .map(|v| if log { v.log10() } else { v })
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(v), b.max(v)));
        if hi - lo < 1e-12 * hi.abs().max(1.0) {
            lo -= 0.5;
            hi += 0.5;
        }
        Self { lo, hi, log }
    }

    /// Position in [0, 1].
    fn unit(&self, v: f64) -> f64 {
        let v = if self.log { v.log10() } else { v };
        (v - self.lo) / (self.hi - self.lo)
    }

    fn tick(&self, i: usize) -> (f64, String) {
        let t = i as f64 / (TICKS - 1) as f64;
        let v = self.lo + t * (self.hi - self.lo);
        let label = if self.log {
            format!("1e{v:.1}")
        } else if v != 0.0 && (v.abs() < 1e-2 || v.abs() >= 1e4) {
            format!("{v:.2e}")
        } else {
            format!("{v:.3}")
        };
        (t, label)
    }
}

fn panel(svg: &mut String, p: &Panel<'_>, x0: f64) {
    let plot_w = PANEL_W - MARGIN_L - MARGIN_R;
    let plot_h = PANEL_H - MARGIN_T - MARGIN_B;
    let (left, top) = (x0 + MARGIN_L, MARGIN_T);
    let (right, bottom) = (left + plot_w, top + plot_h);
    let xa = Axis::fit(p.points.iter().map(|q| q.0), p.log_x);
    let ya = Axis::fit(p.points.iter().map(|q| q.1), false);

    let _ = writeln!(
        svg,
        r#"  <text x="{:.1}" y="24" text-anchor="middle" font-size="15">{}</text>"#,
        left + plot_w / 2.0,
        p.title
    );
    let _ = writeln!(
        svg,
        r#"  <rect x="{left:.1}" y="{top:.1}" width="{plot_w:.1}" height="{plot_h:.1}" fill="none" stroke="black"/>"#
    );
    for i in 0..TICKS {
        let (t, label) = xa.tick(i);
        let x = left + t * plot_w;
        let _ = writeln!(
            svg,
            r##"  <line x1="{x:.1}" y1="{top:.1}" x2="{x:.1}" y2="{bottom:.1}" stroke="#ddd"/>"##
        );
        let _ = writeln!(
            svg,
            r#"  <text x="{x:.1}" y="{:.1}" text-anchor="middle" font-size="11">{label}</text>"#,
            bottom + 16.0
        );
        let (t, label) = ya.tick(i);
        let y = bottom - t * plot_h;
        let _ = writeln!(
            svg,
            r##"  <line x1="{left:.1}" y1="{y:.1}" x2="{right:.1}" y2="{y:.1}" stroke="#ddd"/>"##
        );
        let _ = writeln!(
            svg,
            r#"  <text x="{:.1}" y="{:.1}" text-anchor="end" font-size="11">{label}</text>"#,
            left - 6.0,
            y + 4.0
        );
    }
    let _ = writeln!(
        svg,
        r#"  <text x="{:.1}" y="{:.1}" text-anchor="middle" font-size="13">{}</text>"#,
        left + plot_w / 2.0,
        bottom + 38.0,
        p.x_label
    );
    let _ = writeln!(
        svg,
        r#"  <text x="{0:.1}" y="{1:.1}" text-anchor="middle" font-size="13" transform="rotate(-90 {0:.1} {1:.1})">{2}</text>"#,
        x0 + 18.0,
        top + plot_h / 2.0,
        p.y_label
    );

    let coords: Vec<String> = p
        .points
        .iter()
        .map(|&(x, y)| {
            format!(
                "{:.2},{:.2}",
                left + xa.unit(x) * plot_w,
                bottom - ya.unit(y) * plot_h
            )
        })
        .collect();
    let _ = writeln!(
        svg,
        r##"  <polyline fill="none" stroke="#1f5fa8" stroke-width="1.5" points="{}"/>"##,
        coords.join(" ")
    );
}

/// Render the panels side by side as one SVG 1.1 document.
pub fn render(panels: &[Panel<'_>]) -> String {
    let width = PANEL_W * panels.len() as f64;
    let mut svg = String::new();
    let _ = writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8" standalone="no"?>"#);
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.0}" height="{PANEL_H:.0}" viewBox="0 0 {width:.0} {PANEL_H:.0}" font-family="sans-serif">"#
    );
    let _ = writeln!(svg, r#"  <rect width="100%" height="100%" fill="white"/>"#);
    for (i, p) in panels.iter().enumerate() {
        panel(&mut svg, p, PANEL_W * i as f64);
    }
    svg.push_str("</svg>\n");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(log_x: bool) -> Panel<'static> {
        Panel {
            title: "t",
            x_label: "x",
            y_label: "y",
            points: (1..=10).map(|i| (f64::from(i), f64::from(i * i))).collect(),
            log_x,
        }
    }

    #[test]
    fn one_polyline_per_panel_inside_the_frame() {
        let svg = render(&[sample(false), sample(true)]);
        assert!(svg.starts_with("<?xml"));
        assert!(svg.contains(r#"version="1.1""#));
        assert_eq!(svg.matches("<polyline").count(), 2);
        let first = svg.split("points=\"").nth(1).unwrap().split('"').next().unwrap();
        for pair in first.split(' ') {
            let (x, y) = pair.split_once(',').unwrap();
            let (x, y): (f64, f64) = (x.parse().unwrap(), y.parse().unwrap());
            assert!((MARGIN_L..=PANEL_W - MARGIN_R).contains(&x));
            assert!((MARGIN_T..=PANEL_H - MARGIN_B).contains(&y));
        }
    }

    #[test]
    fn constant_series_does_not_divide_by_zero() {
        let p = Panel {
            points: vec![(0.0, 1.0), (1.0, 1.0)],
            ..sample(false)
        };
        assert!(!render(&[p]).contains("NaN"));
    }
}
