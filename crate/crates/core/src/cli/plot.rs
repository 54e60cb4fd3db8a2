//! Minimal SVG figures and CSV tables.

use std::fmt::Write;

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 540.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 180.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 55.0;

pub(crate) const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#555555"];

/// Plot in data coordinates; everything drawn is clipped to the axes box.
pub(crate) struct Figure {
    title: String,
    x_label: String,
    y_label: String,
    x: (f64, f64),
    y: (f64, f64),
    body: String,
    legend: Vec<(String, String)>,
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Rounds a tick spacing to 1, 2 or 5 times a power of ten.
fn tick_step(span: f64) -> f64 {
    let raw = span / 6.0;
    let mag = 10f64.powf(raw.log10().floor());
    let norm = raw / mag;
    let nice = if norm < 1.5 {
        1.0
    } else if norm < 3.5 {
        2.0
    } else if norm < 7.5 {
        5.0
    } else {
        10.0
    };
    nice * mag
}

fn widen(range: (f64, f64)) -> (f64, f64) {
    if range.1 > range.0 {
        range
    } else {
        let pad = range.0.abs().max(1.0) * 0.5;
        (range.0 - pad, range.0 + pad)
    }
}

impl Figure {
    pub(crate) fn new(title: &str, x_label: &str, y_label: &str, x: (f64, f64), y: (f64, f64)) -> Figure {
        Figure {
            title: title.into(),
            x_label: x_label.into(),
            y_label: y_label.into(),
            x: widen(x),
            y: widen(y),
            body: String::new(),
            legend: Vec::new(),
        }
    }

    fn px(&self, x: f64) -> f64 {
        LEFT + (x - self.x.0) / (self.x.1 - self.x.0) * (WIDTH - LEFT - RIGHT)
    }

    fn py(&self, y: f64) -> f64 {
        HEIGHT - BOTTOM - (y - self.y.0) / (self.y.1 - self.y.0) * (HEIGHT - TOP - BOTTOM)
    }

    pub(crate) fn polyline(&mut self, points: &[[f64; 2]], stroke: &str, width: f64, dashed: bool) {
        // Split at non-finite points so gaps stay gaps.
        for run in points.split(|p| !p[0].is_finite() || !p[1].is_finite()) {
            if run.len() < 2 {
                continue;
            }
            let mut d = String::new();
            for p in run {
                let _ = write!(d, "{:.2},{:.2} ", self.px(p[0]), self.py(p[1].clamp(-1e9, 1e9)));
            }
            let dash = if dashed { " stroke-dasharray=\"6 4\"" } else { "" };
            let _ = writeln!(
                self.body,
                "<polyline fill=\"none\" stroke=\"{stroke}\" stroke-width=\"{width}\"{dash} points=\"{}\"/>",
                d.trim_end()
            );
        }
    }

    pub(crate) fn rect(&mut self, x0: f64, y0: f64, x1: f64, y1: f64, fill: &str) {
        let (a, b) = (self.px(x0.min(x1)), self.px(x0.max(x1)));
        let (c, d) = (self.py(y0.max(y1)), self.py(y0.min(y1)));
        let _ = writeln!(
            self.body,
            "<rect x=\"{a:.2}\" y=\"{c:.2}\" width=\"{:.2}\" height=\"{:.2}\" fill=\"{fill}\" shape-rendering=\"crispEdges\"/>",
            b - a,
            d - c
        );
    }

    pub(crate) fn marker(&mut self, x: f64, y: f64, filled: bool, color: &str) {
        let fill = if filled { color } else { "white" };
        let _ = writeln!(
            self.body,
            "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"4\" fill=\"{fill}\" stroke=\"{color}\" stroke-width=\"1.5\"/>",
            self.px(x),
            self.py(y)
        );
    }

    pub(crate) fn legend(&mut self, label: &str, color: &str) {
        self.legend.push((label.into(), color.into()));
    }

    pub(crate) fn render(&self) -> String {
        let (x0, x1) = (LEFT, WIDTH - RIGHT);
        let (y0, y1) = (TOP, HEIGHT - BOTTOM);
        let mut s = String::new();
        let _ = writeln!(
            s,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{WIDTH}\" height=\"{HEIGHT}\" \
             viewBox=\"0 0 {WIDTH} {HEIGHT}\" font-family=\"sans-serif\" font-size=\"12\">"
        );
        let _ = writeln!(s, "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>");
        let _ = writeln!(
            s,
            "<defs><clipPath id=\"plot\"><rect x=\"{x0}\" y=\"{y0}\" width=\"{}\" height=\"{}\"/></clipPath></defs>",
            x1 - x0,
            y1 - y0
        );
        let _ = writeln!(s, "<g clip-path=\"url(#plot)\">\n{}</g>", self.body);
        let _ = writeln!(
            s,
            "<rect x=\"{x0}\" y=\"{y0}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"black\"/>",
            x1 - x0,
            y1 - y0
        );

        let step = tick_step(self.x.1 - self.x.0);
        let mut t = (self.x.0 / step).ceil() * step;
        while t <= self.x.1 + 1e-9 * step {
            let p = self.px(t);
            let _ = writeln!(
                s,
                "<line x1=\"{p:.2}\" y1=\"{y1}\" x2=\"{p:.2}\" y2=\"{}\" stroke=\"black\"/>\
                 <text x=\"{p:.2}\" y=\"{}\" text-anchor=\"middle\">{}</text>",
                y1 + 5.0,
                y1 + 18.0,
                fmt_tick(t, step)
            );
            t += step;
        }
        let step = tick_step(self.y.1 - self.y.0);
        let mut t = (self.y.0 / step).ceil() * step;
        while t <= self.y.1 + 1e-9 * step {
            let p = self.py(t);
            let _ = writeln!(
                s,
                "<line x1=\"{}\" y1=\"{p:.2}\" x2=\"{x0}\" y2=\"{p:.2}\" stroke=\"black\"/>\
                 <text x=\"{}\" y=\"{:.2}\" text-anchor=\"end\">{}</text>",
                x0 - 5.0,
                x0 - 8.0,
                p + 4.0,
                fmt_tick(t, step)
            );
            t += step;
        }

        let _ = writeln!(
            s,
            "<text x=\"{}\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">{}</text>",
            (x0 + x1) / 2.0,
            escape(&self.title)
        );
        let _ = writeln!(
            s,
            "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>",
            (x0 + x1) / 2.0,
            HEIGHT - 15.0,
            escape(&self.x_label)
        );
        let _ = writeln!(
            s,
            "<text x=\"18\" y=\"{}\" text-anchor=\"middle\" transform=\"rotate(-90 18 {})\">{}</text>",
            (y0 + y1) / 2.0,
            (y0 + y1) / 2.0,
            escape(&self.y_label)
        );
        for (i, (label, color)) in self.legend.iter().enumerate() {
            let y = y0 + 10.0 + 20.0 * i as f64;
            let _ = writeln!(
                s,
                "<rect x=\"{}\" y=\"{}\" width=\"14\" height=\"10\" fill=\"{color}\"/>\
                 <text x=\"{}\" y=\"{}\">{}</text>",
                x1 + 12.0,
                y - 9.0,
                x1 + 32.0,
                y,
                escape(label)
            );
        }
        s.push_str("</svg>\n");
        s
    }
}

fn fmt_tick(t: f64, step: f64) -> String {
    let t = if t.abs() < 1e-12 * step { 0.0 } else { t };
    let digits = (-step.log10().floor()).max(0.0) as usize;
    format!("{t:.digits$}")
}

/// Comma-separated table with a header row.
pub(crate) fn csv(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ticks_are_round() {
        assert_eq!(tick_step(6.0), 1.0);
        assert!((tick_step(1.2) - 0.2).abs() < 1e-15);
        assert!((tick_step(300.0) - 50.0).abs() < 1e-12);
    }

    #[test]
    fn svg_is_self_contained() {
        let mut f = Figure::new("t <1>", "x", "y", (0.0, 1.0), (0.0, 1.0));
        f.polyline(&[[0.0, 0.0], [0.5, f64::NAN], [0.6, 0.2], [1.0, 1.0]], "red", 1.0, false);
        f.legend("curve", "red");
        let s = f.render();
        assert!(s.starts_with("<svg"));
        assert!(s.ends_with("</svg>\n"));
        assert_eq!(s.matches("<polyline").count(), 1);
        assert!(s.contains("t &lt;1&gt;"));
    }

    #[test]
    fn degenerate_range_is_widened() {
        let f = Figure::new("", "", "", (1.0, 1.0), (0.0, 1.0));
        assert!(f.x.1 > f.x.0);
    }

    #[test]
    fn csv_has_header() {
        let t = csv(&["a", "b"], vec![vec!["1".into(), "2".into()]]);
        assert_eq!(t, "a,b\n1,2\n");
    }
}
