//! Minimal standalone SVG figures. Output depends only on the input data,
//! so identical inputs give identical bytes.

use std::fmt::Write;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 420.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 20.0;
const TOP: f64 = 36.0;
const BOTTOM: f64 = 50.0;
const PALETTE: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Style {
    Line,
    Markers,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
    pub style: Style,
}

impl Series {
    pub fn line(label: &str, points: Vec<(f64, f64)>) -> Self {
        Series {
            label: label.to_string(),
            points,
            style: Style::Line,
        }
    }

    pub fn markers(label: &str, points: Vec<(f64, f64)>) -> Self {
        Series {
            label: label.to_string(),
            points,
            style: Style::Markers,
        }
    }

    fn finite(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.points
            .iter()
            .copied()
            .filter(|(x, y)| x.is_finite() && y.is_finite())
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct LinePlot {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub series: Vec<Series>,
}

/// Values on a regular grid, row-major with `x` as the slow index.
#[derive(Debug, Clone, PartialEq)]
pub struct Heatmap {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub x_range: (f64, f64),
    pub y_range: (f64, f64),
    pub nx: usize,
    pub ny: usize,
    pub values: Vec<f64>,
    /// Symmetric blue-white-red scale around zero instead of a sequential one.
    pub diverging: bool,
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Round step from {1, 2, 5}·10^k giving about `target` intervals.
fn tick_step(span: f64, target: f64) -> f64 {
    let raw = span / target;
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

fn ticks(lo: f64, hi: f64) -> Vec<f64> {
    let step = tick_step(hi - lo, 5.0);
    let first = (lo / step).ceil() as i64;
    let last = (hi / step + 1e-9).floor() as i64;
    (first..=last).map(|k| k as f64 * step).collect()
}

fn tick_label(v: f64) -> String {
    let v = if v.abs() < 1e-12 { 0.0 } else { v };
    let s = format!("{v:.4}");
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

/// Padded data range; degenerate or empty ranges fall back to something drawable.
fn range(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| {
        (a.min(v), b.max(v))
    });
    if !lo.is_finite() {
        return (0.0, 1.0);
    }
    if hi - lo < 1e-12 {
        let pad = if lo.abs() > 1e-12 {
            0.1 * lo.abs()
        } else {
            1.0
        };
        return (lo - pad, hi + pad);
    }
    let pad = 0.05 * (hi - lo);
    (lo - pad, hi + pad)
}

struct Frame {
    x: (f64, f64),
    y: (f64, f64),
}

impl Frame {
    fn px(&self, x: f64) -> f64 {
        LEFT + (x - self.x.0) / (self.x.1 - self.x.0) * (WIDTH - LEFT - RIGHT)
    }

    fn py(&self, y: f64) -> f64 {
        HEIGHT - BOTTOM - (y - self.y.0) / (self.y.1 - self.y.0) * (HEIGHT - TOP - BOTTOM)
    }
}

fn header(out: &mut String, title: &str) {
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\" font-family=\"sans-serif\" font-size=\"12\">"
    );
    let _ = writeln!(
        out,
        "<rect width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>"
    );
    let _ = writeln!(
        out,
        "<text x=\"{}\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">{}</text>",
        WIDTH / 2.0,
        escape(title)
    );
}

fn axes(out: &mut String, frame: &Frame, x_label: &str, y_label: &str) {
    let (x0, x1) = (LEFT, WIDTH - RIGHT);
    let (y0, y1) = (HEIGHT - BOTTOM, TOP);
    let _ = writeln!(out, "<g class=\"axes\" stroke=\"black\" fill=\"none\">");
    let _ = writeln!(
        out,
        "<rect x=\"{x0}\" y=\"{y1}\" width=\"{}\" height=\"{}\"/>",
        x1 - x0,
        y0 - y1
    );
    for t in ticks(frame.x.0, frame.x.1) {
        let px = frame.px(t);
        let _ = writeln!(
            out,
            "<line x1=\"{px:.2}\" y1=\"{y0}\" x2=\"{px:.2}\" y2=\"{}\"/>",
            y0 + 5.0
        );
    }
    for t in ticks(frame.y.0, frame.y.1) {
        let py = frame.py(t);
        let _ = writeln!(
            out,
            "<line x1=\"{}\" y1=\"{py:.2}\" x2=\"{x0}\" y2=\"{py:.2}\"/>",
            x0 - 5.0
        );
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(out, "<g class=\"tick-labels\">");
    for t in ticks(frame.x.0, frame.x.1) {
        let _ = writeln!(
            out,
            "<text x=\"{:.2}\" y=\"{}\" text-anchor=\"middle\">{}</text>",
            frame.px(t),
            y0 + 18.0,
            tick_label(t)
        );
    }
    for t in ticks(frame.y.0, frame.y.1) {
        let _ = writeln!(
            out,
            "<text x=\"{}\" y=\"{:.2}\" text-anchor=\"end\">{}</text>",
            x0 - 8.0,
            frame.py(t) + 4.0,
            tick_label(t)
        );
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(
        out,
        "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>",
        (x0 + x1) / 2.0,
        HEIGHT - 12.0,
        escape(x_label)
    );
    let _ = writeln!(
        out,
        "<text x=\"16\" y=\"{0}\" text-anchor=\"middle\" transform=\"rotate(-90 16 {0})\">{1}</text>",
        (y0 + y1) / 2.0,
        escape(y_label)
    );
}

impl LinePlot {
    pub fn new(title: &str, x_label: &str, y_label: &str) -> Self {
        LinePlot {
            title: title.into(),
            x_label: x_label.into(),
            y_label: y_label.into(),
            series: Vec::new(),
        }
    }

    pub fn with(mut self, series: Series) -> Self {
        self.series.push(series);
        self
    }

    pub fn to_svg(&self) -> String {
        let frame = Frame {
            x: range(self.series.iter().flat_map(|s| s.finite().map(|p| p.0))),
            y: range(self.series.iter().flat_map(|s| s.finite().map(|p| p.1))),
        };
        let mut out = String::new();
        header(&mut out, &self.title);
        axes(&mut out, &frame, &self.x_label, &self.y_label);
        for (k, s) in self.series.iter().enumerate() {
            let color = PALETTE[k % PALETTE.len()];
            let pts: Vec<(f64, f64)> = s.finite().collect();
            if pts.is_empty() {
                continue;
            }
            match s.style {
                Style::Line => {
                    let coords: Vec<String> = pts
                        .iter()
                        .map(|&(x, y)| format!("{:.2},{:.2}", frame.px(x), frame.py(y)))
                        .collect();
                    let _ = writeln!(
                        out,
                        "<polyline class=\"series\" fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\" points=\"{}\"/>",
                        coords.join(" ")
                    );
                }
                Style::Markers => {
                    let _ = writeln!(out, "<g class=\"series\" fill=\"{color}\">");
                    for &(x, y) in &pts {
                        let _ = writeln!(
                            out,
                            "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"2.5\"/>",
                            frame.px(x),
                            frame.py(y)
                        );
                    }
                    let _ = writeln!(out, "</g>");
                }
            }
        }
        let labelled: Vec<_> = self
            .series
            .iter()
            .enumerate()
            .filter(|(_, s)| !s.label.is_empty())
            .collect();
        for (row, (k, s)) in labelled.into_iter().enumerate() {
            let y = TOP + 16.0 + 16.0 * row as f64;
            let x = WIDTH - RIGHT - 150.0;
            let color = PALETTE[k % PALETTE.len()];
            let _ = writeln!(
                out,
                "<rect x=\"{x}\" y=\"{}\" width=\"12\" height=\"4\" fill=\"{color}\"/>",
                y - 6.0
            );
            let _ = writeln!(
                out,
                "<text x=\"{}\" y=\"{y}\">{}</text>",
                x + 18.0,
                escape(&s.label)
            );
        }
        out.push_str("</svg>\n");
        out
    }
}

fn lerp_color(stops: &[(f64, [f64; 3])], t: f64) -> String {
    let t = t.clamp(0.0, 1.0);
    let k = stops
        .windows(2)
        .position(|w| t <= w[1].0)
        .unwrap_or(stops.len() - 2);
    let (a, b) = (stops[k], stops[k + 1]);
    let u = if b.0 > a.0 {
        (t - a.0) / (b.0 - a.0)
    } else {
        0.0
    };
    let c: Vec<u8> = (0..3)
        .map(|i| (a.1[i] + u * (b.1[i] - a.1[i])).round() as u8)
        .collect();
    format!("#{:02x}{:02x}{:02x}", c[0], c[1], c[2])
}

const SEQUENTIAL: [(f64, [f64; 3]); 5] = [
    (0.0, [68.0, 1.0, 84.0]),
    (0.25, [59.0, 82.0, 139.0]),
    (0.5, [33.0, 145.0, 140.0]),
    (0.75, [94.0, 201.0, 98.0]),
    (1.0, [253.0, 231.0, 37.0]),
];
const DIVERGING: [(f64, [f64; 3]); 3] = [
    (0.0, [33.0, 102.0, 172.0]),
    (0.5, [247.0, 247.0, 247.0]),
    (1.0, [178.0, 24.0, 43.0]),
];

/// Cells drawn per axis at most; larger grids are block-averaged.
const MAX_CELLS: usize = 100;

impl Heatmap {
    fn downsampled(&self) -> (usize, usize, Vec<f64>) {
        let bx = self.nx.div_ceil(MAX_CELLS).max(1);
        let by = self.ny.div_ceil(MAX_CELLS).max(1);
        let (mx, my) = (self.nx.div_ceil(bx), self.ny.div_ceil(by));
        let mut out = vec![0.0; mx * my];
        for cx in 0..mx {
            for cy in 0..my {
                let (mut sum, mut n) = (0.0, 0usize);
                for ix in cx * bx..((cx + 1) * bx).min(self.nx) {
                    for iy in cy * by..((cy + 1) * by).min(self.ny) {
                        let v = self.values[ix * self.ny + iy];
                        if v.is_finite() {
                            sum += v;
                            n += 1;
                        }
                    }
                }
                out[cx * my + cy] = if n > 0 { sum / n as f64 } else { f64::NAN };
            }
        }
        (mx, my, out)
    }

    pub fn to_svg(&self) -> String {
        let frame = Frame {
            x: self.x_range,
            y: self.y_range,
        };
        let mut out = String::new();
        header(&mut out, &self.title);
        if self.nx > 0 && self.ny > 0 && self.values.len() == self.nx * self.ny {
            let (mx, my, cells) = self.downsampled();
            let (lo, hi) = cells
                .iter()
                .filter(|v| v.is_finite())
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| {
                    (a.min(v), b.max(v))
                });
            let scale = |v: f64| -> f64 {
                if self.diverging {
                    let m = lo.abs().max(hi.abs()).max(1e-300);
                    0.5 + 0.5 * v / m
                } else if hi > lo {
                    (v - lo) / (hi - lo)
                } else {
                    0.5
                }
            };
            let cw = (WIDTH - LEFT - RIGHT) / mx as f64;
            let ch = (HEIGHT - TOP - BOTTOM) / my as f64;
            let _ = writeln!(out, "<g class=\"cells\" stroke=\"none\">");
            for cx in 0..mx {
                for cy in 0..my {
                    let v = cells[cx * my + cy];
                    if !v.is_finite() {
                        continue;
                    }
                    let color = if self.diverging {
                        lerp_color(&DIVERGING, scale(v))
                    } else {
                        lerp_color(&SEQUENTIAL, scale(v))
                    };
                    let x = LEFT + cx as f64 * cw;
                    let y = HEIGHT - BOTTOM - (cy + 1) as f64 * ch;
                    let _ = writeln!(
                        out,
                        "<rect x=\"{x:.2}\" y=\"{y:.2}\" width=\"{:.2}\" height=\"{:.2}\" fill=\"{color}\"/>",
                        cw + 0.05,
                        ch + 0.05
                    );
                }
            }
            let _ = writeln!(out, "</g>");
        }
        axes(&mut out, &frame, &self.x_label, &self.y_label);
        out.push_str("</svg>\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_plot_has_axes_only() {
        let svg = LinePlot::new("empty", "d", "E_b")
            .with(Series::line("E_b", vec![]))
            .to_svg();
        assert!(svg.contains("class=\"axes\""));
        assert!(!svg.contains("<polyline"));
        assert!(svg.ends_with("</svg>\n"));
    }

    #[test]
    fn one_polyline_per_line_series() {
        let a: Vec<_> = (0..10).map(|i| (i as f64, (i as f64).sin())).collect();
        let b: Vec<_> = (0..10).map(|i| (i as f64, (i as f64).cos())).collect();
        let svg = LinePlot::new("t", "x", "y")
            .with(Series::line("a", a))
            .with(Series::line("b", b.clone()))
            .with(Series::markers("c", b))
            .to_svg();
        assert_eq!(svg.matches("<polyline").count(), 2);
        assert_eq!(svg.matches("<circle").count(), 10);
    }

    #[test]
    fn non_finite_points_are_dropped() {
        let svg = LinePlot::new("t", "x", "y")
            .with(Series::line(
                "a",
                vec![(0.0, 1.0), (1.0, f64::NAN), (2.0, 0.0)],
            ))
            .to_svg();
        assert!(!svg.contains("NaN"));
    }

    #[test]
    fn heatmap_downsamples() {
        let n = 250;
        let values: Vec<f64> = (0..n * n)
            .map(|k| ((k / n) as f64 - (k % n) as f64).abs())
            .collect();
        let map = Heatmap {
            title: "h".into(),
            x_label: "x".into(),
            y_label: "y".into(),
            x_range: (-1.0, 1.0),
            y_range: (-1.0, 1.0),
            nx: n,
            ny: n,
            values,
            diverging: false,
        };
        let svg = map.to_svg();
        assert_eq!(svg.matches("<rect").count() - 1, 84 * 84 + 1);
        assert_eq!(svg, map.to_svg());
    }

    #[test]
    fn tick_steps_are_round() {
        assert_eq!(tick_step(1.0, 5.0), 0.2);
        assert_eq!(tick_step(3.2, 5.0), 0.5);
        assert_eq!(ticks(0.0, 1.0).len(), 6);
    }
}
