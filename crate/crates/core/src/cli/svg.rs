//! Minimal static SVG bar charts for `--plot`.

use std::fmt::Write;

use crate::fmt::fixed;

const PALETTE: [&str; 6] = ["#4c72b0", "#dd8452", "#55a868", "#c44e52", "#8172b3", "#937860"];
const WIDTH: f64 = 720.0;
const PANEL_HEIGHT: f64 = 260.0;
const MARGIN_LEFT: f64 = 60.0;
const MARGIN_RIGHT: f64 = 20.0;
const PLOT_TOP: f64 = 40.0;
const PLOT_HEIGHT: f64 = 170.0;

/// One grouped bar chart: a bar per series within each category.
#[derive(Debug, Clone)]
pub struct Panel {
    pub title: String,
    pub categories: Vec<String>,
    pub series: Vec<(String, Vec<f64>)>,
}

impl Panel {
    pub fn new(title: impl Into<String>, categories: Vec<String>) -> Self {
        Panel {
            title: title.into(),
            categories,
            series: Vec::new(),
        }
    }

    pub fn series(mut self, name: impl Into<String>, values: Vec<f64>) -> Self {
        self.series.push((name.into(), values));
        self
    }
}

fn esc(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn n(x: f64) -> String {
    fixed(x, 2)
}

/// Vertically stacked panels in one SVG document.
pub fn render(panels: &[Panel]) -> String {
    let height = PANEL_HEIGHT * panels.len().max(1) as f64;
    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}" font-family="sans-serif" font-size="11">"#,
        n(WIDTH),
        n(height),
        n(WIDTH),
        n(height)
    )
    .unwrap();
    writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
    for (i, p) in panels.iter().enumerate() {
        panel(&mut s, p, PANEL_HEIGHT * i as f64);
    }
    s.push_str("</svg>\n");
    s
}

fn panel(s: &mut String, p: &Panel, y0: f64) {
    let values = p.series.iter().flat_map(|(_, v)| v.iter().copied()).filter(|v| v.is_finite());
    let (mut lo, mut hi) = values.fold((0.0f64, 0.0f64), |(a, b), v| (a.min(v), b.max(v)));
    if hi - lo < 1e-12 {
        hi = lo + 1.0;
    }
    let pad = 0.05 * (hi - lo);
    if lo < 0.0 {
        lo -= pad;
    }
    hi += pad;
    let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let top = y0 + PLOT_TOP;
    let y_of = |v: f64| top + PLOT_HEIGHT * (hi - v) / (hi - lo);

    writeln!(s, r#"<text x="{}" y="{}" font-size="13" font-weight="bold">{}</text>"#, n(MARGIN_LEFT), n(y0 + 20.0), esc(&p.title)).unwrap();
    for k in 0..=4 {
        let v = lo + (hi - lo) * k as f64 / 4.0;
        let y = y_of(v);
        writeln!(
            s,
            r##"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="#dddddd"/><text x="{}" y="{}" text-anchor="end">{}</text>"##,
            n(MARGIN_LEFT),
            n(y),
            n(WIDTH - MARGIN_RIGHT),
            n(y),
            n(MARGIN_LEFT - 6.0),
            n(y + 4.0),
            fixed(v, 3)
        )
        .unwrap();
    }
    let zero = y_of(0.0);
    writeln!(s, r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="black"/>"#, n(MARGIN_LEFT), n(zero), n(WIDTH - MARGIN_RIGHT), n(zero)).unwrap();

    let groups = p.categories.len().max(1) as f64;
    let group_w = plot_w / groups;
    let bars = p.series.len().max(1) as f64;
    let bar_w = group_w * 0.8 / bars;
    for (g, cat) in p.categories.iter().enumerate() {
        let gx = MARGIN_LEFT + group_w * g as f64;
        for (k, (_, vals)) in p.series.iter().enumerate() {
            let Some(&v) = vals.get(g) else { continue };
            if !v.is_finite() {
                continue;
            }
            let x = gx + group_w * 0.1 + bar_w * k as f64;
            let (y, h) = if v >= 0.0 { (y_of(v), zero - y_of(v)) } else { (zero, y_of(v) - zero) };
            writeln!(
                s,
                r#"<rect x="{}" y="{}" width="{}" height="{}" fill="{}"/>"#,
                n(x),
                n(y),
                n(bar_w),
                n(h),
                PALETTE[k % PALETTE.len()]
            )
            .unwrap();
        }
        writeln!(
            s,
            r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#,
            n(gx + group_w / 2.0),
            n(top + PLOT_HEIGHT + 16.0),
            esc(cat)
        )
        .unwrap();
    }
    let mut lx = MARGIN_LEFT;
    let ly = top + PLOT_HEIGHT + 34.0;
    for (k, (name, _)) in p.series.iter().enumerate() {
        writeln!(
            s,
            r#"<rect x="{}" y="{}" width="10" height="10" fill="{}"/><text x="{}" y="{}">{}</text>"#,
            n(lx),
            n(ly - 9.0),
            PALETTE[k % PALETTE.len()],
            n(lx + 14.0),
            n(ly),
            esc(name)
        )
        .unwrap();
        lx += 24.0 + 7.0 * name.chars().count() as f64;
    }
}
