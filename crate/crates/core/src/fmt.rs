//! Fixed-precision number rendering for text reports.
//!
//! Text output uses four decimals. `std`'s formatter rounds the exact binary
//! value half-to-even, so output is identical on every platform. Negative
//! zero is folded into `0.0000`.

pub fn f4(x: f64) -> String {
    fixed(x, 4)
}

pub fn fixed(x: f64, decimals: usize) -> String {
    if x.is_nan() {
        return "NaN".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let s = format!("{:.*}", decimals, x);
    if s.starts_with('-') && s[1..].chars().all(|c| c == '0' || c == '.') {
        s[1..].to_string()
    } else {
        s
    }
}

/// Render an optional value, using `-` for absent entries.
pub fn opt4(x: Option<f64>) -> String {
    x.map(f4).unwrap_or_else(|| "-".to_string())
}

/// Left-align every column of `rows` to its widest cell, separated by two spaces.
pub fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let cols = header.len();
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (i, cell) in row.iter().enumerate().take(cols) {
            widths[i] = widths[i].max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let line = |cells: &mut dyn Iterator<Item = &str>, out: &mut String| {
        let mut parts = Vec::with_capacity(cols);
        for (i, cell) in cells.enumerate() {
            let pad = widths[i] - cell.chars().count();
            parts.push(format!("{}{}", cell, " ".repeat(pad)));
        }
        out.push_str(parts.join("  ").trim_end());
        out.push('\n');
    };
    line(&mut header.iter().copied(), &mut out);
    let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
    out.push_str(&rule.join("  "));
    out.push('\n');
    for row in rows {
        line(&mut row.iter().map(String::as_str), &mut out);
    }
    out
}
