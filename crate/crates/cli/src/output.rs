//! CSV, run-manifest and SVG writers.

use std::fmt::Write as _;
use std::path::Path;

use crate::config::{manifest_path, plot_path, Config};
use crate::run::{format_f64, Table};

/// CSV text of `table`. Fields never contain commas, so no quoting is needed.
pub fn to_csv(table: &Table) -> String {
    let mut out = table.header.join(",");
    out.push('\n');
    for row in &table.rows {
        let line: Vec<String> = row.iter().map(|c| c.to_string()).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

/// Manifest text: the fully resolved config, which re-parses to itself.
pub fn manifest(cfg: &Config) -> String {
    let mut s = serde_json::to_string_pretty(&cfg.to_json()).expect("config serializes");
    s.push('\n');
    s
}

fn write(path: &Path, text: &str) -> std::io::Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir)?;
    }
    std::fs::write(path, text)
}

/// Writes the CSV, the manifest and (when requested) the SVG plot.
pub fn write_outputs(cfg: &Config, table: &Table) -> std::io::Result<()> {
    write(&cfg.output, &to_csv(table))?;
    write(&manifest_path(&cfg.output), &manifest(cfg))?;
    if cfg.plot {
        if let Some(svg) = to_svg(table) {
            write(&plot_path(&cfg.output), &svg)?;
        }
    }
    Ok(())
}

const W: f64 = 640.0;
const H: f64 = 420.0;
const MARGIN: f64 = 60.0;
const COLORS: &[&str] = &["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

/// Minimal line chart of the table's plot columns, one polyline per series.
pub fn to_svg(table: &Table) -> Option<String> {
    let spec = table.plot?;
    let mut series: Vec<(String, Vec<(f64, f64)>)> = Vec::new();
    for row in &table.rows {
        let key = spec.series.map_or(String::new(), |c| row[c].to_string());
        let (x, mut y) = (row[spec.x].as_f64()?, row[spec.y].as_f64()?);
        if spec.log_y {
            if !(y > 0.0) {
                continue;
            }
            y = y.log10();
        }
        if !x.is_finite() || !y.is_finite() {
            continue;
        }
        match series.last_mut() {
            Some((k, pts)) if *k == key => pts.push((x, y)),
            _ => series.push((key, vec![(x, y)])),
        }
    }
    let all = series.iter().flat_map(|(_, p)| p.iter());
    let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for &(x, y) in all {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    if x0 > x1 {
        return None;
    }
    if x1 == x0 {
        x1 = x0 + 1.0;
    }
    if y1 == y0 {
        y1 = y0 + 1.0;
    }
    let sx = |x: f64| MARGIN + (x - x0) / (x1 - x0) * (W - 2.0 * MARGIN);
    let sy = |y: f64| H - MARGIN - (y - y0) / (y1 - y0) * (H - 2.0 * MARGIN);

    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" font-family="sans-serif" font-size="12">"#);
    let _ = writeln!(s, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<rect x="{MARGIN}" y="{MARGIN}" width="{}" height="{}" fill="none" stroke="black"/>"#,
        W - 2.0 * MARGIN,
        H - 2.0 * MARGIN
    );
    let ylabel = if spec.log_y {
        format!("log10 {}", table.header[spec.y])
    } else {
        table.header[spec.y].clone()
    };
    let _ = writeln!(s, r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#, W / 2.0, H - 15.0, table.header[spec.x]);
    let _ = writeln!(s, r#"<text x="15" y="{}" transform="rotate(-90 15 {})" text-anchor="middle">{ylabel}</text>"#, H / 2.0, H / 2.0);
    for (v, x) in [(x0, sx(x0)), (x1, sx(x1))] {
        let _ = writeln!(s, r#"<text x="{x:.1}" y="{}" text-anchor="middle">{}</text>"#, H - MARGIN + 16.0, format_f64(v));
    }
    for (v, y) in [(y0, sy(y0)), (y1, sy(y1))] {
        let _ = writeln!(s, r#"<text x="{}" y="{y:.1}" text-anchor="end">{}</text>"#, MARGIN - 4.0, format_f64(v));
    }
    for (i, (key, pts)) in series.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let path: Vec<String> = pts.iter().map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y))).collect();
        let _ = writeln!(s, r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#, path.join(" "));
        if !key.is_empty() {
            let _ = writeln!(
                s,
                r#"<text x="{}" y="{}" fill="{color}">{}={key}</text>"#,
                W - MARGIN + 4.0 - 50.0,
                MARGIN + 14.0 * (i as f64 + 1.0),
                table.header[spec.series.unwrap_or(0)]
            );
        }
    }
    s.push_str("</svg>\n");
    Some(s)
}
