//! Heatmap of scan classifications, written as plain SVG 1.1.

use std::f64::consts::PI;
use std::fmt::Write as _;

use crate::widom::{Classification, ScanResult, FIGURE_OUTER_RADIUS_SQ, INNER_RADIUS_SQ};

const SIZE: f64 = 600.0;
const MARGIN: f64 = 70.0;
const LEGEND: f64 = 170.0;

fn fill(c: Option<Classification>) -> &'static str {
    match c {
        Some(Classification::Increasing) => "#404040",
        Some(Classification::Decreasing) => "#c8c8c8",
        Some(Classification::NonMonotone) => "#f2e394",
        Some(Classification::Constant) | None => "#ffffff",
    }
}

pub fn heatmap(result: &ScanResult) -> String {
    let g = result.grid;
    let r = g.resolution;
    let cell = (g.hi - g.lo) / (r - 1) as f64;
    // Cells are centred on grid points, so the axes extend half a cell past the range.
    let (lo, hi) = (g.lo - 0.5 * cell, g.hi + 0.5 * cell);
    let px = |v: f64| MARGIN + (v - lo) / (hi - lo) * SIZE;
    let py = |v: f64| MARGIN + SIZE - (v - lo) / (hi - lo) * SIZE;
    let side = SIZE / r as f64;

    let mut s = String::new();
    let width = SIZE + 2.0 * MARGIN + LEGEND;
    let height = SIZE + 2.0 * MARGIN;
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="13">"#
    );
    let _ = writeln!(s, r#"<defs><clipPath id="plot"><rect x="{MARGIN}" y="{MARGIN}" width="{SIZE}" height="{SIZE}"/></clipPath></defs>"#);
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);

    let _ = writeln!(s, r#"<g shape-rendering="crispEdges">"#);
    for c in &result.cells {
        let x = px(c.weight.rho_a - 0.5 * cell);
        let y = py(c.weight.rho_b + 0.5 * cell);
        let _ = writeln!(
            s,
            r#"<rect x="{x:.3}" y="{y:.3}" width="{side:.3}" height="{side:.3}" fill="{}"/>"#,
            fill(c.classification)
        );
    }
    for c in result.cells.iter().filter(|c| c.classification.is_none()) {
        let x = px(c.weight.rho_a - 0.5 * cell);
        let y = py(c.weight.rho_b + 0.5 * cell);
        let _ = writeln!(
            s,
            r##"<rect x="{x:.3}" y="{y:.3}" width="{side:.3}" height="{side:.3}" fill="none" stroke="#d00000" stroke-width="1.5"/>"##
        );
    }
    let _ = writeln!(s, "</g>");

    // Both circles are centred at (1/4, 1/4); the inner one passes through
    // (1/2, 0), the origin and (0, 1/2), so only its upper arc is drawn.
    let scale = SIZE / (hi - lo);
    let (cx, cy) = (px(0.25), py(0.25));
    let inner = INNER_RADIUS_SQ.sqrt();
    let arc_point = |t: f64| (px(0.25 + inner * t.cos()), py(0.25 + inner * t.sin()));
    let (x0, y0) = arc_point(-PI / 4.0);
    let (x1, y1) = arc_point(3.0 * PI / 4.0);
    let rad = inner * scale;
    let _ = writeln!(s, r#"<g clip-path="url(#plot)" fill="none">"#);
    let _ = writeln!(
        s,
        r##"<path d="M {x0:.3} {y0:.3} A {rad:.3} {rad:.3} 0 0 1 {x1:.3} {y1:.3}" stroke="#d00000" stroke-width="2"/>"##
    );
    let outer = FIGURE_OUTER_RADIUS_SQ.sqrt() * scale;
    let _ = writeln!(
        s,
        r##"<circle cx="{cx:.3}" cy="{cy:.3}" r="{outer:.3}" stroke="#1a1a1a" stroke-width="1.5" stroke-dasharray="2 4"/>"##
    );
    let _ = writeln!(s, "</g>");

    // Frame, ticks and labels.
    let _ = writeln!(s, r#"<rect x="{MARGIN}" y="{MARGIN}" width="{SIZE}" height="{SIZE}" fill="none" stroke="black"/>"#);
    for t in ticks(g.lo, g.hi) {
        let (x, y) = (px(t), py(t));
        let base = MARGIN + SIZE;
        let _ = writeln!(s, r#"<line x1="{x:.3}" y1="{base}" x2="{x:.3}" y2="{:.3}" stroke="black"/>"#, base + 5.0);
        let _ = writeln!(s, r#"<text x="{x:.3}" y="{:.3}" text-anchor="middle">{}</text>"#, base + 20.0, label(t));
        let _ = writeln!(s, r#"<line x1="{:.3}" y1="{y:.3}" x2="{MARGIN}" y2="{y:.3}" stroke="black"/>"#, MARGIN - 5.0);
        let _ = writeln!(s, r#"<text x="{:.3}" y="{:.3}" text-anchor="end">{}</text>"#, MARGIN - 8.0, y + 4.0, label(t));
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.3}" y="{:.3}" text-anchor="middle" font-size="15">ρα</text>"#,
        MARGIN + 0.5 * SIZE,
        MARGIN + SIZE + 45.0
    );
    let _ = writeln!(
        s,
        r#"<text x="{:.3}" y="{:.3}" text-anchor="middle" font-size="15" transform="rotate(-90 {:.3} {:.3})">ρβ</text>"#,
        MARGIN - 45.0,
        MARGIN + 0.5 * SIZE,
        MARGIN - 45.0,
        MARGIN + 0.5 * SIZE
    );

    let lx = MARGIN + SIZE + 25.0;
    let entries = [
        ("Increasing", "#404040", "none"),
        ("Decreasing", "#c8c8c8", "none"),
        ("NonMonotone", "#f2e394", "none"),
        ("Constant", "#ffffff", "black"),
        ("solver failed", "#ffffff", "#d00000"),
    ];
    for (k, (name, color, stroke)) in entries.iter().enumerate() {
        let y = MARGIN + 10.0 + 24.0 * k as f64;
        let _ = writeln!(s, r#"<rect x="{lx}" y="{y}" width="14" height="14" fill="{color}" stroke="{stroke}"/>"#);
        let _ = writeln!(s, r#"<text x="{}" y="{}">{name}</text>"#, lx + 22.0, y + 12.0);
    }
    let y = MARGIN + 10.0 + 24.0 * entries.len() as f64 + 10.0;
    let _ = writeln!(s, r##"<line x1="{lx}" y1="{y}" x2="{}" y2="{y}" stroke="#d00000" stroke-width="2"/>"##, lx + 14.0);
    let _ = writeln!(s, r#"<text x="{}" y="{}">r² = 1/8</text>"#, lx + 22.0, y + 4.0);
    let y = y + 24.0;
    let _ = writeln!(s, r##"<line x1="{lx}" y1="{y}" x2="{}" y2="{y}" stroke="#1a1a1a" stroke-width="1.5" stroke-dasharray="2 4"/>"##, lx + 14.0);
    let _ = writeln!(s, r#"<text x="{}" y="{}">r² = 1.1836/8</text>"#, lx + 22.0, y + 4.0);
    let _ = writeln!(s, "</svg>");
    s
}

fn ticks(lo: f64, hi: f64) -> Vec<f64> {
    let span = hi - lo;
    let raw = span / 5.0;
    let mag = 10f64.powf(raw.log10().floor());
    let step = [1.0, 2.0, 2.5, 5.0, 10.0]
        .iter()
        .map(|m| m * mag)
        .find(|&st| st >= raw)
        .unwrap_or(10.0 * mag);
    let first = (lo / step).ceil() as i64;
    let last = (hi / step + 1e-9).floor() as i64;
    (first..=last).map(|k| k as f64 * step).collect()
}

fn label(v: f64) -> String {
    let s = format!("{v:.3}");
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}
