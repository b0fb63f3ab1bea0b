//! Static SVG 1.1 figures: Λ heatmaps with the zero contour and 𝕊 stipple,
//! and one-dimensional profiles.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::landscape::{GridSpec, LandscapeSample};

const CELL: f64 = 4.0;
const MARGIN: f64 = 40.0;

/// Zero-level polylines of a row-major `nx × ny` field (`values[i*ny + j]`),
/// in fractional index coordinates `(i, j)`. Values ≥ `level` count as
/// inside; saddle cells are split by the cell-centre average.
pub fn marching_squares(values: &[f64], nx: usize, ny: usize, level: f64) -> Vec<Vec<(f64, f64)>> {
    assert_eq!(values.len(), nx * ny);
    let v = |i: usize, j: usize| values[i * ny + j] - level;
    // Edge ids: horizontal (i,j)-(i+1,j) → 2·(i·ny + j), vertical (i,j)-(i,j+1) → 2·(i·ny + j) + 1.
    let h_edge = |i: usize, j: usize| 2 * (i * ny + j);
    let v_edge = |i: usize, j: usize| 2 * (i * ny + j) + 1;
    let mut points: HashMap<usize, (f64, f64)> = HashMap::new();
    let mut crossing = |edge: usize, a: (usize, usize), b: (usize, usize)| {
        let (fa, fb) = (v(a.0, a.1), v(b.0, b.1));
        let s = if fa == fb { 0.5 } else { (fa / (fa - fb)).clamp(0.0, 1.0) };
        let p = (a.0 as f64 + s * (b.0 as f64 - a.0 as f64), a.1 as f64 + s * (b.1 as f64 - a.1 as f64));
        points.entry(edge).or_insert(p);
        edge
    };
    let mut segments: Vec<(usize, usize)> = Vec::new();
    for i in 0..nx.saturating_sub(1) {
        for j in 0..ny.saturating_sub(1) {
            let corners = [v(i, j), v(i + 1, j), v(i + 1, j + 1), v(i, j + 1)];
            if corners.iter().any(|x| !x.is_finite()) {
                continue;
            }
            let code = corners
                .iter()
                .enumerate()
                .fold(0u8, |c, (k, &x)| c | (u8::from(x >= 0.0) << k));
            if code == 0 || code == 15 {
                continue;
            }
            let bottom = crossing(h_edge(i, j), (i, j), (i + 1, j));
            let right = crossing(v_edge(i + 1, j), (i + 1, j), (i + 1, j + 1));
            let top = crossing(h_edge(i, j + 1), (i, j + 1), (i + 1, j + 1));
            let left = crossing(v_edge(i, j), (i, j), (i, j + 1));
            let centre_inside = corners.iter().sum::<f64>() >= 0.0;
            let pairs: &[(usize, usize)] = match code {
                1 | 14 => &[(left, bottom)],
                2 | 13 => &[(bottom, right)],
                3 | 12 => &[(left, right)],
                4 | 11 => &[(right, top)],
                6 | 9 => &[(bottom, top)],
                7 | 8 => &[(left, top)],
                5 if centre_inside => &[(left, top), (bottom, right)],
                5 => &[(left, bottom), (right, top)],
                10 if centre_inside => &[(left, bottom), (right, top)],
                10 => &[(left, top), (bottom, right)],
                _ => &[],
            };
            segments.extend_from_slice(pairs);
        }
    }
    chain(&segments, &points)
}

fn chain(segments: &[(usize, usize)], points: &HashMap<usize, (f64, f64)>) -> Vec<Vec<(f64, f64)>> {
    let mut adjacency: HashMap<usize, Vec<usize>> = HashMap::new();
    for (k, &(a, b)) in segments.iter().enumerate() {
        adjacency.entry(a).or_default().push(k);
        adjacency.entry(b).or_default().push(k);
    }
    let mut used = vec![false; segments.len()];
    let mut lines = Vec::new();
    let walk = |start: usize, from: usize, used: &mut Vec<bool>| {
        let mut path = vec![from];
        let mut seg = start;
        let mut at = from;
        loop {
            used[seg] = true;
            let (a, b) = segments[seg];
            at = if a == at { b } else { a };
            path.push(at);
            match adjacency[&at].iter().find(|&&k| !used[k]) {
                Some(&next) => seg = next,
                None => break,
            }
        }
        path
    };
    // Open chains first, starting from endpoints of degree one.
    let mut starts: Vec<usize> = adjacency
        .iter()
        .filter(|(_, segs)| segs.len() == 1)
        .map(|(&e, _)| e)
        .collect();
    starts.sort_unstable();
    for e in starts {
        let k = adjacency[&e][0];
        if !used[k] {
            lines.push(walk(k, e, &mut used));
        }
    }
    for k in 0..segments.len() {
        if !used[k] {
            lines.push(walk(k, segments[k].0, &mut used));
        }
    }
    lines
        .into_iter()
        .map(|p| p.into_iter().map(|e| points[&e]).collect())
        .collect()
}

/// Signed-log colour: blue for Λ < 0, red for Λ > 0, white at zero, full
/// saturation at `|value| = top`.
fn colour(value: f64, scale: f64, top: f64) -> String {
    if !value.is_finite() {
        return "#808080".into();
    }
    let x = ((value.abs() / scale).ln_1p() / (top / scale).ln_1p().max(f64::MIN_POSITIVE)).clamp(0.0, 1.0);
    let fade = (255.0 * (1.0 - x)).round() as u8;
    if value >= 0.0 {
        format!("#ff{fade:02x}{fade:02x}")
    } else {
        format!("#{fade:02x}{fade:02x}ff")
    }
}

fn header(out: &mut String, width: f64, height: f64, title: &str) {
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(out, "<title>{}</title>", escape(title));
    let _ = writeln!(out, r#"<rect width="{width}" height="{height}" fill="white"/>"#);
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Heatmap of Λ over a two-dimensional scan. t₁ runs left to right and t₂
/// bottom to top.
pub fn heatmap(grid: &GridSpec, samples: &[LandscapeSample], title: &str) -> String {
    assert_eq!(grid.dim(), 2, "heatmap needs a two-dimensional grid");
    let (nx, ny) = (grid.axes()[0].count, grid.axes()[1].count);
    assert_eq!(samples.len(), nx * ny);
    let plot_w = CELL * nx as f64;
    let plot_h = CELL * ny as f64;
    let (width, height) = (plot_w + 2.0 * MARGIN, plot_h + 2.0 * MARGIN);
    let magnitudes: Vec<f64> = samples
        .iter()
        .map(|s| s.lambda.abs())
        .filter(|x| x.is_finite() && *x > 0.0)
        .collect();
    let top = magnitudes.iter().copied().fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    let scale = median(magnitudes).unwrap_or(1.0);
    let x_of = |i: f64| MARGIN + CELL * (i + 0.5);
    let y_of = |j: f64| MARGIN + plot_h - CELL * (j + 0.5);

    let mut out = String::new();
    header(&mut out, width, height, title);
    let _ = writeln!(out, r#"<g id="heatmap" shape-rendering="crispEdges">"#);
    for i in 0..nx {
        for j in 0..ny {
            let s = &samples[i * ny + j];
            let _ = writeln!(
                out,
                r#"<rect x="{:.1}" y="{:.1}" width="{CELL}" height="{CELL}" fill="{}"/>"#,
                x_of(i as f64) - CELL / 2.0,
                y_of(j as f64) - CELL / 2.0,
                colour(s.lambda, scale, top)
            );
        }
    }
    let _ = writeln!(out, "</g>");

    let _ = writeln!(out, r##"<g id="members" fill="#404040">"##);
    for i in 0..nx {
        for j in 0..ny {
            if samples[i * ny + j].in_s {
                let _ = writeln!(out, r#"<circle cx="{:.1}" cy="{:.1}" r="0.9"/>"#, x_of(i as f64), y_of(j as f64));
            }
        }
    }
    let _ = writeln!(out, "</g>");

    let lambdas: Vec<f64> = samples.iter().map(|s| s.lambda).collect();
    let _ = writeln!(out, r#"<g id="zero-contour" fill="none" stroke="black" stroke-width="1.2">"#);
    for line in marching_squares(&lambdas, nx, ny, 0.0) {
        let pts: Vec<String> = line
            .iter()
            .map(|&(i, j)| format!("{:.2},{:.2}", x_of(i), y_of(j)))
            .collect();
        let _ = writeln!(out, r#"<polyline points="{}"/>"#, pts.join(" "));
    }
    let _ = writeln!(out, "</g>");

    let (a0, a1) = (grid.axes()[0], grid.axes()[1]);
    let _ = writeln!(
        out,
        r#"<rect x="{MARGIN}" y="{MARGIN}" width="{plot_w}" height="{plot_h}" fill="none" stroke="black"/>"#
    );
    let _ = writeln!(
        out,
        r#"<g font-family="sans-serif" font-size="11"><text x="{MARGIN}" y="{}">t1: [{}, {}]   t2: [{}, {}]</text><text x="{MARGIN}" y="{}">{}</text></g>"#,
        height - 12.0,
        a0.min,
        a0.max,
        a1.min,
        a1.max,
        MARGIN - 14.0,
        escape(title)
    );
    out.push_str("</svg>\n");
    out
}

/// Line plot of Λ against t for a one-dimensional scan, with 𝕊-members
/// marked along the axis.
pub fn profile(samples: &[LandscapeSample], title: &str) -> String {
    let (w, h) = (600.0, 360.0);
    let plot_w = w - 2.0 * MARGIN;
    let plot_h = h - 2.0 * MARGIN;
    let finite: Vec<&LandscapeSample> = samples.iter().filter(|s| s.lambda.is_finite()).collect();
    let (tmin, tmax) = finite
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), s| (a.min(s.t[0]), b.max(s.t[0])));
    let (lmin, lmax) = finite
        .iter()
        .fold((0.0_f64, 0.0_f64), |(a, b), s| (a.min(s.lambda), b.max(s.lambda)));
    let span_t = if tmax > tmin { tmax - tmin } else { 1.0 };
    let span_l = if lmax > lmin { lmax - lmin } else { 1.0 };
    let x_of = |t: f64| MARGIN + plot_w * (t - tmin) / span_t;
    let y_of = |l: f64| MARGIN + plot_h * (1.0 - (l - lmin) / span_l);

    let mut out = String::new();
    header(&mut out, w, h, title);
    let _ = writeln!(
        out,
        r#"<line x1="{MARGIN}" y1="{y0:.2}" x2="{:.2}" y2="{y0:.2}" stroke="gray"/>"#,
        MARGIN + plot_w,
        y0 = y_of(0.0)
    );
    let pts: Vec<String> = finite
        .iter()
        .map(|s| format!("{:.2},{:.2}", x_of(s.t[0]), y_of(s.lambda)))
        .collect();
    let _ = writeln!(out, r#"<polyline points="{}" fill="none" stroke="black"/>"#, pts.join(" "));
    let _ = writeln!(out, r##"<g id="members" fill="#c03030">"##);
    for s in finite.iter().filter(|s| s.in_s) {
        let _ = writeln!(out, r#"<circle cx="{:.2}" cy="{:.2}" r="1.5"/>"#, x_of(s.t[0]), MARGIN + plot_h + 8.0);
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(
        out,
        r#"<text x="{MARGIN}" y="{}" font-family="sans-serif" font-size="11">{}   t: [{tmin}, {tmax}]   Λ: [{lmin:.3e}, {lmax:.3e}]</text>"#,
        MARGIN - 14.0,
        escape(title)
    );
    out.push_str("</svg>\n");
    out
}

fn median(mut xs: Vec<f64>) -> Option<f64> {
    if xs.is_empty() {
        return None;
    }
    xs.sort_by(f64::total_cmp);
    Some(xs[xs.len() / 2])
}
