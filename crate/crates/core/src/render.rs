//! Stick-figure SVG rendering of skeleton frames, projected onto the x–y
//! plane.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::skeleton::SkeletonSequence;

const PANEL_W: f64 = 200.0;
const PANEL_H: f64 = 300.0;
const MARGIN: f64 = 20.0;

/// `n` frame indices spread evenly over the sequence, first and last
/// included.
pub fn strip_frames(seq: &SkeletonSequence, n: usize) -> Result<Vec<usize>> {
    let len = seq.len();
    if len == 0 || n == 0 {
        return Err(Error::Empty("nothing to render"));
    }
    if n == 1 {
        return Ok(vec![0]);
    }
    let n = n.min(len);
    Ok((0..n)
        .map(|i| ((i * (len - 1)) as f64 / (n - 1) as f64).round() as usize)
        .collect())
}

/// One panel per frame in `frames`, left to right, all sharing a scale.
pub fn render_svg(seq: &SkeletonSequence, frames: &[usize]) -> Result<String> {
    if frames.is_empty() {
        return Err(Error::Empty("no frames selected"));
    }
    if let Some(&bad) = frames.iter().find(|&&f| f >= seq.len()) {
        return Err(Error::Degenerate(format!(
            "frame index {bad} out of range (sequence has {} frames)",
            seq.len()
        )));
    }
    let (mut xmin, mut xmax, mut ymin, mut ymax) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for &f in frames {
        for p in &seq.frames[f].positions {
            xmin = xmin.min(p[0]);
            xmax = xmax.max(p[0]);
            ymin = ymin.min(p[1]);
            ymax = ymax.max(p[1]);
        }
    }
    let span = (xmax - xmin).max(ymax - ymin).max(1e-6);
    let scale = (PANEL_H - 2.0 * MARGIN) / span;
    let xmid = 0.5 * (xmin + xmax);
    let ymid = 0.5 * (ymin + ymax);

    let width = PANEL_W * frames.len() as f64;
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{PANEL_H}" viewBox="0 0 {width} {PANEL_H}">"#
    );
    let _ = writeln!(svg, r#"<rect width="{width}" height="{PANEL_H}" fill="white"/>"#);
    for (panel, &f) in frames.iter().enumerate() {
        let cx = PANEL_W * (panel as f64 + 0.5);
        let cy = PANEL_H * 0.5;
        let proj = |p: [f64; 3]| (cx + (p[0] - xmid) * scale, cy - (p[1] - ymid) * scale);
        let frame = &seq.frames[f];
        let _ = writeln!(svg, r#"<g id="frame-{f}" stroke="black" stroke-width="2">"#);
        for &(a, b) in seq.schema.bones() {
            let (x1, y1) = proj(frame.positions[a]);
            let (x2, y2) = proj(frame.positions[b]);
            let _ = writeln!(svg, r#"<line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}"/>"#);
        }
        for p in &frame.positions {
            let (x, y) = proj(*p);
            let _ = writeln!(svg, r#"<circle cx="{x:.2}" cy="{y:.2}" r="2.5" fill="red" stroke="none"/>"#);
        }
        let _ = writeln!(
            svg,
            r#"<text x="{cx:.2}" y="{:.2}" font-size="12" text-anchor="middle" stroke="none">t={:.3}s</text>"#,
            PANEL_H - 6.0,
            frame.timestamp
        );
        svg.push_str("</g>\n");
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}
