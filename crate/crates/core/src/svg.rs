//! Complex-plane SVG diagrams.
//!
//! Values are drawn at their coordinates with the imaginary axis pointing up;
//! labels show roots. Triplets are polylines through their three values and
//! zero-sum triples are triangles on their squares, whose centroid is the
//! origin.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::arith::RootScalar;
use crate::correspondence::{triplets_from_triple, ArithTriplet, ZeroSumTriple};
use crate::grid::MagicSquare;
use crate::siblings::{grid_siblings, grid_siblings_float, pseudo_grid_float, Direction, PseudoOptions, SiblingFamily};
use crate::{GaussF64, GaussInt};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Style {
    Value,
    Line,
    Older,
    Younger,
    Triple,
    Triplet,
    Reference,
    Note,
}

impl Style {
    fn class(self) -> &'static str {
        match self {
            Style::Value => "value",
            Style::Line => "line",
            Style::Older => "older",
            Style::Younger => "younger",
            Style::Triple => "triple",
            Style::Triplet => "triplet",
            Style::Reference => "reference",
            Style::Note => "note",
        }
    }

    fn stroke(self) -> &'static str {
        match self {
            Style::Value | Style::Line => "#222222",
            Style::Older => "#c0392b",
            Style::Younger => "#2471a3",
            Style::Triple => "#7d3c98",
            Style::Triplet => "#1e8449",
            Style::Reference => "#888888",
            Style::Note => "#000000",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Shape {
    Point(GaussF64),
    Polyline(Vec<GaussF64>),
    Triangle([GaussF64; 3]),
    /// Free text placed in the top-left corner.
    Note(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Element {
    pub shape: Shape,
    pub label: Option<String>,
    pub style: Style,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Viewport {
    Auto,
    Explicit { re_min: f64, re_max: f64, im_min: f64, im_max: f64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct PlotSpec {
    pub elements: Vec<Element>,
    pub viewport: Viewport,
    /// Pixel size of the longer side of the viewport.
    pub scale: f64,
}

impl Default for PlotSpec {
    fn default() -> Self {
        PlotSpec { elements: Vec::new(), viewport: Viewport::Auto, scale: 640.0 }
    }
}

impl PlotSpec {
    pub fn push(&mut self, shape: Shape, label: Option<String>, style: Style) {
        self.elements.push(Element { shape, label, style });
    }

    pub fn count(&self, pred: impl Fn(&Shape) -> bool) -> usize {
        self.elements.iter().filter(|e| pred(&e.shape)).count()
    }
}

const PAD: f64 = 24.0;
const MARKER_RADIUS: f64 = 3.0;

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

fn bounds(spec: &PlotSpec) -> (f64, f64, f64, f64) {
    if let Viewport::Explicit { re_min, re_max, im_min, im_max } = spec.viewport {
        return (re_min, re_max, im_min, im_max);
    }
    let pts = spec.elements.iter().flat_map(|e| match &e.shape {
        Shape::Point(p) => vec![*p],
        Shape::Polyline(ps) => ps.clone(),
        Shape::Triangle(ps) => ps.to_vec(),
        Shape::Note(_) => vec![],
    });
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for p in pts {
        x0 = x0.min(p.re);
        x1 = x1.max(p.re);
        y0 = y0.min(p.im);
        y1 = y1.max(p.im);
    }
    if !x0.is_finite() {
        return (-1.0, 1.0, -1.0, 1.0);
    }
    let span = (x1 - x0).max(y1 - y0);
    let half = if span > 0.0 { span * 0.05 } else { 1.0 };
    (x0 - half, x1 + half, y0 - half, y1 + half)
}

/// Renders `spec` as an SVG 1.1 document. Output depends only on `spec`.
pub fn emit_svg(spec: &PlotSpec) -> String {
    let (x0, x1, y0, y1) = bounds(spec);
    let k = spec.scale / (x1 - x0).max(y1 - y0);
    let (w, h) = ((x1 - x0) * k + 2.0 * PAD, (y1 - y0) * k + 2.0 * PAD);
    let px = |p: &GaussF64| ((p.re - x0) * k + PAD, (y1 - p.im) * k + PAD);
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w:.3}" height="{h:.3}" viewBox="0 0 {w:.3} {h:.3}">"#
    );
    let _ = writeln!(out, r##"<rect x="0" y="0" width="{w:.3}" height="{h:.3}" fill="#ffffff"/>"##);
    // axes through the origin when visible
    let (ox, oy) = px(&GaussF64::new(0.0, 0.0));
    if (x0..=x1).contains(&0.0) {
        let _ = writeln!(out, r##"<line class="axis" x1="{ox:.3}" y1="0" x2="{ox:.3}" y2="{h:.3}" stroke="#dddddd"/>"##);
    }
    if (y0..=y1).contains(&0.0) {
        let _ = writeln!(out, r##"<line class="axis" x1="0" y1="{oy:.3}" x2="{w:.3}" y2="{oy:.3}" stroke="#dddddd"/>"##);
    }
    let mut notes = 0;
    for e in &spec.elements {
        let (class, stroke) = (e.style.class(), e.style.stroke());
        match &e.shape {
            Shape::Point(p) => {
                let (x, y) = px(p);
                let fill = if e.style == Style::Reference { "none" } else { stroke };
                let _ = writeln!(
                    out,
                    r#"<circle class="{class}" cx="{x:.3}" cy="{y:.3}" r="{MARKER_RADIUS:.3}" fill="{fill}" stroke="{stroke}"/>"#
                );
                if let Some(label) = &e.label {
                    let _ = writeln!(
                        out,
                        r#"<text class="{class}" x="{:.3}" y="{:.3}" font-size="10" fill="{stroke}">{}</text>"#,
                        x + 5.0,
                        y - 5.0,
                        escape(label)
                    );
                }
            }
            Shape::Polyline(ps) => {
                let pts: Vec<String> = ps.iter().map(|p| px(p)).map(|(x, y)| format!("{x:.3},{y:.3}")).collect();
                let _ = writeln!(out, r#"<polyline class="{class}" points="{}" fill="none" stroke="{stroke}"/>"#, pts.join(" "));
            }
            Shape::Triangle(ps) => {
                let pts: Vec<String> = ps.iter().map(|p| px(p)).map(|(x, y)| format!("{x:.3},{y:.3}")).collect();
                let _ = writeln!(
                    out,
                    r#"<polygon class="{class}" points="{}" fill="{stroke}" fill-opacity="0.15" stroke="{stroke}"/>"#,
                    pts.join(" ")
                );
            }
            Shape::Note(text) => {
                notes += 1;
                let _ = writeln!(
                    out,
                    r#"<text class="{class}" x="{:.3}" y="{:.3}" font-size="12" fill="{stroke}">{}</text>"#,
                    PAD / 2.0,
                    PAD / 2.0 + 12.0 * notes as f64,
                    escape(text)
                );
            }
        }
    }
    out.push_str("</svg>\n");
    out
}

/// Adds one marker per distinct exact value.
struct Markers<'a> {
    spec: &'a mut PlotSpec,
    seen: BTreeSet<String>,
}

impl<'a> Markers<'a> {
    fn new(spec: &'a mut PlotSpec) -> Self {
        Markers { spec, seen: BTreeSet::new() }
    }

    fn add(&mut self, key: String, at: GaussF64, root_label: String, style: Style) {
        if self.seen.insert(key) {
            self.spec.push(Shape::Point(at), Some(root_label), style);
        }
    }
}

fn triplet_points<S: RootScalar>(t: &ArithTriplet<S>) -> Vec<GaussF64> {
    t.values().iter().map(|v| v.approx()).collect()
}

/// The triplet's polyline turned a quarter about its center value.
fn rotated_points<S: RootScalar>(t: &ArithTriplet<S>) -> Vec<GaussF64> {
    let pts = triplet_points(t);
    let c = pts[1];
    pts.iter().map(|p| c + (*p - c) * GaussF64::new(0.0, 1.0)).collect()
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PlotOptions {
    pub siblings: bool,
    /// Draw each older sibling turned a quarter about its center.
    pub rotate_older: bool,
}

fn add_family<S: RootScalar>(spec: &mut PlotSpec, fam: &SiblingFamily<S>, rotate_older: bool, label: impl Fn(&S) -> String) {
    for r in &fam.records {
        let older = if rotate_older { rotated_points(&r.siblings.older) } else { triplet_points(&r.siblings.older) };
        spec.push(Shape::Polyline(older), None, Style::Older);
        spec.push(Shape::Polyline(triplet_points(&r.siblings.younger)), None, Style::Younger);
    }
    let mut markers = Markers::new(spec);
    for r in &fam.records {
        for (t, style) in [(&r.siblings.older, Style::Older), (&r.siblings.younger, Style::Younger)] {
            for root in t.roots() {
                let v = root.sq();
                let at = v.approx();
                markers.add(format!("{:.6e},{:.6e}", at.re, at.im), at, label(root), style);
            }
        }
    }
}

/// A grid: its nine values, its eight lines, optionally the sixteen siblings,
/// and a note when the row pseudo-grid is a near-miss.
pub fn plot_grid(sq: &MagicSquare, opts: PlotOptions) -> PlotSpec {
    let mut spec = PlotSpec::default();
    let fam = grid_siblings_float(sq);
    for r in &fam.records {
        spec.push(Shape::Polyline(r.line.values.iter().map(GaussInt::to_f64).collect()), None, Style::Line);
    }
    let mut markers = Markers::new(&mut spec);
    for p in MagicSquare::positions() {
        let v = sq.value(p);
        let label = sq.root(p).map_or_else(|| format!("√({v})"), |r| r.to_string());
        markers.add(v.to_string(), v.to_f64(), label, Style::Value);
    }
    if opts.siblings {
        match grid_siblings(sq) {
            Ok(exact) => add_family(&mut spec, &exact, opts.rotate_older, |r| r.to_string()),
            Err(_) => add_family(&mut spec, &fam, opts.rotate_older, |r| format!("{:.3}{:+.3}i", r.re, r.im)),
        }
    }
    if let Ok(pg) = pseudo_grid_float(sq, PseudoOptions::new(Direction::Rows)) {
        if pg.near_miss {
            spec.push(Shape::Note(format!("near-miss pseudo-grid (relative |E| = {:.3e})", pg.relative_error)), None, Style::Note);
        }
    }
    spec
}

/// A zero-sum triple as a triangle on its squares with the origin marked;
/// with `siblings` set, also its three arithmetic triplets.
pub fn plot_triple(z: &ZeroSumTriple, opts: PlotOptions) -> PlotSpec {
    let mut spec = PlotSpec::default();
    let [a, b, c] = z.components().map(|x| x.square().to_f64());
    spec.push(Shape::Triangle([a, b, c]), None, Style::Triple);
    let triplets = triplets_from_triple(z);
    if opts.siblings {
        for t in &triplets {
            let pts = triplet_points(&t.to_rational());
            spec.push(Shape::Polyline(pts), None, Style::Triplet);
        }
    }
    spec.push(Shape::Point(GaussF64::new(0.0, 0.0)), Some("0".into()), Style::Reference);
    let mut markers = Markers::new(&mut spec);
    for comp in z.components() {
        markers.add(comp.square().to_string(), comp.square().to_f64(), comp.to_string(), Style::Triple);
    }
    if opts.siblings {
        for t in &triplets {
            for root in t.roots() {
                markers.add(root.square().to_string(), root.square().to_f64(), root.to_string(), Style::Triplet);
            }
        }
    }
    spec
}

/// A single triplet as a polyline through its values.
pub fn plot_triplet(t: &ArithTriplet<GaussInt>) -> PlotSpec {
    let mut spec = PlotSpec::default();
    spec.push(Shape::Polyline(triplet_points(&t.to_rational())), None, Style::Triplet);
    let mut markers = Markers::new(&mut spec);
    for root in t.roots() {
        markers.add(root.square().to_string(), root.square().to_f64(), root.to_string(), Style::Triplet);
    }
    spec
}

/// Bare markers, one per distinct value, labelled by the value.
pub fn plot_points(values: &[GaussInt]) -> PlotSpec {
    let mut spec = PlotSpec::default();
    let mut markers = Markers::new(&mut spec);
    for v in values {
        markers.add(v.to_string(), v.to_f64(), v.to_string(), Style::Value);
    }
    spec
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn count(svg: &str, tag: &str) -> usize {
        svg.matches(&format!("<{tag} ")).count()
    }

    #[test]
    fn empty_spec_is_a_document() {
        let svg = emit_svg(&PlotSpec::default());
        assert!(svg.starts_with("<?xml") && svg.ends_with("</svg>\n"));
        assert_eq!(count(&svg, "circle"), 0);
    }

    #[test]
    fn single_origin_point() {
        let spec = plot_points(&[GaussInt::from_i64(0, 0)]);
        let svg = emit_svg(&spec);
        assert_eq!(count(&svg, "circle"), 1);
        // the viewport is [-1, 1]² so the origin maps to the canvas center
        let c = PAD + 320.0;
        assert!(svg.contains(&format!(r#"cx="{c:.3}" cy="{c:.3}""#)), "{svg}");
    }

    #[test]
    fn worked_example_with_triplets() {
        let opts = PlotOptions { siblings: true, rotate_older: false };
        let svg = emit_svg(&plot_triple(&fixtures::worked_example(), opts));
        assert_eq!(count(&svg, "polygon"), 1);
        assert_eq!(count(&svg, "polyline"), 3);
        assert!(svg.contains(r#"class="reference""#));
        let plain = emit_svg(&plot_triple(&fixtures::worked_example(), PlotOptions::default()));
        assert_eq!(count(&plain, "polyline"), 0);
    }

    #[test]
    fn grid_plot_counts() {
        let sq = fixtures::bremner();
        let plain = emit_svg(&plot_grid(&sq, PlotOptions::default()));
        assert_eq!(count(&plain, "polyline"), 8);
        assert_eq!(count(&plain, "circle"), 9);
        let full = emit_svg(&plot_grid(&sq, PlotOptions { siblings: true, rotate_older: false }));
        assert_eq!(count(&full, "polyline"), 24);
        let rotated = emit_svg(&plot_grid(&sq, PlotOptions { siblings: true, rotate_older: true }));
        assert_eq!(count(&rotated, "polyline"), 24);
        assert_ne!(full, rotated);
    }

    #[test]
    fn origin_covering_demo_has_no_near_miss_note() {
        let sq = MagicSquare::from_basis(&fixtures::demo_basis());
        let svg = emit_svg(&plot_grid(&sq, PlotOptions { siblings: true, rotate_older: false }));
        assert!(!svg.contains("near-miss"));
        assert_eq!(count(&svg, "polyline"), 24);
    }

    #[test]
    fn output_is_stable() {
        let a = emit_svg(&plot_grid(&fixtures::parker(), PlotOptions { siblings: true, rotate_older: false }));
        let b = emit_svg(&plot_grid(&fixtures::parker(), PlotOptions { siblings: true, rotate_older: false }));
        assert_eq!(a, b);
    }

    #[test]
    fn labels_are_escaped() {
        let mut spec = PlotSpec::default();
        spec.push(Shape::Note("a<b & c".into()), None, Style::Note);
        assert!(emit_svg(&spec).contains("a&lt;b &amp; c"));
    }
}
