//! SVG output pinned against checked-in files.
//!
//! Set `UPDATE_GOLDEN=1` to rewrite the files after an intended change.

use std::path::PathBuf;

use gauss_triplets::correspondence::{ArithTriplet, ZeroSumTriple};
use gauss_triplets::fixtures;
use gauss_triplets::grid::MagicSquare;
use gauss_triplets::svg::{emit_svg, plot_grid, plot_points, plot_triple, plot_triplet, PlotOptions};
use gauss_triplets::GaussInt;

fn g(re: i64, im: i64) -> GaussInt {
    GaussInt::from_i64(re, im)
}

fn golden(name: &str, svg: &str) {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, svg).unwrap();
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert!(want == svg, "{name} differs from the checked-in copy");
}

struct Counts {
    polylines: usize,
    polygons: usize,
    circles: usize,
    texts: Vec<String>,
}

fn parse(svg: &str) -> Counts {
    let doc = roxmltree::Document::parse(svg).expect("well-formed XML");
    let root = doc.root_element();
    assert_eq!(root.tag_name().name(), "svg");
    assert_eq!(root.tag_name().namespace(), Some("http://www.w3.org/2000/svg"));
    let of = |tag: &str| root.descendants().filter(|n| n.has_tag_name(tag)).count();
    Counts {
        polylines: of("polyline"),
        polygons: of("polygon"),
        circles: of("circle"),
        texts: root.descendants().filter(|n| n.has_tag_name("text")).filter_map(|n| n.text().map(str::to_owned)).collect(),
    }
}

#[test]
fn worked_example_triple() {
    let z = fixtures::worked_example();
    let svg = emit_svg(&plot_triple(&z, PlotOptions { siblings: true, rotate_older: false }));
    let c = parse(&svg);
    assert_eq!(c.polygons, 1);
    assert_eq!(c.polylines, 3);
    // three squares, the origin, and the six distinct endpoint values
    assert!(c.texts.iter().any(|t| t == "4+8i"));
    assert!(c.texts.iter().any(|t| t == "0"));
    golden("worked_example.svg", &svg);
}

#[test]
fn bremner_with_siblings() {
    let svg = emit_svg(&plot_grid(&fixtures::bremner(), PlotOptions { siblings: true, rotate_older: false }));
    let c = parse(&svg);
    assert_eq!(c.polylines, 8 + 16);
    assert!(!c.texts.iter().any(|t| t.contains("near-miss")));
    golden("bremner_siblings.svg", &svg);
}

#[test]
fn bremner_rotated() {
    let svg = emit_svg(&plot_grid(&fixtures::bremner(), PlotOptions { siblings: true, rotate_older: true }));
    assert_eq!(parse(&svg).polylines, 24);
    golden("bremner_rotated.svg", &svg);
}

#[test]
fn lo_shu_plain() {
    let sq: MagicSquare = fixtures::lo_shu();
    let svg = emit_svg(&plot_grid(&sq, PlotOptions::default()));
    let c = parse(&svg);
    assert_eq!(c.polylines, 8);
    assert_eq!(c.circles, 9);
    golden("lo_shu.svg", &svg);
}

#[test]
fn single_triplet_and_points() {
    let t = ArithTriplet::new(g(5, 11), g(4, 8), g(3, 3));
    let svg = emit_svg(&plot_triplet(&t));
    assert_eq!(parse(&svg).polylines, 1);
    golden("triplet.svg", &svg);

    let z = ZeroSumTriple::new(g(4, -1), g(4, 8), g(7, -4)).unwrap();
    let values: Vec<GaussInt> = z.components().iter().map(|c| c.square()).chain([g(15, -8)]).collect();
    let svg = emit_svg(&plot_points(&values));
    // 15−8i repeats (4−i)², so one marker is shared
    assert_eq!(parse(&svg).circles, 3);
    golden("points.svg", &svg);
}
