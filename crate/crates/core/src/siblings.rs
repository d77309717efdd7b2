//! Sibling families of a grid's lines, pseudo-grids assembled from siblings
//! of parallel lines, and the error term that measures how far a pseudo-grid
//! is from a true slant grid.
//!
//! For a pseudo-grid with segment endpoints `(D, b)`, `(c, C)`, `(B, d)` the
//! error is `E = m₁ + m₃ − 2m₂` with `mᵢ` the squared half-sums, which reduces
//! to `(Db + Bd − 2Cc)/2` and satisfies
//! `2E·(Db + Bd + 2Cc) + (Bb − Dd)² = 0` whenever both endpoint columns are
//! arithmetic in the squares.

use num_bigint::BigInt;
use serde::Serialize;

use crate::arith::{gauss_sqrt, RadicalSum, RootScalar, FLOAT_TOLERANCE};
use crate::correspondence::{siblings_of_triplet, ArithTriplet, Siblings};
use crate::error::{Error, Result};
use crate::grid::{gap_recover, line_set, GapBasis, GridLine, LineSource, MagicSquare};
use crate::{GaussF64, GaussInt};

/// Relative error below which a pseudo-grid is reported as a near-miss.
pub const NEAR_MISS_THRESHOLD: f64 = 1e-2;

/// One grid line with its two siblings.
#[derive(Clone, Debug, PartialEq)]
pub struct SiblingRecord<S> {
    pub line: GridLine,
    pub original: ArithTriplet<S>,
    pub siblings: Siblings<S>,
    /// Whether both siblings have Gaussian-integer roots.
    pub integral: bool,
    /// Whether the line's roots involve more than one radicand.
    pub mixed_radicals: bool,
}

impl<S: RootScalar> SiblingRecord<S> {
    fn new(line: GridLine, roots: [S; 3]) -> Self {
        let [x, z, y] = roots;
        let siblings = siblings_of_triplet(&x, &z, &y);
        let integral = siblings.is_integral();
        let radicands: std::collections::BTreeSet<&BigInt> =
            line.roots.iter().flatten().filter(|r| !r.is_rational()).map(|r| r.radicand()).collect();
        SiblingRecord { original: ArithTriplet::new(x, z, y), siblings, integral, mixed_radicals: radicands.len() > 1, line }
    }
}

/// The 8 lines of a grid and their 16 siblings.
#[derive(Clone, Debug, PartialEq)]
pub struct SiblingFamily<S> {
    pub source: LineSource,
    pub records: Vec<SiblingRecord<S>>,
}

impl<S: RootScalar> SiblingFamily<S> {
    pub fn sibling_count(&self) -> usize {
        2 * self.records.len()
    }

    /// Originals plus siblings.
    pub fn triplet_count(&self) -> usize {
        3 * self.records.len()
    }

    pub fn siblings(&self) -> impl Iterator<Item = &ArithTriplet<S>> {
        self.records.iter().flat_map(|r| [&r.siblings.older, &r.siblings.younger])
    }

    /// Whether every sibling defect is the negated defect of its line.
    pub fn defects_negated(&self) -> bool {
        self.records.iter().all(|r| {
            let target = -r.original.defect().clone();
            let scale = r.original.values().iter().map(|v| v.approx().abs()).fold(1.0, f64::max);
            [&r.siblings.older, &r.siblings.younger]
                .iter()
                .all(|s| (s.defect().clone() - target.clone()).is_negligible(scale))
        })
    }

    pub fn kinked_siblings(&self) -> usize {
        self.siblings()
            .filter(|s| {
                let scale = s.values().iter().map(|v| v.approx().abs()).fold(1.0, f64::max);
                !s.defect().is_negligible(scale)
            })
            .count()
    }

    /// Sibling entries (squared roots) that are not squares of Gaussian integers.
    pub fn non_square_entries(&self) -> usize {
        self.siblings().flat_map(|s| s.roots()).filter(|r| r.as_gauss_int().is_none()).count()
    }

    /// Whether every entry of an integral sibling is a Gaussian square.
    pub fn integral_entries_square(&self) -> bool {
        self.records.iter().filter(|r| r.integral).all(|r| {
            [&r.siblings.older, &r.siblings.younger]
                .iter()
                .flat_map(|s| s.values())
                .all(|v| v.as_gauss_int().is_some_and(|g| gauss_sqrt(&g).is_some()))
        })
    }

    /// Siblings whose two endpoint entries coincide.
    pub fn duplicate_endpoint_pairs(&self) -> usize {
        self.siblings()
            .filter(|s| {
                let [l, _, r] = s.values();
                let scale = l.approx().abs().max(r.approx().abs()).max(1.0);
                (l - r).is_negligible(scale)
            })
            .count()
    }
}

/// Exact root of every cell of a line, or `NotSquare` naming the value.
fn exact_line_roots(line: &GridLine) -> Result<[RadicalSum; 3]> {
    let roots = line.exact_roots().ok_or_else(|| {
        let missing = line.roots.iter().zip(&line.values).find(|(r, _)| r.is_none()).map(|(_, v)| v.to_string());
        Error::NotSquare(format!("{} has no exact root (value {})", line.name, missing.unwrap_or_default()))
    })?;
    Ok(roots.map(RadicalSum::from))
}

fn float_root(root: Option<&crate::RadicalValue>, value: &GaussInt) -> GaussF64 {
    match root {
        Some(r) => r.to_f64(),
        None => value.to_f64().sqrt_principal(),
    }
}

/// Sibling family with exact roots.
pub fn grid_siblings(sq: &MagicSquare) -> Result<SiblingFamily<RadicalSum>> {
    let (source, lines) = line_set(sq);
    let records = lines
        .into_iter()
        .map(|line| exact_line_roots(&line).map(|roots| SiblingRecord::new(line, roots)))
        .collect::<Result<_>>()?;
    Ok(SiblingFamily { source, records })
}

/// Sibling family in floating point; cells without a known root use the
/// principal square root.
pub fn grid_siblings_float(sq: &MagicSquare) -> SiblingFamily<GaussF64> {
    let (source, lines) = line_set(sq);
    let records = lines
        .into_iter()
        .map(|line| {
            let roots = [0, 1, 2].map(|i| float_root(line.roots[i].as_ref(), &line.values[i]));
            SiblingRecord::new(line, roots)
        })
        .collect();
    SiblingFamily { source, records }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Rows,
    Cols,
}

impl std::str::FromStr for Direction {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rows" => Ok(Direction::Rows),
            "cols" | "columns" => Ok(Direction::Cols),
            other => Err(Error::Parse(format!("unknown direction {other:?} (expected rows or cols)"))),
        }
    }
}

impl Direction {
    /// Lattice positions of segment `i` (0..3): its two endpoints.
    fn endpoints(self, i: usize) -> [(i8, i8); 2] {
        let s = i as i8 - 1;
        match self {
            Direction::Rows => [(s, -1), (s, 1)],
            Direction::Cols => [(-1, s), (1, s)],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PseudoOptions {
    pub direction: Direction,
    pub younger: bool,
    pub threshold: f64,
}

impl PseudoOptions {
    pub fn new(direction: Direction) -> Self {
        PseudoOptions { direction, younger: false, threshold: NEAR_MISS_THRESHOLD }
    }
}

/// Three sibling segments of parallel lattice lines.
#[derive(Clone, Debug, PartialEq)]
pub struct PseudoGrid<S> {
    pub direction: Direction,
    pub younger: bool,
    pub segments: [ArithTriplet<S>; 3],
    /// Squared centers of the segments.
    pub midpoints: [S; 3],
    /// The six endpoint roots `D, b, c, C, B, d`.
    pub letters: [S; 6],
    pub error: S,
    pub identity_residual: S,
    /// `|E|` over the median absolute grid entry.
    pub relative_error: f64,
    pub near_miss: bool,
}

impl<S: RootScalar> PseudoGrid<S> {
    /// `(Db + Bd − 2Cc)/2`, the error term from endpoint products.
    pub fn product_form(&self) -> S {
        let [d_, b, c, c_, b_, d] = self.letters.clone();
        (d_ * b.clone() + b_ * d - (c_ * c) * (S::one() + S::one())).half()
    }
}

fn median_abs(values: impl IntoIterator<Item = GaussF64>) -> f64 {
    let mut abs: Vec<f64> = values.into_iter().map(|v| v.abs()).collect();
    abs.sort_by(f64::total_cmp);
    abs[abs.len() / 2]
}

/// `2E(Db + Bd + 2Cc) + (Bb − Dd)²`.
fn identity_residual<S: RootScalar>(e: &S, [d_, b, c, c_, b_, d]: &[S; 6]) -> S {
    let two = S::one() + S::one();
    let sum = d_.clone() * b.clone() + b_.clone() * d.clone() + two.clone() * c_.clone() * c.clone();
    let cross = b_.clone() * b.clone() - d_.clone() * d.clone();
    two * e.clone() * sum + cross.sq()
}

/// `lattice_roots` is indexed `[j+1][k+1]`.
fn assemble<S: RootScalar>(lattice_roots: &[[S; 3]; 3], entry_scale: f64, opts: PseudoOptions) -> PseudoGrid<S> {
    let at = |(j, k): (i8, i8)| lattice_roots[(j + 1) as usize][(k + 1) as usize].clone();
    let sign = |y: S| if opts.younger { -y } else { y };
    let mut letters = Vec::with_capacity(6);
    let mut segments = Vec::with_capacity(3);
    for i in 0..3 {
        let [p, q] = opts.direction.endpoints(i);
        let (x, y) = (at(p), at(q));
        letters.push(x.clone());
        letters.push(sign(y.clone()));
        // the middle root does not affect the segment's center
        let mid = (x.clone() + y.clone()).half();
        let sibs = siblings_of_triplet(&x, &mid, &y);
        segments.push(if opts.younger { sibs.younger } else { sibs.older });
    }
    let letters: [S; 6] = letters.try_into().expect("six letters");
    let segments: [ArithTriplet<S>; 3] = segments.try_into().expect("three segments");
    let midpoints = segments.clone().map(|s| s.center().sq());
    let two = S::one() + S::one();
    let error = midpoints[0].clone() + midpoints[2].clone() - two * midpoints[1].clone();
    let identity_residual = identity_residual(&error, &letters);
    let relative_error = error.approx().abs() / entry_scale;
    PseudoGrid {
        direction: opts.direction,
        younger: opts.younger,
        segments,
        midpoints,
        letters,
        error,
        identity_residual,
        relative_error,
        near_miss: relative_error < opts.threshold,
    }
}

/// Exact pseudo-grid; needs a slant grid whose endpoint roots are known.
pub fn pseudo_grid(sq: &MagicSquare, opts: PseudoOptions) -> Result<PseudoGrid<RadicalSum>> {
    let rec = gap_recover(sq)?;
    let roots = sq.lattice_roots(&rec);
    let mut lattice = Vec::with_capacity(3);
    for (j, row) in roots.iter().enumerate() {
        let mut out = Vec::with_capacity(3);
        for (k, r) in row.iter().enumerate() {
            let r = r.as_ref().ok_or_else(|| {
                let v = rec.basis.value(j as i8 - 1, k as i8 - 1);
                Error::NotSquare(format!("lattice cell ({}, {}) value {v} has no exact root", j as i8 - 1, k as i8 - 1))
            })?;
            out.push(RadicalSum::from(r));
        }
        lattice.push(<[RadicalSum; 3]>::try_from(out).expect("three roots"));
    }
    let lattice: [[RadicalSum; 3]; 3] = lattice.try_into().expect("three rows");
    let scale = median_abs(sq.values().iter().flatten().map(GaussInt::to_f64));
    Ok(assemble(&lattice, scale, opts))
}

/// Floating pseudo-grid; unknown roots fall back to principal square roots.
pub fn pseudo_grid_float(sq: &MagicSquare, opts: PseudoOptions) -> Result<PseudoGrid<GaussF64>> {
    let rec = gap_recover(sq)?;
    let roots = sq.lattice_roots(&rec);
    let lattice: [[GaussF64; 3]; 3] = std::array::from_fn(|j| {
        std::array::from_fn(|k| float_root(roots[j][k].as_ref(), &rec.basis.value(j as i8 - 1, k as i8 - 1)))
    });
    let scale = median_abs(sq.values().iter().flatten().map(GaussInt::to_f64));
    Ok(assemble(&lattice, scale, opts))
}

/// One point of the origin-distance study.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ShiftPoint {
    pub shift: f64,
    /// `|E|` from the cancellation-free closed form; `None` when its
    /// denominator vanishes.
    pub abs_error: Option<f64>,
    pub relative_error: Option<f64>,
    /// `|E|` from the endpoint-product form, for comparison.
    pub abs_error_direct: f64,
    pub near_miss: bool,
    pub flagged: bool,
}

/// Shifts every entry of the slant grid by `t`, takes principal roots, and
/// measures the row-direction error term.
///
/// The error is evaluated as `−(Bb − Dd)²/(2(Db + Bd + 2Cc))` with
/// `Bb − Dd = (B²b² − D²d²)/(Bb + Dd)`; the numerator `B²b² − D²d²` is exact
/// because the `t²` terms cancel and the `t` terms vanish on a slant grid.
pub fn origin_shift_study(basis: &GapBasis, shifts: &[f64], threshold: f64) -> Vec<ShiftPoint> {
    let letters_at = [(-1, -1), (-1, 1), (0, -1), (0, 1), (1, -1), (1, 1)];
    let exact = letters_at.map(|(j, k)| basis.value(j, k));
    let [d0, b0, _, _, bb0, dd0] = exact.clone();
    let prod_const = bb0.clone() * b0.clone() - d0.clone() * dd0.clone();
    let prod_lin = bb0 + b0 - d0 - dd0;
    shifts
        .iter()
        .map(|&t| {
            let shifted = |z: &GaussInt| {
                let f = z.to_f64();
                GaussF64::new(f.re + t, f.im)
            };
            let [d_, b, c, c_, b_, d] = exact.clone().map(|z| shifted(&z).sqrt_principal());
            let scale = median_abs(basis.lattice_values().iter().flatten().map(shifted));
            let direct = (d_ * b + b_ * d - (c_ * c) * GaussF64::new(2.0, 0.0)).half();
            let p = prod_const.to_f64() + prod_lin.to_f64() * GaussF64::new(t, 0.0);
            let (bb, dd) = (b_ * b, d_ * d);
            let cross = if (bb + dd).abs() >= (bb - dd).abs() { p.div(&(bb + dd)) } else { bb - dd };
            let denom = (d_ * b + b_ * d + c_ * c * GaussF64::new(2.0, 0.0)) * GaussF64::new(2.0, 0.0);
            let denom_scale = [d_ * b, b_ * d, c_ * c].iter().map(|z| z.abs()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
            let flagged = denom.abs() <= FLOAT_TOLERANCE * denom_scale;
            let abs_error = (!flagged).then(|| (cross * cross).div(&denom).abs());
            let relative_error = abs_error.map(|e| e / scale);
            ShiftPoint {
                shift: t,
                abs_error,
                relative_error,
                abs_error_direct: direct.abs(),
                near_miss: relative_error.is_some_and(|r| r < threshold),
                flagged,
            }
        })
        .collect()
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn log_log_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let (xs, ys): (Vec<f64>, Vec<f64>) = points.iter().map(|&(x, y)| (x.ln(), y.ln())).unzip();
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    sxy / sxx
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::RadicalValue;
    use crate::fixtures;
    use crate::grid::LineName;
    use crate::GaussRat;
    use num_traits::Zero;
    use proptest::prelude::*;

    fn g(re: i64, im: i64) -> GaussInt {
        GaussInt::from_i64(re, im)
    }

    fn exact(z: GaussInt) -> RadicalSum {
        RadicalSum::from_int(&z)
    }

    #[test]
    fn bremner_family_is_perfect() {
        let fam = grid_siblings(&fixtures::bremner()).unwrap();
        assert_eq!(fam.source, LineSource::Gap);
        assert_eq!(fam.sibling_count(), 16);
        assert_eq!(fam.triplet_count(), 24);
        assert!(fam.defects_negated());
        assert_eq!(fam.kinked_siblings(), 0);
        assert!(fam.non_square_entries() >= 1);
    }

    #[test]
    fn bremner_middle_row_siblings() {
        let fam = grid_siblings(&fixtures::bremner()).unwrap();
        let rec = fam.records.iter().find(|r| r.line.name == LineName::GapRow(0)).unwrap();
        let roots: Vec<_> = rec.original.roots().iter().map(|r| r.to_gauss_int().unwrap()).collect();
        assert_eq!(roots, vec![g(205, 0), g(425, 0), g(565, 0)]);
        let ints = |t: &ArithTriplet<RadicalSum>| t.roots().map(|r| r.to_gauss_int().unwrap().normalize_sign());
        let mut older = ints(&rec.siblings.older);
        older.sort();
        assert_eq!(older, [g(385, 0), g(425, -180), g(425, 180)]);
        let mut younger = ints(&rec.siblings.younger);
        younger.sort();
        assert_eq!(younger, [g(180, 0), g(425, -385), g(425, 385)]);
        assert!(rec.siblings.older.defect().is_zero() && rec.siblings.younger.defect().is_zero());
        assert!(rec.integral);
    }

    #[test]
    fn parker_family_has_kinks_and_repeats() {
        let fam = grid_siblings(&fixtures::parker()).unwrap();
        assert_eq!(fam.source, LineSource::Arrangement);
        assert_eq!(fam.triplet_count(), 24);
        assert!(fam.defects_negated());
        assert!(fam.kinked_siblings() >= 1);
        assert!(fam.integral_entries_square());
        assert!(fam.duplicate_endpoint_pairs() >= 1);
        let diag = fam.records.iter().find(|r| r.line.name == LineName::Diag).unwrap();
        let [l, _, r] = diag.siblings.older.roots().map(|x| x.to_gauss_int().unwrap());
        assert_eq!((l, r), (g(37, 0), g(37, 0)));
    }

    #[test]
    fn float_family_tracks_exact() {
        for sq in [fixtures::bremner(), fixtures::parker()] {
            let ex = grid_siblings(&sq).unwrap();
            let fl = grid_siblings_float(&sq);
            assert!(fl.defects_negated());
            for (a, b) in ex.siblings().zip(fl.siblings()) {
                for (x, y) in a.roots().iter().zip(b.roots()) {
                    let (x, y) = (x.to_f64(), *y);
                    assert!((x - y).abs() <= 1e-9 * x.abs().max(1.0));
                }
            }
        }
    }

    #[test]
    fn bremner_rows_error_exact() {
        let pg = pseudo_grid(&fixtures::bremner(), PseudoOptions::new(Direction::Rows)).unwrap();
        let n = BigInt::from(360721);
        let expected = RadicalSum::from(GaussRat::from_int(&g(-219529, 0)).half())
            + RadicalSum::from(&RadicalValue::sqrt_of_integer(&n))
                * RadicalSum::from(GaussRat::from_int(&g(289, 0)).half());
        assert_eq!(pg.error, expected);
        assert!(pg.identity_residual.is_zero());
        assert_eq!(pg.product_form(), pg.error);
        let letters: Vec<String> = pg.letters.iter().map(|l| l.to_string()).collect();
        assert_eq!(letters[..5], ["23", "527", "205", "565", "289"]);
    }

    #[test]
    fn bremner_cols_and_younger_satisfy_identity() {
        for direction in [Direction::Rows, Direction::Cols] {
            for younger in [false, true] {
                let opts = PseudoOptions { direction, younger, threshold: NEAR_MISS_THRESHOLD };
                let pg = pseudo_grid(&fixtures::bremner(), opts).unwrap();
                assert!(pg.identity_residual.is_zero(), "{direction:?} younger={younger}");
                assert_eq!(pg.product_form(), pg.error);
                let fl = pseudo_grid_float(&fixtures::bremner(), opts).unwrap();
                let (a, b) = (pg.error.to_f64(), fl.error);
                assert!((a - b).abs() <= 1e-6 * a.abs().max(1.0), "{a:?} vs {b:?}");
            }
        }
        let older = pseudo_grid(&fixtures::bremner(), PseudoOptions::new(Direction::Rows)).unwrap();
        let younger =
            pseudo_grid(&fixtures::bremner(), PseudoOptions { younger: true, ..PseudoOptions::new(Direction::Rows) }).unwrap();
        assert_eq!(younger.error, -older.error);
    }

    #[test]
    fn parker_is_rejected() {
        assert!(matches!(pseudo_grid(&fixtures::parker(), PseudoOptions::new(Direction::Rows)), Err(Error::NotAGap(_))));
    }

    #[test]
    fn origin_covering_demo_is_not_a_near_miss() {
        let pts = origin_shift_study(&fixtures::demo_basis(), &[0.0], NEAR_MISS_THRESHOLD);
        let rel = pts[0].relative_error.unwrap();
        assert!(rel > 0.5, "{rel}");
        assert!(!pts[0].near_miss);
        let direct = pts[0].abs_error_direct;
        assert!((pts[0].abs_error.unwrap() - direct).abs() <= 1e-9 * direct);
    }

    #[test]
    fn shifted_error_decreases() {
        let pts = origin_shift_study(&fixtures::demo_basis(), &[1e2, 1e4, 1e6], NEAR_MISS_THRESHOLD);
        let rel: Vec<f64> = pts.iter().map(|p| p.relative_error.unwrap()).collect();
        assert!(rel[0] > rel[1] && rel[1] > rel[2], "{rel:?}");
    }

    #[test]
    fn zero_denominator_is_flagged() {
        // rows (−1, −1, −1), (0, 0, 0), (1, 1, 1): Db + Bd + 2Cc = i·i + 1 = 0
        let basis = GapBasis::from_i64(0, 1, 0);
        let pts = origin_shift_study(&basis, &[0.0, 10.0], NEAR_MISS_THRESHOLD);
        assert!(pts[0].flagged && pts[0].abs_error.is_none());
        assert!(!pts[1].flagged);
    }

    #[test]
    fn slope_of_power_law() {
        let pts: Vec<(f64, f64)> = [1.0, 10.0, 100.0].iter().map(|&x: &f64| (x, 5.0 * x.powi(-2))).collect();
        assert!((log_log_slope(&pts) + 2.0).abs() < 1e-12);
    }

    fn small() -> impl Strategy<Value = GaussInt> {
        (-40i64..=40, -40i64..=40).prop_map(|(a, b)| g(a, b))
    }

    /// Roots `(a−b, c, a+b)` whose squares are in arithmetic progression,
    /// from the Gaussian Euclid legs `(p²−q², 2pq, p²+q²)`.
    fn square_ap(p: &GaussInt, q: &GaussInt) -> [GaussInt; 3] {
        let a = p.square() - q.square();
        let b = (p.clone() * q.clone()).scale(&BigInt::from(2));
        let c = p.square() + q.square();
        [a.clone() - b.clone(), c, a + b]
    }

    /// Lattice with `left` down column k=−1 and `right` down column k=+1.
    fn column_lattice(left: &[GaussInt; 3], right: &[GaussInt; 3], flip: &[bool]) -> [[RadicalSum; 3]; 3] {
        let signed = |z: &GaussInt, f: bool| exact(if f { -z.clone() } else { z.clone() });
        std::array::from_fn(|j| [signed(&left[j], flip[2 * j]), exact(left[j].clone()), signed(&right[j], flip[2 * j + 1])])
    }

    fn root_lattice(basis: &GapBasis) -> Option<[[RadicalSum; 3]; 3]> {
        let sq = MagicSquare::from_basis(basis);
        let rec = gap_recover(&sq).ok()?;
        let roots = sq.lattice_roots(&rec);
        let mut rows = Vec::new();
        for row in roots.iter() {
            let r: Option<Vec<RadicalSum>> = row.iter().map(|x| x.as_ref().map(RadicalSum::from)).collect();
            rows.push(<[RadicalSum; 3]>::try_from(r?).ok()?);
        }
        rows.try_into().ok()
    }

    proptest! {
        #[test]
        fn sibling_defects_negate(x in small(), z in small(), y in small()) {
            let (x, z, y) = (exact(x), exact(z), exact(y));
            let t = ArithTriplet::new(x.clone(), z.clone(), y.clone());
            let s = siblings_of_triplet(&x, &z, &y);
            prop_assert_eq!(s.older.defect().clone(), -t.defect().clone());
            prop_assert_eq!(s.younger.defect().clone(), -t.defect().clone());
        }

        #[test]
        fn identity_holds_on_random_real_grids(m in -200i64..200, u in -60i64..60, v in -60i64..60, younger: bool, cols: bool) {
            // real entries always have exact roots, possibly with several radicands
            let basis = GapBasis::from_i64(m, u, v);
            prop_assume!(!basis.is_degenerate());
            let lattice = root_lattice(&basis).unwrap();
            let direction = if cols { Direction::Cols } else { Direction::Rows };
            let pg = assemble(&lattice, 1.0, PseudoOptions { direction, younger, threshold: NEAR_MISS_THRESHOLD });
            prop_assert!(pg.identity_residual.is_zero());
            prop_assert_eq!(pg.product_form(), pg.error);
        }

        #[test]
        fn identity_holds_on_gaussian_square_columns(
            p in small(), q in small(), r in small(), s in small(),
            flip in proptest::collection::vec(any::<bool>(), 6),
            younger: bool,
        ) {
            let (left, right) = (square_ap(&p, &q), square_ap(&r, &s));
            let lattice = column_lattice(&left, &right, &flip);
            let pg = assemble(&lattice, 1.0, PseudoOptions { direction: Direction::Rows, younger, threshold: NEAR_MISS_THRESHOLD });
            prop_assert!(pg.identity_residual.is_zero());
        }

        #[test]
        fn square_endpoints_give_square_midpoints(p in small(), q in small(), r in small(), s in small()) {
            let (left, right) = (square_ap(&p, &q), square_ap(&r, &s));
            let two = BigInt::from(2);
            let parity = (0..3).all(|i| (left[i].clone() + right[i].clone()).div_round(&GaussInt::real(two.clone())).scale(&two) == left[i].clone() + right[i].clone());
            prop_assume!(parity);
            let pg = assemble(&column_lattice(&left, &right, &[false; 6]), 1.0, PseudoOptions::new(Direction::Rows));
            for m in &pg.midpoints {
                let z = m.to_gauss_int().unwrap();
                prop_assert!(gauss_sqrt(&z).is_some());
            }
        }
    }
}
