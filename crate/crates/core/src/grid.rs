//! 3×3 magic arrangements and slant grids.
//!
//! A square whose eight line sums agree has magic total `T = 3M²` (three times
//! the center), so every line through the center is an arithmetic triplet and
//! the nine values form a slant grid `{m + j·u + k·v : j, k ∈ {−1, 0, 1}}`.
//! The magic arrangement built from a basis `(m, u, v)` is
//!
//! ```text
//!   m+u     m−u−v   m+v
//!   m−u+v   m       m+u−v
//!   m−v     m+u+v   m−u
//! ```
//!
//! so the main diagonal steps by `u`, the anti-diagonal by `v`, the middle row by
//! `v−u` and the middle column by `u+v`.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::arith::{gauss_sqrt, RadicalValue};
use crate::error::{Error, Result};
use crate::GaussInt;

/// A cell position `(row, col)` in the magic arrangement.
pub type CellPos = (usize, usize);
/// A lattice position `(j, k)` in the slant grid, each in `{−1, 0, 1}`.
pub type LatticePos = (i8, i8);

pub type RootGrid = [[Option<RadicalValue>; 3]; 3];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    value: GaussInt,
    root: Option<RadicalValue>,
}

impl Cell {
    /// Default root: the sign-normalized Gaussian root, else `√value` for real
    /// values, else none.
    pub fn new(value: GaussInt) -> Self {
        let root = RadicalValue::root_of(&value);
        Cell { value, root }
    }

    pub fn with_root(value: GaussInt, root: Option<RadicalValue>) -> Result<Self> {
        if let Some(r) = &root {
            if r.square() != RadicalValue::from_int(&value) {
                return Err(Error::Invalid { path: String::new(), reason: format!("({r})² ≠ {value}") });
            }
        }
        Ok(Cell { value, root })
    }

    pub fn value(&self) -> &GaussInt {
        &self.value
    }

    pub fn root(&self) -> Option<&RadicalValue> {
        self.root.as_ref()
    }

    /// Whether the value is the square of a Gaussian integer.
    pub fn is_square(&self) -> bool {
        gauss_sqrt(&self.value).is_some()
    }
}

/// Nine cells in magic-square arrangement; the center holds `M²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MagicSquare {
    cells: [[Cell; 3]; 3],
}

const CENTER: CellPos = (1, 1);

/// The four lines through the center as (first, second) cell pairs: middle
/// row, middle column, main diagonal, anti-diagonal.
pub const CENTRAL_PAIRS: [(CellPos, CellPos); 4] = [((1, 0), (1, 2)), ((0, 1), (2, 1)), ((0, 0), (2, 2)), ((0, 2), (2, 0))];

impl MagicSquare {
    pub fn new(values: [[GaussInt; 3]; 3]) -> Self {
        MagicSquare { cells: values.map(|row| row.map(Cell::new)) }
    }

    pub fn from_i64(values: [[i64; 3]; 3]) -> Self {
        Self::new(values.map(|row| row.map(|v| GaussInt::from_i64(v, 0))))
    }

    /// Cells with caller-chosen roots; every root must square to its value.
    pub fn with_roots(values: [[GaussInt; 3]; 3], roots: RootGrid) -> Result<Self> {
        let mut cells = Vec::with_capacity(9);
        for (r, (vrow, rrow)) in values.into_iter().zip(roots).enumerate() {
            for (c, (value, root)) in vrow.into_iter().zip(rrow).enumerate() {
                let cell = Cell::with_root(value, root).map_err(|e| match e {
                    Error::Invalid { reason, .. } => Error::Invalid { path: format!("roots[{r}][{c}]"), reason },
                    other => other,
                })?;
                cells.push(cell);
            }
        }
        let mut it = cells.into_iter();
        let mut next_row = || [it.next().unwrap(), it.next().unwrap(), it.next().unwrap()];
        Ok(MagicSquare { cells: [next_row(), next_row(), next_row()] })
    }

    /// The magic arrangement of the slant grid spanned by `basis`.
    pub fn from_basis(basis: &GapBasis) -> Self {
        Self::new(MAGIC_LAYOUT.map(|row| row.map(|(j, k)| basis.value(j, k))))
    }

    pub fn cell(&self, (r, c): CellPos) -> &Cell {
        &self.cells[r][c]
    }

    pub fn value(&self, pos: CellPos) -> &GaussInt {
        self.cell(pos).value()
    }

    pub fn root(&self, pos: CellPos) -> Option<&RadicalValue> {
        self.cell(pos).root()
    }

    pub fn center(&self) -> &GaussInt {
        self.value(CENTER)
    }

    pub fn values(&self) -> [[GaussInt; 3]; 3] {
        self.cells.clone().map(|row| row.map(|c| c.value))
    }

    pub fn roots(&self) -> RootGrid {
        self.cells.clone().map(|row| row.map(|c| c.root))
    }

    pub fn positions() -> impl Iterator<Item = CellPos> {
        (0..3).flat_map(|r| (0..3).map(move |c| (r, c)))
    }

    /// Roots placed at lattice positions, index `[j+1][k+1]`.
    pub fn lattice_roots(&self, rec: &GapRecovery) -> RootGrid {
        let mut out: RootGrid = Default::default();
        for pos in Self::positions() {
            let (j, k) = rec.lattice_pos(pos);
            out[(j + 1) as usize][(k + 1) as usize] = self.root(pos).cloned();
        }
        out
    }
}

/// Lattice coordinates of each magic cell for the layout built by
/// [`MagicSquare::from_basis`].
pub const MAGIC_LAYOUT: [[LatticePos; 3]; 3] = [[(1, 0), (-1, -1), (0, 1)], [(-1, 1), (0, 0), (1, -1)], [(0, -1), (1, 1), (-1, 0)]];

fn gauss_key(z: &GaussInt) -> (BigInt, &BigInt, &BigInt) {
    (z.norm(), &z.re, &z.im)
}

/// Norm first, then `(re, im)` lexicographically.
pub fn gauss_cmp(a: &GaussInt, b: &GaussInt) -> Ordering {
    gauss_key(a).cmp(&gauss_key(b))
}

/// Center value and steps of a slant grid `{m + j·u + k·v}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GapBasis {
    pub m: GaussInt,
    pub u: GaussInt,
    pub v: GaussInt,
}

impl GapBasis {
    pub fn new(m: GaussInt, u: GaussInt, v: GaussInt) -> Self {
        GapBasis { m, u, v }
    }

    pub fn from_i64(m: i64, u: i64, v: i64) -> Self {
        Self::new(GaussInt::from_i64(m, 0), GaussInt::from_i64(u, 0), GaussInt::from_i64(v, 0))
    }

    pub fn value(&self, j: i8, k: i8) -> GaussInt {
        let j = BigInt::from(j);
        let k = BigInt::from(k);
        self.m.clone() + self.u.scale(&j) + self.v.scale(&k)
    }

    /// Sign-normalized steps with `u` before `v` in norm-then-lex order.
    pub fn canonical(&self) -> Self {
        self.canonical_with_map().0
    }

    /// Canonical basis plus the map from old lattice positions to new ones.
    fn canonical_with_map(&self) -> (Self, impl Fn(LatticePos) -> LatticePos) {
        let su: i8 = if self.u.normalize_sign() == self.u { 1 } else { -1 };
        let sv: i8 = if self.v.normalize_sign() == self.v { 1 } else { -1 };
        let (u, v) = (self.u.normalize_sign(), self.v.normalize_sign());
        let swap = gauss_cmp(&v, &u) == Ordering::Less;
        let basis = if swap { GapBasis::new(self.m.clone(), v, u) } else { GapBasis::new(self.m.clone(), u, v) };
        let map = move |(j, k): LatticePos| {
            let (j, k) = (j * su, k * sv);
            if swap { (k, j) } else { (j, k) }
        };
        (basis, map)
    }

    pub fn is_degenerate(&self) -> bool {
        self.u.is_zero() || self.v.is_zero() || self.u == self.v || self.u == -self.v.clone()
    }

    /// Canonical ordering key: `m`, then `u`, then `v`, each norm-then-lex.
    pub fn cmp_canonical(&self, other: &Self) -> Ordering {
        gauss_cmp(&self.m, &other.m)
            .then_with(|| gauss_cmp(&self.u, &other.u))
            .then_with(|| gauss_cmp(&self.v, &other.v))
    }

    pub fn lattice_values(&self) -> [[GaussInt; 3]; 3] {
        [-1i8, 0, 1].map(|j| [-1i8, 0, 1].map(|k| self.value(j, k)))
    }
}

impl fmt::Display for GapBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(m={}, u={}, v={})", self.m, self.u, self.v)
    }
}

/// A recovered slant grid: canonical basis plus the lattice position of every
/// magic cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapRecovery {
    pub basis: GapBasis,
    positions: [[LatticePos; 3]; 3],
}

impl GapRecovery {
    pub fn lattice_pos(&self, (r, c): CellPos) -> LatticePos {
        self.positions[r][c]
    }

    /// The magic cell sitting at lattice position `(j, k)`.
    pub fn cell_at(&self, lp: LatticePos) -> CellPos {
        MagicSquare::positions().find(|&p| self.lattice_pos(p) == lp).expect("positions form a permutation")
    }
}

/// Finds `(m, u, v)` such that the nine values are `m + j·u + k·v`.
pub fn gap_recover(sq: &MagicSquare) -> Result<GapRecovery> {
    let m = sq.center().clone();
    let twice = m.scale(&BigInt::from(2));
    let mut diffs = Vec::with_capacity(4);
    for (a, b) in CENTRAL_PAIRS {
        let sum = sq.value(a).clone() + sq.value(b).clone();
        if sum != twice {
            return Err(Error::NotAGap(format!(
                "central pair {}, {} sums to {sum} ≠ 2·{m}",
                sq.value(a),
                sq.value(b)
            )));
        }
        diffs.push(sq.value(a).clone() - m.clone());
    }

    let pm = |z: &GaussInt, w: &GaussInt| z == w || *z == -w.clone();
    let mut best: Option<GapRecovery> = None;
    for i in 0..4 {
        for j in 0..4 {
            if i == j {
                continue;
            }
            let (u, v) = (diffs[i].clone(), diffs[j].clone());
            let rest: Vec<usize> = (0..4).filter(|&x| x != i && x != j).collect();
            let sum = u.clone() + v.clone();
            let dif = v.clone() - u.clone();
            let (k, l) = (rest[0], rest[1]);
            let (ks, ls) = if pm(&diffs[k], &sum) && pm(&diffs[l], &dif) {
                (k, l)
            } else if pm(&diffs[l], &sum) && pm(&diffs[k], &dif) {
                (l, k)
            } else {
                continue;
            };
            let mut positions = [[(0i8, 0i8); 3]; 3];
            let mut place = |pair: usize, first: LatticePos| {
                let (a, b) = CENTRAL_PAIRS[pair];
                positions[a.0][a.1] = first;
                positions[b.0][b.1] = (-first.0, -first.1);
            };
            place(i, (1, 0));
            place(j, (0, 1));
            place(ks, if diffs[ks] == sum { (1, 1) } else { (-1, -1) });
            place(ls, if diffs[ls] == dif { (-1, 1) } else { (1, -1) });

            let (basis, map) = GapBasis::new(m.clone(), u, v).canonical_with_map();
            let positions = positions.map(|row| row.map(&map));
            let candidate = GapRecovery { basis, positions };
            let better = match &best {
                None => true,
                Some(b) => candidate.basis.cmp_canonical(&b.basis) == Ordering::Less,
            };
            if better {
                best = Some(candidate);
            }
        }
    }
    let rec = best.ok_or_else(|| {
        let shown: Vec<String> = diffs.iter().map(|d| d.to_string()).collect();
        Error::NotAGap(format!("differences [{}] do not decompose as ±u, ±v, ±(u+v), ±(v−u)", shown.join(", ")))
    })?;
    debug_assert!(MagicSquare::positions().all(|p| {
        let (j, k) = rec.lattice_pos(p);
        rec.basis.value(j, k) == *sq.value(p)
    }));
    Ok(rec)
}

/// Diagnostic record of how close a square comes to a magic square of squares.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NearMissReport {
    /// Rows, columns, main diagonal, anti-diagonal.
    pub line_sums: Vec<GaussInt>,
    pub magic_constant: Option<GaussInt>,
    pub thrice_center_ok: bool,
    pub square_count: usize,
    pub distinct_count: usize,
    /// `X² + Y² − 2M²` for the middle row, middle column, main and anti
    /// diagonals.
    pub central_defects: Vec<GaussInt>,
    pub is_gap: bool,
}

pub fn magic_report(sq: &MagicSquare) -> NearMissReport {
    let line_sums: Vec<GaussInt> = MAGIC_LINES
        .iter()
        .map(|(_, cells)| cells.iter().fold(GaussInt::zero(), |acc, &p| acc + sq.value(p).clone()))
        .collect();
    let magic_constant = line_sums.iter().all(|s| *s == line_sums[0]).then(|| line_sums[0].clone());
    let thrice = sq.center().scale(&BigInt::from(3));
    let thrice_center_ok = magic_constant.as_ref() == Some(&thrice);
    let square_count = MagicSquare::positions().filter(|&p| sq.cell(p).is_square()).count();
    let distinct_count = MagicSquare::positions().map(|p| sq.value(p).clone()).collect::<BTreeSet<_>>().len();
    let twice_center = sq.center().scale(&BigInt::from(2));
    let central_defects =
        CENTRAL_PAIRS.iter().map(|&(a, b)| sq.value(a).clone() + sq.value(b).clone() - twice_center.clone()).collect();
    NearMissReport {
        line_sums,
        magic_constant,
        thrice_center_ok,
        square_count,
        distinct_count,
        central_defects,
        is_gap: gap_recover(sq).is_ok(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LineName {
    Row(u8),
    Col(u8),
    Diag,
    AntiDiag,
    /// Lattice row `j` (steps along `v`).
    GapRow(i8),
    /// Lattice column `k` (steps along `u`).
    GapCol(i8),
    GapDiag,
    GapAntiDiag,
}

impl fmt::Display for LineName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LineName::Row(r) => write!(f, "row {r}"),
            LineName::Col(c) => write!(f, "column {c}"),
            LineName::Diag => write!(f, "diagonal"),
            LineName::AntiDiag => write!(f, "anti-diagonal"),
            LineName::GapRow(j) => write!(f, "grid row j={j}"),
            LineName::GapCol(k) => write!(f, "grid column k={k}"),
            LineName::GapDiag => write!(f, "grid diagonal"),
            LineName::GapAntiDiag => write!(f, "grid anti-diagonal"),
        }
    }
}

/// The eight lines of the magic arrangement, middle cell second.
pub const MAGIC_LINES: [(LineName, [CellPos; 3]); 8] = [
    (LineName::Row(0), [(0, 0), (0, 1), (0, 2)]),
    (LineName::Row(1), [(1, 0), (1, 1), (1, 2)]),
    (LineName::Row(2), [(2, 0), (2, 1), (2, 2)]),
    (LineName::Col(0), [(0, 0), (1, 0), (2, 0)]),
    (LineName::Col(1), [(0, 1), (1, 1), (2, 1)]),
    (LineName::Col(2), [(0, 2), (1, 2), (2, 2)]),
    (LineName::Diag, [(0, 0), (1, 1), (2, 2)]),
    (LineName::AntiDiag, [(0, 2), (1, 1), (2, 0)]),
];

/// The eight arithmetic lines of the lattice.
pub const GAP_LINES: [(LineName, [LatticePos; 3]); 8] = [
    (LineName::GapRow(-1), [(-1, -1), (-1, 0), (-1, 1)]),
    (LineName::GapRow(0), [(0, -1), (0, 0), (0, 1)]),
    (LineName::GapRow(1), [(1, -1), (1, 0), (1, 1)]),
    (LineName::GapCol(-1), [(-1, -1), (0, -1), (1, -1)]),
    (LineName::GapCol(0), [(-1, 0), (0, 0), (1, 0)]),
    (LineName::GapCol(1), [(-1, 1), (0, 1), (1, 1)]),
    (LineName::GapDiag, [(-1, -1), (0, 0), (1, 1)]),
    (LineName::GapAntiDiag, [(-1, 1), (0, 0), (1, -1)]),
];

/// One line of a grid: three values, their roots when known, and the value
/// defect `X² + Y² − 2Z²` (`values[0] + values[2] − 2·values[1]`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridLine {
    pub name: LineName,
    pub values: [GaussInt; 3],
    pub roots: [Option<RadicalValue>; 3],
    pub defect: GaussInt,
}

impl GridLine {
    pub fn new(name: LineName, values: [GaussInt; 3], roots: [Option<RadicalValue>; 3]) -> Self {
        let defect = values[0].clone() + values[2].clone() - values[1].scale(&BigInt::from(2));
        GridLine { name, values, roots, defect }
    }

    pub fn exact_roots(&self) -> Option<[&RadicalValue; 3]> {
        match &self.roots {
            [Some(a), Some(b), Some(c)] => Some([a, b, c]),
            _ => None,
        }
    }
}

/// The eight lattice lines of `basis`; `roots` is indexed `[j+1][k+1]`.
pub fn gap_lines(basis: &GapBasis, roots: Option<&RootGrid>) -> Vec<GridLine> {
    GAP_LINES
        .iter()
        .map(|(name, cells)| {
            let values = cells.map(|(j, k)| basis.value(j, k));
            let roots = cells.map(|(j, k)| roots.and_then(|r| r[(j + 1) as usize][(k + 1) as usize].clone()));
            GridLine::new(*name, values, roots)
        })
        .collect()
}

/// Rows, columns and diagonals of the magic arrangement, middle cell as
/// center; used for squares that are not slant grids.
pub fn arrangement_lines(sq: &MagicSquare) -> Vec<GridLine> {
    MAGIC_LINES
        .iter()
        .map(|(name, cells)| {
            let values = cells.map(|p| sq.value(p).clone());
            let roots = cells.map(|p| sq.root(p).cloned());
            GridLine::new(*name, values, roots)
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LineSource {
    Gap,
    Arrangement,
}

/// Lines used for sibling generation: lattice lines when the square is a slant
/// grid, otherwise the magic arrangement's own lines.
pub fn line_set(sq: &MagicSquare) -> (LineSource, Vec<GridLine>) {
    match gap_recover(sq) {
        Ok(rec) => (LineSource::Gap, gap_lines(&rec.basis, Some(&sq.lattice_roots(&rec)))),
        Err(_) => (LineSource::Arrangement, arrangement_lines(sq)),
    }
}
