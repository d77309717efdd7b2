//! Norm-bounded search for slant grids with many square entries.
//!
//! Zero-sum triples are enumerated from Euclid parameters, unfolded into
//! arithmetic triplets, and bucketed by center value. Any two triplets sharing
//! a center `m` with gaps `d₁`, `d₂` fix a slant grid whose lines through the
//! center include both triplets; the remaining entries are scored for
//! squareness.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{exact_isqrt, gauss_sqrt};
use crate::correspondence::{triplets_from_triple, ArithTriplet, ZeroSumTriple};
use crate::error::{Error, Result};
use crate::grid::{gap_recover, magic_report, GapBasis, LatticePos, MagicSquare, NearMissReport};
use crate::GaussInt;

/// Largest bound accepted by [`brute_force_triples`].
pub const BRUTE_FORCE_LIMIT: u64 = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchRing {
    Integers,
    Gaussians,
}

impl std::str::FromStr for SearchRing {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "integers" => Ok(SearchRing::Integers),
            "gaussians" => Ok(SearchRing::Gaussians),
            other => Err(Error::Parse(format!("unknown ring {other:?} (expected integers or gaussians)"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    /// Largest norm of any component of an enumerated zero-sum triple; in the
    /// integer ring this bounds the squared hypotenuse.
    pub norm_bound: u64,
    pub ring: SearchRing,
    pub worker_count: usize,
    pub score_floor: u8,
}

impl SearchConfig {
    pub fn new(ring: SearchRing, norm_bound: u64) -> Self {
        SearchConfig { norm_bound, ring, worker_count: 1, score_floor: 5 }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |path: &str, reason: String| Err(Error::Invalid { path: path.into(), reason });
        if self.norm_bound < 2 {
            return bad("norm_bound", format!("must be at least 2, got {}", self.norm_bound));
        }
        if !(5..=9).contains(&self.score_floor) {
            return bad("score_floor", format!("must lie in 5..=9, got {}", self.score_floor));
        }
        if self.worker_count == 0 {
            return bad("worker_count", "must be positive".into());
        }
        Ok(())
    }

    fn pool(&self) -> rayon::ThreadPool {
        rayon::ThreadPoolBuilder::new().num_threads(self.worker_count).build().expect("thread pool")
    }
}

fn big(n: u64) -> BigInt {
    BigInt::from(n)
}

/// Gaussian integers with `norm ≤ bound`, row by row.
fn disk(bound: &BigInt) -> Vec<GaussInt> {
    let r = bound.sqrt();
    let mut out = Vec::new();
    let mut re = -r.clone();
    while re <= r {
        let mut im = -r.clone();
        while im <= r {
            let z = GaussInt::new(re.clone(), im.clone());
            if z.norm() <= *bound {
                out.push(z);
            }
            im += 1;
        }
        re += 1;
    }
    out
}

fn max_norm(z: &ZeroSumTriple) -> BigInt {
    z.components().iter().map(|c| c.norm()).max().expect("three components")
}

fn legs_triple(a: GaussInt, b: GaussInt, c: GaussInt) -> Option<ZeroSumTriple> {
    if a.is_zero() || b.is_zero() || c.is_zero() {
        return None;
    }
    ZeroSumTriple::new(c, a.mul_i(), b.mul_i()).ok()
}

fn canonical(z: ZeroSumTriple) -> ZeroSumTriple {
    let conj = z.conj();
    if conj.order_key() < z.order_key() {
        conj
    } else {
        z
    }
}

/// Integer triples `k·(p²−q², 2pq, p²+q²)` with hypotenuse `≤ √bound`.
fn integer_triples(bound: u64) -> Vec<ZeroSumTriple> {
    let croot = bound.sqrt();
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p < croot {
        for q in 1..p {
            let c = p * p + q * q;
            if c > croot {
                break;
            }
            if (p - q) % 2 == 0 || p.gcd(&q) != 1 {
                continue;
            }
            let (a, b) = (p * p - q * q, 2 * p * q);
            for k in 1..=croot / c {
                let g = |x: u64| GaussInt::real(big(k * x));
                out.extend(legs_triple(g(a), g(b), g(c)));
            }
        }
        p += 1;
    }
    out
}

/// Primitive Gaussian triples from Euclid parameters whose components all
/// have norm `≤ bound`, up to associates.
fn gaussian_primitives(bound: u64, pool: &rayon::ThreadPool) -> BTreeSet<[GaussInt; 3]> {
    let nb = big(bound);
    let param_bound = big(2) * nb.sqrt() + 2;
    let params = disk(&param_bound);
    let two = GaussInt::from_i64(2, 0);
    pool.install(|| {
        params
            .par_iter()
            .map(|p| {
                let mut local = BTreeSet::new();
                for q in &params {
                    let (p2, q2) = (p.square(), q.square());
                    let (a, b, c) = (p2.clone() - q2.clone(), two.clone() * p.clone() * q.clone(), p2 + q2);
                    if a.is_zero() || b.is_zero() || c.is_zero() {
                        continue;
                    }
                    let g = a.gcd(&b).gcd(&c);
                    let reduce = |x: &GaussInt| x.div_exact(&g).expect("gcd divides");
                    if let Some(z) = legs_triple(reduce(&a), reduce(&b), reduce(&c)) {
                        if max_norm(&z) <= nb {
                            local.insert(z.order_key());
                        }
                    }
                }
                local
            })
            .reduce(BTreeSet::new, |mut x, y| {
                x.extend(y);
                x
            })
    })
}

/// Zero-sum triples with every component norm `≤ cfg.norm_bound`, one per
/// class (component order, signs, componentwise conjugation), sorted by
/// class key.
pub fn enum_triples(cfg: &SearchConfig) -> Result<Vec<ZeroSumTriple>> {
    cfg.validate()?;
    let triples = match cfg.ring {
        SearchRing::Integers => integer_triples(cfg.norm_bound),
        SearchRing::Gaussians => {
            let nb = big(cfg.norm_bound);
            let prims = gaussian_primitives(cfg.norm_bound, &cfg.pool());
            let mut out = Vec::new();
            for [a, b, c] in prims {
                let prim = ZeroSumTriple::new(a, b, c).expect("primitive is zero-sum");
                let mn = max_norm(&prim);
                for k in disk(&(&nb / &mn)) {
                    if k.is_zero() {
                        continue;
                    }
                    let [a, b, c] = prim.components().map(|x| x.clone() * k.clone());
                    out.push(ZeroSumTriple::new(a, b, c).expect("multiple is zero-sum"));
                }
            }
            out
        }
    };
    let classes: BTreeMap<[GaussInt; 3], ZeroSumTriple> = triples.into_iter().map(|z| (z.class_key(), canonical(z))).collect();
    Ok(classes.into_values().collect())
}

/// Exhaustive oracle: every class of zero-sum triples with component norms
/// `≤ max_norm`, found by testing `−(α² + β²)` against a table of squares.
pub fn brute_force_triples(max_norm: u64) -> Result<Vec<ZeroSumTriple>> {
    if max_norm > BRUTE_FORCE_LIMIT {
        return Err(Error::BoundTooLarge { bound: max_norm.to_string(), limit: BRUTE_FORCE_LIMIT.to_string() });
    }
    let points: Vec<GaussInt> = disk(&big(max_norm)).into_iter().filter(|z| !z.is_zero()).collect();
    let mut roots: HashMap<GaussInt, GaussInt> = HashMap::new();
    for z in &points {
        roots.insert(z.square(), z.normalize_sign());
    }
    let half: Vec<&GaussInt> = points.iter().filter(|z| z.normalize_sign() == **z).collect();
    let mut classes = BTreeMap::new();
    for (i, a) in half.iter().enumerate() {
        for b in &half[i..] {
            let target = -(a.square() + b.square());
            if let Some(c) = roots.get(&target) {
                let z = ZeroSumTriple::new((*a).clone(), (*b).clone(), c.clone()).expect("found by search");
                classes.entry(z.class_key()).or_insert_with(|| canonical(z));
            }
        }
    }
    Ok(classes.into_values().collect())
}

/// A slant grid assembled from two triplets sharing a center value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GapCandidate {
    pub basis: GapBasis,
    pub square_count: u8,
    pub square_positions: BTreeSet<LatticePos>,
    pub distinct: bool,
    #[serde(skip)]
    pub provenance: [ArithTriplet<GaussInt>; 2],
}

impl GapCandidate {
    pub fn values(&self) -> [[GaussInt; 3]; 3] {
        self.basis.lattice_values()
    }

    fn rank_cmp(&self, other: &Self) -> std::cmp::Ordering {
        other
            .square_count
            .cmp(&self.square_count)
            .then_with(|| other.distinct.cmp(&self.distinct))
            .then_with(|| self.basis.cmp_canonical(&other.basis))
    }

    fn provenance_key(&self) -> [[GaussInt; 3]; 2] {
        let mut keys = [self.provenance[0].order_key(), self.provenance[1].order_key()];
        keys.sort();
        keys
    }
}

fn is_ring_square(ring: SearchRing, z: &GaussInt) -> bool {
    match ring {
        SearchRing::Integers => z.im.is_zero() && !z.re.is_negative() && exact_isqrt(&z.re).is_some(),
        SearchRing::Gaussians => gauss_sqrt(z).is_some(),
    }
}

fn score(ring: SearchRing, basis: GapBasis, provenance: [ArithTriplet<GaussInt>; 2]) -> GapCandidate {
    let mut square_positions = BTreeSet::new();
    let mut seen = BTreeSet::new();
    for j in -1i8..=1 {
        for k in -1i8..=1 {
            let v = basis.value(j, k);
            if is_ring_square(ring, &v) {
                square_positions.insert((j, k));
            }
            seen.insert(v);
        }
    }
    GapCandidate { square_count: square_positions.len() as u8, square_positions, distinct: seen.len() == 9, basis, provenance }
}

/// Steps `(u, v)` of every slant grid with one line through the center
/// having gap `d1` and another gap `d2`.
fn embeddings(d1: &GaussInt, d2: &GaussInt) -> Vec<(GaussInt, GaussInt)> {
    let mut out = vec![
        (d1.clone(), d2.clone()),
        (d1.clone(), d2.clone() - d1.clone()),
        (d1.clone(), d1.clone() + d2.clone()),
        (d2.clone(), d1.clone() - d2.clone()),
        (d2.clone(), d1.clone() + d2.clone()),
    ];
    let two = GaussInt::from_i64(2, 0);
    let (s, d) = (d1.clone() + d2.clone(), d1.clone() - d2.clone());
    if let (Some(u), Some(v)) = (s.div_exact(&two), d.div_exact(&two)) {
        out.push((u, v));
    }
    out
}

/// Triplets bucketed by center value; only centers shared by at least two
/// distinct triplets are kept.
pub fn center_buckets(ring: SearchRing, triples: &[ZeroSumTriple]) -> BTreeMap<GaussInt, Vec<ArithTriplet<GaussInt>>> {
    let mut buckets: HashMap<GaussInt, BTreeMap<[GaussInt; 3], ArithTriplet<GaussInt>>> = HashMap::new();
    for z in triples {
        for t in triplets_from_triple(z).into_iter().chain(triplets_from_triple(&z.conj())) {
            if ring == SearchRing::Integers && !t.values().iter().all(|v| v.im.is_zero()) {
                continue;
            }
            buckets.entry(t.center().square()).or_default().insert(t.order_key(), t);
        }
    }
    buckets.into_iter().filter(|(_, ts)| ts.len() >= 2).map(|(c, ts)| (c, ts.into_values().collect())).collect()
}

fn bucket_candidates(ring: SearchRing, center: &GaussInt, ts: &[ArithTriplet<GaussInt>]) -> Vec<GapCandidate> {
    let mut out = Vec::new();
    for (i, t1) in ts.iter().enumerate() {
        for t2 in &ts[i + 1..] {
            let d1 = t1.right().square() - center.clone();
            let d2 = t2.right().square() - center.clone();
            for (u, v) in embeddings(&d1, &d2) {
                let basis = GapBasis::new(center.clone(), u, v);
                if basis.is_degenerate() {
                    continue;
                }
                out.push(score(ring, basis.canonical(), [t1.clone(), t2.clone()]));
            }
        }
    }
    out
}

/// Result of a search: ranked candidates plus full-square certificates.
#[derive(Clone, Debug, PartialEq)]
pub struct SearchOutcome {
    pub triple_count: usize,
    pub bucket_count: usize,
    pub candidates: Vec<GapCandidate>,
    pub certificates: Vec<Certificate>,
}

/// Ranked candidates with `square_count ≥ cfg.score_floor`.
///
/// Ordering is by square count (descending), distinct entries first, then
/// canonical basis order; one candidate per basis. `on_found` sees each
/// qualifying candidate as its bucket is scored, in scheduling order.
pub fn gap_candidates_streaming(cfg: &SearchConfig, on_found: impl Fn(&GapCandidate) + Sync) -> Result<SearchOutcome> {
    let triples = enum_triples(cfg)?;
    let buckets = center_buckets(cfg.ring, &triples);
    let floor = cfg.score_floor;
    let found: Vec<GapCandidate> = cfg.pool().install(|| {
        buckets
            .par_iter()
            .flat_map_iter(|(center, ts)| {
                let cands: Vec<GapCandidate> =
                    bucket_candidates(cfg.ring, center, ts).into_iter().filter(|c| c.square_count >= floor).collect();
                cands.iter().for_each(&on_found);
                cands
            })
            .collect()
    });
    let mut found = found;
    found.sort_by(|a, b| a.rank_cmp(b).then_with(|| a.provenance_key().cmp(&b.provenance_key())));
    found.dedup_by(|later, earlier| later.basis == earlier.basis);
    let certificates = found.iter().filter(|c| c.square_count == 9).map(certify).collect();
    Ok(SearchOutcome { triple_count: triples.len(), bucket_count: buckets.len(), candidates: found, certificates })
}

pub fn gap_candidates(cfg: &SearchConfig) -> Result<SearchOutcome> {
    gap_candidates_streaming(cfg, |_| {})
}

/// Exact verification transcript for a grid whose nine entries are squares.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Certificate {
    pub basis: GapBasis,
    pub values: [[GaussInt; 3]; 3],
    /// Root of each lattice entry, `roots[j+1][k+1]`.
    pub roots: [[GaussInt; 3]; 3],
    pub roots_verified: bool,
    /// The grid in magic arrangement.
    pub magic: [[GaussInt; 3]; 3],
    pub report: NearMissReport,
    pub recovered_basis: GapBasis,
}

pub fn certify(c: &GapCandidate) -> Certificate {
    let values = c.values();
    let roots = values.clone().map(|row| row.map(|v| gauss_sqrt(&v).unwrap_or_else(GaussInt::zero)));
    let roots_verified = values.iter().flatten().zip(roots.iter().flatten()).all(|(v, r)| r.square() == *v);
    let magic = MagicSquare::from_basis(&c.basis);
    let report = magic_report(&magic);
    let recovered_basis = gap_recover(&magic).map(|r| r.basis).unwrap_or_else(|_| c.basis.clone());
    Certificate { basis: c.basis.clone(), values, roots, roots_verified, magic: magic.values(), report, recovered_basis }
}

/// Whether `v` is a square in `ring`; integers must be nonnegative.
pub fn ring_square(ring: SearchRing, v: &GaussInt) -> bool {
    is_ring_square(ring, v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correspondence::triplet_to_triple;
    use crate::fixtures;

    fn g(re: i64, im: i64) -> GaussInt {
        GaussInt::from_i64(re, im)
    }

    fn class_of(a: GaussInt, b: GaussInt, c: GaussInt) -> [GaussInt; 3] {
        ZeroSumTriple::new(a, b, c).unwrap().class_key()
    }

    fn keys(v: &[ZeroSumTriple]) -> BTreeSet<[GaussInt; 3]> {
        v.iter().map(|z| z.class_key()).collect()
    }

    #[test]
    fn small_bounds() {
        let three_four_five = class_of(g(5, 0), g(0, 3), g(0, 4));
        let ints = enum_triples(&SearchConfig::new(SearchRing::Integers, 25)).unwrap();
        assert!(keys(&ints).contains(&three_four_five));
        let gauss = enum_triples(&SearchConfig::new(SearchRing::Gaussians, 80)).unwrap();
        assert!(keys(&gauss).contains(&fixtures::worked_example().class_key()));
        assert!(enum_triples(&SearchConfig::new(SearchRing::Gaussians, 2)).unwrap().is_empty());
        assert!(brute_force_triples(2).unwrap().is_empty());
        assert!(keys(&brute_force_triples(25).unwrap()).contains(&three_four_five));
        assert!(keys(&brute_force_triples(80).unwrap()).contains(&fixtures::worked_example().class_key()));
    }

    #[test]
    fn brute_force_regression_count() {
        assert_eq!(brute_force_triples(25).unwrap().len(), 5);
    }

    #[test]
    fn enumeration_matches_oracle() {
        for bound in [10, 25, 50, 80] {
            let cfg = SearchConfig::new(SearchRing::Gaussians, bound);
            assert_eq!(keys(&enum_triples(&cfg).unwrap()), keys(&brute_force_triples(bound).unwrap()), "bound {bound}");
        }
    }

    #[test]
    fn integer_enumeration_matches_brute_force() {
        let bound = 60u64 * 60;
        let ints = keys(&enum_triples(&SearchConfig::new(SearchRing::Integers, bound)).unwrap());
        let mut brute = BTreeSet::new();
        for a in 1i64..=60 {
            for b in a..=60 {
                let c2 = a * a + b * b;
                let c = (c2 as f64).sqrt().round() as i64;
                if c * c == c2 && c <= 60 {
                    brute.insert(class_of(g(c, 0), g(0, a), g(0, b)));
                }
            }
        }
        assert_eq!(ints, brute);
    }

    #[test]
    fn bound_guard() {
        assert!(matches!(brute_force_triples(10_001), Err(Error::BoundTooLarge { .. })));
        let mut cfg = SearchConfig::new(SearchRing::Gaussians, 1);
        assert!(cfg.validate().is_err());
        cfg.norm_bound = 10;
        cfg.score_floor = 4;
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn integer_search_finds_six_square_grid() {
        let cfg = SearchConfig { score_floor: 6, ..SearchConfig::new(SearchRing::Integers, 2000) };
        let out = gap_candidates(&cfg).unwrap();
        let target = GapBasis::from_i64(625, 336, 600);
        let c = out.candidates.iter().find(|c| c.basis == target).expect("(625, 336, 600) found");
        assert_eq!(c.square_count, 6);
        assert!(c.square_positions.contains(&(-1, 1)) || c.square_positions.contains(&(1, -1)));
    }

    #[test]
    fn bremner_basis_is_assembled() {
        let cfg = SearchConfig::new(SearchRing::Integers, 425 * 425);
        let out = gap_candidates(&cfg).unwrap();
        let target = GapBasis::from_i64(180625, 41496, 138600);
        let c = out.candidates.iter().find(|c| c.basis == target).expect("Bremner basis found");
        assert_eq!(c.square_count, 7);
        assert!(c.distinct);
        assert_eq!(MagicSquare::from_basis(&c.basis).values().iter().flatten().collect::<BTreeSet<_>>(),
            fixtures::bremner().values().iter().flatten().collect::<BTreeSet<_>>());
    }

    #[test]
    fn tiny_search_is_empty_at_floor_nine() {
        let cfg = SearchConfig { score_floor: 9, ..SearchConfig::new(SearchRing::Gaussians, 10) };
        let out = gap_candidates(&cfg).unwrap();
        assert!(out.candidates.is_empty() && out.certificates.is_empty());
    }

    #[test]
    fn candidates_verify() {
        for ring in [SearchRing::Integers, SearchRing::Gaussians] {
            let bound = if ring == SearchRing::Integers { 5000 } else { 400 };
            let out = gap_candidates(&SearchConfig::new(ring, bound)).unwrap();
            assert!(!out.candidates.is_empty());
            for c in &out.candidates {
                let rec = gap_recover(&MagicSquare::from_basis(&c.basis)).unwrap();
                assert_eq!(rec.basis, c.basis);
                let squares = c.square_positions.iter().filter(|&&(j, k)| ring_square(ring, &c.basis.value(j, k))).count();
                assert_eq!(squares, c.square_count as usize);
                assert!(c.square_count >= 5);
                // the two source triplets lie on lines through the center
                for t in &c.provenance {
                    assert_eq!(t.center().square(), c.basis.m);
                    assert!(t.is_arithmetic());
                }
            }
        }
    }

    #[test]
    fn ranking_is_schedule_independent() {
        let base = SearchConfig::new(SearchRing::Gaussians, 300);
        let one = gap_candidates(&base).unwrap();
        let many = gap_candidates(&SearchConfig { worker_count: 8, ..base }).unwrap();
        assert_eq!(one, many);
    }

    #[test]
    fn buckets_hold_each_triplet_once() {
        let triples = enum_triples(&SearchConfig::new(SearchRing::Gaussians, 200)).unwrap();
        let buckets = center_buckets(SearchRing::Gaussians, &triples);
        let mut per_class: BTreeMap<[GaussInt; 3], BTreeSet<[GaussInt; 3]>> = BTreeMap::new();
        for (center, ts) in &buckets {
            let mut seen = BTreeSet::new();
            for t in ts {
                assert_eq!(&t.center().square(), center);
                assert!(seen.insert(t.order_key()));
                if let Ok(z) = triplet_to_triple(t) {
                    per_class.entry(z.class_key()).or_default().insert(t.class_key());
                }
            }
        }
        assert!(per_class.values().all(|s| s.len() <= 3));
    }
}
