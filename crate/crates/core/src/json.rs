//! JSON encodings.
//!
//! A Gaussian integer is a two-element array of decimal strings,
//! `["4", "-11"]`; a bare JSON integer or decimal string is read as a real
//! value. Rationals are strings `"p/q"`. Grids are
//! `{"arrangement": "magic"|"gap", "cells": [[v,v,v],…], "roots": …}` and
//! triples/triplets are `{"kind": …, "components": […]}`.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::de::{self, Deserializer};
use serde::ser::{SerializeMap, SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::arith::{RadicalSum, RadicalValue, Ring, RootScalar};
use crate::search::GapCandidate;
use crate::siblings::{PseudoGrid, SiblingFamily};
use crate::correspondence::{ArithTriplet, LegTriple, ZeroSumTriple};
use crate::error::{Error, Result};
use crate::grid::{GapBasis, MagicSquare, RootGrid};
use crate::{GaussF64, GaussInt, GaussRat};

impl Serialize for GaussInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(2))?;
        seq.serialize_element(&self.re.to_string())?;
        seq.serialize_element(&self.im.to_string())?;
        seq.end()
    }
}

impl<'de> Deserialize<'de> for GaussInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Value::deserialize(d)?;
        gauss_from_value(&v).map_err(de::Error::custom)
    }
}

fn bigint_from_value(v: &Value) -> Result<BigInt> {
    match v {
        Value::String(s) => BigInt::from_str(s.trim()).map_err(|_| Error::Parse(format!("not an integer: {s:?}"))),
        Value::Number(n) if n.is_i64() || n.is_u64() => Ok(BigInt::from_str(&n.to_string()).expect("integer literal")),
        other => Err(Error::Parse(format!("not an integer: {other}"))),
    }
}

pub fn gauss_from_value(v: &Value) -> Result<GaussInt> {
    match v {
        Value::Array(parts) if parts.len() == 2 => Ok(GaussInt::new(bigint_from_value(&parts[0])?, bigint_from_value(&parts[1])?)),
        Value::Array(parts) => Err(Error::Parse(format!("Gaussian integer needs 2 parts, got {}", parts.len()))),
        Value::String(s) => s.parse::<GaussInt>(),
        other => Ok(GaussInt::real(bigint_from_value(other)?)),
    }
}

fn rational_to_string(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn rational_from_value(v: &Value) -> Result<BigRational> {
    match v {
        Value::String(s) => match s.split_once('/') {
            Some((p, q)) => {
                let p = BigInt::from_str(p.trim()).map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
                let q = BigInt::from_str(q.trim()).map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
                if q == BigInt::from(0) {
                    return Err(Error::Parse(format!("zero denominator in {s:?}")));
                }
                Ok(BigRational::new(p, q))
            }
            None => Ok(BigRational::from_integer(bigint_from_value(v)?)),
        },
        other => Ok(BigRational::from_integer(bigint_from_value(other)?)),
    }
}

pub fn gauss_rat_to_value(z: &GaussRat) -> Value {
    json!([rational_to_string(&z.re), rational_to_string(&z.im)])
}

pub fn gauss_rat_from_value(v: &Value) -> Result<GaussRat> {
    match v {
        Value::Array(parts) if parts.len() == 2 => Ok(GaussRat::new(rational_from_value(&parts[0])?, rational_from_value(&parts[1])?)),
        other => Ok(GaussRat::real(rational_from_value(other)?)),
    }
}

pub fn f64_to_value(z: &GaussF64) -> Value {
    json!([z.re, z.im])
}

impl Serialize for RadicalValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(3))?;
        map.serialize_entry("a", &gauss_rat_to_value(self.rational_part()))?;
        map.serialize_entry("b", &gauss_rat_to_value(self.radical_part()))?;
        map.serialize_entry("n", &self.radicand().to_string())?;
        map.end()
    }
}

/// A root: a Gaussian integer encoding, or `{"a", "b", "n"}` for `a + b√n`.
pub fn root_from_value(v: &Value) -> Result<RadicalValue> {
    match v {
        Value::Object(obj) => {
            let field = |k: &str| obj.get(k).ok_or_else(|| Error::Parse(format!("radical root missing {k:?}")));
            let a = gauss_rat_from_value(field("a")?)?;
            let b = gauss_rat_from_value(field("b")?)?;
            let n = bigint_from_value(field("n")?)?;
            RadicalValue::new(a, b, n)
        }
        other => Ok(RadicalValue::from_int(&gauss_from_value(other)?)),
    }
}

pub fn root_to_value(r: &RadicalValue) -> Value {
    match r.to_gauss_int() {
        Some(z) => serde_json::to_value(z).expect("serializable"),
        None => serde_json::to_value(r).expect("serializable"),
    }
}

impl Serialize for RadicalSum {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(None)?;
        for (n, c) in self.terms() {
            seq.serialize_element(&json!({"coeff": gauss_rat_to_value(c), "radicand": n.to_string()}))?;
        }
        seq.end()
    }
}

/// An exact value with its floating approximation.
pub fn exact_to_value(x: &RadicalSum) -> Value {
    json!({
        "exact": x,
        "text": x.to_string(),
        "approx": f64_to_value(&x.to_f64()),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Arrangement {
    Magic,
    Gap,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GridDoc {
    arrangement: Option<Arrangement>,
    cells: Vec<Vec<Value>>,
    #[serde(default)]
    roots: Option<Vec<Vec<Value>>>,
}

fn invalid(path: impl Into<String>, reason: impl Into<String>) -> Error {
    Error::Invalid { path: path.into(), reason: reason.into() }
}

fn three_by_three<T>(rows: &[Vec<Value>], field: &str, f: impl Fn(&Value) -> Result<T>) -> Result<[[T; 3]; 3]> {
    if rows.len() != 3 {
        return Err(invalid(field, format!("expected 3 rows, got {}", rows.len())));
    }
    let mut out = Vec::with_capacity(3);
    for (r, row) in rows.iter().enumerate() {
        if row.len() != 3 {
            return Err(invalid(format!("{field}[{r}]"), format!("expected 3 cells, got {}", row.len())));
        }
        let mut cells = Vec::with_capacity(3);
        for (c, v) in row.iter().enumerate() {
            cells.push(f(v).map_err(|e| invalid(format!("{field}[{r}][{c}]"), e.to_string()))?);
        }
        out.push(<[T; 3]>::try_from(cells).ok().expect("three cells"));
    }
    Ok(<[[T; 3]; 3]>::try_from(out).ok().expect("three rows"))
}

/// Parses a grid document into its magic arrangement.
///
/// A `"gap"` document lists lattice values row by row (`cells[j+1][k+1]`) and
/// must itself be a slant grid; it is converted to the magic layout.
pub fn parse_grid(text: &str) -> Result<MagicSquare> {
    let doc: GridDoc = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    grid_from_doc(doc)
}

pub fn grid_from_value(v: Value) -> Result<MagicSquare> {
    let doc: GridDoc = serde_json::from_value(v).map_err(|e| Error::Parse(e.to_string()))?;
    grid_from_doc(doc)
}

fn grid_from_doc(doc: GridDoc) -> Result<MagicSquare> {
    let values = three_by_three(&doc.cells, "cells", gauss_from_value)?;
    let roots: Option<RootGrid> = match &doc.roots {
        Some(rows) => Some(three_by_three(rows, "roots", |v| match v {
            Value::Null => Ok(None),
            other => root_from_value(other).map(Some),
        })?),
        None => None,
    };
    match doc.arrangement.unwrap_or(Arrangement::Magic) {
        Arrangement::Magic => match roots {
            Some(r) => MagicSquare::with_roots(values, r),
            None => Ok(MagicSquare::new(values)),
        },
        Arrangement::Gap => {
            let basis = GapBasis::new(
                values[1][1].clone(),
                values[2][1].clone() - values[1][1].clone(),
                values[1][2].clone() - values[1][1].clone(),
            );
            for j in -1i8..=1 {
                for k in -1i8..=1 {
                    let (r, c) = ((j + 1) as usize, (k + 1) as usize);
                    if basis.value(j, k) != values[r][c] {
                        return Err(invalid(format!("cells[{r}][{c}]"), format!("{} breaks the slant grid {basis}", values[r][c])));
                    }
                }
            }
            let layout = crate::grid::MAGIC_LAYOUT;
            let magic_values = layout.map(|row| row.map(|(j, k)| values[(j + 1) as usize][(k + 1) as usize].clone()));
            match roots {
                Some(r) => {
                    let magic_roots = layout.map(|row| row.map(|(j, k)| r[(j + 1) as usize][(k + 1) as usize].clone()));
                    MagicSquare::with_roots(magic_values, magic_roots)
                }
                None => Ok(MagicSquare::new(magic_values)),
            }
        }
    }
}

/// The grid document of `sq` in magic arrangement; roots are written only when
/// `with_roots` is set.
pub fn grid_to_value(sq: &MagicSquare, with_roots: bool) -> Value {
    let cells: Vec<Vec<Value>> = sq
        .values()
        .iter()
        .map(|row| row.iter().map(|v| serde_json::to_value(v).expect("serializable")).collect())
        .collect();
    let mut doc = json!({"arrangement": "magic", "cells": cells});
    if with_roots {
        let roots: Vec<Vec<Value>> =
            sq.roots().iter().map(|row| row.iter().map(|r| r.as_ref().map_or(Value::Null, root_to_value)).collect()).collect();
        doc["roots"] = Value::Array(roots.into_iter().map(Value::Array).collect());
    }
    doc
}

pub fn grid_to_json(sq: &MagicSquare, with_roots: bool) -> String {
    serde_json::to_string(&grid_to_value(sq, with_roots)).expect("serializable")
}

pub fn zero_sum_to_value(z: &ZeroSumTriple) -> Value {
    json!({"kind": "zero_sum", "components": z.components()})
}

pub fn legs_to_value(t: &LegTriple<GaussInt>) -> Value {
    let (a, b) = t.legs();
    json!({"kind": "legs", "components": [a, b, t.hypotenuse()]})
}

pub fn triplet_to_value(t: &ArithTriplet<GaussInt>) -> Value {
    json!({
        "kind": "triplet",
        "components": t.roots(),
        "values": t.values(),
        "defect": t.defect(),
    })
}

/// Scalars that can be written into reports.
pub trait ScalarJson {
    fn to_json(&self) -> Value;
}

impl ScalarJson for GaussInt {
    fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("serializable")
    }
}

impl ScalarJson for RadicalSum {
    fn to_json(&self) -> Value {
        exact_to_value(self)
    }
}

impl ScalarJson for GaussF64 {
    fn to_json(&self) -> Value {
        f64_to_value(self)
    }
}

pub fn scalar_triplet_to_value<S: Ring + ScalarJson>(t: &ArithTriplet<S>) -> Value {
    json!({
        "roots": t.roots().map(|r| r.to_json()),
        "values": t.values().map(|v| v.to_json()),
        "defect": t.defect().to_json(),
    })
}

/// Per-line sibling records; younger siblings are included when asked.
pub fn family_to_value<S: RootScalar + ScalarJson>(fam: &SiblingFamily<S>, younger: bool) -> Value {
    let lines: Vec<Value> = fam
        .records
        .iter()
        .map(|r| {
            let mut rec = json!({
                "line": r.line.name.to_string(),
                "cells": r.line.values,
                "original": scalar_triplet_to_value(&r.original),
                "older": scalar_triplet_to_value(&r.siblings.older),
                "integral": r.integral,
                "mixed_radicals": r.mixed_radicals,
            });
            if younger {
                rec["younger"] = scalar_triplet_to_value(&r.siblings.younger);
            }
            rec
        })
        .collect();
    json!({
        "source": fam.source,
        "lines": lines,
        "sibling_count": fam.sibling_count(),
        "triplet_count": fam.triplet_count(),
        "defects_negated": fam.defects_negated(),
        "kinked_siblings": fam.kinked_siblings(),
        "non_square_entries": fam.non_square_entries(),
        "duplicate_endpoint_pairs": fam.duplicate_endpoint_pairs(),
    })
}

pub fn pseudo_to_value<S: RootScalar + ScalarJson>(pg: &PseudoGrid<S>) -> Value {
    let names = ["D", "b", "c", "C", "B", "d"];
    let letters: Vec<Value> = names.iter().zip(&pg.letters).map(|(n, l)| json!({"name": n, "root": l.to_json()})).collect();
    json!({
        "direction": pg.direction,
        "siblings": if pg.younger { "younger" } else { "older" },
        "segments": pg.segments.iter().map(scalar_triplet_to_value).collect::<Vec<_>>(),
        "midpoints": pg.midpoints.iter().map(ScalarJson::to_json).collect::<Vec<_>>(),
        "letters": letters,
        "error": pg.error.to_json(),
        "identity_residual": pg.identity_residual.to_json(),
        "relative_error": pg.relative_error,
        "near_miss": pg.near_miss,
    })
}

pub fn candidate_to_value(c: &GapCandidate) -> Value {
    json!({
        "basis": c.basis,
        "square_count": c.square_count,
        "square_positions": c.square_positions.iter().map(|(j, k)| [j, k]).collect::<Vec<_>>(),
        "distinct": c.distinct,
        "values": c.values(),
        "provenance": c.provenance.iter().map(|t| t.roots()).collect::<Vec<_>>(),
    })
}

/// Triple or triplet record, as read back from JSON.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Record {
    ZeroSum(ZeroSumTriple),
    Legs(LegTriple<GaussInt>),
    Triplet(ArithTriplet<GaussInt>),
}

pub fn record_from_value(v: &Value) -> Result<Record> {
    let kind = v.get("kind").and_then(Value::as_str).ok_or_else(|| invalid("kind", "missing or not a string"))?;
    let comps = v.get("components").and_then(Value::as_array).ok_or_else(|| invalid("components", "missing or not an array"))?;
    if comps.len() != 3 {
        return Err(invalid("components", format!("expected 3 components, got {}", comps.len())));
    }
    let mut parsed = Vec::with_capacity(3);
    for (i, c) in comps.iter().enumerate() {
        parsed.push(gauss_from_value(c).map_err(|e| invalid(format!("components[{i}]"), e.to_string()))?);
    }
    let [a, b, c] = <[GaussInt; 3]>::try_from(parsed).ok().expect("three components");
    match kind {
        "zero_sum" => ZeroSumTriple::new(a, b, c).map(Record::ZeroSum),
        "legs" => LegTriple::new(a, b, c).map(Record::Legs),
        "triplet" => Ok(Record::Triplet(ArithTriplet::new(a, b, c))),
        other => Err(invalid("kind", format!("unknown kind {other:?}"))),
    }
}
