//! Built-in fixtures: two well-known near-misses, the Lo Shu square, and the
//! worked Gaussian triple. Every fixture is re-checked by the exact checker
//! when loaded by name.

use std::fmt;
use std::str::FromStr;

use crate::correspondence::ZeroSumTriple;
use crate::error::{Error, Result};
use crate::grid::{magic_report, GapBasis, MagicSquare};
use crate::GaussInt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FixtureId {
    Bremner,
    Parker,
    LoShu,
    WorkedExample,
}

impl FixtureId {
    pub const ALL: [FixtureId; 4] = [FixtureId::Bremner, FixtureId::Parker, FixtureId::LoShu, FixtureId::WorkedExample];

    pub fn name(self) -> &'static str {
        match self {
            FixtureId::Bremner => "bremner",
            FixtureId::Parker => "parker",
            FixtureId::LoShu => "loshu",
            FixtureId::WorkedExample => "paper-example",
        }
    }
}

impl fmt::Display for FixtureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FixtureId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        FixtureId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown fixture {s:?} (expected bremner, parker, loshu, paper-example)")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Fixture {
    Grid(MagicSquare),
    Triple(ZeroSumTriple),
}

/// Seven square entries, two non-square (360721 and 222121), all eight sums
/// equal to 3·425².
pub fn bremner() -> MagicSquare {
    MagicSquare::from_i64([
        [373 * 373, 289 * 289, 565 * 565],
        [360721, 425 * 425, 23 * 23],
        [205 * 205, 527 * 527, 222121],
    ])
}

/// Nine square entries with repeats; one diagonal misses the common sum.
pub fn parker() -> MagicSquare {
    MagicSquare::from_i64([[29 * 29, 1, 47 * 47], [41 * 41, 37 * 37, 1], [23 * 23, 41 * 41, 29 * 29]])
}

pub fn lo_shu() -> MagicSquare {
    MagicSquare::from_i64([[4, 9, 2], [3, 5, 7], [8, 1, 6]])
}

/// `(4−i)² + (4+8i)² + (7−4i)² = 0`.
pub fn worked_example() -> ZeroSumTriple {
    ZeroSumTriple::new(GaussInt::from_i64(4, -1), GaussInt::from_i64(4, 8), GaussInt::from_i64(7, -4))
        .expect("worked example is a zero-sum triple")
}

/// A slant grid whose entries surround the origin, used for the
/// origin-distance study.
pub fn demo_basis() -> GapBasis {
    GapBasis::new(GaussInt::from_i64(0, 0), GaussInt::from_i64(2, 1), GaussInt::from_i64(4, 0))
}

fn claim(ok: bool, id: FixtureId, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Invalid { path: format!("fixture {id}"), reason: format!("failed check: {what}") })
    }
}

/// Loads a fixture and verifies its structural claims exactly.
pub fn load(id: FixtureId) -> Result<Fixture> {
    let n = |v: i64| GaussInt::from_i64(v, 0);
    match id {
        FixtureId::Bremner => {
            let sq = bremner();
            let r = magic_report(&sq);
            claim(r.magic_constant == Some(n(541875)), id, "eight sums of 541875")?;
            claim(r.thrice_center_ok, id, "T = 3M²")?;
            claim(r.square_count == 7, id, "seven squares")?;
            claim(r.distinct_count == 9, id, "distinct entries")?;
            Ok(Fixture::Grid(sq))
        }
        FixtureId::Parker => {
            let sq = parker();
            let r = magic_report(&sq);
            claim(r.line_sums.iter().filter(|s| **s == n(3051)).count() == 7, id, "seven sums of 3051")?;
            claim(r.square_count == 9, id, "nine squares")?;
            claim(r.distinct_count == 6, id, "six distinct entries")?;
            Ok(Fixture::Grid(sq))
        }
        FixtureId::LoShu => {
            let sq = lo_shu();
            let r = magic_report(&sq);
            claim(r.magic_constant == Some(n(15)), id, "eight sums of 15")?;
            Ok(Fixture::Grid(sq))
        }
        FixtureId::WorkedExample => {
            let z = worked_example();
            let sum = z.components().iter().fold(GaussInt::from_i64(0, 0), |acc, c| acc + c.square());
            claim(sum == n(0), id, "zero sum")?;
            Ok(Fixture::Triple(z))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_fixtures_verify() {
        for id in FixtureId::ALL {
            load(id).unwrap();
            assert_eq!(id.name().parse::<FixtureId>().unwrap(), id);
        }
        assert!("durer".parse::<FixtureId>().is_err());
    }
}
