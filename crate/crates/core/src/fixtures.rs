//! Transcribed fusion tables and cover data shipped with the crate.
//!
//! The raw JSON lives in `fixtures/`; see `fixtures/README.md` for what
//! each file holds and which parts are inferred.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::FusionAlgebra;
use crate::cover::{CoverMap, GroupPartition};
use crate::error::{Error, Result};

pub const W3_11: &str = include_str!("../fixtures/w3_11.json");
pub const A1_LEVEL2: &str = include_str!("../fixtures/a1_level2.json");
pub const A1_LEVEL2_LABELS: &str = include_str!("../fixtures/a1_level2.labels.json");
pub const A1_LEVEL3: &str = include_str!("../fixtures/a1_level3.json");
pub const A1_LEVEL3_LABELS: &str = include_str!("../fixtures/a1_level3.labels.json");
pub const A2_LEVEL2: &str = include_str!("../fixtures/a2_level2.json");
pub const A2_LEVEL2_LABELS: &str = include_str!("../fixtures/a2_level2.labels.json");
pub const A2_LEVEL3_PARTIAL: &str = include_str!("../fixtures/a2_level3_partial.json");
pub const A2_LEVEL3_PARTIAL_LABELS: &str =
    include_str!("../fixtures/a2_level3_partial.labels.json");
pub const Z5_PARTITION: &str = include_str!("../fixtures/z5_partition.json");
pub const W3_COVER_PARTITION: &str = include_str!("../fixtures/w3_cover_partition.json");
pub const W3_COVER_MAP: &str = include_str!("../fixtures/w3_cover_map.json");
pub const A2_LEVEL2_COVER_PARTITION: &str =
    include_str!("../fixtures/a2_level2_cover_partition.json");
pub const A2_LEVEL2_COVER_MAP: &str = include_str!("../fixtures/a2_level2_cover_map.json");

/// A transcribed table and the orbit label of each of its labels.
#[derive(Clone, Debug)]
pub struct LabelledTable {
    pub name: &'static str,
    pub algebra: FusionAlgebra,
    pub label_map: BTreeMap<String, String>,
}

impl LabelledTable {
    fn load(name: &'static str, algebra: &str, labels: &str) -> Self {
        let algebra = FusionAlgebra::from_json_str(algebra).expect("bundled fixture parses");
        let label_map = serde_json::from_str(labels).expect("bundled label map parses");
        LabelledTable {
            name,
            algebra,
            label_map,
        }
    }
}

pub fn w3_11() -> FusionAlgebra {
    FusionAlgebra::from_json_str(W3_11).expect("bundled fixture parses")
}

pub fn a1_level2() -> LabelledTable {
    LabelledTable::load("A1 level 2", A1_LEVEL2, A1_LEVEL2_LABELS)
}

pub fn a1_level3() -> LabelledTable {
    LabelledTable::load("A1 level 3", A1_LEVEL3, A1_LEVEL3_LABELS)
}

pub fn a2_level2() -> LabelledTable {
    LabelledTable::load("A2 level 2", A2_LEVEL2, A2_LEVEL2_LABELS)
}

pub fn a2_level3_partial() -> LabelledTable {
    LabelledTable::load(
        "A2 level 3 (partial)",
        A2_LEVEL3_PARTIAL,
        A2_LEVEL3_PARTIAL_LABELS,
    )
}

pub fn z5_partition() -> GroupPartition {
    GroupPartition::from_json_str(Z5_PARTITION).expect("bundled fixture parses")
}

pub fn w3_cover_partition() -> GroupPartition {
    GroupPartition::from_json_str(W3_COVER_PARTITION).expect("bundled fixture parses")
}

pub fn w3_cover_map() -> CoverMap {
    CoverMap::from_json_str(W3_COVER_MAP).expect("bundled fixture parses")
}

pub fn a2_level2_cover_partition() -> GroupPartition {
    GroupPartition::from_json_str(A2_LEVEL2_COVER_PARTITION).expect("bundled fixture parses")
}

pub fn a2_level2_cover_map() -> CoverMap {
    CoverMap::from_json_str(A2_LEVEL2_COVER_MAP).expect("bundled fixture parses")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellMismatch {
    pub a: String,
    pub b: String,
    pub expected: String,
    pub found: String,
}

/// Compares every cell `a × b` of `table` with the product of the mapped
/// labels in `built`. Terms of the built product whose label is outside the
/// table are reported as mismatches, so a partial table must be closed
/// under the product.
pub fn compare_table(built: &FusionAlgebra, table: &LabelledTable) -> Result<Vec<CellMismatch>> {
    let back: BTreeMap<&str, &str> = table
        .label_map
        .iter()
        .map(|(fixture, orbit)| (orbit.as_str(), fixture.as_str()))
        .collect();
    let forward = |l: &str| {
        table
            .label_map
            .get(l)
            .map(String::as_str)
            .ok_or_else(|| Error::invalid("label map", format!("no entry for `{l}`")))
    };
    let fixture = &table.algebra;
    let mut mismatches = Vec::new();
    for a in fixture.labels() {
        for b in fixture.labels() {
            let expected = fixture.product(a, b)?.to_map();
            let found: BTreeMap<String, u64> = built
                .product(forward(a)?, forward(b)?)?
                .terms()
                .iter()
                .map(|(l, n)| {
                    (
                        back.get(l.as_str()).map_or(l.clone(), |s| s.to_string()),
                        *n,
                    )
                })
                .collect();
            if expected != found {
                let render = |m: &BTreeMap<String, u64>| {
                    m.iter()
                        .map(|(l, n)| {
                            if *n == 1 {
                                l.clone()
                            } else {
                                format!("{n}{l}")
                            }
                        })
                        .collect::<Vec<_>>()
                        .join("+")
                };
                mismatches.push(CellMismatch {
                    a: a.clone(),
                    b: b.clone(),
                    expected: render(&expected),
                    found: render(&found),
                });
            }
        }
    }
    Ok(mismatches)
}
