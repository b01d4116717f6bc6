//! Partitions of `Z_N^k`, the product they induce, and covers of fusion
//! algebras by such partitions.
//!
//! A partition `P_0 ∪ ... ∪ P_m` with `P_0 = {0}` induces the product
//! `P_i * P_j = Σ_{l ∈ T(i,j)} P_l`, where `T(i,j)` is the set of blocks
//! meeting `P_i + P_j`. The partition is associative when this product is.
//! A fusion algebra with 0/1 structure constants is covered when some
//! bijection of its labels onto the blocks, sending the identity to `P_0`,
//! turns its product into the partition product.
//!
//! Partition JSON: `{"modulus": 3, "length": 2, "blocks": [[[0,0]], [[1,2],[2,1]], ...]}`.
//! Cover-map JSON: `{"[0]": 0, "[1]": 1, ...}`, algebra label to block index.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::algebra::{AxiomReport, FusionAlgebra, StructureTable};
use crate::error::{Error, Result};
use crate::group::{GroupVector, OrbitLabel};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPartition {
    modulus: u32,
    length: usize,
    blocks: Vec<Vec<GroupVector>>,
    /// Block index of each element, by [`GroupVector::rank`].
    block_of: Vec<usize>,
}

impl GroupPartition {
    pub fn new(modulus: u32, length: usize, blocks: Vec<Vec<GroupVector>>) -> Result<Self> {
        if modulus == 0 || length == 0 {
            return Err(Error::invalid(
                "modulus",
                "modulus and length must be positive",
            ));
        }
        let order = (modulus as usize)
            .checked_pow(length as u32)
            .ok_or_else(|| Error::invalid("length", "group too large"))?;
        let mut block_of = vec![usize::MAX; order];
        for (bi, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::invalid("blocks", format!("block {bi} is empty")));
            }
            for g in block {
                if g.modulus() != modulus || g.len() != length {
                    return Err(Error::invalid(
                        "blocks",
                        format!("element {g} of block {bi} is not in Z_{modulus}^{length}"),
                    ));
                }
                let slot = &mut block_of[g.rank()];
                if *slot != usize::MAX {
                    return Err(Error::invalid(
                        "blocks",
                        format!("element {g} appears in blocks {} and {bi}", *slot),
                    ));
                }
                *slot = bi;
            }
        }
        if let Some(missing) = block_of.iter().position(|&b| b == usize::MAX) {
            return Err(Error::invalid(
                "blocks",
                format!(
                    "element {} is not covered",
                    GroupVector::unrank(modulus, length, missing)
                ),
            ));
        }
        if blocks[0].len() != 1 || !blocks[0][0].is_zero() {
            return Err(Error::invalid("blocks", "block 0 must be exactly {0}"));
        }
        Ok(GroupPartition {
            modulus,
            length,
            blocks,
            block_of,
        })
    }

    /// The `S_k`-orbits of `Z_N^k` in canonical label order.
    pub fn standard(modulus: u32, length: usize) -> Result<Self> {
        if modulus < 2 || length == 0 {
            return Err(Error::Domain(
                "standard partitions need modulus >= 2 and length >= 1".into(),
            ));
        }
        let blocks = OrbitLabel::all(modulus, length as u32)
            .iter()
            .map(|l| l.members().collect())
            .collect();
        GroupPartition::new(modulus, length, blocks)
    }

    /// Every element in its own block, in rank order.
    pub fn singletons(modulus: u32, length: usize) -> Result<Self> {
        let order = (modulus as usize).pow(length as u32);
        let blocks = (0..order)
            .map(|r| vec![GroupVector::unrank(modulus, length, r)])
            .collect();
        GroupPartition::new(modulus, length, blocks)
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn blocks(&self) -> &[Vec<GroupVector>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn block_of(&self, g: &GroupVector) -> usize {
        self.block_of[g.rank()]
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.blocks.len() {
            return Err(Error::BlockIndex {
                index: i,
                blocks: self.blocks.len(),
            });
        }
        Ok(())
    }

    /// `T(i, j)`: the blocks meeting `P_i + P_j`.
    pub fn product(&self, i: usize, j: usize) -> Result<BTreeSet<usize>> {
        self.check_index(i)?;
        self.check_index(j)?;
        Ok(self.product_unchecked(i, j))
    }

    fn product_unchecked(&self, i: usize, j: usize) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        for a in &self.blocks[i] {
            for b in &self.blocks[j] {
                let sum = a.add(b).expect("elements share the group");
                out.insert(self.block_of(&sum));
            }
        }
        out
    }

    fn table(&self) -> StructureTable {
        let n = self.blocks.len();
        let mut table = StructureTable::zeros(n);
        for i in 0..n {
            for j in 0..n {
                for l in self.product_unchecked(i, j) {
                    table.set(i, j, l, 1);
                }
            }
        }
        table
    }

    pub fn is_associative(&self) -> AssociativityCheck {
        AssociativityCheck {
            witness: self.table().first_nonassociative(),
        }
    }

    /// Every `(i, j, l)` with `(P_i * P_j) * P_l ≠ P_i * (P_j * P_l)`.
    pub fn associativity_violations(&self) -> Vec<(usize, usize, usize)> {
        self.table().nonassociative_triples().collect()
    }

    /// Coefficient vectors of `(P_i * P_j) * P_l` and `P_i * (P_j * P_l)`.
    pub fn triple_products(&self, i: usize, j: usize, l: usize) -> Result<(Vec<u64>, Vec<u64>)> {
        for x in [i, j, l] {
            self.check_index(x)?;
        }
        Ok(self.table().associator(i, j, l))
    }

    /// The partition product as a fusion algebra labelled `P0`, `P1`, ...;
    /// the conjugate of a block is the block holding the negatives of its
    /// first element.
    pub fn to_algebra(&self) -> FusionAlgebra {
        let n = self.blocks.len();
        let labels = (0..n).map(|i| format!("P{i}")).collect();
        let conjugation = self
            .blocks
            .iter()
            .map(|b| self.block_of(&b[0].negate()))
            .collect();
        let mut structure = BTreeMap::new();
        for i in 0..n {
            for j in 0..n {
                for l in self.product_unchecked(i, j) {
                    structure.insert((i, j, l), 1);
                }
            }
        }
        FusionAlgebra::from_parts(labels, 0, conjugation, structure)
            .expect("partition algebra is well formed")
    }

    pub fn to_json(&self) -> PartitionJson {
        PartitionJson {
            modulus: self.modulus,
            length: self.length,
            blocks: self
                .blocks
                .iter()
                .map(|b| b.iter().map(|g| g.entries().to_vec()).collect())
                .collect(),
        }
    }

    pub fn from_json(json: &PartitionJson) -> Result<Self> {
        let blocks = json
            .blocks
            .iter()
            .map(|b| {
                b.iter()
                    .map(|e| {
                        GroupVector::new(json.modulus, e.clone())
                            .map_err(|err| Error::invalid("blocks", err.to_string()))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        GroupPartition::new(json.modulus, json.length, blocks)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let json: PartitionJson =
            serde_json::from_str(s).map_err(|e| Error::invalid("partition", e.to_string()))?;
        GroupPartition::from_json(&json)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartitionJson {
    pub modulus: u32,
    pub length: usize,
    pub blocks: Vec<Vec<Vec<u32>>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AssociativityCheck {
    /// Lexicographically first nonassociative `(i, j, l)`.
    pub witness: Option<(usize, usize, usize)>,
}

impl AssociativityCheck {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

/// Bijection from algebra labels to block indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CoverMap(pub BTreeMap<String, usize>);

impl CoverMap {
    /// Label `i` of the algebra to block `i`.
    pub fn by_position(algebra: &FusionAlgebra) -> Self {
        CoverMap(
            algebra
                .labels()
                .iter()
                .enumerate()
                .map(|(i, l)| (l.clone(), i))
                .collect(),
        )
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::invalid("cover map", e.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CoverMismatch {
    /// The algebra has a coefficient above 1, which no partition reproduces.
    Multiplicity {
        a: String,
        b: String,
        c: String,
        n: u64,
    },
    /// The blocks of `x_a x_b` differ from `T(Φ(a), Φ(b))`.
    Support {
        a: String,
        b: String,
        algebra: Vec<usize>,
        partition: Vec<usize>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverReport {
    pub associativity: AssociativityCheck,
    pub axioms: AxiomReport,
    pub mismatches: Vec<CoverMismatch>,
}

impl CoverReport {
    pub fn verified(&self) -> bool {
        self.associativity.holds() && self.axioms.passed() && self.mismatches.is_empty()
    }
}

/// Checks whether `partition` covers `algebra` under `map`.
///
/// Fails with [`Error::Precondition`] when `map` is not a bijection onto
/// the blocks or does not send the identity to block 0. Otherwise every
/// mismatch is recorded in the report.
pub fn verify_cover(
    algebra: &FusionAlgebra,
    partition: &GroupPartition,
    map: &CoverMap,
) -> Result<CoverReport> {
    let n = algebra.len();
    if partition.len() != n {
        return Err(Error::Precondition(format!(
            "algebra has {n} labels but partition has {} blocks",
            partition.len()
        )));
    }
    let mut phi = vec![usize::MAX; n];
    for (label, &block) in &map.0 {
        let i = algebra
            .index_of(label)
            .map_err(|_| Error::Precondition(format!("map names unknown label `{label}`")))?;
        if block >= n {
            return Err(Error::Precondition(format!(
                "label `{label}` is sent to block {block}, out of range"
            )));
        }
        phi[i] = block;
    }
    if let Some(i) = phi.iter().position(|&b| b == usize::MAX) {
        return Err(Error::Precondition(format!(
            "label `{}` is not mapped",
            algebra.label(i)
        )));
    }
    let distinct: BTreeSet<_> = phi.iter().collect();
    if distinct.len() != n {
        return Err(Error::Precondition("map is not injective".into()));
    }
    if phi[algebra.identity()] != 0 {
        return Err(Error::Precondition(format!(
            "identity `{}` must be sent to block 0",
            algebra.label(algebra.identity())
        )));
    }

    let mut mismatches = Vec::new();
    for ((a, b, c), v) in algebra.nonzero() {
        if v > 1 {
            mismatches.push(CoverMismatch::Multiplicity {
                a: algebra.label(a).to_string(),
                b: algebra.label(b).to_string(),
                c: algebra.label(c).to_string(),
                n: v,
            });
        }
    }
    for a in 0..n {
        for b in 0..n {
            let from_algebra: BTreeSet<usize> = (0..n)
                .filter(|&c| algebra.coefficient(a, b, c) != 0)
                .map(|c| phi[c])
                .collect();
            let from_partition = partition.product_unchecked(phi[a], phi[b]);
            if from_algebra != from_partition {
                mismatches.push(CoverMismatch::Support {
                    a: algebra.label(a).to_string(),
                    b: algebra.label(b).to_string(),
                    algebra: from_algebra.into_iter().collect(),
                    partition: from_partition.into_iter().collect(),
                });
            }
        }
    }
    Ok(CoverReport {
        associativity: partition.is_associative(),
        axioms: algebra.check_axioms(),
        mismatches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::cyclic_group_algebra;
    use crate::fixtures;
    use crate::typea::build_fusion_algebra;

    fn gv(n: u32, e: &[u32]) -> GroupVector {
        GroupVector::new(n, e.to_vec()).unwrap()
    }

    fn z5() -> GroupPartition {
        GroupPartition::new(
            5,
            1,
            vec![
                vec![gv(5, &[0])],
                vec![gv(5, &[1]), gv(5, &[2])],
                vec![gv(5, &[3]), gv(5, &[4])],
            ],
        )
        .unwrap()
    }

    fn set(v: &[usize]) -> BTreeSet<usize> {
        v.iter().copied().collect()
    }

    #[test]
    fn z5_products() {
        let p = z5();
        assert_eq!(p.product(1, 2).unwrap(), set(&[0, 1, 2]));
        assert_eq!(p.product(1, 1).unwrap(), set(&[1, 2]));
        assert_eq!(p.product(2, 2).unwrap(), set(&[1, 2]));
        for j in 0..3 {
            assert_eq!(p.product(0, j).unwrap(), set(&[j]));
        }
        assert_eq!(
            p.product(3, 0),
            Err(Error::BlockIndex {
                index: 3,
                blocks: 3
            })
        );
    }

    #[test]
    fn z5_is_not_associative() {
        let p = z5();
        let check = p.is_associative();
        assert!(!check.holds());
        assert_eq!(check.witness, Some((1, 1, 2)));
        assert!(p.associativity_violations().contains(&(1, 2, 2)));
        let (l, r) = p.triple_products(1, 2, 2).unwrap();
        assert_eq!(l, vec![1, 2, 3]);
        assert_eq!(r, vec![1, 2, 2]);
    }

    #[test]
    fn standard_partition_shapes() {
        let p = GroupPartition::standard(2, 3).unwrap();
        let sizes: Vec<_> = p.blocks().iter().map(|b| b.len()).collect();
        assert_eq!(sizes, vec![1, 3, 3, 1]);

        let p = GroupPartition::standard(3, 2).unwrap();
        let blocks: Vec<Vec<String>> = p
            .blocks()
            .iter()
            .map(|b| b.iter().map(|g| g.to_string()).collect())
            .collect();
        assert_eq!(
            blocks,
            vec![
                vec!["(0,0)"],
                vec!["(0,2)", "(2,0)"],
                vec!["(0,1)", "(1,0)"],
                vec!["(2,2)"],
                vec!["(1,2)", "(2,1)"],
                vec!["(1,1)"],
            ]
        );

        let p = GroupPartition::standard(2, 1).unwrap();
        assert_eq!(p.blocks(), &[vec![gv(2, &[0])], vec![gv(2, &[1])]]);
    }

    #[test]
    fn weight_partition_of_z2_squared_is_associative() {
        assert!(GroupPartition::standard(2, 2)
            .unwrap()
            .is_associative()
            .holds());
    }

    #[test]
    fn singleton_partitions_are_associative() {
        for (n, k) in [(2, 3), (3, 2), (5, 1), (4, 2)] {
            assert!(GroupPartition::singletons(n, k)
                .unwrap()
                .is_associative()
                .holds());
        }
    }

    #[test]
    fn invalid_partitions_rejected() {
        let dup = GroupPartition::new(
            2,
            1,
            vec![vec![gv(2, &[0])], vec![gv(2, &[1]), gv(2, &[1])]],
        );
        assert!(matches!(dup, Err(Error::Invalid { .. })));
        let missing = GroupPartition::new(3, 1, vec![vec![gv(3, &[0])], vec![gv(3, &[1])]]);
        assert!(missing.unwrap_err().to_string().contains("(2)"));
        let bad_zero = GroupPartition::new(2, 1, vec![vec![gv(2, &[1])], vec![gv(2, &[0])]]);
        assert!(bad_zero.unwrap_err().to_string().contains("block 0"));
        let empty = GroupPartition::new(2, 1, vec![vec![gv(2, &[0])], vec![gv(2, &[1])], vec![]]);
        assert!(empty.is_err());
        let wrong_group = GroupPartition::new(2, 1, vec![vec![gv(2, &[0])], vec![gv(3, &[1])]]);
        assert!(wrong_group.is_err());
    }

    #[test]
    fn a1_algebras_covered_by_weight_partitions() {
        for k in 1..=5 {
            let alg = build_fusion_algebra(2, k).unwrap();
            let part = GroupPartition::standard(2, k as usize).unwrap();
            let report = verify_cover(&alg, &part, &CoverMap::by_position(&alg)).unwrap();
            assert!(report.verified(), "k={k}: {report:?}");
        }
    }

    #[test]
    fn w3_covered_by_z3_squared() {
        let w3 = fixtures::w3_11();
        let part = fixtures::w3_cover_partition();
        let report = verify_cover(&w3, &part, &fixtures::w3_cover_map()).unwrap();
        assert!(report.verified(), "{report:?}");
    }

    #[test]
    fn multiplicity_two_blocks_cover() {
        let alg = build_fusion_algebra(3, 3).unwrap();
        let part = GroupPartition::standard(3, 3).unwrap();
        let report = verify_cover(&alg, &part, &CoverMap::by_position(&alg)).unwrap();
        assert!(!report.verified());
        assert!(report.mismatches.iter().any(|m| matches!(
            m,
            CoverMismatch::Multiplicity { a, b, c, n: 2 }
                if a == "P(1,1,1)" && b == "P(1,1,1)" && c == "P(1,1,1)"
        )));
    }

    #[test]
    fn cyclic_group_covered_by_singletons() {
        let z3 = cyclic_group_algebra(3);
        let part = GroupPartition::singletons(3, 1).unwrap();
        let report = verify_cover(&z3, &part, &CoverMap::by_position(&z3)).unwrap();
        assert!(report.verified());
    }

    #[test]
    fn bad_maps_are_precondition_errors() {
        let z3 = cyclic_group_algebra(3);
        let part = GroupPartition::singletons(3, 1).unwrap();
        let mut map = CoverMap::by_position(&z3);
        map.0.insert("1".into(), 2);
        assert!(matches!(
            verify_cover(&z3, &part, &map),
            Err(Error::Precondition(_))
        ));

        let mut map = CoverMap::by_position(&z3);
        map.0.insert("0".into(), 1);
        map.0.insert("1".into(), 0);
        let err = verify_cover(&z3, &part, &map).unwrap_err();
        assert!(err.to_string().contains("identity"));

        let mut map = CoverMap::by_position(&z3);
        map.0.remove("2");
        assert!(verify_cover(&z3, &part, &map).is_err());

        let part2 = GroupPartition::singletons(2, 1).unwrap();
        assert!(verify_cover(&z3, &part2, &CoverMap::by_position(&z3)).is_err());
    }

    #[test]
    fn wrong_map_reports_support_mismatch() {
        let z3 = cyclic_group_algebra(3);
        let part = GroupPartition::singletons(3, 1).unwrap();
        // 1 -> (2), 2 -> (1) is still an isomorphism (negation).
        let mut map = CoverMap::by_position(&z3);
        map.0.insert("1".into(), 2);
        map.0.insert("2".into(), 1);
        assert!(verify_cover(&z3, &part, &map).unwrap().verified());

        let z4 = cyclic_group_algebra(4);
        let part = GroupPartition::singletons(2, 2).unwrap();
        let report = verify_cover(&z4, &part, &CoverMap::by_position(&z4)).unwrap();
        assert!(!report.verified());
        assert!(matches!(
            report.mismatches[0],
            CoverMismatch::Support { .. }
        ));
    }

    #[test]
    fn partition_algebra_conjugation() {
        let alg = z5().to_algebra();
        assert_eq!(alg.conjugate(1), 2);
        assert_eq!(alg.conjugate(0), 0);
    }
}
