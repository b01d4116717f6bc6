//! Fusion algebras: a finite labelled basis with nonnegative integer
//! structure constants `N_{a,b}^c`, a distinguished identity label and an
//! involutive conjugation.
//!
//! Structure constants are stored sparsely (absent means zero). The
//! conjugation is stored explicitly; [`FusionAlgebra::check_axioms`]
//! verifies that it agrees with `C_{a,b} = N_{a,b}^Ω`.
//!
//! # JSON shape
//!
//! ```json
//! {
//!   "labels": ["[0]", "[1]", "[2]"],
//!   "identity": "[0]",
//!   "conjugation": ["[0]", "[2]", "[1]"],
//!   "triples": [["[1]", "[2]", "[0]", 1], ...]
//! }
//! ```
//!
//! `conjugation[i]` is the conjugate of `labels[i]`. `triples` lists every
//! nonzero `N_{a,b}^c` as `[a, b, c, n]`, ordered by label position.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionAlgebra {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    identity: usize,
    conjugation: Vec<usize>,
    structure: BTreeMap<(usize, usize, usize), u64>,
}

impl FusionAlgebra {
    /// Builds an algebra from label positions. Zero constants are dropped.
    pub fn from_parts(
        labels: Vec<String>,
        identity: usize,
        conjugation: Vec<usize>,
        structure: BTreeMap<(usize, usize, usize), u64>,
    ) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::invalid("labels", "at least one label is required"));
        }
        let mut index = HashMap::with_capacity(n);
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::invalid("labels", format!("duplicate label `{l}`")));
            }
        }
        if identity >= n {
            return Err(Error::invalid("identity", "index out of range"));
        }
        if conjugation.len() != n {
            return Err(Error::invalid(
                "conjugation",
                format!("expected {n} entries, found {}", conjugation.len()),
            ));
        }
        if conjugation.iter().any(|&c| c >= n) {
            return Err(Error::invalid("conjugation", "index out of range"));
        }
        if let Some(&(a, b, c)) = structure
            .keys()
            .find(|&&(a, b, c)| a >= n || b >= n || c >= n)
        {
            return Err(Error::invalid(
                "triples",
                format!("index ({a},{b},{c}) out of range"),
            ));
        }
        let structure = structure.into_iter().filter(|&(_, v)| v != 0).collect();
        Ok(FusionAlgebra {
            labels,
            index,
            identity,
            conjugation,
            structure,
        })
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn conjugate(&self, i: usize) -> usize {
        self.conjugation[i]
    }

    /// `N_{a,b}^c` by label position.
    pub fn coefficient(&self, a: usize, b: usize, c: usize) -> u64 {
        self.structure.get(&(a, b, c)).copied().unwrap_or(0)
    }

    /// Nonzero constants as `((a, b, c), n)` in position order.
    pub fn nonzero(&self) -> impl Iterator<Item = ((usize, usize, usize), u64)> + '_ {
        self.structure.iter().map(|(&k, &v)| (k, v))
    }

    /// `x_a · x_b` as a formal sum of labels.
    pub fn product(&self, a: &str, b: &str) -> Result<FormalSum> {
        let a = self.index_of(a)?;
        let b = self.index_of(b)?;
        Ok(self.product_at(a, b))
    }

    pub fn product_at(&self, a: usize, b: usize) -> FormalSum {
        let terms = self
            .structure
            .range((a, b, 0)..=(a, b, usize::MAX))
            .map(|(&(_, _, c), &n)| (self.labels[c].clone(), n))
            .collect();
        FormalSum { terms }
    }

    /// `N_{a,b,c} = N_{a,b}^{σ(c)}`.
    pub fn symmetric_coefficient(&self, a: &str, b: &str, c: &str) -> Result<u64> {
        let (a, b, c) = (self.index_of(a)?, self.index_of(b)?, self.index_of(c)?);
        Ok(self.symmetric_at(a, b, c))
    }

    pub fn symmetric_at(&self, a: usize, b: usize, c: usize) -> u64 {
        self.coefficient(a, b, self.conjugation[c])
    }

    /// `((x_a x_b) x_d, x_a (x_b x_d))` as coefficient vectors over the
    /// basis.
    pub fn triple_products(&self, a: usize, b: usize, d: usize) -> (Vec<u64>, Vec<u64>) {
        StructureTable::from_algebra(self).associator(a, b, d)
    }

    pub fn check_axioms(&self) -> AxiomReport {
        let n = self.len();
        let table = StructureTable::from_algebra(self);
        let omega = self.identity;
        let sigma = &self.conjugation;
        let mut failures = Vec::new();
        let mut fail = |axiom: Axiom, witness: &[usize]| {
            failures.push(AxiomFailure {
                axiom,
                witness: witness.iter().map(|&i| self.labels[i].clone()).collect(),
            });
        };

        if let Some(a) = (0..n).find(|&a| sigma[sigma[a]] != a) {
            fail(Axiom::ConjugationInvolution, &[a]);
        }
        if let Some((a, b)) =
            pairs(n).find(|&(a, b)| table.get(a, b, omega) != u64::from(b == sigma[a]))
        {
            fail(Axiom::ConjugationMatrix, &[a, b]);
        }
        if let Some((b, c)) = pairs(n).find(|&(b, c)| table.get(omega, b, c) != u64::from(b == c)) {
            fail(Axiom::Identity, &[b, c]);
        }
        if let Some((a, b, c)) =
            triples(n).find(|&(a, b, c)| table.get(a, b, c) != table.get(b, a, c))
        {
            fail(Axiom::Commutativity, &[a, b, c]);
        }
        if let Some((a, b, d)) = table.first_nonassociative() {
            fail(Axiom::Associativity, &[a, b, d]);
        }
        if let Some((a, b, c)) = triples(n)
            .find(|&(a, b, c)| table.get(sigma[a], sigma[b], sigma[c]) != table.get(a, b, c))
        {
            fail(Axiom::ConjugationAutomorphism, &[a, b, c]);
        }
        AxiomReport { failures }
    }

    /// Renames and reorders the basis. Each pair is `(new, old)`, listed in
    /// the new order; every old label must appear exactly once.
    pub fn relabelled<S: AsRef<str>>(&self, names: &[(S, S)]) -> Result<Self> {
        let n = self.len();
        if names.len() != n {
            return Err(Error::invalid(
                "label map",
                format!("expected {n} entries, found {}", names.len()),
            ));
        }
        // old position -> new position
        let mut to_new = vec![usize::MAX; n];
        for (new_pos, (_, old)) in names.iter().enumerate() {
            let old = self.index_of(old.as_ref())?;
            if to_new[old] != usize::MAX {
                return Err(Error::invalid(
                    "label map",
                    format!("`{}` is mapped twice", self.labels[old]),
                ));
            }
            to_new[old] = new_pos;
        }
        let mut conjugation = vec![0; n];
        for (old, &c) in self.conjugation.iter().enumerate() {
            conjugation[to_new[old]] = to_new[c];
        }
        let structure = self
            .structure
            .iter()
            .map(|(&(a, b, c), &v)| ((to_new[a], to_new[b], to_new[c]), v))
            .collect();
        FusionAlgebra::from_parts(
            names
                .iter()
                .map(|(new, _)| new.as_ref().to_string())
                .collect(),
            to_new[self.identity],
            conjugation,
            structure,
        )
    }

    pub fn to_json(&self) -> AlgebraJson {
        AlgebraJson {
            labels: self.labels.clone(),
            identity: self.labels[self.identity].clone(),
            conjugation: self
                .conjugation
                .iter()
                .map(|&c| self.labels[c].clone())
                .collect(),
            triples: self
                .structure
                .iter()
                .map(|(&(a, b, c), &n)| {
                    (
                        self.labels[a].clone(),
                        self.labels[b].clone(),
                        self.labels[c].clone(),
                        n,
                    )
                })
                .collect(),
        }
    }

    pub fn from_json(json: &AlgebraJson) -> Result<Self> {
        let position: HashMap<&str, usize> = json
            .labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i))
            .collect();
        let lookup = |field: &str, l: &str| {
            position
                .get(l)
                .copied()
                .ok_or_else(|| Error::invalid(field, format!("unknown label `{l}`")))
        };
        let identity = lookup("identity", &json.identity)?;
        let conjugation = json
            .conjugation
            .iter()
            .map(|l| lookup("conjugation", l))
            .collect::<Result<Vec<_>>>()?;
        let mut structure = BTreeMap::new();
        for (a, b, c, n) in &json.triples {
            let key = (
                lookup("triples", a)?,
                lookup("triples", b)?,
                lookup("triples", c)?,
            );
            if structure.insert(key, *n).is_some() {
                return Err(Error::invalid(
                    "triples",
                    format!("duplicate entry for ({a}, {b}, {c})"),
                ));
            }
        }
        FusionAlgebra::from_parts(json.labels.clone(), identity, conjugation, structure)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let json: AlgebraJson =
            serde_json::from_str(s).map_err(|e| Error::invalid("algebra", e.to_string()))?;
        FusionAlgebra::from_json(&json)
    }
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |a| (0..n).map(move |b| (a, b)))
}

fn triples(n: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    pairs(n).flat_map(move |(a, b)| (0..n).map(move |c| (a, b, c)))
}

/// Serialized form of a [`FusionAlgebra`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraJson {
    pub labels: Vec<String>,
    pub identity: String,
    pub conjugation: Vec<String>,
    pub triples: Vec<(String, String, String, u64)>,
}

/// A nonnegative integer combination of basis labels; zero terms omitted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct FormalSum {
    terms: Vec<(String, u64)>,
}

impl FormalSum {
    pub fn new(terms: Vec<(String, u64)>) -> Self {
        FormalSum {
            terms: terms.into_iter().filter(|&(_, n)| n != 0).collect(),
        }
    }

    pub fn terms(&self) -> &[(String, u64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, label: &str) -> u64 {
        self.terms
            .iter()
            .find(|(l, _)| l == label)
            .map_or(0, |&(_, n)| n)
    }

    pub fn to_map(&self) -> BTreeMap<String, u64> {
        self.terms.iter().cloned().collect()
    }
}

impl fmt::Display for FormalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (label, n)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            if *n != 1 {
                write!(f, "{n}")?;
            }
            f.write_str(label)?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Axiom {
    /// `σ(σ(a)) = a`.
    ConjugationInvolution,
    /// `N_{a,b}^Ω = δ_{b,σ(a)}`.
    ConjugationMatrix,
    /// `N_{Ω,b}^c = δ_{b,c}`.
    Identity,
    Commutativity,
    /// `(x_a x_b) x_d = x_a (x_b x_d)`; witness is `(a, b, d)`.
    Associativity,
    /// `N_{σa,σb}^{σc} = N_{a,b}^c`.
    ConjugationAutomorphism,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Axiom::ConjugationInvolution => "conjugation is an involution",
            Axiom::ConjugationMatrix => "conjugation matches N_{a,b}^identity",
            Axiom::Identity => "identity acts trivially",
            Axiom::Commutativity => "commutativity",
            Axiom::Associativity => "associativity",
            Axiom::ConjugationAutomorphism => "conjugation is an automorphism",
        };
        f.write_str(name)
    }
}

/// A failed axiom together with its smallest violating label tuple.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomFailure {
    pub axiom: Axiom,
    pub witness: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub failures: Vec<AxiomFailure>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn failure(&self, axiom: Axiom) -> Option<&AxiomFailure> {
        self.failures.iter().find(|f| f.axiom == axiom)
    }
}

/// Dense `n × n × n` structure constants.
#[derive(Clone, Debug)]
pub(crate) struct StructureTable {
    n: usize,
    data: Vec<u64>,
}

impl StructureTable {
    pub(crate) fn zeros(n: usize) -> Self {
        StructureTable {
            n,
            data: vec![0; n * n * n],
        }
    }

    fn from_algebra(algebra: &FusionAlgebra) -> Self {
        let mut table = StructureTable::zeros(algebra.len());
        for (&(a, b, c), &v) in &algebra.structure {
            table.set(a, b, c, v);
        }
        table
    }

    pub(crate) fn get(&self, a: usize, b: usize, c: usize) -> u64 {
        self.data[(a * self.n + b) * self.n + c]
    }

    pub(crate) fn set(&mut self, a: usize, b: usize, c: usize, v: u64) {
        self.data[(a * self.n + b) * self.n + c] = v;
    }

    fn row(&self, a: usize, b: usize) -> &[u64] {
        let start = (a * self.n + b) * self.n;
        &self.data[start..start + self.n]
    }

    /// Coefficient vectors of `(x_a x_b) x_d` and `x_a (x_b x_d)`.
    pub(crate) fn associator(&self, a: usize, b: usize, d: usize) -> (Vec<u64>, Vec<u64>) {
        let n = self.n;
        let mut left = vec![0u64; n];
        let mut right = vec![0u64; n];
        for e in 0..n {
            let ab = self.get(a, b, e);
            if ab != 0 {
                for (slot, &v) in left.iter_mut().zip(self.row(e, d)) {
                    *slot += ab * v;
                }
            }
            let bd = self.get(b, d, e);
            if bd != 0 {
                for (slot, &v) in right.iter_mut().zip(self.row(a, e)) {
                    *slot += bd * v;
                }
            }
        }
        (left, right)
    }

    pub(crate) fn nonassociative_triples(
        &self,
    ) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        triples(self.n).filter(move |&(a, b, d)| {
            let (l, r) = self.associator(a, b, d);
            l != r
        })
    }

    pub(crate) fn first_nonassociative(&self) -> Option<(usize, usize, usize)> {
        self.nonassociative_triples().next()
    }
}

/// The group algebra of `Z_n`, labelled `"0"`, ..., `"n-1"`.
pub fn cyclic_group_algebra(n: usize) -> FusionAlgebra {
    assert!(n > 0);
    let labels = (0..n).map(|i| i.to_string()).collect();
    let conjugation = (0..n).map(|i| (n - i) % n).collect();
    let structure = pairs(n).map(|(a, b)| ((a, b, (a + b) % n), 1)).collect();
    FusionAlgebra::from_parts(labels, 0, conjugation, structure).expect("valid group algebra")
}
