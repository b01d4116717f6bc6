//! Arithmetic in `Z_N^k` and the orbits of the symmetric group `S_k`
//! acting on it by permuting coordinates.
//!
//! An orbit is determined by how many times each residue occurs, so orbits
//! are named by an [`OrbitLabel`]: a composition `(i_0, ..., i_{N-1})` of
//! `k`. Each orbit has a unique weakly increasing member, its standard form
//! `(0^{i_0}, 1^{i_1}, ..., (N-1)^{i_{N-1}})`.
//!
//! Enumeration costs are proportional to the multinomial coefficient of the
//! label. Nothing here refuses large inputs; callers pick the sizes.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// An element of `Z_N^k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupVector {
    modulus: u32,
    entries: Vec<u32>,
}

impl GroupVector {
    pub fn new(modulus: u32, entries: Vec<u32>) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::Domain("modulus must be positive".into()));
        }
        if entries.is_empty() {
            return Err(Error::Domain("vector length must be at least 1".into()));
        }
        if let Some(&bad) = entries.iter().find(|&&e| e >= modulus) {
            return Err(Error::Domain(format!(
                "entry {bad} is not a residue modulo {modulus}"
            )));
        }
        Ok(GroupVector { modulus, entries })
    }

    pub fn zero(modulus: u32, length: usize) -> Self {
        assert!(modulus > 0 && length > 0);
        GroupVector {
            modulus,
            entries: vec![0; length],
        }
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    /// Componentwise sum modulo `N`.
    pub fn add(&self, other: &GroupVector) -> Result<GroupVector> {
        if self.modulus != other.modulus || self.len() != other.len() {
            return Err(Error::Dimension(format!(
                "cannot add an element of Z_{}^{} to an element of Z_{}^{}",
                self.modulus,
                self.len(),
                other.modulus,
                other.len()
            )));
        }
        let n = self.modulus;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&x, &y)| (x + y) % n)
            .collect();
        Ok(GroupVector {
            modulus: n,
            entries,
        })
    }

    pub fn negate(&self) -> GroupVector {
        let n = self.modulus;
        GroupVector {
            modulus: n,
            entries: self.entries.iter().map(|&x| (n - x) % n).collect(),
        }
    }

    /// The label of the `S_k`-orbit containing this vector.
    pub fn orbit(&self) -> OrbitLabel {
        let mut counts = vec![0u32; self.modulus as usize];
        for &e in &self.entries {
            counts[e as usize] += 1;
        }
        OrbitLabel { counts }
    }

    /// Position of this vector in the base-`N` enumeration of `Z_N^k`
    /// (first coordinate most significant).
    pub fn rank(&self) -> usize {
        let n = self.modulus as usize;
        self.entries.iter().fold(0, |acc, &e| acc * n + e as usize)
    }

    /// Inverse of [`GroupVector::rank`].
    pub fn unrank(modulus: u32, length: usize, mut rank: usize) -> GroupVector {
        let n = modulus as usize;
        let mut entries = vec![0u32; length];
        for slot in entries.iter_mut().rev() {
            *slot = (rank % n) as u32;
            rank /= n;
        }
        GroupVector { modulus, entries }
    }
}

impl fmt::Display for GroupVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str(")")
    }
}

/// Names the orbit `P(i_0, ..., i_{N-1})`: the vectors of `Z_N^k` in which
/// residue `j` occurs exactly `i_j` times. The modulus is the number of
/// counts and the level `k` is their sum.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrbitLabel {
    counts: Vec<u32>,
}

impl OrbitLabel {
    pub fn new(counts: Vec<u32>) -> Result<Self> {
        if counts.is_empty() {
            return Err(Error::Domain(
                "an orbit label needs at least one count".into(),
            ));
        }
        if counts.iter().all(|&c| c == 0) {
            return Err(Error::Domain(
                "orbit label counts must sum to at least 1".into(),
            ));
        }
        Ok(OrbitLabel { counts })
    }

    /// The orbit of the zero vector, `P(k, 0, ..., 0)`.
    pub fn zero(modulus: u32, level: u32) -> Self {
        assert!(modulus > 0 && level > 0);
        let mut counts = vec![0; modulus as usize];
        counts[0] = level;
        OrbitLabel { counts }
    }

    /// Every label of the given modulus and level, i0 decreasing and then
    /// lexicographically increasing on the remaining counts.
    pub fn all(modulus: u32, level: u32) -> Vec<OrbitLabel> {
        assert!(modulus > 0 && level > 0);
        let mut out = Vec::new();
        let mut tail = vec![0u32; modulus as usize - 1];
        for i0 in (0..=level).rev() {
            push_compositions(level - i0, 0, &mut tail, &mut |rest| {
                let mut counts = Vec::with_capacity(modulus as usize);
                counts.push(i0);
                counts.extend_from_slice(rest);
                out.push(OrbitLabel { counts });
            });
        }
        out
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    pub fn modulus(&self) -> u32 {
        self.counts.len() as u32
    }

    pub fn level(&self) -> u32 {
        self.counts.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.counts[1..].iter().all(|&c| c == 0)
    }

    /// `(0^{i_0}, 1^{i_1}, ..., (N-1)^{i_{N-1}})`.
    pub fn standard_form(&self) -> GroupVector {
        let entries = self
            .counts
            .iter()
            .enumerate()
            .flat_map(|(value, &count)| std::iter::repeat_n(value as u32, count as usize))
            .collect();
        GroupVector {
            modulus: self.modulus(),
            entries,
        }
    }

    /// Label of the negated orbit: `(i_0, i_{N-1}, i_{N-2}, ..., i_1)`.
    pub fn conjugate(&self) -> OrbitLabel {
        let mut counts = Vec::with_capacity(self.counts.len());
        counts.push(self.counts[0]);
        counts.extend(self.counts[1..].iter().rev());
        OrbitLabel { counts }
    }

    /// Number of vectors in the orbit, the multinomial coefficient
    /// `k! / (i_0! ... i_{N-1}!)`.
    ///
    /// Panics if the value does not fit in a `u128`.
    pub fn size(&self) -> u128 {
        let mut total = 0u128;
        let mut size = 1u128;
        for &c in &self.counts {
            for step in 1..=c as u128 {
                total += 1;
                // size * total / step stays exact: after the multiplication
                // the running product is a multiple of binom(total, step).
                size = size.checked_mul(total).expect("orbit size overflows u128") / step;
            }
        }
        size
    }

    /// All members of the orbit in lexicographic order, starting with the
    /// standard form.
    pub fn members(&self) -> OrbitMembers {
        OrbitMembers {
            next: Some(self.standard_form()),
        }
    }
}

fn push_compositions(remaining: u32, pos: usize, buf: &mut [u32], emit: &mut dyn FnMut(&[u32])) {
    if buf.is_empty() {
        if remaining == 0 {
            emit(buf);
        }
        return;
    }
    if pos == buf.len() - 1 {
        buf[pos] = remaining;
        emit(buf);
        return;
    }
    for v in 0..=remaining {
        buf[pos] = v;
        push_compositions(remaining - v, pos + 1, buf, emit);
    }
}

impl fmt::Display for OrbitLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("P(")?;
        for (i, c) in self.counts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// Accepts both `"1,1,1"` and `"P(1,1,1)"`.
impl FromStr for OrbitLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let body = s
            .strip_prefix("P(")
            .and_then(|rest| rest.strip_suffix(')'))
            .unwrap_or(s);
        let counts = body
            .split(',')
            .map(|part| {
                part.trim().parse::<u32>().map_err(|_| {
                    Error::invalid("orbit label", format!("`{s}` is not a list of counts"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        OrbitLabel::new(counts)
    }
}

/// Iterator over the distinct permutations of a standard-form vector.
#[derive(Clone, Debug)]
pub struct OrbitMembers {
    next: Option<GroupVector>,
}

impl Iterator for OrbitMembers {
    type Item = GroupVector;

    fn next(&mut self) -> Option<GroupVector> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        if next_permutation(&mut succ.entries) {
            self.next = Some(succ);
        }
        Some(current)
    }
}

fn next_permutation(v: &mut [u32]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}
