//! Counting `S_k`-orbits of zero-sum triples.
//!
//! For orbit labels `a`, `b`, `c` of `Z_N^k`, `M(a, b, c)` is the number of
//! `S_k`-orbits on `{(x, y, z) ∈ a × b × c : x + y + z = 0}`. It is computed
//! here by direct enumeration, by counting K-matrices, and (for `N = 2, 3`)
//! by closed forms. Throughout, `α`, `β`, `γ` are the counts of `a`, `b`,
//! `c`.
//!
//! A K-matrix is an `N × N` nonnegative integer matrix whose row `i` sums to
//! `γ_i`, whose column `j` sums to `α_j`, and whose wrapped upright diagonal
//! `{(i, j) : i + j ≡ l}` sums to `β_{-l mod N}`. Entry `k_ij` counts the
//! positions where `z` is `i` and `x` is `j`.

use std::cmp::{max, min};
use std::collections::HashSet;

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{GroupVector, OrbitLabel};
use crate::typea::{a1_fusion, a2_fusion_symmetric, spin_of, Rational, WeightA2};

fn check_compatible(a: &OrbitLabel, b: &OrbitLabel, c: &OrbitLabel) -> Result<()> {
    if a.modulus() != b.modulus() || a.modulus() != c.modulus() {
        return Err(Error::Dimension(format!(
            "labels {a}, {b}, {c} have different moduli"
        )));
    }
    if a.level() != b.level() || a.level() != c.level() {
        return Err(Error::Dimension(format!(
            "labels {a}, {b}, {c} have different levels"
        )));
    }
    Ok(())
}

fn require_rank(a: &OrbitLabel, rank: u32) -> Result<()> {
    if a.modulus() != rank {
        return Err(Error::Domain(format!(
            "this formula needs modulus {rank}, got labels of modulus {}",
            a.modulus()
        )));
    }
    Ok(())
}

/// `M(a, b, c)` by enumeration.
///
/// Fixes `z` to the standard form of `c`, runs `x` over the orbit `a`, sets
/// `y = -x - z`, and keeps pairs with `y ∈ b`. Two pairs lie in the same
/// orbit exactly when they agree after sorting the `(x_p, y_p)` pairs within
/// each block of positions where `z` is constant, since the stabilizer of `z`
/// is the product of the symmetric groups on those blocks.
pub fn orbit_count_bruteforce(a: &OrbitLabel, b: &OrbitLabel, c: &OrbitLabel) -> Result<u64> {
    check_compatible(a, b, c)?;
    let z = c.standard_form();
    let mut blocks = Vec::new();
    let mut start = 0;
    for &len in c.counts() {
        blocks.push(start..start + len as usize);
        start += len as usize;
    }

    let mut seen = HashSet::new();
    for x in a.members() {
        let y = x.add(&z)?.negate();
        if y.orbit() != *b {
            continue;
        }
        let mut key: Vec<(u32, u32)> = x
            .entries()
            .iter()
            .copied()
            .zip(y.entries().iter().copied())
            .collect();
        for block in &blocks {
            key[block.clone()].sort_unstable();
        }
        seen.insert(key);
    }
    Ok(seen.len() as u64)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct KMatrix {
    n: usize,
    entries: Vec<u32>,
}

impl KMatrix {
    pub fn new(n: usize, entries: Vec<u32>) -> Result<Self> {
        if n == 0 || entries.len() != n * n {
            return Err(Error::Dimension(format!(
                "a {n}x{n} matrix needs {} entries, got {}",
                n * n,
                entries.len()
            )));
        }
        Ok(KMatrix { n, entries })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.n + j]
    }

    pub fn row_sums(&self) -> Vec<u32> {
        self.entries
            .chunks(self.n)
            .map(|r| r.iter().sum())
            .collect()
    }

    pub fn column_sums(&self) -> Vec<u32> {
        (0..self.n)
            .map(|j| (0..self.n).map(|i| self.get(i, j)).sum())
            .collect()
    }

    /// Entry `l` is the sum over `i + j ≡ l (mod N)`.
    pub fn diagonal_sums(&self) -> Vec<u32> {
        let n = self.n;
        (0..n)
            .map(|l| (0..n).map(|i| self.get(i, (l + n - i) % n)).sum())
            .collect()
    }

    /// Whether every row, column and wrapped-diagonal constraint holds.
    pub fn satisfies(&self, a: &OrbitLabel, b: &OrbitLabel, c: &OrbitLabel) -> bool {
        let n = self.n;
        if [a, b, c].iter().any(|l| l.modulus() as usize != n) {
            return false;
        }
        let (alpha, beta, gamma) = (a.counts(), b.counts(), c.counts());
        let diag = self.diagonal_sums();
        self.row_sums() == gamma
            && self.column_sums() == alpha
            && (0..n).all(|l| diag[l] == beta[(n - l) % n])
    }

    /// The zero-sum triple this matrix stands for: `z` is the standard form
    /// of the row sums and, inside block `i` of `z`, `x` is
    /// `(0^{k_i0}, 1^{k_i1}, ...)` with `y = -x - i`.
    pub fn representative(&self) -> (GroupVector, GroupVector, GroupVector) {
        let n = self.n as u32;
        let (mut x, mut y, mut z) = (Vec::new(), Vec::new(), Vec::new());
        for i in 0..n {
            for j in 0..n {
                for _ in 0..self.get(i as usize, j as usize) {
                    x.push(j);
                    y.push((2 * n - i - j) % n);
                    z.push(i);
                }
            }
        }
        let mk = |v| GroupVector::new(n, v).expect("residues below the modulus");
        (mk(x), mk(y), mk(z))
    }
}

/// Every K-matrix for the triple.
///
/// Rows `0..N-1` are enumerated as compositions of `γ_i` bounded by what is
/// left of each column sum; the last row is then forced. Every candidate is
/// checked against all `3N` constraints.
pub fn k_matrices(a: &OrbitLabel, b: &OrbitLabel, c: &OrbitLabel) -> Result<Vec<KMatrix>> {
    check_compatible(a, b, c)?;
    let n = a.modulus() as usize;
    let mut out = Vec::new();
    let mut entries = vec![0u32; n * n];
    let mut capacity: Vec<u32> = a.counts().to_vec();
    fill_rows(0, n, c.counts(), &mut capacity, &mut entries, &mut |m| {
        let candidate = KMatrix {
            n,
            entries: m.to_vec(),
        };
        if candidate.satisfies(a, b, c) {
            out.push(candidate);
        }
    });
    Ok(out)
}

fn fill_rows(
    row: usize,
    n: usize,
    gamma: &[u32],
    capacity: &mut [u32],
    entries: &mut [u32],
    emit: &mut dyn FnMut(&[u32]),
) {
    if row == n - 1 {
        entries[row * n..].copy_from_slice(capacity);
        emit(entries);
        return;
    }
    fill_entry(row, 0, gamma[row], n, gamma, capacity, entries, emit);
}

#[allow(clippy::too_many_arguments)]
fn fill_entry(
    row: usize,
    col: usize,
    remaining: u32,
    n: usize,
    gamma: &[u32],
    capacity: &mut [u32],
    entries: &mut [u32],
    emit: &mut dyn FnMut(&[u32]),
) {
    if col == n - 1 {
        if remaining > capacity[col] {
            return;
        }
        entries[row * n + col] = remaining;
        capacity[col] -= remaining;
        fill_rows(row + 1, n, gamma, capacity, entries, emit);
        capacity[col] += remaining;
        return;
    }
    for v in 0..=min(remaining, capacity[col]) {
        entries[row * n + col] = v;
        capacity[col] -= v;
        fill_entry(
            row,
            col + 1,
            remaining - v,
            n,
            gamma,
            capacity,
            entries,
            emit,
        );
        capacity[col] += v;
    }
}

pub fn count_k_matrices(a: &OrbitLabel, b: &OrbitLabel, c: &OrbitLabel) -> Result<u64> {
    Ok(k_matrices(a, b, c)?.len() as u64)
}

/// Closed form for `N = 2`: 1 when `|α1 - β1| ≤ γ1 ≤ α1 + β1`,
/// `α1 + β1 + γ1 ≤ 2k` and the sum is even, else 0.
pub fn m_rank2(a: &OrbitLabel, b: &OrbitLabel, c: &OrbitLabel) -> Result<u64> {
    check_compatible(a, b, c)?;
    require_rank(a, 2)?;
    let k = a.level();
    let (a1, b1, c1) = (a.counts()[1], b.counts()[1], c.counts()[1]);
    let sum = a1 + b1 + c1;
    let ok = a1.abs_diff(b1) <= c1 && c1 <= a1 + b1 && sum <= 2 * k && sum % 2 == 0;
    Ok(u64::from(ok))
}

/// The bounds cutting out the K-matrices for `N = 3` in the plane of the
/// free entries `(k10, k11)`: `k10 ≥ C`, `k11 ≥ D`, `k10 + k11 ≤ E`, with
/// `k00 = k11 + A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rank3Bounds {
    pub a: Rational,
    pub c: Rational,
    pub d: Rational,
    pub e: Rational,
}

impl Rank3Bounds {
    pub fn a_is_integral(&self) -> bool {
        self.a.is_integer()
    }

    /// `E - D - C + 1` when the triangle is nonempty and `A` is integral.
    pub fn leg(&self) -> Option<u64> {
        if !self.a_is_integral() || self.e - self.c < self.d {
            return None;
        }
        (self.e - self.d - self.c + 1).to_integer().to_u64()
    }
}

pub fn rank3_bounds(a: &OrbitLabel, b: &OrbitLabel, c: &OrbitLabel) -> Result<Rank3Bounds> {
    check_compatible(a, b, c)?;
    require_rank(a, 3)?;
    let al = counts_i64(a);
    let be = counts_i64(b);
    let ga = counts_i64(c);
    let r = Rational::from_integer;
    let big_a = Rational::new((al[0] + be[0] + ga[0]) - (al[1] + be[1] + ga[1]), 3);
    let cc = max(
        r(0),
        max(
            big_a - be[0] + ga[1],
            big_a * 2 + al[1] - be[0] + ga[1] - ga[0],
        ),
    );
    let dd = max(-big_a, max(r(0), big_a + al[1] - be[0] - be[2] + ga[1]));
    let ee = min(
        big_a + al[1] - be[0] + ga[1],
        min(r(al[0]) - big_a, r(ga[1])),
    );
    Ok(Rank3Bounds {
        a: big_a,
        c: cc,
        d: dd,
        e: ee,
    })
}

fn counts_i64(l: &OrbitLabel) -> [i64; 3] {
    let c = l.counts();
    [i64::from(c[0]), i64::from(c[1]), i64::from(c[2])]
}

fn triangular(t: u64) -> u64 {
    t * (t + 1) / 2
}

/// Closed form for `N = 3`: the number of lattice points of the triangle in
/// [`Rank3Bounds`], `binom(E - D - C + 2, 2)`.
pub fn m_rank3(a: &OrbitLabel, b: &OrbitLabel, c: &OrbitLabel) -> Result<u64> {
    Ok(rank3_bounds(a, b, c)?.leg().map_or(0, triangular))
}

/// The symmetric sums `s_ijl = α_i + β_j + γ_l` for `N = 3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZaslavskySums {
    pub s: [[[i64; 3]; 3]; 3],
    pub level: i64,
}

impl ZaslavskySums {
    pub fn new(a: &OrbitLabel, b: &OrbitLabel, c: &OrbitLabel) -> Result<Self> {
        check_compatible(a, b, c)?;
        require_rank(a, 3)?;
        let (al, be, ga) = (counts_i64(a), counts_i64(b), counts_i64(c));
        let mut s = [[[0i64; 3]; 3]; 3];
        for (i, plane) in s.iter_mut().enumerate() {
            for (j, row) in plane.iter_mut().enumerate() {
                for (l, v) in row.iter_mut().enumerate() {
                    *v = al[i] + be[j] + ga[l];
                }
            }
        }
        Ok(ZaslavskySums {
            s,
            level: i64::from(a.level()),
        })
    }

    fn diag(&self, i: usize, r: usize) -> i64 {
        self.s[i % 3][(i + r) % 3][(i + 2 * r) % 3]
    }

    /// `D^r_{ij} = s_{i,i+r,i+2r} - s_{j,j+r,j+2r}`.
    pub fn difference(&self, r: usize, i: usize, j: usize) -> i64 {
        self.diag(i, r) - self.diag(j, r)
    }

    /// All nine `D^r_{i,i+1}`.
    pub fn differences(&self) -> Vec<i64> {
        (0..3)
            .flat_map(|r| (0..3).map(move |i| (r, i)))
            .map(|(r, i)| self.difference(r, i, i + 1))
            .collect()
    }

    /// `3m = min(s000,s111,s222) + min(s012,s120,s201) + min(s021,s102,s210) - 2k`.
    pub fn three_m(&self) -> i64 {
        let group_min = |r: usize| (0..3).map(|i| self.diag(i, r)).min().unwrap_or(0);
        group_min(0) + group_min(1) + group_min(2) - 2 * self.level
    }

    pub fn m(&self) -> Rational {
        Rational::new(self.three_m(), 3)
    }
}

/// `binom(m + 2, 2)` when `3 | D` and `m ≥ 0`, else 0.
pub fn m_zaslavsky(a: &OrbitLabel, b: &OrbitLabel, c: &OrbitLabel) -> Result<u64> {
    let sums = ZaslavskySums::new(a, b, c)?;
    let d = sums.difference(0, 0, 1);
    let three_m = sums.three_m();
    if d % 3 != 0 || three_m < 0 {
        return Ok(0);
    }
    if three_m % 3 != 0 {
        return Err(Error::Invariant(format!(
            "3 | D but m = {three_m}/3 is not an integer for {a}, {b}, {c}"
        )));
    }
    Ok(triangular(three_m as u64 / 3 + 1))
}

/// The `t ≥ 0` with `t(t+1)/2 = m`, if any.
pub fn triangular_root(m: u64) -> Option<u64> {
    let disc = m.checked_mul(8)?.checked_add(1)?;
    let s = disc.isqrt();
    if s * s != disc {
        return None;
    }
    let t = (s - 1) / 2;
    (triangular(t) == m).then_some(t)
}

/// The symmetric fusion coefficient recovered from the orbit count: `M`
/// itself for `N = 2`, the triangular root of `M` for `N = 3`.
pub fn fusion_via_orbits(a: &OrbitLabel, b: &OrbitLabel, c: &OrbitLabel) -> Result<u64> {
    check_compatible(a, b, c)?;
    match a.modulus() {
        2 => m_rank2(a, b, c),
        3 => {
            let m = m_rank3(a, b, c)?;
            triangular_root(m).ok_or_else(|| {
                Error::Invariant(format!(
                    "orbit count {m} for {a}, {b}, {c} is not triangular"
                ))
            })
        }
        n => Err(Error::Domain(format!(
            "no orbit/fusion correspondence is available for modulus {n}"
        ))),
    }
}

/// The symmetric fusion coefficient `N_{[a],[b],[c]}` from the closed-form
/// rules of [`crate::typea`], for `N = 2, 3`.
pub fn symmetric_fusion(a: &OrbitLabel, b: &OrbitLabel, c: &OrbitLabel) -> Result<u64> {
    check_compatible(a, b, c)?;
    let k = a.level();
    match a.modulus() {
        2 => a1_fusion(spin_of(a)?, spin_of(b)?, spin_of(c)?, k),
        3 => Ok(a2_fusion_symmetric(
            WeightA2::from_label(a)?,
            WeightA2::from_label(b)?,
            WeightA2::from_label(c)?,
            k,
        )),
        n => Err(Error::Domain(format!(
            "no closed-form fusion rule for modulus {n}"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(c: &[u32]) -> OrbitLabel {
        OrbitLabel::new(c.to_vec()).unwrap()
    }

    #[test]
    fn bruteforce_examples() {
        let p111 = l(&[1, 1, 1]);
        assert_eq!(orbit_count_bruteforce(&p111, &p111, &p111).unwrap(), 3);
        let p11 = l(&[1, 1]);
        assert_eq!(orbit_count_bruteforce(&p11, &p11, &l(&[0, 2])).unwrap(), 1);
    }

    #[test]
    fn zero_orbit_forces_conjugate_pair() {
        for n in 2..=4u32 {
            let labels = OrbitLabel::all(n, 3);
            let zero = OrbitLabel::zero(n, 3);
            for a in &labels {
                for b in &labels {
                    let expected = u64::from(*b == a.conjugate());
                    assert_eq!(orbit_count_bruteforce(a, b, &zero).unwrap(), expected);
                    assert_eq!(count_k_matrices(a, b, &zero).unwrap(), expected);
                }
            }
        }
    }

    #[test]
    fn mismatched_labels_rejected() {
        let e = orbit_count_bruteforce(&l(&[1, 1]), &l(&[1, 1, 0]), &l(&[2, 0]));
        assert!(matches!(e, Err(Error::Dimension(_))));
        let e = count_k_matrices(&l(&[1, 1]), &l(&[1, 2]), &l(&[2, 0]));
        assert!(matches!(e, Err(Error::Dimension(_))));
        assert!(matches!(
            m_rank2(&l(&[1, 1, 1]), &l(&[1, 1, 1]), &l(&[1, 1, 1])),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            m_rank3(&l(&[1, 1]), &l(&[1, 1]), &l(&[1, 1])),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            m_zaslavsky(&l(&[1, 1]), &l(&[1, 1]), &l(&[1, 1])),
            Err(Error::Domain(_))
        ));
        let p4 = l(&[1, 1, 1, 1]);
        assert!(matches!(
            fusion_via_orbits(&p4, &p4, &p4),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn k_matrix_examples() {
        let zero = OrbitLabel::zero(3, 4);
        let ms = k_matrices(&zero, &zero, &zero).unwrap();
        assert_eq!(
            ms,
            vec![KMatrix::new(3, vec![4, 0, 0, 0, 0, 0, 0, 0, 0]).unwrap()]
        );

        let p111 = l(&[1, 1, 1]);
        assert_eq!(count_k_matrices(&p111, &p111, &p111).unwrap(), 3);

        let p11 = l(&[1, 1]);
        assert_eq!(count_k_matrices(&p11, &p11, &p11).unwrap(), 0);
    }

    #[test]
    fn k_matrix_representatives_are_solutions() {
        for n in 2..=4u32 {
            let labels = OrbitLabel::all(n, 3);
            for a in &labels {
                for b in &labels {
                    for c in &labels {
                        for m in k_matrices(a, b, c).unwrap() {
                            let (x, y, z) = m.representative();
                            assert_eq!(x.orbit(), *a);
                            assert_eq!(y.orbit(), *b);
                            assert_eq!(z, c.standard_form());
                            assert!(x.add(&y).unwrap().add(&z).unwrap().is_zero());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn m_rank2_examples() {
        for k in 1..6 {
            let lab = |g: u32| l(&[k - g, g]);
            assert_eq!(m_rank2(&lab(k), &lab(k), &lab(0)).unwrap(), 1);
            if k >= 1 {
                assert_eq!(m_rank2(&lab(1), &lab(1), &lab(1)).unwrap(), 0);
            }
        }
        assert_eq!(m_rank2(&l(&[1, 1]), &l(&[1, 1]), &l(&[0, 2])).unwrap(), 1);
    }

    #[test]
    fn rank3_bounds_examples() {
        let p111 = l(&[1, 1, 1]);
        let b = rank3_bounds(&p111, &p111, &p111).unwrap();
        let r = Rational::from_integer;
        assert_eq!((b.a, b.c, b.d, b.e), (r(0), r(0), r(0), r(1)));
        assert_eq!(b.leg(), Some(2));

        let zero = OrbitLabel::zero(3, 3);
        let b = rank3_bounds(&zero, &zero, &zero).unwrap();
        assert_eq!((b.c, b.d, b.e), (r(0), r(0), r(0)));
        assert_eq!(b.leg(), Some(1));

        let p = l(&[2, 1, 0]);
        let q = l(&[3, 0, 0]);
        let b = rank3_bounds(&p, &q, &q).unwrap();
        assert!(!b.a_is_integral());
        assert_eq!(b.leg(), None);
    }

    #[test]
    fn m_rank3_examples() {
        let p111 = l(&[1, 1, 1]);
        assert_eq!(m_rank3(&p111, &p111, &p111).unwrap(), 3);
        let zero = OrbitLabel::zero(3, 3);
        assert_eq!(m_rank3(&zero, &zero, &zero).unwrap(), 1);
        let p110 = l(&[1, 1, 0]);
        assert_eq!(m_rank3(&p110, &p110, &p110).unwrap(), 1);
        assert_eq!(orbit_count_bruteforce(&p110, &p110, &p110).unwrap(), 1);
    }

    #[test]
    fn zaslavsky_examples() {
        let p111 = l(&[1, 1, 1]);
        let sums = ZaslavskySums::new(&p111, &p111, &p111).unwrap();
        assert_eq!(sums.three_m(), 3);
        assert_eq!(m_zaslavsky(&p111, &p111, &p111).unwrap(), 3);

        let zero = OrbitLabel::zero(3, 4);
        assert_eq!(
            ZaslavskySums::new(&zero, &zero, &zero).unwrap().three_m(),
            0
        );
        assert_eq!(m_zaslavsky(&zero, &zero, &zero).unwrap(), 1);

        let p = l(&[2, 1, 0]);
        let q = l(&[3, 0, 0]);
        let sums = ZaslavskySums::new(&p, &q, &q).unwrap();
        assert_ne!(sums.difference(0, 0, 1) % 3, 0);
        assert_eq!(m_zaslavsky(&p, &q, &q).unwrap(), 0);
    }

    #[test]
    fn zaslavsky_differences_congruent() {
        let labels = OrbitLabel::all(3, 4);
        for a in &labels {
            for b in &labels {
                for c in &labels {
                    let d = ZaslavskySums::new(a, b, c).unwrap().differences();
                    assert!(d.iter().all(|x| (x - d[0]).rem_euclid(3) == 0));
                }
            }
        }
    }

    #[test]
    fn triangular_roots() {
        assert_eq!(triangular_root(0), Some(0));
        assert_eq!(triangular_root(1), Some(1));
        assert_eq!(triangular_root(3), Some(2));
        assert_eq!(triangular_root(6), Some(3));
        assert_eq!(triangular_root(2), None);
        assert_eq!(triangular_root(5050), Some(100));
        assert_eq!(triangular_root(u64::MAX), None);
    }

    #[test]
    fn fusion_via_orbits_examples() {
        let p111 = l(&[1, 1, 1]);
        assert_eq!(fusion_via_orbits(&p111, &p111, &p111).unwrap(), 2);
        assert_eq!(
            fusion_via_orbits(&l(&[1, 1]), &l(&[1, 1]), &l(&[0, 2])).unwrap(),
            1
        );
        assert_eq!(
            fusion_via_orbits(&l(&[1, 1]), &l(&[1, 1]), &l(&[1, 1])).unwrap(),
            0
        );
    }
}
