//! Closed-form fusion rules for the affine algebras of type `A_1` and `A_2`
//! at level `k`, and assembly of the corresponding fusion algebras.
//!
//! Level-`k` modules of `A_{N-1}` are labelled by compositions
//! `(i_0, ..., i_{N-1})` of `k` (see [`OrbitLabel`]); the finite part of the
//! highest weight has Dynkin labels `(i_1, ..., i_{N-1})`. For `A_1` the spin
//! is `i_1 / 2`.
//!
//! All arithmetic is exact. The quantities `𝒜` and `ℬ` of the `A_2` rule are
//! rationals and their integrality is tested exactly.

use std::cmp::min;
use std::collections::BTreeMap;
use std::fmt;

use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::algebra::FusionAlgebra;
use crate::error::{Error, Result};
use crate::group::OrbitLabel;

pub type Rational = Ratio<i64>;

/// A nonnegative half-integer, stored as twice its value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Spin(u32);

impl Spin {
    pub const ZERO: Spin = Spin(0);

    pub fn from_twice(twice: u32) -> Self {
        Spin(twice)
    }

    pub fn twice(self) -> u32 {
        self.0
    }

    pub fn as_rational(self) -> Rational {
        Rational::new(i64::from(self.0), 2)
    }
}

impl fmt::Display for Spin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_multiple_of(2) {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

/// Dynkin labels `(a_1, a_2)` of an `sl_3` weight.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct WeightA2 {
    pub a1: u32,
    pub a2: u32,
}

impl WeightA2 {
    pub const fn new(a1: u32, a2: u32) -> Self {
        WeightA2 { a1, a2 }
    }

    /// The weight attached to a modulus-3 orbit label, `(i_1, i_2)`.
    pub fn from_label(label: &OrbitLabel) -> Result<Self> {
        match label.counts() {
            &[_, i1, i2] => Ok(WeightA2::new(i1, i2)),
            _ => Err(Error::Domain(format!("{label} is not a rank-3 label"))),
        }
    }

    /// Highest weight of the dual module.
    pub fn dual(self) -> Self {
        WeightA2::new(self.a2, self.a1)
    }

    pub fn fits_level(self, k: u32) -> bool {
        self.a1 + self.a2 <= k
    }
}

impl fmt::Display for WeightA2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a1, self.a2)
    }
}

/// The quantities of the `A_2` tensor-product and fusion rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BmwData {
    pub cal_a: Rational,
    pub cal_b: Rational,
    pub k0_max: Rational,
    /// Integral whenever `cal_a` and `cal_b` are.
    pub k0_min: Rational,
    pub delta: bool,
    /// Multiplicity of the trivial module in `V_λ ⊗ V_μ ⊗ V_ν`.
    pub tensor_mult: u64,
}

/// Level-`k` modules of `A_{N-1}` as orbit labels, in canonical order.
pub fn modules_at_level(rank: u32, level: u32) -> Result<Vec<OrbitLabel>> {
    if rank < 2 {
        return Err(Error::Domain(format!(
            "rank parameter must be at least 2, got {rank}"
        )));
    }
    if level == 0 {
        return Err(Error::Domain("level must be at least 1".into()));
    }
    Ok(OrbitLabel::all(rank, level))
}

/// `(m, m', m'')` is p-admissible when all three lie strictly between 0
/// and `p`, their sum is odd and below `2p`, and the strict triangle
/// inequalities hold.
pub fn is_p_admissible(m: i64, m2: i64, m3: i64, p: i64) -> bool {
    let bounded = [m, m2, m3].iter().all(|&x| 0 < x && x < p);
    let sum = m + m2 + m3;
    bounded && sum % 2 != 0 && sum < 2 * p && m < m2 + m3 && m2 < m + m3 && m3 < m + m2
}

/// `A_1` level-`k` fusion coefficient `N_{a,b}^c`, either 0 or 1.
pub fn a1_fusion(a: Spin, b: Spin, c: Spin, k: u32) -> Result<u64> {
    if let Some(s) = [a, b, c].into_iter().find(|s| s.twice() > k) {
        return Err(Error::Domain(format!("spin {s} exceeds k/2 at level {k}")));
    }
    let (ta, tb, tc) = (a.twice(), b.twice(), c.twice());
    let sum = ta + tb + tc;
    let ok = ta.abs_diff(tb) <= tc && tc <= ta + tb && sum % 2 == 0 && sum <= 2 * k;
    Ok(u64::from(ok))
}

/// Spins in the `sl_2` decomposition of `V_a ⊗ V_b`, ascending.
pub fn sl2_tensor(a: Spin, b: Spin) -> Vec<Spin> {
    let (ta, tb) = (a.twice(), b.twice());
    (ta.abs_diff(tb)..=ta + tb)
        .step_by(2)
        .map(Spin::from_twice)
        .collect()
}

/// `Δ_a = a(a+1)/(k+2)`.
pub fn conformal_weight_a1(a: Spin, k: u32) -> Rational {
    let t = i64::from(a.twice());
    Rational::new(t * (t + 2), 4 * (i64::from(k) + 2))
}

pub fn dim_sl2(a: Spin) -> u64 {
    u64::from(a.twice()) + 1
}

pub fn dim_sl3(w: WeightA2) -> u64 {
    let (a1, a2) = (u64::from(w.a1), u64::from(w.a2));
    (a1 + 1) * (a2 + 1) * (a1 + a2 + 2) / 2
}

pub fn bmw_data(lambda: WeightA2, mu: WeightA2, nu: WeightA2) -> BmwData {
    let ws = [lambda, mu, nu];
    let s1: i64 = ws.iter().map(|w| i64::from(w.a1)).sum();
    let s2: i64 = ws.iter().map(|w| i64::from(w.a2)).sum();
    let cal_a = Rational::new(2 * s1 + s2, 3);
    let cal_b = Rational::new(s1 + 2 * s2, 3);
    let k0_max = min(cal_a, cal_b);
    let min_a1 = ws.iter().map(|w| w.a1).min().unwrap_or(0);
    let min_a2 = ws.iter().map(|w| w.a2).min().unwrap_or(0);
    let k0_min = ws
        .iter()
        .map(|w| Rational::from_integer(i64::from(w.a1 + w.a2)))
        .chain([cal_a - i64::from(min_a1), cal_b - i64::from(min_a2)])
        .max()
        .unwrap_or_else(Rational::zero);
    let delta = k0_max >= k0_min && cal_a.is_integer() && cal_b.is_integer();
    let tensor_mult = if delta {
        (k0_max - k0_min + 1).to_integer().to_u64().unwrap_or(0)
    } else {
        0
    };
    BmwData {
        cal_a,
        cal_b,
        k0_max,
        k0_min,
        delta,
        tensor_mult,
    }
}

/// Symmetric `A_2` level-`k` coefficient `N_{λ,μ,ν}`.
///
/// Weights that violate the level condition are not rejected: the rule
/// itself yields 0 for them, since `k0_min` bounds every `a1 + a2`. Use
/// [`a2_fusion_symmetric_checked`] to reject them instead.
pub fn a2_fusion_symmetric(lambda: WeightA2, mu: WeightA2, nu: WeightA2, k: u32) -> u64 {
    let data = bmw_data(lambda, mu, nu);
    let k = Rational::from_integer(i64::from(k));
    if data.tensor_mult == 0 || k < data.k0_min {
        return 0;
    }
    (min(data.k0_max, k) - data.k0_min + 1)
        .to_integer()
        .to_u64()
        .expect("nonnegative when k >= k0_min and k0_max >= k0_min")
}

pub fn a2_fusion_symmetric_checked(
    lambda: WeightA2,
    mu: WeightA2,
    nu: WeightA2,
    k: u32,
) -> Result<u64> {
    if let Some(w) = [lambda, mu, nu].into_iter().find(|w| !w.fits_level(k)) {
        return Err(Error::Domain(format!(
            "weight {w} violates the level-{k} condition"
        )));
    }
    Ok(a2_fusion_symmetric(lambda, mu, nu, k))
}

/// The complete level-`k` fusion algebra of `A_1` (`rank = 2`) or `A_2`
/// (`rank = 3`), labelled by [`OrbitLabel`] strings in canonical order.
///
/// The identity is `P(k,0,...)` and the conjugate of `[c]` is `[-c]`.
/// For `A_2` the directed coefficient is `N_{[a],[b]}^{[c]} = N_{[a],[b],[-c]}`.
pub fn build_fusion_algebra(rank: u32, level: u32) -> Result<FusionAlgebra> {
    if !(2..=3).contains(&rank) {
        return Err(Error::Domain(format!(
            "fusion algebras are assembled for rank 2 or 3 only, got {rank}"
        )));
    }
    let modules = modules_at_level(rank, level)?;
    let position: BTreeMap<&OrbitLabel, usize> =
        modules.iter().enumerate().map(|(i, l)| (l, i)).collect();
    let conjugation = modules.iter().map(|l| position[&l.conjugate()]).collect();

    let mut structure = BTreeMap::new();
    for (ia, a) in modules.iter().enumerate() {
        for (ib, b) in modules.iter().enumerate() {
            for (ic, c) in modules.iter().enumerate() {
                let n = match rank {
                    2 => a1_fusion(
                        Spin::from_twice(a.counts()[1]),
                        Spin::from_twice(b.counts()[1]),
                        Spin::from_twice(c.counts()[1]),
                        level,
                    )?,
                    _ => a2_fusion_symmetric(
                        WeightA2::from_label(a)?,
                        WeightA2::from_label(b)?,
                        WeightA2::from_label(&c.conjugate())?,
                        level,
                    ),
                };
                if n != 0 {
                    structure.insert((ia, ib, ic), n);
                }
            }
        }
    }
    let labels = modules.iter().map(|l| l.to_string()).collect();
    FusionAlgebra::from_parts(labels, 0, conjugation, structure)
}

/// Spin of a modulus-2 label, `i_1 / 2`.
pub fn spin_of(label: &OrbitLabel) -> Result<Spin> {
    match label.counts() {
        &[_, i1] => Ok(Spin::from_twice(i1)),
        _ => Err(Error::Domain(format!("{label} is not a rank-2 label"))),
    }
}
