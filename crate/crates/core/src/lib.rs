//! Fusion rules of the affine algebras `A_1` and `A_2` at any level, the
//! fusion algebras they form, covers of fusion algebras by partitions of
//! finite abelian groups, and the count `M(a, b, c)` of symmetric-group
//! orbits of zero-sum triples in `Z_N^k`.
//!
//! `M` is computed three independent ways: by enumeration
//! ([`orbit_count_bruteforce`]), by counting integer matrices with
//! prescribed row, column and wrapped-diagonal sums ([`count_k_matrices`]),
//! and by closed forms for `N = 2` and `N = 3` ([`m_rank2`], [`m_rank3`],
//! [`m_zaslavsky`]). For `N = 2` it equals the `A_1` fusion coefficient;
//! for `N = 3` it is the triangular number `binom(N_{abc} + 1, 2)` of the
//! `A_2` coefficient.
//!
//! ```
//! use typea_core::{m_rank3, fusion_via_orbits, OrbitLabel};
//!
//! let adj: OrbitLabel = "1,1,1".parse().unwrap();
//! assert_eq!(m_rank3(&adj, &adj, &adj).unwrap(), 3);
//! assert_eq!(fusion_via_orbits(&adj, &adj, &adj).unwrap(), 2);
//! ```

pub mod algebra;
pub mod cover;
pub mod error;
pub mod fixtures;
pub mod group;
pub mod orbits;
pub mod typea;

pub use algebra::{
    cyclic_group_algebra, AlgebraJson, Axiom, AxiomFailure, AxiomReport, FormalSum, FusionAlgebra,
};
pub use cover::{
    verify_cover, AssociativityCheck, CoverMap, CoverMismatch, CoverReport, GroupPartition,
    PartitionJson,
};
pub use error::{Error, Result};
pub use group::{GroupVector, OrbitLabel, OrbitMembers};
pub use orbits::{
    count_k_matrices, fusion_via_orbits, k_matrices, m_rank2, m_rank3, m_zaslavsky,
    orbit_count_bruteforce, rank3_bounds, symmetric_fusion, triangular_root, KMatrix, Rank3Bounds,
    ZaslavskySums,
};
pub use typea::{
    a1_fusion, a2_fusion_symmetric, a2_fusion_symmetric_checked, bmw_data, build_fusion_algebra,
    conformal_weight_a1, dim_sl2, dim_sl3, is_p_admissible, modules_at_level, sl2_tensor, spin_of,
    BmwData, Rational, Spin, WeightA2,
};
