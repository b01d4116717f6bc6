//! Inputs shared by the benchmarks.

use typea_core::OrbitLabel;

/// Every ordered triple of orbit labels at the given modulus and level.
pub fn all_triples(modulus: u32, level: u32) -> Vec<(OrbitLabel, OrbitLabel, OrbitLabel)> {
    let labels = OrbitLabel::all(modulus, level);
    let mut out = Vec::with_capacity(labels.len().pow(3));
    for a in &labels {
        for b in &labels {
            for c in &labels {
                out.push((a.clone(), b.clone(), c.clone()));
            }
        }
    }
    out
}
