//! `typea verify`: every triple at every requested level, checked across
//! all counting methods and against the fusion rule.

use std::io::Write;

use serde::Serialize;
use typea_core::{
    build_fusion_algebra, count_k_matrices, m_rank2, m_rank3, m_zaslavsky, orbit_count_bruteforce,
    symmetric_fusion, verify_cover, CoverMap, GroupPartition, OrbitLabel,
};

use crate::commands::bridged;
use crate::render::{self, grid};
use crate::{usage, CliError, Format, LevelSpec, Outcome};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TripleRecord {
    pub level: u32,
    pub a: String,
    pub b: String,
    pub c: String,
    pub brute: u64,
    pub kmatrix: u64,
    pub closed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub zaslavsky: Option<u64>,
    pub fusion: u64,
    /// All methods give the same `M`.
    pub agree: bool,
    /// `M` is `N` (modulus 2) or `binom(N + 1, 2)` (modulus 3).
    pub bridge: bool,
}

impl TripleRecord {
    pub fn passed(&self) -> bool {
        self.agree && self.bridge
    }
}

/// Axioms and, when the algebra has no coefficient above 1, the cover by
/// the orbit partition of `Z_N^k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlgebraRecord {
    pub level: u32,
    pub modules: usize,
    pub axioms: bool,
    pub multiplicity_free: bool,
    /// `None` when the algebra has multiplicities, so no partition can
    /// cover it.
    pub cover: Option<bool>,
}

impl AlgebraRecord {
    pub fn passed(&self) -> bool {
        self.axioms && self.cover != Some(false)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SweepSummary {
    pub triples: usize,
    pub disagreements: usize,
    pub bridge_failures: usize,
    pub algebras: usize,
    pub axiom_failures: usize,
    pub covers_checked: usize,
    pub cover_failures: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub rank: u32,
    pub levels: [u32; 2],
    pub passed: bool,
    pub summary: SweepSummary,
    pub algebras: Vec<AlgebraRecord>,
    pub records: Vec<TripleRecord>,
}

impl SweepReport {
    pub fn run(rank: u32, levels: LevelSpec) -> Result<Self, CliError> {
        if !(2..=3).contains(&rank) {
            return Err(usage(format!("verify supports --rank 2 or 3, got {rank}")));
        }
        let mut records = Vec::new();
        let mut algebras = Vec::new();
        for k in levels.lo..=levels.hi {
            let labels = OrbitLabel::all(rank, k);
            for a in &labels {
                for b in &labels {
                    for c in &labels {
                        records.push(check_triple(k, a, b, c)?);
                    }
                }
            }
            algebras.push(check_algebra(rank, k)?);
        }
        let summary = SweepSummary {
            triples: records.len(),
            disagreements: records.iter().filter(|r| !r.agree).count(),
            bridge_failures: records.iter().filter(|r| !r.bridge).count(),
            algebras: algebras.len(),
            axiom_failures: algebras.iter().filter(|r| !r.axioms).count(),
            covers_checked: algebras.iter().filter(|r| r.cover.is_some()).count(),
            cover_failures: algebras.iter().filter(|r| r.cover == Some(false)).count(),
        };
        let passed =
            records.iter().all(TripleRecord::passed) && algebras.iter().all(AlgebraRecord::passed);
        Ok(SweepReport {
            rank,
            levels: [levels.lo, levels.hi],
            passed,
            summary,
            algebras,
            records,
        })
    }
}

fn check_triple(
    k: u32,
    a: &OrbitLabel,
    b: &OrbitLabel,
    c: &OrbitLabel,
) -> Result<TripleRecord, CliError> {
    let n = a.modulus();
    let brute = orbit_count_bruteforce(a, b, c)?;
    let kmatrix = count_k_matrices(a, b, c)?;
    let (closed, zaslavsky) = if n == 2 {
        (m_rank2(a, b, c)?, None)
    } else {
        (m_rank3(a, b, c)?, Some(m_zaslavsky(a, b, c)?))
    };
    let fusion = symmetric_fusion(a, b, c)?;
    let agree = brute == kmatrix && kmatrix == closed && zaslavsky.is_none_or(|z| z == closed);
    Ok(TripleRecord {
        level: k,
        a: a.to_string(),
        b: b.to_string(),
        c: c.to_string(),
        brute,
        kmatrix,
        closed,
        zaslavsky,
        fusion,
        agree,
        bridge: bridged(n, fusion) == brute,
    })
}

fn check_algebra(rank: u32, k: u32) -> Result<AlgebraRecord, CliError> {
    let algebra = build_fusion_algebra(rank, k)?;
    let multiplicity_free = algebra.nonzero().all(|(_, n)| n == 1);
    let cover = if multiplicity_free {
        let partition = GroupPartition::standard(rank, k as usize)?;
        Some(verify_cover(&algebra, &partition, &CoverMap::by_position(&algebra))?.verified())
    } else {
        None
    };
    Ok(AlgebraRecord {
        level: k,
        modules: algebra.len(),
        axioms: algebra.check_axioms().passed(),
        multiplicity_free,
        cover,
    })
}

fn opt(v: Option<u64>) -> String {
    v.map_or_else(String::new, |v| v.to_string())
}

fn record_row(r: &TripleRecord) -> Vec<String> {
    vec![
        r.level.to_string(),
        r.a.clone(),
        r.b.clone(),
        r.c.clone(),
        r.brute.to_string(),
        r.kmatrix.to_string(),
        r.closed.to_string(),
        opt(r.zaslavsky),
        r.fusion.to_string(),
        r.agree.to_string(),
        r.bridge.to_string(),
    ]
}

const RECORD_HEADER: [&str; 11] = [
    "level",
    "a",
    "b",
    "c",
    "brute",
    "kmatrix",
    "closed",
    "zaslavsky",
    "fusion",
    "agree",
    "bridge",
];

pub(crate) fn verify(
    rank: u32,
    levels: LevelSpec,
    format: Format,
    out: &mut dyn Write,
) -> Result<Outcome, CliError> {
    let report = SweepReport::run(rank, levels)?;
    match format {
        Format::Json => render::json(out, &report)?,
        Format::Csv => {
            let rows: Vec<_> = report.records.iter().map(record_row).collect();
            render::csv(out, &RECORD_HEADER, &rows)?;
        }
        Format::Plain => write_plain(out, &report)?,
    }
    Ok(if report.passed {
        Outcome::Pass
    } else {
        Outcome::Fail
    })
}

fn write_plain(out: &mut dyn Write, r: &SweepReport) -> Result<(), CliError> {
    writeln!(
        out,
        "rank {} levels {}..{}",
        r.rank, r.levels[0], r.levels[1]
    )?;
    let mut rows = vec![["level", "modules", "triples", "axioms", "cover"]
        .map(String::from)
        .to_vec()];
    for alg in &r.algebras {
        let triples = r.records.iter().filter(|t| t.level == alg.level).count();
        rows.push(vec![
            alg.level.to_string(),
            alg.modules.to_string(),
            triples.to_string(),
            if alg.axioms { "ok" } else { "FAILED" }.into(),
            match alg.cover {
                Some(true) => "verified",
                Some(false) => "FAILED",
                None => "n/a (multiplicities)",
            }
            .into(),
        ]);
    }
    write!(out, "{}", grid(&rows))?;
    let s = &r.summary;
    writeln!(
        out,
        "{} triples, {} disagreements, {} bridge failures; {} algebras, {} axiom failures, {} covers checked, {} cover failures",
        s.triples, s.disagreements, s.bridge_failures, s.algebras, s.axiom_failures, s.covers_checked, s.cover_failures
    )?;
    let failing: Vec<_> = r.records.iter().filter(|t| !t.passed()).collect();
    if !failing.is_empty() {
        let mut rows = vec![RECORD_HEADER.map(String::from).to_vec()];
        rows.extend(failing.into_iter().map(record_row));
        write!(out, "{}", grid(&rows))?;
    }
    writeln!(out, "{}", if r.passed { "PASS" } else { "FAIL" })?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sweeps_pass() {
        let r = SweepReport::run(2, LevelSpec { lo: 1, hi: 3 }).unwrap();
        assert!(r.passed);
        assert_eq!(r.summary.triples, 8 + 27 + 64);
        assert_eq!(r.summary.covers_checked, 3);
        let r = SweepReport::run(3, LevelSpec { lo: 1, hi: 3 }).unwrap();
        assert!(r.passed);
        // level 3 has a coefficient 2, so only levels 1 and 2 get a cover
        assert_eq!(r.summary.covers_checked, 2);
    }

    #[test]
    fn unsupported_rank_rejected() {
        assert!(SweepReport::run(4, LevelSpec { lo: 1, hi: 1 }).is_err());
    }
}
