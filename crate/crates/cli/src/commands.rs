use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::Path;

use serde::Serialize;
use typea_core::{
    build_fusion_algebra, count_k_matrices, m_rank2, m_rank3, m_zaslavsky, modules_at_level,
    orbit_count_bruteforce, spin_of, symmetric_fusion, verify_cover, AxiomFailure, CoverMap,
    CoverMismatch, FusionAlgebra, GroupPartition, OrbitLabel, WeightA2,
};

use crate::render::{self, grid, yes_no};
use crate::{usage, CliError, Format, LevelSpec, Method, Outcome};

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn parse_file<T>(
    path: &Path,
    parse: impl FnOnce(&str) -> typea_core::Result<T>,
) -> Result<T, CliError> {
    parse(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn algebra_name(rank: u32, level: u32) -> String {
    match rank {
        2 => format!("A1 level {level}"),
        3 => format!("A2 level {level}"),
        _ => format!("rank {rank} level {level}"),
    }
}

pub(crate) fn table(
    rank: u32,
    level: u32,
    labels: Option<&Path>,
    format: Format,
    out: &mut dyn Write,
) -> Result<Outcome, CliError> {
    let mut algebra = build_fusion_algebra(rank, level)?;
    if let Some(path) = labels {
        let names: BTreeMap<String, String> = serde_json::from_str(&read(path)?)
            .map_err(|e| usage(format!("{}: label map: {e}", path.display())))?;
        let mut pairs = Vec::with_capacity(names.len());
        for (new, old) in names {
            let old: OrbitLabel = old
                .parse()
                .map_err(|e| usage(format!("{}: {e}", path.display())))?;
            pairs.push((new, old.to_string()));
        }
        algebra = algebra
            .relabelled(&pairs)
            .map_err(|e| usage(format!("{}: {e}", path.display())))?;
    }
    let n = algebra.len();
    match format {
        Format::Json => render::json(out, &algebra.to_json())?,
        Format::Csv => {
            let rows: Vec<Vec<String>> = (0..n)
                .flat_map(|a| (a..n).map(move |b| (a, b)))
                .map(|(a, b)| {
                    vec![
                        algebra.label(a).to_string(),
                        algebra.label(b).to_string(),
                        algebra.product_at(a, b).to_string(),
                    ]
                })
                .collect();
            render::csv(out, &["a", "b", "product"], &rows)?;
        }
        Format::Plain => {
            writeln!(out, "{}: {n} modules", algebra_name(rank, level))?;
            let mut rows = vec![std::iter::once(String::new())
                .chain(algebra.labels().iter().cloned())
                .collect::<Vec<_>>()];
            for a in 0..n {
                let mut row = vec![algebra.label(a).to_string()];
                row.extend((0..n).map(|b| {
                    if b < a {
                        String::new()
                    } else {
                        algebra.product_at(a, b).to_string()
                    }
                }));
                rows.push(row);
            }
            write!(out, "{}", grid(&rows))?;
        }
    }
    Ok(Outcome::Pass)
}

#[derive(Serialize)]
struct MethodCount {
    method: &'static str,
    m: u64,
}

#[derive(Serialize)]
struct CountReport {
    modulus: u32,
    level: u32,
    a: String,
    b: String,
    c: String,
    counts: Vec<MethodCount>,
    agree: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    fusion: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    bridge: Option<bool>,
}

fn parse_label(s: &str) -> Result<OrbitLabel, CliError> {
    s.parse().map_err(|_| {
        usage(format!(
            "`{s}` is not an orbit label; expected counts like `1,1,1`"
        ))
    })
}

/// `M` expected from the fusion coefficient: `N` for modulus 2 and
/// `binom(N + 1, 2)` for modulus 3.
pub(crate) fn bridged(modulus: u32, fusion: u64) -> u64 {
    if modulus == 2 {
        fusion
    } else {
        fusion * (fusion + 1) / 2
    }
}

pub(crate) fn count(
    rank: Option<u32>,
    level: Option<LevelSpec>,
    labels: [&String; 3],
    method: Method,
    format: Format,
    out: &mut dyn Write,
) -> Result<Outcome, CliError> {
    let [a, b, c] = labels.map(|s| parse_label(s));
    let (a, b, c) = (a?, b?, c?);
    for l in [&b, &c] {
        if l.modulus() != a.modulus() || l.level() != a.level() {
            return Err(usage(format!(
                "{a} and {l} do not share a modulus and level"
            )));
        }
    }
    let (n, k) = (a.modulus(), a.level());
    if let Some(r) = rank.filter(|&r| r != n) {
        return Err(usage(format!("labels have {n} parts but --rank is {r}")));
    }
    if let Some(spec) = level.filter(|s| s.lo != k || s.hi != k) {
        return Err(usage(format!("labels sum to {k} but --level is {spec}")));
    }

    let wanted = |m: Method| method == Method::All || method == m;
    let mut counts = Vec::new();
    if wanted(Method::Brute) {
        counts.push(MethodCount {
            method: "brute force",
            m: orbit_count_bruteforce(&a, &b, &c)?,
        });
    }
    if wanted(Method::Kmatrix) {
        counts.push(MethodCount {
            method: "K-matrix",
            m: count_k_matrices(&a, &b, &c)?,
        });
    }
    if wanted(Method::Closed) {
        match n {
            2 => counts.push(MethodCount {
                method: "closed form",
                m: m_rank2(&a, &b, &c)?,
            }),
            3 => counts.push(MethodCount {
                method: "closed form",
                m: m_rank3(&a, &b, &c)?,
            }),
            _ if method == Method::Closed => {
                return Err(usage(format!("no closed form for modulus {n}")))
            }
            _ => {}
        }
    }
    if wanted(Method::Zaslavsky) {
        if n == 3 {
            counts.push(MethodCount {
                method: "Zaslavsky",
                m: m_zaslavsky(&a, &b, &c)?,
            });
        } else if method == Method::Zaslavsky {
            return Err(usage("the Zaslavsky form needs modulus 3"));
        }
    }
    let m = counts[0].m;
    let agree = counts.iter().all(|c| c.m == m);
    let fusion = if (2..=3).contains(&n) {
        Some(symmetric_fusion(&a, &b, &c)?)
    } else {
        None
    };
    let bridge = fusion.map(|f| bridged(n, f) == m);
    let report = CountReport {
        modulus: n,
        level: k,
        a: a.to_string(),
        b: b.to_string(),
        c: c.to_string(),
        counts,
        agree,
        fusion,
        bridge,
    };

    match format {
        Format::Json => render::json(out, &report)?,
        Format::Csv => {
            let mut rows: Vec<Vec<String>> = report
                .counts
                .iter()
                .map(|c| vec![c.method.to_string(), c.m.to_string()])
                .collect();
            if let Some(f) = fusion {
                rows.push(vec!["fusion".into(), f.to_string()]);
            }
            render::csv(out, &["quantity", "value"], &rows)?;
        }
        Format::Plain => {
            let mut rows = vec![
                vec!["a".to_string(), report.a.clone()],
                vec!["b".to_string(), report.b.clone()],
                vec!["c".to_string(), report.c.clone()],
            ];
            for c in &report.counts {
                rows.push(vec![format!("M ({})", c.method), c.m.to_string()]);
            }
            if let Some(f) = fusion {
                rows.push(vec!["fusion".into(), f.to_string()]);
            }
            if let Some(ok) = bridge {
                rows.push(vec![
                    "bridge".into(),
                    if ok { "ok" } else { "FAILED" }.into(),
                ]);
            }
            if !agree {
                rows.push(vec!["methods".into(), "DISAGREE".into()]);
            }
            write!(out, "{}", grid(&rows))?;
        }
    }
    Ok(Outcome::from_bool(agree && bridge != Some(false)))
}

#[derive(Serialize)]
struct OrbitRecord {
    index: usize,
    label: String,
    standard_form: String,
    size: u128,
    conjugate: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    spin: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    weight: Option<WeightA2>,
}

pub(crate) fn orbits(
    rank: u32,
    level: u32,
    format: Format,
    out: &mut dyn Write,
) -> Result<Outcome, CliError> {
    let records = modules_at_level(rank, level)?
        .iter()
        .enumerate()
        .map(|(index, l)| {
            Ok(OrbitRecord {
                index,
                label: l.to_string(),
                standard_form: l.standard_form().to_string(),
                size: l.size(),
                conjugate: l.conjugate().to_string(),
                spin: (rank == 2)
                    .then(|| spin_of(l))
                    .transpose()?
                    .map(|s| s.to_string()),
                weight: (rank == 3).then(|| WeightA2::from_label(l)).transpose()?,
            })
        })
        .collect::<typea_core::Result<Vec<_>>>()?;
    let mut header = vec!["index", "label", "standard form", "size", "conjugate"];
    match rank {
        2 => header.push("spin"),
        3 => header.push("weight"),
        _ => {}
    }
    let rows: Vec<Vec<String>> = records
        .iter()
        .map(|r| {
            let mut row = vec![
                r.index.to_string(),
                r.label.clone(),
                r.standard_form.clone(),
                r.size.to_string(),
                r.conjugate.clone(),
            ];
            row.extend(r.spin.clone());
            row.extend(r.weight.map(|w| w.to_string()));
            row
        })
        .collect();
    match format {
        Format::Json => render::json(out, &records)?,
        Format::Csv => render::csv(out, &header, &rows)?,
        Format::Plain => {
            let mut all = vec![header.iter().map(|h| h.to_string()).collect()];
            all.extend(rows);
            write!(out, "{}", grid(&all))?;
        }
    }
    Ok(Outcome::Pass)
}

#[derive(Serialize)]
struct Associativity {
    associative: bool,
    violations: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<[usize; 3]>,
    /// `(P_i P_j) P_l` and `P_i (P_j P_l)` at the witness.
    #[serde(skip_serializing_if = "Option::is_none")]
    products: Option<[Vec<u64>; 2]>,
}

#[derive(Serialize)]
struct CoverSection {
    verified: bool,
    axiom_failures: Vec<AxiomFailure>,
    mismatches: Vec<CoverMismatch>,
}

#[derive(Serialize)]
struct CoverOutput {
    modulus: u32,
    length: usize,
    blocks: usize,
    associativity: Associativity,
    #[serde(skip_serializing_if = "Option::is_none")]
    cover: Option<CoverSection>,
}

fn block_sum(v: &[u64]) -> String {
    let terms: Vec<String> = v
        .iter()
        .enumerate()
        .filter(|&(_, &n)| n != 0)
        .map(|(i, &n)| {
            if n == 1 {
                format!("P{i}")
            } else {
                format!("{n}P{i}")
            }
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

pub(crate) fn cover(
    partition: &Path,
    algebra: Option<&Path>,
    map: Option<&Path>,
    format: Format,
    out: &mut dyn Write,
) -> Result<Outcome, CliError> {
    let part = parse_file(partition, GroupPartition::from_json_str)?;
    let algebra: Option<FusionAlgebra> = algebra
        .map(|p| parse_file(p, FusionAlgebra::from_json_str))
        .transpose()?;
    let map = match (map, &algebra) {
        (Some(_), None) => return Err(usage("--map needs --algebra")),
        (Some(p), Some(_)) => Some(parse_file(p, CoverMap::from_json_str)?),
        (None, Some(alg)) => Some(CoverMap::by_position(alg)),
        (None, None) => None,
    };

    let check = part.is_associative();
    let witness = check.witness.map(|(i, j, l)| [i, j, l]);
    let products = witness
        .map(|[i, j, l]| part.triple_products(i, j, l).map(|(x, y)| [x, y]))
        .transpose()?;
    let associativity = Associativity {
        associative: check.holds(),
        violations: part.associativity_violations().len(),
        witness,
        products,
    };
    let cover = match (&algebra, &map) {
        (Some(alg), Some(map)) => {
            let report = verify_cover(alg, &part, map)?;
            Some(CoverSection {
                verified: report.verified(),
                axiom_failures: report.axioms.failures,
                mismatches: report.mismatches,
            })
        }
        _ => None,
    };
    let passed = cover
        .as_ref()
        .map_or(associativity.associative, |c| c.verified);
    let output = CoverOutput {
        modulus: part.modulus(),
        length: part.length(),
        blocks: part.len(),
        associativity,
        cover,
    };

    match format {
        Format::Json => render::json(out, &output)?,
        Format::Csv => {
            let a = &output.associativity;
            let mut rows = vec![
                vec!["blocks".to_string(), output.blocks.to_string()],
                vec!["associative".into(), yes_no(a.associative).into()],
                vec!["violations".into(), a.violations.to_string()],
            ];
            if let Some([i, j, l]) = a.witness {
                rows.push(vec!["witness".into(), format!("P{i} P{j} P{l}")]);
            }
            if let Some(c) = &output.cover {
                rows.push(vec!["cover verified".into(), yes_no(c.verified).into()]);
                rows.push(vec![
                    "axiom failures".into(),
                    c.axiom_failures.len().to_string(),
                ]);
                rows.push(vec!["mismatches".into(), c.mismatches.len().to_string()]);
            }
            render::csv(out, &["check", "value"], &rows)?;
        }
        Format::Plain => write_cover_plain(out, &output)?,
    }
    Ok(Outcome::from_bool(passed))
}

fn write_cover_plain(out: &mut dyn Write, o: &CoverOutput) -> Result<(), CliError> {
    let a = &o.associativity;
    writeln!(
        out,
        "partition: {} blocks of Z_{}^{}",
        o.blocks, o.modulus, o.length
    )?;
    writeln!(out, "associative: {}", yes_no(a.associative))?;
    if let (Some([i, j, l]), Some([left, right])) = (a.witness, &a.products) {
        writeln!(out, "violating triples: {}", a.violations)?;
        writeln!(out, "witness: (P{i}, P{j}, P{l})")?;
        writeln!(out, "  (P{i} P{j}) P{l} = {}", block_sum(left))?;
        writeln!(out, "  P{i} (P{j} P{l}) = {}", block_sum(right))?;
    }
    if let Some(c) = &o.cover {
        writeln!(out, "cover verified: {}", yes_no(c.verified))?;
        for f in &c.axiom_failures {
            writeln!(
                out,
                "  axiom failed: {} at ({})",
                f.axiom,
                f.witness.join(", ")
            )?;
        }
        for m in &c.mismatches {
            match m {
                CoverMismatch::Multiplicity { a, b, c, n } => {
                    writeln!(out, "  multiplicity: N_{{{a},{b}}}^{{{c}}} = {n}")?
                }
                CoverMismatch::Support {
                    a,
                    b,
                    algebra,
                    partition,
                } => writeln!(
                    out,
                    "  support: {a} x {b} hits blocks {algebra:?}, partition gives {partition:?}"
                )?,
            }
        }
    }
    Ok(())
}
