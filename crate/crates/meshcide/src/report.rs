//! Partition reports: JSON-lines records, the on-disk cache, and parallel
//! fingerprinting.

use std::path::Path;

use meshcide_core::{
    enclosed_diagonals, partition_with_fingerprints, ClassStatus, ContainmentTable, Fingerprint,
    Mesh, MeshClass, MeshPattern, Partition, PartitionOptions, Permutation,
};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::json::{self, PatternJson};

type Squares = Vec<[usize; 2]>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagonalJson {
    pub orientation: String,
    pub squares: Squares,
}

/// One fingerprint class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassRecord {
    pub p: Vec<usize>,
    pub status: String,
    pub size: usize,
    pub representative: PatternJson,
    pub meshes: Vec<Squares>,
    pub enc: Vec<DiagonalJson>,
    /// Proven sub-blocks; present only for conjectured classes.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub blocks: Vec<Vec<Squares>>,
    /// Hex rows, written to the cache only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fingerprint: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub p: Vec<usize>,
    pub n_max: usize,
    pub gamma_rule: bool,
    pub classes: usize,
    pub proven: usize,
    pub conjectured: usize,
    /// Mesh pairs sharing a fingerprint but lying in different proof blocks.
    pub undecided_pairs: usize,
    pub complete: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct Footer {
    summary: Summary,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub records: Vec<ClassRecord>,
    pub summary: Summary,
}

/// Fingerprints of every mesh over `p`, indexed by mesh bits.
pub fn mesh_fingerprints(p: &Permutation, n_max: usize) -> Vec<Fingerprint> {
    let k = p.len();
    let table = ContainmentTable::new(p, n_max);
    (0..1u64 << ((k + 1) * (k + 1)))
        .into_par_iter()
        .map(|bits| table.fingerprint(Mesh::from_bits(k, bits).expect("in range")))
        .collect()
}

pub fn compute(p: &Permutation, opts: &PartitionOptions) -> meshcide_core::Result<Report> {
    // Reject before fingerprinting: the mesh count is 2^((k+1)^2).
    let max = opts.max_len.min(3);
    if p.len() > max {
        return Err(meshcide_core::Error::PartitionTooLarge { len: p.len(), max });
    }
    let n_max = opts.depth_for(p.len());
    let part = partition_with_fingerprints(p, opts, mesh_fingerprints(p, n_max))?;
    Ok(Report::from_partition(&part, opts.gamma_rule))
}

fn record(p: &Permutation, class: &MeshClass) -> ClassRecord {
    let rep = MeshPattern::new(p.clone(), class.representative()).expect("same length");
    let conjectured = class.status == ClassStatus::Conjectured;
    ClassRecord {
        p: p.word().to_vec(),
        status: class.status.tag().to_string(),
        size: class.len(),
        representative: PatternJson::from(&rep),
        meshes: class.meshes.iter().map(|&m| json::squares(m)).collect(),
        enc: enclosed_diagonals(&rep)
            .iter()
            .map(|d| DiagonalJson {
                orientation: d.orientation().tag().to_string(),
                squares: d.squares().iter().map(|s| [s.col, s.row]).collect(),
            })
            .collect(),
        blocks: if conjectured {
            class
                .blocks
                .iter()
                .map(|b| b.iter().map(|&m| json::squares(m)).collect())
                .collect()
        } else {
            Vec::new()
        },
        fingerprint: Some(json::fingerprint_hex(&class.fingerprint)),
    }
}

impl Report {
    pub fn from_partition(part: &Partition, gamma_rule: bool) -> Self {
        let p = part.perm();
        let records: Vec<ClassRecord> = part.classes().iter().map(|c| record(p, c)).collect();
        let undecided_pairs = part
            .conjectured()
            .map(|c| {
                let total = c.len();
                let same: usize = c.blocks.iter().map(|b| b.len() * b.len()).sum();
                (total * total - same) / 2
            })
            .sum();
        let conjectured = part.conjectured().count();
        Report {
            summary: Summary {
                p: p.word().to_vec(),
                n_max: part.n_max(),
                gamma_rule,
                classes: records.len(),
                proven: records.len() - conjectured,
                conjectured,
                undecided_pairs,
                complete: part.is_complete(),
            },
            records,
        }
    }

    /// JSON lines; fingerprints are kept only for the cache.
    pub fn to_json_lines(&self, with_fingerprints: bool) -> String {
        let mut out = String::new();
        for r in &self.records {
            let line = if with_fingerprints {
                serde_json::to_string(r)
            } else {
                serde_json::to_string(&ClassRecord {
                    fingerprint: None,
                    ..r.clone()
                })
            };
            out.push_str(&line.expect("plain data"));
            out.push('\n');
        }
        let footer = Footer {
            summary: self.summary.clone(),
        };
        out.push_str(&serde_json::to_string(&footer).expect("plain data"));
        out.push('\n');
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            let rep = MeshPattern::try_from(r.representative.clone()).expect("valid record");
            out.push_str(&format!("{} {} {}", r.status, r.size, rep));
            if !r.blocks.is_empty() {
                out.push_str(&format!(" blocks={}", r.blocks.len()));
            }
            out.push('\n');
        }
        let s = &self.summary;
        out.push_str(&format!(
            "classes {} proven {} conjectured {} undecided-pairs {} depth {}{}\n",
            s.classes,
            s.proven,
            s.conjectured,
            s.undecided_pairs,
            s.n_max,
            if s.complete {
                ""
            } else {
                " (budget exhausted)"
            }
        ));
        out
    }

    pub fn parse(text: &str) -> Result<Self, String> {
        let lines: Vec<&str> = text.lines().filter(|l| !l.trim().is_empty()).collect();
        let (last, body) = lines.split_last().ok_or("empty report")?;
        let footer: Footer = serde_json::from_str(last).map_err(|e| format!("summary: {e}"))?;
        let records = body
            .iter()
            .enumerate()
            .map(|(i, l)| serde_json::from_str(l).map_err(|e| format!("record {}: {e}", i + 1)))
            .collect::<Result<Vec<ClassRecord>, String>>()?;
        Ok(Report {
            records,
            summary: footer.summary,
        })
    }

    /// Checks a cached report against `p` and the requested settings, and
    /// recomputes one fingerprint per class.
    pub fn verify(&self, p: &Permutation, n_max: usize, gamma_rule: bool) -> Result<(), String> {
        let s = &self.summary;
        if s.p != p.word() || s.n_max != n_max || s.gamma_rule != gamma_rule {
            return Err("cache was built for different settings".into());
        }
        if s.classes != self.records.len() {
            return Err("class count does not match the summary".into());
        }
        let k = p.len();
        let total: usize = self.records.iter().map(|r| r.meshes.len()).sum();
        if total != 1 << ((k + 1) * (k + 1)) {
            return Err(format!("cache covers {total} meshes"));
        }
        let table = ContainmentTable::new(p, n_max);
        for (i, r) in self.records.iter().enumerate() {
            let rep = MeshPattern::try_from(r.representative.clone())
                .map_err(|e| format!("record {}: {e}", i + 1))?;
            let stored = r
                .fingerprint
                .as_deref()
                .and_then(json::parse_fingerprint_hex)
                .ok_or_else(|| format!("record {}: missing or malformed fingerprint", i + 1))?;
            if rep.perm() != p || table.fingerprint(rep.mesh()) != stored {
                return Err(format!(
                    "record {}: fingerprint of {rep} does not match",
                    i + 1
                ));
            }
        }
        Ok(())
    }
}

/// Loads and verifies a cached report, if one exists at `path`.
pub fn load(
    path: &Path,
    p: &Permutation,
    n_max: usize,
    gamma_rule: bool,
) -> Option<Result<Report, String>> {
    let text = std::fs::read_to_string(path).ok()?;
    Some(Report::parse(&text).and_then(|r| r.verify(p, n_max, gamma_rule).map(|()| r)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts() -> PartitionOptions {
        PartitionOptions {
            n_max: Some(5),
            ..PartitionOptions::default()
        }
    }

    #[test]
    fn parallel_fingerprints_match_serial() {
        let p: Permutation = "21".parse().unwrap();
        let table = ContainmentTable::new(&p, 5);
        let fps = mesh_fingerprints(&p, 5);
        for m in Mesh::all(2) {
            assert_eq!(fps[m.bits() as usize], table.fingerprint(m));
        }
    }

    #[test]
    fn report_round_trip_and_verify() {
        let p: Permutation = "1".parse().unwrap();
        let report = compute(&p, &opts()).unwrap();
        assert_eq!(report.summary.conjectured, 0);
        let parsed = Report::parse(&report.to_json_lines(true)).unwrap();
        assert_eq!(parsed, report);
        assert!(parsed.verify(&p, 5, true).is_ok());
        assert!(parsed.verify(&p, 6, true).is_err());
    }

    #[test]
    fn tampered_cache_is_rejected() {
        let p: Permutation = "1".parse().unwrap();
        let mut report = compute(&p, &opts()).unwrap();
        let a = report.records[0].fingerprint.clone();
        report.records[0].fingerprint = report.records[1].fingerprint.clone();
        report.records[1].fingerprint = a;
        assert!(report.verify(&p, 5, true).is_err());
    }
}
