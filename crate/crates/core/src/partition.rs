//! Classification of every mesh over one classical pattern.
//!
//! Meshes are grouped by fingerprint, which is a sound upper bound on the
//! coincidence classes: different fingerprints are never coincident. Inside
//! each group the proof rules are run over the whole mesh space; a group
//! whose members all end up in one proof component is `Proven`, otherwise it
//! is `Conjectured` and its proven blocks are listed.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;

use crate::closure::{Budget, ProofGraph, Why};
use crate::coincidence::{gamma_patterns, is_vincular};
use crate::diagonals::enc_key;
use crate::mesh::{ContainmentTable, Fingerprint, Mesh};
use crate::perm::{Permutation, Symmetry};
use crate::trace::ProofTrace;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PartitionOptions {
    /// Fingerprint depth; `None` picks 7 up to length 2, 6 at length 3 and
    /// `k + 3` beyond.
    pub n_max: Option<usize>,
    pub gamma_rule: bool,
    /// Longest pattern accepted.
    pub max_len: usize,
    /// Work allowance for the sandwich rule.
    pub budget: usize,
}

impl Default for PartitionOptions {
    fn default() -> Self {
        PartitionOptions {
            n_max: None,
            gamma_rule: true,
            max_len: 3,
            budget: 200_000_000,
        }
    }
}

impl PartitionOptions {
    pub fn depth_for(&self, k: usize) -> usize {
        self.n_max.unwrap_or(match k {
            0..=2 => 7,
            3 => 6,
            _ => k + 3,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClassStatus {
    Proven,
    Conjectured,
}

impl ClassStatus {
    pub fn tag(self) -> &'static str {
        match self {
            ClassStatus::Proven => "PROVEN",
            ClassStatus::Conjectured => "CONJECTURED",
        }
    }
}

impl fmt::Display for ClassStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Meshes sharing one fingerprint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeshClass {
    /// Members, fewest squares first.
    pub meshes: Vec<Mesh>,
    pub fingerprint: Fingerprint,
    pub status: ClassStatus,
    /// Proof components inside the class, each ordered like `meshes`; a
    /// single block for a proven class.
    pub blocks: Vec<Vec<Mesh>>,
}

impl MeshClass {
    /// The first member: a mesh with the fewest squares.
    pub fn representative(&self) -> Mesh {
        self.meshes[0]
    }

    pub fn len(&self) -> usize {
        self.meshes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.meshes.is_empty()
    }
}

#[derive(Debug, Clone)]
pub struct Partition {
    perm: Permutation,
    n_max: usize,
    classes: Vec<MeshClass>,
    unsound: Vec<(Mesh, Mesh)>,
    complete: bool,
    graph: ProofGraph,
}

impl Partition {
    pub fn perm(&self) -> &Permutation {
        &self.perm
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// Classes ordered by representative.
    pub fn classes(&self) -> &[MeshClass] {
        &self.classes
    }

    pub fn conjectured(&self) -> impl Iterator<Item = &MeshClass> {
        self.classes
            .iter()
            .filter(|c| c.status == ClassStatus::Conjectured)
    }

    pub fn class_of(&self, m: Mesh) -> Option<&MeshClass> {
        self.classes.iter().find(|c| c.meshes.contains(&m))
    }

    /// Pairs proven coincident but with different fingerprints. Always empty
    /// unless a rule is unsound.
    pub fn unsound(&self) -> &[(Mesh, Mesh)] {
        &self.unsound
    }

    /// False when the work budget ran out; unfinished classes may then be
    /// reported as conjectured.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// A certificate for `a ≍ b` when they share a proof block.
    pub fn trace(&self, a: Mesh, b: Mesh) -> Option<ProofTrace> {
        let (x, y) = (self.graph.get(a)?, self.graph.get(b)?);
        self.graph.explain(x, y)
    }
}

fn key(m: &Mesh) -> (usize, u64) {
    (m.len(), m.bits())
}

/// Fingerprints every mesh over `p` and partitions them.
pub fn partition_meshes(p: &Permutation, opts: &PartitionOptions) -> Result<Partition> {
    check_len(p, opts)?;
    let table = ContainmentTable::new(p, opts.depth_for(p.len()));
    let fingerprints = Mesh::all(p.len()).map(|m| table.fingerprint(m)).collect();
    partition_with_fingerprints(p, opts, fingerprints)
}

fn check_len(p: &Permutation, opts: &PartitionOptions) -> Result<()> {
    let max = opts.max_len.min(3);
    if p.len() > max {
        return Err(Error::PartitionTooLarge { len: p.len(), max });
    }
    Ok(())
}

/// Partitions with precomputed fingerprints, indexed by mesh bits, so that
/// callers can compute them in parallel.
pub fn partition_with_fingerprints(
    p: &Permutation,
    opts: &PartitionOptions,
    fingerprints: Vec<Fingerprint>,
) -> Result<Partition> {
    check_len(p, opts)?;
    let k = p.len();
    let total = 1usize << ((k + 1) * (k + 1));
    if fingerprints.len() != total {
        return Err(Error::GridMismatch {
            expected: total,
            found: fingerprints.len(),
        });
    }

    let mut graph = ProofGraph::new(p.clone());
    for m in Mesh::all(k) {
        graph.intern(m);
    }
    let mut budget = Budget::new(opts.budget);
    add_rule_edges(&mut graph, opts, &mut budget);

    let stabilizer: Vec<Symmetry> = Symmetry::ALL
        .into_iter()
        .filter(|&s| s != Symmetry::IDENTITY && p.transformed(s) == *p)
        .collect();
    let mut done = BTreeSet::new();
    let mut transferred = 0;
    loop {
        let (_, grew) = graph.closure_pass(&mut done, &mut budget);
        let edges = graph.edge_count();
        let mut moved = false;
        for e in transferred..edges {
            let (a, b) = graph.edge_ends(e);
            for &s in &stabilizer {
                let sa = graph.get(graph.mesh(a).transformed(s)).expect("dense");
                let sb = graph.get(graph.mesh(b).transformed(s)).expect("dense");
                moved |= graph.join(sa, sb, Why::Symmetry(s.inverse()));
            }
        }
        transferred = edges;
        if budget.exhausted() || (!grew && !moved) {
            break;
        }
    }

    let labels = graph.labels();
    let mut groups: BTreeMap<&Fingerprint, Vec<usize>> = BTreeMap::new();
    for (id, fp) in fingerprints.iter().enumerate() {
        groups.entry(fp).or_default().push(id);
    }
    let mut root_group: BTreeMap<usize, usize> = BTreeMap::new();
    let mut unsound = Vec::new();
    let mut classes = Vec::new();
    for (g, (fp, members)) in groups.into_iter().enumerate() {
        let mut meshes: Vec<Mesh> = members.iter().map(|&id| graph.mesh(id)).collect();
        meshes.sort_by_key(key);
        let mut blocks: BTreeMap<usize, Vec<Mesh>> = BTreeMap::new();
        for &id in &members {
            let root = labels[id];
            blocks.entry(root).or_default().push(graph.mesh(id));
            match root_group.get(&root) {
                Some(&other) if other != g => unsound.push((graph.mesh(root), graph.mesh(id))),
                Some(_) => {}
                None => {
                    root_group.insert(root, g);
                }
            }
        }
        let mut blocks: Vec<Vec<Mesh>> = blocks
            .into_values()
            .map(|mut b| {
                b.sort_by_key(key);
                b
            })
            .collect();
        blocks.sort_by_key(|b| key(&b[0]));
        classes.push(MeshClass {
            status: if blocks.len() == 1 {
                ClassStatus::Proven
            } else {
                ClassStatus::Conjectured
            },
            meshes,
            fingerprint: fp.clone(),
            blocks,
        });
    }
    classes.sort_by_key(|c| key(&c.meshes[0]));

    Ok(Partition {
        perm: p.clone(),
        n_max: fingerprints[0].n_max(),
        classes,
        unsound,
        complete: !budget.exhausted(),
        graph,
    })
}

/// Shading edges for every mesh plus the classical, vincular and direct-sum
/// rules. Isolating pairs need nothing extra: their single-square shading
/// derivations are already among the shading edges.
fn add_rule_edges(graph: &mut ProofGraph, opts: &PartitionOptions, budget: &mut Budget) {
    let k = graph.perm().len();
    let empty = graph.get(Mesh::empty(k)).expect("dense");
    let mut vincular: BTreeMap<Vec<u64>, usize> = BTreeMap::new();
    for id in 0..graph.len() {
        graph.expand(id, budget);
        let pi = graph.pattern(id);
        let enc = enc_key(&pi);
        if enc.is_empty() {
            graph.join(id, empty, Why::Classical);
        }
        if is_vincular(&pi) {
            match vincular.get(&enc) {
                Some(&first) => {
                    graph.join(first, id, Why::Vincular);
                }
                None => {
                    vincular.insert(enc, id);
                }
            }
        }
    }
    if opts.gamma_rule {
        let (g1, g2) = gamma_patterns();
        for s in Symmetry::ALL {
            let (a, b) = (g1.transformed(s), g2.transformed(s));
            if a.perm() == graph.perm() {
                let x = graph.get(a.mesh()).expect("dense");
                let y = graph.get(b.mesh()).expect("dense");
                graph.join(x, y, Why::Gamma);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::{fingerprint, MeshPattern};

    fn pattern(p: &Permutation, m: Mesh) -> MeshPattern {
        MeshPattern::new(p.clone(), m).unwrap()
    }

    #[test]
    fn length_one_is_fully_proven() {
        let p: Permutation = "1".parse().unwrap();
        let opts = PartitionOptions {
            n_max: Some(6),
            ..PartitionOptions::default()
        };
        let part = partition_meshes(&p, &opts).unwrap();
        assert!(part.is_complete());
        assert!(part.unsound().is_empty());
        assert_eq!(part.conjectured().count(), 0);
        assert_eq!(part.classes().iter().map(MeshClass::len).sum::<usize>(), 16);
        for class in part.classes() {
            let rep = class.representative();
            for &m in &class.meshes {
                let trace = part.trace(rep, m).unwrap();
                assert!(trace.proves(&pattern(&p, rep), &pattern(&p, m)));
            }
        }
    }

    #[test]
    fn classes_agree_with_fingerprints() {
        let p: Permutation = "1".parse().unwrap();
        let part = partition_meshes(&p, &PartitionOptions::default()).unwrap();
        for class in part.classes() {
            for &m in &class.meshes {
                assert_eq!(fingerprint(&pattern(&p, m), 7), class.fingerprint);
            }
        }
    }

    #[test]
    fn long_patterns_are_rejected() {
        let p: Permutation = "1234".parse().unwrap();
        assert_eq!(
            partition_meshes(&p, &PartitionOptions::default()).unwrap_err(),
            Error::PartitionTooLarge { len: 4, max: 3 }
        );
    }
}
