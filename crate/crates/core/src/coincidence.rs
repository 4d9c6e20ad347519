//! Deciding whether two mesh patterns are coincident.
//!
//! [`decide_coincidence`] first tries to refute (different permutations,
//! different enclosed diagonals, then brute-force fingerprints) and only then
//! searches for a proof with the family rules, the direct-sum rule and the
//! shading closure. When neither side succeeds the verdict is `Undecided`:
//! equal fingerprints are never promoted to a coincidence.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::closure::ssl_closure;
use crate::diagonals::{enc_key, enc_witness};
use crate::mesh::{ContainmentTable, Mesh, MeshPattern, Witness};
use crate::perm::{Permutation, Permutations, Symmetry};
use crate::shading::{shadeable_singles, ShadeMove};
use crate::trace::{ProofStep, ProofTrace, Rule};

/// Membership in the structured families of mesh patterns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct FamilyTags {
    /// The mesh is a union of full columns.
    pub vincular: bool,
    /// The mesh is a union of full rows and full columns.
    pub bivincular: bool,
    /// No non-pointless shaded square has a shaded square in a neighbouring
    /// column or row.
    pub isolating: bool,
    /// At most one shaded square per row and per column.
    pub sparse: bool,
}

impl fmt::Display for FamilyTags {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "vincular={} bivincular={} isolating={} sparse={}",
            self.vincular, self.bivincular, self.isolating, self.sparse
        )
    }
}

pub fn classify_family(pi: &MeshPattern) -> FamilyTags {
    FamilyTags {
        vincular: is_vincular(pi),
        bivincular: is_bivincular(pi),
        isolating: is_isolating(pi),
        sparse: is_sparse(pi),
    }
}

fn column(k: usize, a: usize) -> Mesh {
    (0..=k).fold(Mesh::empty(k), |m, b| m.with(a, b))
}

fn row(k: usize, b: usize) -> Mesh {
    (0..=k).fold(Mesh::empty(k), |m, a| m.with(a, b))
}

pub(crate) fn is_vincular(pi: &MeshPattern) -> bool {
    let (k, r) = (pi.len(), pi.mesh());
    (0..=k).all(|a| {
        let c = column(k, a);
        c.is_subset(r) || c.is_disjoint(r)
    })
}

fn is_bivincular(pi: &MeshPattern) -> bool {
    let (k, r) = (pi.len(), pi.mesh());
    let lines = (0..=k)
        .flat_map(|i| [column(k, i), row(k, i)])
        .filter(|line| line.is_subset(r))
        .fold(Mesh::empty(k), Mesh::union);
    lines == r
}

fn is_pointless(pi: &MeshPattern, a: usize, b: usize) -> bool {
    !(pi.has_point(a, b)
        || pi.has_point(a + 1, b)
        || pi.has_point(a, b + 1)
        || pi.has_point(a + 1, b + 1))
}

pub(crate) fn is_isolating(pi: &MeshPattern) -> bool {
    let r = pi.mesh();
    r.squares()
        .filter(|sq| !is_pointless(pi, sq.col, sq.row))
        .all(|sq| {
            r.squares()
                .all(|other| other.col.abs_diff(sq.col) != 1 && other.row.abs_diff(sq.row) != 1)
        })
}

fn is_sparse(pi: &MeshPattern) -> bool {
    let (k, r) = (pi.len(), pi.mesh());
    (0..=k).all(|i| r.intersection(column(k, i)).len() <= 1 && r.intersection(row(k, i)).len() <= 1)
}

/// Vincular patterns with the same enclosed diagonals are coincident.
pub fn vincular_rule(pi: &MeshPattern, other: &MeshPattern) -> Option<ProofTrace> {
    if pi.perm() != other.perm() || !is_vincular(pi) || !is_vincular(other) {
        return None;
    }
    if enc_key(pi) != enc_key(other) {
        return None;
    }
    // Beyond length 3 every shaded column holds a pointless square, so equal
    // diagonals force equal meshes.
    debug_assert!(pi.len() <= 3 || pi.mesh() == other.mesh());
    Some(ProofTrace::from_steps(vec![ProofStep::new(
        Rule::Vincular,
        pi.clone(),
        other.clone(),
    )]))
}

/// Isolating patterns with the same enclosed diagonals are coincident.
///
/// Both meshes are rebuilt from their shared pointless squares by
/// single-square shading steps; `None` if either derivation cannot be found.
pub fn isolating_rule(pi: &MeshPattern, other: &MeshPattern) -> Option<ProofTrace> {
    if pi.perm() != other.perm() || !is_isolating(pi) || !is_isolating(other) {
        return None;
    }
    if enc_key(pi) != enc_key(other) {
        return None;
    }
    let mut trace = ProofTrace::new();
    for target in [pi, other] {
        trace.extend(derive_from_core(target)?);
    }
    trace.push(ProofStep::new(Rule::Isolating, pi.clone(), other.clone()));
    Some(trace)
}

const ISOLATING_SEARCH_LIMIT: usize = 1 << 16;

/// Single-square shading steps from the pointless part of `target` up to
/// `target`, by breadth-first search over intermediate meshes.
fn derive_from_core(target: &MeshPattern) -> Option<ProofTrace> {
    let r = target.mesh();
    let core = r
        .squares()
        .filter(|sq| is_pointless(target, sq.col, sq.row))
        .fold(Mesh::empty(target.len()), |m, sq| m.with(sq.col, sq.row));
    let mut parent: BTreeMap<Mesh, Option<(Mesh, ShadeMove)>> = BTreeMap::new();
    parent.insert(core, None);
    let mut queue = VecDeque::from([core]);
    while let Some(t) = queue.pop_front() {
        if t == r {
            let mut steps = Vec::new();
            let mut cur = t;
            while let Some(Some((prev, mv))) = parent.get(&cur) {
                steps.push(ProofStep::shading(&target.with_mesh(*prev), mv.clone()));
                cur = *prev;
            }
            steps.reverse();
            return Some(ProofTrace::from_steps(steps));
        }
        if parent.len() > ISOLATING_SEARCH_LIMIT {
            return None;
        }
        let here = target.with_mesh(t);
        for option in shadeable_singles(&here) {
            let next = t.union(option.squares);
            if !next.is_subset(r) || parent.contains_key(&next) {
                continue;
            }
            let mv = ShadeMove::new(&here, vec![option]).ok()?;
            parent.insert(next, Some((t, mv)));
            queue.push_back(next);
        }
    }
    None
}

/// The two patterns over `12` that detect direct sums.
pub fn gamma_patterns() -> (MeshPattern, MeshPattern) {
    let p: Permutation = Permutation::identity(2);
    let g1 = MeshPattern::from_squares(p.clone(), [(0, 1), (0, 2), (1, 1), (1, 2), (2, 0)])
        .expect("valid squares");
    let g2 = MeshPattern::from_squares(p, [(0, 2), (1, 0), (1, 1), (2, 0), (2, 1)])
        .expect("valid squares");
    (g1, g2)
}

/// The direct-sum pair, or one of its symmetric images.
pub fn gamma_rule(pi: &MeshPattern, other: &MeshPattern) -> Option<ProofTrace> {
    let (g1, g2) = gamma_patterns();
    Symmetry::ALL
        .into_iter()
        .any(|s| {
            let (a, b) = (g1.transformed(s), g2.transformed(s));
            (pi == &a && other == &b) || (pi == &b && other == &a)
        })
        .then(|| {
            ProofTrace::from_steps(vec![ProofStep::new(Rule::Gamma, pi.clone(), other.clone())])
        })
}

/// Independent oracle for containment of either gamma pattern: whether `w`
/// splits as a direct sum of two non-empty permutations.
pub fn contains_gamma_oracle(w: &Permutation) -> bool {
    w.is_sum_decomposable()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VerdictStatus {
    ProvenEqual,
    ProvenCoincident,
    Refuted,
    Undecided,
}

impl VerdictStatus {
    pub fn tag(self) -> &'static str {
        match self {
            VerdictStatus::ProvenEqual => "PROVEN_EQUAL",
            VerdictStatus::ProvenCoincident => "PROVEN_COINCIDENT",
            VerdictStatus::Refuted => "REFUTED",
            VerdictStatus::Undecided => "UNDECIDED",
        }
    }
}

impl fmt::Display for VerdictStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoincidenceVerdict {
    pub status: VerdictStatus,
    /// Certificate for `ProvenCoincident`.
    pub trace: Option<ProofTrace>,
    /// Distinguishing permutation for `Refuted`.
    pub witness: Option<Witness>,
    /// Largest host length compared by brute force; 0 when no fingerprints
    /// were needed.
    pub depth: usize,
}

impl CoincidenceVerdict {
    fn new(status: VerdictStatus, depth: usize) -> Self {
        CoincidenceVerdict {
            status,
            trace: None,
            witness: None,
            depth,
        }
    }

    fn refuted(witness: Witness, depth: usize) -> Self {
        CoincidenceVerdict {
            witness: Some(witness),
            ..CoincidenceVerdict::new(VerdictStatus::Refuted, depth)
        }
    }

    fn proven(trace: ProofTrace, depth: usize) -> Self {
        CoincidenceVerdict {
            trace: Some(trace),
            ..CoincidenceVerdict::new(VerdictStatus::ProvenCoincident, depth)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DecideOptions {
    /// Host length up to which containment is compared by brute force.
    pub n_max: usize,
    /// Work allowance for the shading closure.
    pub closure_budget: usize,
    pub gamma_rule: bool,
}

impl Default for DecideOptions {
    fn default() -> Self {
        DecideOptions {
            n_max: 7,
            closure_budget: 2_000_000,
            gamma_rule: true,
        }
    }
}

pub fn decide_coincidence(
    pi: &MeshPattern,
    other: &MeshPattern,
    n_max: usize,
) -> CoincidenceVerdict {
    decide_coincidence_with(
        pi,
        other,
        &DecideOptions {
            n_max,
            ..DecideOptions::default()
        },
    )
}

pub fn decide_coincidence_with(
    pi: &MeshPattern,
    other: &MeshPattern,
    opts: &DecideOptions,
) -> CoincidenceVerdict {
    if pi == other {
        return CoincidenceVerdict::new(VerdictStatus::ProvenEqual, 0);
    }
    if pi.perm() != other.perm() {
        let (short, long) = if other.len() < pi.len() {
            (other, pi)
        } else {
            (pi, other)
        };
        for candidate in [short.perm(), long.perm()] {
            if let Some(w) = Witness::check(candidate.clone(), pi, other) {
                return CoincidenceVerdict::refuted(w, 0);
            }
        }
        return match scan_for_witness(pi, other, opts.n_max) {
            Some(w) => CoincidenceVerdict::refuted(w, opts.n_max),
            None => CoincidenceVerdict::new(VerdictStatus::Undecided, opts.n_max),
        };
    }
    if enc_key(pi) != enc_key(other) {
        if let Ok(w) = enc_witness(pi, other) {
            return CoincidenceVerdict::refuted(w, 0);
        }
    }

    let table = ContainmentTable::new(pi.perm(), opts.n_max);
    let (fa, fb) = (
        table.fingerprint(pi.mesh()),
        table.fingerprint(other.mesh()),
    );
    if let Some((n, j)) = fa.first_difference(&fb) {
        let w = Permutation::from_lex_rank(n, j);
        let witness = Witness::check(w, pi, other).expect("fingerprints differ at this host");
        return CoincidenceVerdict::refuted(witness, opts.n_max);
    }

    match search_proof(pi, other, opts) {
        Some(trace) => CoincidenceVerdict::proven(trace, opts.n_max),
        None => CoincidenceVerdict::new(VerdictStatus::Undecided, opts.n_max),
    }
}

/// Least permutation (by length, then lexicographically) of length at most
/// `n_max` in exactly one containment set.
fn scan_for_witness(pi: &MeshPattern, other: &MeshPattern, n_max: usize) -> Option<Witness> {
    (1..=n_max).find_map(|n| Permutations::new(n).find_map(|w| Witness::check(w, pi, other)))
}

/// Rules that settle a pair directly, tried on one symmetric image.
fn direct_rules(a: &MeshPattern, b: &MeshPattern, gamma: bool) -> Option<ProofTrace> {
    if enc_key(a).is_empty() && enc_key(b).is_empty() {
        let classical = a.with_mesh(Mesh::empty(a.len()));
        return Some(ProofTrace::from_steps(vec![
            ProofStep::new(Rule::Classical, a.clone(), classical.clone()),
            ProofStep::new(Rule::Classical, b.clone(), classical),
        ]));
    }
    vincular_rule(a, b)
        .or_else(|| isolating_rule(a, b))
        .or_else(|| gamma.then(|| gamma_rule(a, b)).flatten())
}

fn search_proof(pi: &MeshPattern, other: &MeshPattern, opts: &DecideOptions) -> Option<ProofTrace> {
    for s in Symmetry::ALL {
        let (a, b) = (pi.transformed(s), other.transformed(s));
        let Some(mut trace) = direct_rules(&a, &b, opts.gamma_rule) else {
            continue;
        };
        if s != Symmetry::IDENTITY {
            trace.push(ProofStep::symmetry(pi.clone(), other.clone(), s));
        }
        if trace.proves(pi, other) {
            return Some(trace);
        }
    }
    // The shading moves commute with the symmetries, so the closure of the
    // images is the image of the closure; one run suffices.
    let closure = ssl_closure(pi.perm(), &[pi.mesh(), other.mesh()], opts.closure_budget);
    closure
        .trace(pi.mesh(), other.mesh())
        .filter(|t| t.proves(pi, other))
}
