//! Proof graphs over the meshes of one classical pattern.
//!
//! Nodes are meshes; an edge records why its two ends are coincident. Only
//! edges that merged two classes are kept, so the edges form a spanning
//! forest of every class and a proof between two members is the unique
//! forest path between them. Steps that lean on earlier coincidences
//! (closure and symmetry transfer) are explained recursively using only the
//! edges that existed when they were added.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use crate::mesh::{Mesh, MeshPattern};
use crate::perm::{Permutation, Symmetry};
use crate::shading::{ssl_moves, ShadeMove};
use crate::trace::{ProofStep, ProofTrace, Rule};
use crate::unionfind::UnionFind;

/// Reason attached to a forest edge `(a, b)`.
#[derive(Debug, Clone)]
pub(crate) enum Why {
    /// `b = a ∪ added` by a shading move on `a`.
    Shade(ShadeMove),
    /// `a ⊆ b ⊆ upper` with `a ≍ upper` already known.
    Closure {
        upper: usize,
    },
    /// The images of `a` and `b` under the symmetry were already connected.
    Symmetry(Symmetry),
    /// `a` has no enclosed diagonal and `b` is the empty mesh.
    Classical,
    Vincular,
    Gamma,
}

#[derive(Debug, Clone)]
struct Edge {
    a: usize,
    b: usize,
    why: Why,
}

#[derive(Debug, Clone)]
enum Index {
    /// Every mesh of a small grid, addressed by its bits.
    Dense(Vec<u32>),
    Sparse(BTreeMap<u64, usize>),
}

const ABSENT: u32 = u32::MAX;

#[derive(Debug, Clone)]
pub(crate) struct ProofGraph {
    perm: Permutation,
    index: Index,
    nodes: Vec<Mesh>,
    sets: UnionFind,
    edges: Vec<Edge>,
    adjacent: Vec<Vec<(usize, usize)>>,
}

impl ProofGraph {
    pub fn new(perm: Permutation) -> Self {
        let k = perm.len();
        let index = if k <= 3 {
            Index::Dense(vec![ABSENT; 1 << ((k + 1) * (k + 1))])
        } else {
            Index::Sparse(BTreeMap::new())
        };
        ProofGraph {
            perm,
            index,
            nodes: Vec::new(),
            sets: UnionFind::new(0),
            edges: Vec::new(),
            adjacent: Vec::new(),
        }
    }

    pub fn perm(&self) -> &Permutation {
        &self.perm
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn mesh(&self, id: usize) -> Mesh {
        self.nodes[id]
    }

    pub fn meshes(&self) -> &[Mesh] {
        &self.nodes
    }

    pub fn pattern(&self, id: usize) -> MeshPattern {
        MeshPattern::from_parts(self.perm.clone(), self.nodes[id])
    }

    pub fn get(&self, m: Mesh) -> Option<usize> {
        match &self.index {
            Index::Dense(slots) => {
                let id = slots[m.bits() as usize];
                (id != ABSENT).then_some(id as usize)
            }
            Index::Sparse(map) => map.get(&m.bits()).copied(),
        }
    }

    /// Returns the node of `m` and whether it was just created.
    pub fn intern(&mut self, m: Mesh) -> (usize, bool) {
        if let Some(id) = self.get(m) {
            return (id, false);
        }
        let id = self.sets.push();
        self.nodes.push(m);
        self.adjacent.push(Vec::new());
        match &mut self.index {
            Index::Dense(slots) => slots[m.bits() as usize] = id as u32,
            Index::Sparse(map) => {
                map.insert(m.bits(), id);
            }
        }
        (id, true)
    }

    /// Joins the classes of `a` and `b`, recording `why` when they were
    /// distinct. Returns whether a merge happened.
    pub fn join(&mut self, a: usize, b: usize, why: Why) -> bool {
        if !self.sets.union(a, b) {
            return false;
        }
        let e = self.edges.len();
        self.edges.push(Edge { a, b, why });
        self.adjacent[a].push((b, e));
        self.adjacent[b].push((a, e));
        true
    }

    pub fn edge_ends(&self, e: usize) -> (usize, usize) {
        (self.edges[e].a, self.edges[e].b)
    }

    /// Number of recorded merges.
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Class representative of every node.
    pub fn labels(&mut self) -> Vec<usize> {
        (0..self.nodes.len()).map(|i| self.sets.find(i)).collect()
    }

    /// Members of each class with at least two nodes.
    pub fn classes(&mut self) -> Vec<Vec<usize>> {
        let labels = self.labels();
        let mut by_root: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (id, root) in labels.into_iter().enumerate() {
            by_root.entry(root).or_default().push(id);
        }
        by_root.into_values().collect()
    }

    /// Adds an SSL edge for every move on node `id`; returns the nodes that
    /// were created along the way.
    pub fn expand(&mut self, id: usize, budget: &mut Budget) -> Vec<usize> {
        let from = self.pattern(id);
        let mut created = Vec::new();
        for mv in ssl_moves(&from) {
            if !budget.spend(1) {
                break;
            }
            let (to, new) = self.intern(from.mesh().union(mv.added()));
            if new {
                created.push(to);
            }
            self.join(id, to, Why::Shade(mv));
        }
        created
    }

    /// One pass of the sandwich rule over every class: each mesh between a
    /// minimal and a maximal member of a class joins it. Returns the nodes
    /// created and whether any class grew.
    pub fn closure_pass(
        &mut self,
        done: &mut BTreeSet<(u64, u64)>,
        budget: &mut Budget,
    ) -> (Vec<usize>, bool) {
        let mut created = Vec::new();
        let mut changed = false;
        for class in self.classes() {
            if class.len() < 2 {
                continue;
            }
            let (minimal, maximal) = extremes(&class, &self.nodes);
            for &lo in &minimal {
                for &hi in &maximal {
                    let (lo_m, hi_m) = (self.nodes[lo], self.nodes[hi]);
                    if !lo_m.is_subset(hi_m) || !done.insert((lo_m.bits(), hi_m.bits())) {
                        continue;
                    }
                    let free = hi_m.bits() & !lo_m.bits();
                    let mut sub = free;
                    loop {
                        if !budget.spend(1) {
                            return (created, changed);
                        }
                        let m = Mesh::raw(self.perm.len(), lo_m.bits() | sub);
                        let (id, new) = self.intern(m);
                        if new {
                            created.push(id);
                        }
                        changed |= self.join(lo, id, Why::Closure { upper: hi });
                        if sub == 0 {
                            break;
                        }
                        sub = (sub - 1) & free;
                    }
                }
            }
        }
        (created, changed)
    }

    /// A verifiable trace connecting nodes `a` and `b`, if they are in the
    /// same class.
    pub fn explain(&self, a: usize, b: usize) -> Option<ProofTrace> {
        let mut trace = ProofTrace::new();
        let mut emitted = BTreeSet::new();
        self.explain_into(a, b, self.edges.len(), &mut trace, &mut emitted)
            .then_some(trace)
    }

    fn explain_into(
        &self,
        a: usize,
        b: usize,
        limit: usize,
        trace: &mut ProofTrace,
        emitted: &mut BTreeSet<usize>,
    ) -> bool {
        let Some(path) = self.forest_path(a, b, limit) else {
            return false;
        };
        for e in path {
            if emitted.contains(&e) {
                continue;
            }
            let Edge { a, b, ref why } = self.edges[e];
            let step = match why {
                Why::Shade(mv) => ProofStep::shading(&self.pattern(a), mv.clone()),
                Why::Closure { upper } => {
                    if !self.explain_into(a, *upper, e, trace, emitted) {
                        return false;
                    }
                    ProofStep::closure(&self.pattern(a), self.nodes[b], self.nodes[*upper])
                }
                Why::Symmetry(s) => {
                    let image = |id: usize| self.get(self.nodes[id].transformed(*s));
                    let (Some(sa), Some(sb)) = (image(a), image(b)) else {
                        return false;
                    };
                    if !self.explain_into(sa, sb, e, trace, emitted) {
                        return false;
                    }
                    ProofStep::symmetry(self.pattern(a), self.pattern(b), *s)
                }
                Why::Classical => ProofStep::new(Rule::Classical, self.pattern(a), self.pattern(b)),
                Why::Vincular => ProofStep::new(Rule::Vincular, self.pattern(a), self.pattern(b)),
                Why::Gamma => ProofStep::new(Rule::Gamma, self.pattern(a), self.pattern(b)),
            };
            trace.push(step);
            emitted.insert(e);
        }
        true
    }

    /// Edge ids along the forest path from `a` to `b` using edges below
    /// `limit`.
    fn forest_path(&self, a: usize, b: usize, limit: usize) -> Option<Vec<usize>> {
        if a == b {
            return Some(Vec::new());
        }
        let mut via: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
        let mut queue = VecDeque::from([a]);
        via.insert(a, (a, usize::MAX));
        while let Some(x) = queue.pop_front() {
            for &(y, e) in &self.adjacent[x] {
                if e >= limit || via.contains_key(&y) {
                    continue;
                }
                via.insert(y, (x, e));
                if y == b {
                    let mut path = Vec::new();
                    let mut cur = b;
                    while cur != a {
                        let (prev, e) = via[&cur];
                        path.push(e);
                        cur = prev;
                    }
                    path.reverse();
                    return Some(path);
                }
                queue.push_back(y);
            }
        }
        None
    }
}

/// Set-minimal and set-maximal members of a class.
fn extremes(class: &[usize], nodes: &[Mesh]) -> (Vec<usize>, Vec<usize>) {
    let mut by_size: Vec<usize> = class.to_vec();
    by_size.sort_by_key(|&id| (nodes[id].len(), nodes[id].bits()));
    let mut minimal: Vec<usize> = Vec::new();
    for &id in &by_size {
        if !minimal.iter().any(|&m| nodes[m].is_subset(nodes[id])) {
            minimal.push(id);
        }
    }
    let mut maximal: Vec<usize> = Vec::new();
    for &id in by_size.iter().rev() {
        if !maximal.iter().any(|&m| nodes[id].is_subset(nodes[m])) {
            maximal.push(id);
        }
    }
    (minimal, maximal)
}

/// Work allowance for a closure computation.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Budget {
    left: usize,
    exhausted: bool,
}

impl Budget {
    pub fn new(limit: usize) -> Self {
        Budget {
            left: limit,
            exhausted: false,
        }
    }

    pub fn spend(&mut self, units: usize) -> bool {
        if self.left < units {
            self.exhausted = true;
            return false;
        }
        self.left -= units;
        true
    }

    pub fn exhausted(&self) -> bool {
        self.exhausted
    }
}

/// Coincidence classes reachable from a set of seed meshes by shading moves
/// and the sandwich rule.
#[derive(Debug, Clone)]
pub struct ClosureResult {
    graph: ProofGraph,
    labels: Vec<usize>,
    complete: bool,
}

impl ClosureResult {
    pub fn perm(&self) -> &Permutation {
        self.graph.perm()
    }

    /// False when the work budget ran out before the fixpoint.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// Every mesh reached.
    pub fn meshes(&self) -> &[Mesh] {
        self.graph.meshes()
    }

    /// Classes as sorted mesh lists, ordered by their smallest mesh.
    pub fn classes(&self) -> Vec<Vec<Mesh>> {
        let mut by_root: BTreeMap<usize, Vec<Mesh>> = BTreeMap::new();
        for (id, &root) in self.labels.iter().enumerate() {
            by_root.entry(root).or_default().push(self.graph.mesh(id));
        }
        let mut classes: Vec<Vec<Mesh>> = by_root
            .into_values()
            .map(|mut c| {
                c.sort();
                c
            })
            .collect();
        classes.sort();
        classes
    }

    /// The class of `m`, if it was reached.
    pub fn class_of(&self, m: Mesh) -> Option<Vec<Mesh>> {
        let root = self.labels[self.graph.get(m)?];
        let mut class: Vec<Mesh> = self
            .labels
            .iter()
            .enumerate()
            .filter(|&(_, &r)| r == root)
            .map(|(id, _)| self.graph.mesh(id))
            .collect();
        class.sort();
        Some(class)
    }

    pub fn same_class(&self, a: Mesh, b: Mesh) -> bool {
        match (self.graph.get(a), self.graph.get(b)) {
            (Some(x), Some(y)) => self.labels[x] == self.labels[y],
            _ => false,
        }
    }

    /// A certificate that `a ≍ b`, when both are in one class.
    pub fn trace(&self, a: Mesh, b: Mesh) -> Option<ProofTrace> {
        let (x, y) = (self.graph.get(a)?, self.graph.get(b)?);
        if self.labels[x] != self.labels[y] {
            return None;
        }
        self.graph.explain(x, y)
    }
}

/// Grows the seeds upward along every simultaneous shading move and closes
/// each class under the sandwich rule, until nothing changes or `budget`
/// units of work (nodes visited plus sandwich members examined) are spent.
pub fn ssl_closure(p: &Permutation, seeds: &[Mesh], budget: usize) -> ClosureResult {
    let mut graph = ProofGraph::new(p.clone());
    let mut budget = Budget::new(budget);
    let mut queue: VecDeque<usize> = VecDeque::new();
    for &m in seeds {
        debug_assert_eq!(m.pattern_len(), p.len());
        let (id, new) = graph.intern(m);
        if new {
            queue.push_back(id);
        }
    }
    let mut done = BTreeSet::new();
    loop {
        while let Some(id) = queue.pop_front() {
            if !budget.spend(1) {
                break;
            }
            queue.extend(graph.expand(id, &mut budget));
        }
        if budget.exhausted() {
            break;
        }
        let (created, changed) = graph.closure_pass(&mut done, &mut budget);
        if budget.exhausted() || (created.is_empty() && !changed) {
            break;
        }
        queue.extend(created);
    }
    ClosureResult {
        labels: graph.labels(),
        complete: !budget.exhausted(),
        graph,
    }
}
