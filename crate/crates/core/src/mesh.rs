//! Mesh patterns and their containment in permutations.
//!
//! Containment is decided per occurrence through a *blocked mask*: every host
//! point outside the occurrence falls into exactly one open region of the
//! occurrence's grid, and the occurrence is a mesh occurrence exactly when no
//! blocked region is shaded. Because host coordinates are distinct integers, a
//! point can sit on a region boundary only if it belongs to the occurrence, so
//! testing open interiors is the same as testing the closed rectangles.

use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;
use core::ops::ControlFlow;
use core::str::FromStr;

use crate::perm::{factorial, next_lex, Occurrence, OccurrenceSearch, Permutation, Symmetry};
use crate::{Error, Result};

/// Longest supported pattern: the `(k+1)^2` squares must fit in a `u64`.
pub const MAX_PATTERN_LEN: usize = 7;

/// Unit square `[col, col+1] x [row, row+1]` of a pattern grid, indexed by its
/// lower-left corner.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MeshSquare {
    pub col: usize,
    pub row: usize,
}

impl MeshSquare {
    pub const fn new(col: usize, row: usize) -> Self {
        MeshSquare { col, row }
    }
}

impl fmt::Display for MeshSquare {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.col, self.row)
    }
}

impl From<(usize, usize)> for MeshSquare {
    fn from((col, row): (usize, usize)) -> Self {
        MeshSquare { col, row }
    }
}

#[inline]
pub(crate) const fn square_bit(k: usize, col: usize, row: usize) -> u64 {
    1u64 << (col * (k + 1) + row)
}

/// A set of squares in the `(k+1) x (k+1)` grid of a length-`k` pattern.
///
/// Square `(a, b)` is bit `a * (k + 1) + b`, so iteration order is sorted by
/// column, then row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mesh {
    len: u8,
    bits: u64,
}

impl Mesh {
    pub fn empty(k: usize) -> Self {
        assert!(k <= MAX_PATTERN_LEN);
        Mesh {
            len: k as u8,
            bits: 0,
        }
    }

    pub fn full(k: usize) -> Self {
        Mesh::raw(k, Mesh::grid_mask(k))
    }

    pub(crate) const fn raw(k: usize, bits: u64) -> Self {
        Mesh { len: k as u8, bits }
    }

    fn grid_mask(k: usize) -> u64 {
        let cells = (k + 1) * (k + 1);
        if cells == 64 {
            u64::MAX
        } else {
            (1u64 << cells) - 1
        }
    }

    /// Builds a mesh from raw bits, rejecting bits outside the grid.
    pub fn from_bits(k: usize, bits: u64) -> Result<Self> {
        if k > MAX_PATTERN_LEN {
            return Err(Error::PatternTooLong(k));
        }
        let stray = bits & !Mesh::grid_mask(k);
        if stray != 0 {
            let idx = stray.trailing_zeros() as usize;
            return Err(Error::SquareOutOfGrid {
                col: idx / (k + 1),
                row: idx % (k + 1),
                len: k,
            });
        }
        Ok(Mesh::raw(k, bits))
    }

    pub fn from_squares<I, S>(k: usize, squares: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<MeshSquare>,
    {
        if k > MAX_PATTERN_LEN {
            return Err(Error::PatternTooLong(k));
        }
        let mut bits = 0;
        for sq in squares {
            let sq = sq.into();
            if sq.col > k || sq.row > k {
                return Err(Error::SquareOutOfGrid {
                    col: sq.col,
                    row: sq.row,
                    len: k,
                });
            }
            bits |= square_bit(k, sq.col, sq.row);
        }
        Ok(Mesh::raw(k, bits))
    }

    /// Every mesh over the grid of a length-`k` pattern, by increasing bits.
    pub fn all(k: usize) -> impl Iterator<Item = Mesh> {
        assert!(k <= 6, "enumerating every mesh needs (k+1)^2 < 64");
        let count = 1u64 << ((k + 1) * (k + 1));
        (0..count).map(move |bits| Mesh::raw(k, bits))
    }

    /// Length of the pattern whose grid this mesh lives in.
    pub fn pattern_len(self) -> usize {
        self.len as usize
    }

    pub fn bits(self) -> u64 {
        self.bits
    }

    pub fn len(self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.bits == 0
    }

    pub fn contains(self, col: usize, row: usize) -> bool {
        let k = self.pattern_len();
        col <= k && row <= k && self.bits & square_bit(k, col, row) != 0
    }

    pub fn has(self, sq: MeshSquare) -> bool {
        self.contains(sq.col, sq.row)
    }

    #[must_use]
    pub fn with(self, col: usize, row: usize) -> Mesh {
        let k = self.pattern_len();
        assert!(
            col <= k && row <= k,
            "square ({col},{row}) outside grid {k}"
        );
        Mesh::raw(k, self.bits | square_bit(k, col, row))
    }

    #[must_use]
    pub fn union(self, other: Mesh) -> Mesh {
        debug_assert_eq!(self.len, other.len);
        Mesh::raw(self.pattern_len(), self.bits | other.bits)
    }

    #[must_use]
    pub fn intersection(self, other: Mesh) -> Mesh {
        debug_assert_eq!(self.len, other.len);
        Mesh::raw(self.pattern_len(), self.bits & other.bits)
    }

    #[must_use]
    pub fn difference(self, other: Mesh) -> Mesh {
        debug_assert_eq!(self.len, other.len);
        Mesh::raw(self.pattern_len(), self.bits & !other.bits)
    }

    pub fn is_subset(self, other: Mesh) -> bool {
        self.len == other.len && self.bits & !other.bits == 0
    }

    pub fn is_disjoint(self, other: Mesh) -> bool {
        self.bits & other.bits == 0
    }

    pub fn squares(self) -> impl Iterator<Item = MeshSquare> {
        let k = self.pattern_len();
        let mut bits = self.bits;
        core::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let idx = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(MeshSquare::new(idx / (k + 1), idx % (k + 1)))
        })
    }

    /// Image of the mesh under a symmetry of the grid.
    #[must_use]
    pub fn transformed(self, s: Symmetry) -> Mesh {
        let k = self.pattern_len();
        let bits = self.squares().fold(0, |acc, sq| {
            let (a, b) = s.map_square(sq.col, sq.row, k);
            acc | square_bit(k, a, b)
        });
        Mesh::raw(k, bits)
    }
}

impl fmt::Display for Mesh {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for sq in self.squares() {
            write!(f, "{sq}")?;
        }
        Ok(())
    }
}

/// A classical pattern together with a mesh over its grid.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MeshPattern {
    perm: Permutation,
    mesh: Mesh,
}

impl MeshPattern {
    pub fn new(perm: Permutation, mesh: Mesh) -> Result<Self> {
        if perm.len() > MAX_PATTERN_LEN {
            return Err(Error::PatternTooLong(perm.len()));
        }
        if mesh.pattern_len() != perm.len() {
            return Err(Error::GridMismatch {
                expected: perm.len(),
                found: mesh.pattern_len(),
            });
        }
        Ok(MeshPattern { perm, mesh })
    }

    /// Convenience constructor from square coordinates.
    pub fn from_squares<I, S>(perm: Permutation, squares: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<MeshSquare>,
    {
        if perm.len() > MAX_PATTERN_LEN {
            return Err(Error::PatternTooLong(perm.len()));
        }
        let mesh = Mesh::from_squares(perm.len(), squares)?;
        Ok(MeshPattern { perm, mesh })
    }

    /// The pattern with an empty mesh.
    pub fn classical(perm: Permutation) -> Result<Self> {
        let k = perm.len();
        if k > MAX_PATTERN_LEN {
            return Err(Error::PatternTooLong(k));
        }
        Ok(MeshPattern {
            perm,
            mesh: Mesh::empty(k),
        })
    }

    pub(crate) fn from_parts(perm: Permutation, mesh: Mesh) -> Self {
        debug_assert_eq!(perm.len(), mesh.pattern_len());
        MeshPattern { perm, mesh }
    }

    pub fn perm(&self) -> &Permutation {
        &self.perm
    }

    pub fn mesh(&self) -> Mesh {
        self.mesh
    }

    /// Length `k` of the underlying permutation.
    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Same permutation, different mesh.
    pub fn with_mesh(&self, mesh: Mesh) -> MeshPattern {
        assert_eq!(mesh.pattern_len(), self.len());
        MeshPattern {
            perm: self.perm.clone(),
            mesh,
        }
    }

    /// Image under a symmetry; containment is equivariant under this action.
    #[must_use]
    pub fn transformed(&self, s: Symmetry) -> MeshPattern {
        MeshPattern {
            perm: self.perm.transformed(s),
            mesh: self.mesh.transformed(s),
        }
    }

    /// True when `(i, j)` is a point of `G(p)`.
    pub fn has_point(&self, i: usize, j: usize) -> bool {
        self.perm.contains_point(i, j)
    }
}

impl fmt::Display for MeshPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.perm, self.mesh)
    }
}

impl FromStr for MeshPattern {
    type Err = Error;

    /// Grammar: `PERM [":" SQUARE*]` with `SQUARE = "(" a "," b ")"`, squares
    /// separated by optional whitespace or commas.
    fn from_str(s: &str) -> Result<Self> {
        let (perm_text, squares_text) = match s.split_once(':') {
            Some((p, rest)) => (p, rest),
            None => (s, ""),
        };
        let perm: Permutation = perm_text.parse()?;
        let squares = parse_squares(squares_text)?;
        MeshPattern::from_squares(perm, squares)
    }
}

fn parse_squares(text: &str) -> Result<Vec<MeshSquare>> {
    let mut out = Vec::new();
    let mut rest = text.trim_start_matches(|c: char| c.is_whitespace() || c == ',');
    while !rest.is_empty() {
        let Some(body) = rest.strip_prefix('(') else {
            return Err(Error::InvalidToken(rest.to_string()));
        };
        let Some(close) = body.find(')') else {
            return Err(Error::InvalidToken(rest.to_string()));
        };
        let inner = &body[..close];
        let bad = || Error::InvalidToken(alloc::format!("({inner})"));
        let (a, b) = inner.split_once(',').ok_or_else(bad)?;
        let col = a.trim().parse().map_err(|_| bad())?;
        let row = b.trim().parse().map_err(|_| bad())?;
        out.push(MeshSquare::new(col, row));
        rest = body[close + 1..].trim_start_matches(|c: char| c.is_whitespace() || c == ',');
    }
    Ok(out)
}

/// The open box `(x_lo, x_hi) x (y_lo, y_hi)` of a host grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct OpenBox {
    pub x_lo: usize,
    pub x_hi: usize,
    pub y_lo: usize,
    pub y_hi: usize,
}

impl OpenBox {
    pub fn contains(&self, x: usize, y: usize) -> bool {
        self.x_lo < x && x < self.x_hi && self.y_lo < y && y < self.y_hi
    }
}

impl fmt::Display for OpenBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{})x({},{})",
            self.x_lo, self.x_hi, self.y_lo, self.y_hi
        )
    }
}

/// Region of `w` that square `sq` corresponds to for the occurrence `occ`:
/// x between the `a`-th and `(a+1)`-th occurrence positions, y between the
/// `b`-th and `(b+1)`-th smallest occurrence values, with `0` and `n+1` as the
/// outer bounds.
pub fn corresponding_region(w: &Permutation, occ: &Occurrence, sq: MeshSquare) -> Result<OpenBox> {
    let k = occ.len();
    if sq.col > k || sq.row > k {
        return Err(Error::SquareOutOfGrid {
            col: sq.col,
            row: sq.row,
            len: k,
        });
    }
    let n = w.len();
    if occ.positions().last().is_some_and(|&x| x > n) {
        return Err(Error::NotAnOccurrence);
    }
    let mut values = occ.values(w);
    values.sort_unstable();
    let pos = |a: usize| match a {
        0 => 0,
        a if a == k + 1 => n + 1,
        a => occ.positions()[a - 1],
    };
    let val = |b: usize| match b {
        0 => 0,
        b if b == k + 1 => n + 1,
        b => values[b - 1],
    };
    Ok(OpenBox {
        x_lo: pos(sq.col),
        x_hi: pos(sq.col + 1),
        y_lo: val(sq.row),
        y_hi: val(sq.row + 1),
    })
}

/// Mesh-grid cell of every host point outside the occurrence, as a bitmask
/// over the `(k+1)^2` squares.
pub(crate) fn blocked_mask(w: &[usize], positions: &[usize]) -> u64 {
    let k = positions.len();
    let mut sorted = [0usize; MAX_PATTERN_LEN];
    for (slot, &x) in sorted.iter_mut().zip(positions) {
        *slot = w[x - 1];
    }
    sorted[..k].sort_unstable();
    let mut mask = 0;
    let mut col = 0;
    for (x, &v) in w.iter().enumerate().map(|(i, v)| (i + 1, v)) {
        if col < k && positions[col] == x {
            col += 1;
            continue;
        }
        let row = sorted[..k].partition_point(|&u| u < v);
        mask |= square_bit(k, col, row);
    }
    mask
}

/// Host points of `w` lying in the region of square `(col, row)` for the
/// occurrence at `positions`.
pub(crate) fn points_in_squares(
    w: &[usize],
    positions: &[usize],
    squares: Mesh,
) -> Vec<(usize, usize)> {
    let k = positions.len();
    let mut sorted: Vec<usize> = positions.iter().map(|&x| w[x - 1]).collect();
    sorted.sort_unstable();
    let mut out = Vec::new();
    let mut col = 0;
    for (x, &v) in w.iter().enumerate().map(|(i, v)| (i + 1, v)) {
        if col < k && positions[col] == x {
            col += 1;
            continue;
        }
        let row = sorted.partition_point(|&u| u < v);
        if squares.contains(col, row) {
            out.push((x, v));
        }
    }
    out
}

/// Occurrences of `pi.perm()` in `w` whose shaded regions hold no host point.
pub fn mesh_occurrences(pi: &MeshPattern, w: &Permutation) -> Vec<Occurrence> {
    let shaded = pi.mesh.bits;
    let mut out = Vec::new();
    let _ = OccurrenceSearch::new(&pi.perm).for_each(w.word(), |pos| {
        if blocked_mask(w.word(), pos) & shaded == 0 {
            out.push(Occurrence::from_sorted(pos.to_vec()));
        }
        ControlFlow::Continue(())
    });
    out
}

/// Whether `w` contains the mesh pattern; stops at the first occurrence.
pub fn contains(pi: &MeshPattern, w: &Permutation) -> bool {
    contains_word(&OccurrenceSearch::new(&pi.perm), pi.mesh.bits, w.word())
}

fn contains_word(search: &OccurrenceSearch, shaded: u64, w: &[usize]) -> bool {
    search
        .for_each(w, |pos| {
            if blocked_mask(w, pos) & shaded == 0 {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        })
        .is_break()
}

/// Whether `occ` is a mesh occurrence of `pi` in `w`.
pub fn is_mesh_occurrence(pi: &MeshPattern, w: &Permutation, occ: &Occurrence) -> bool {
    occ.is_occurrence_of(&pi.perm, w) && blocked_mask(w.word(), occ.positions()) & pi.mesh.bits == 0
}

/// All permutations of length `n` avoiding `pi`, in lexicographic order.
pub fn avoiders(pi: &MeshPattern, n: usize) -> Vec<Permutation> {
    let search = OccurrenceSearch::new(&pi.perm);
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let mut word: Vec<usize> = (1..=n).collect();
    loop {
        if !contains_word(&search, pi.mesh.bits, &word) {
            out.push(Permutation::from_word_unchecked(word.clone()));
        }
        if !next_lex(&mut word) {
            break;
        }
    }
    out
}

/// Default fingerprint depth for a length-`k` pattern.
pub fn default_depth(k: usize) -> usize {
    (k + 3).min(8)
}

/// Containment indicator of a pattern over every permutation of length
/// `1..=n_max`, each length in lexicographic order, one bit per permutation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fingerprint {
    n_max: usize,
    per_n: Vec<Vec<u64>>,
}

impl Fingerprint {
    pub(crate) fn zeroed(n_max: usize) -> Self {
        let per_n = (1..=n_max)
            .map(|n| alloc::vec![0u64; factorial(n).div_ceil(64)])
            .collect();
        Fingerprint { n_max, per_n }
    }

    /// Builds a fingerprint from explicit bit rows, `rows[n-1]` covering `S_n`.
    pub fn from_rows(rows: Vec<Vec<u64>>) -> Result<Self> {
        for (i, row) in rows.iter().enumerate() {
            let n = i + 1;
            let expected = factorial(n).div_ceil(64);
            if row.len() != expected {
                return Err(Error::GridMismatch {
                    expected,
                    found: row.len(),
                });
            }
            let tail = factorial(n) % 64;
            if tail != 0 && row[expected - 1] >> tail != 0 {
                return Err(Error::InvalidToken(alloc::format!(
                    "row {n} has stray bits"
                )));
            }
        }
        Ok(Fingerprint {
            n_max: rows.len(),
            per_n: rows,
        })
    }

    pub(crate) fn set(&mut self, n: usize, j: usize) {
        self.per_n[n - 1][j / 64] |= 1 << (j % 64);
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// Whether the `j`-th permutation of `S_n` (lexicographic) contains the
    /// pattern.
    pub fn get(&self, n: usize, j: usize) -> bool {
        self.per_n[n - 1][j / 64] >> (j % 64) & 1 == 1
    }

    /// Number of entries at length `n`, which is `n!`.
    pub fn entries(&self, n: usize) -> usize {
        assert!((1..=self.n_max).contains(&n));
        factorial(n)
    }

    pub fn row(&self, n: usize) -> &[u64] {
        &self.per_n[n - 1]
    }

    /// Number of permutations of length `n` containing the pattern.
    pub fn containing(&self, n: usize) -> usize {
        self.per_n[n - 1]
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum()
    }

    /// Number of permutations of length `n` avoiding the pattern.
    pub fn avoiding(&self, n: usize) -> usize {
        factorial(n) - self.containing(n)
    }

    /// Shortest, then lexicographically least, permutation on which the two
    /// fingerprints disagree, as `(n, index)`; compares up to the smaller
    /// depth.
    pub fn first_difference(&self, other: &Fingerprint) -> Option<(usize, usize)> {
        for n in 1..=self.n_max.min(other.n_max) {
            let (a, b) = (&self.per_n[n - 1], &other.per_n[n - 1]);
            for (w, (x, y)) in a.iter().zip(b).enumerate() {
                let diff = x ^ y;
                if diff != 0 {
                    return Some((n, w * 64 + diff.trailing_zeros() as usize));
                }
            }
        }
        None
    }

    /// Same fingerprint cut to a smaller depth.
    pub fn truncated(&self, n_max: usize) -> Fingerprint {
        assert!(n_max <= self.n_max);
        Fingerprint {
            n_max,
            per_n: self.per_n[..n_max].to_vec(),
        }
    }
}

/// Containment data of one classical pattern over every host of length
/// `1..=n_max`: for each host, the minimal blocked masks of its occurrences.
///
/// A mesh `R` is contained in a host exactly when some stored mask is
/// disjoint from `R`, so one table answers containment for every mesh over
/// the same permutation.
#[derive(Debug, Clone)]
pub struct ContainmentTable {
    perm: Permutation,
    n_max: usize,
    levels: Vec<Level>,
}

#[derive(Debug, Clone, Default)]
struct Level {
    offsets: Vec<u32>,
    masks: Vec<u64>,
}

impl Level {
    fn host(&self, j: usize) -> &[u64] {
        &self.masks[self.offsets[j] as usize..self.offsets[j + 1] as usize]
    }
}

impl ContainmentTable {
    pub fn new(perm: &Permutation, n_max: usize) -> Self {
        assert!(perm.len() <= MAX_PATTERN_LEN);
        let search = OccurrenceSearch::new(perm);
        let mut levels = Vec::with_capacity(n_max);
        let mut scratch: Vec<u64> = Vec::new();
        for n in 1..=n_max {
            let mut level = Level {
                offsets: Vec::with_capacity(factorial(n) + 1),
                masks: Vec::new(),
            };
            level.offsets.push(0);
            let mut word: Vec<usize> = (1..=n).collect();
            loop {
                scratch.clear();
                let _ = search.for_each(&word, |pos| {
                    scratch.push(blocked_mask(&word, pos));
                    ControlFlow::Continue(())
                });
                push_minimal(&mut scratch, &mut level.masks);
                level.offsets.push(level.masks.len() as u32);
                if !next_lex(&mut word) {
                    break;
                }
            }
            levels.push(level);
        }
        ContainmentTable {
            perm: perm.clone(),
            n_max,
            levels,
        }
    }

    pub fn perm(&self) -> &Permutation {
        &self.perm
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// Whether the `j`-th permutation of `S_n` contains `(p, mesh)`.
    pub fn contains(&self, mesh: Mesh, n: usize, j: usize) -> bool {
        self.levels[n - 1]
            .host(j)
            .iter()
            .any(|&m| m & mesh.bits == 0)
    }

    pub fn fingerprint(&self, mesh: Mesh) -> Fingerprint {
        debug_assert_eq!(mesh.pattern_len(), self.perm.len());
        let mut fp = Fingerprint::zeroed(self.n_max);
        for n in 1..=self.n_max {
            let level = &self.levels[n - 1];
            for j in 0..level.offsets.len() - 1 {
                if level.host(j).iter().any(|&m| m & mesh.bits == 0) {
                    fp.set(n, j);
                }
            }
        }
        fp
    }
}

/// Appends the inclusion-minimal masks of `found` to `out`.
fn push_minimal(found: &mut [u64], out: &mut Vec<u64>) {
    found.sort_unstable_by_key(|m| (m.count_ones(), *m));
    let start = out.len();
    for (i, &m) in found.iter().enumerate() {
        if i > 0 && found[i - 1] == m {
            continue;
        }
        if out[start..].iter().all(|&kept| kept & !m != 0) {
            out.push(m);
        }
    }
}

/// Truncated containment indicator of `pi` through length `n_max`.
pub fn fingerprint(pi: &MeshPattern, n_max: usize) -> Fingerprint {
    ContainmentTable::new(&pi.perm, n_max).fingerprint(pi.mesh)
}

/// A permutation that lies in exactly one of two patterns' containment sets.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Witness {
    pub perm: Permutation,
    /// True when `perm` contains the first pattern and avoids the second.
    pub contains_first: bool,
}

impl Witness {
    /// Re-checks the claimed direction by direct containment.
    pub fn verify(&self, first: &MeshPattern, second: &MeshPattern) -> bool {
        contains(first, &self.perm) == self.contains_first
            && contains(second, &self.perm) != self.contains_first
    }

    /// Builds the witness for `perm`, or `None` when it does not separate
    /// the patterns.
    pub fn check(perm: Permutation, first: &MeshPattern, second: &MeshPattern) -> Option<Self> {
        let (a, b) = (contains(first, &perm), contains(second, &perm));
        (a != b).then_some(Witness {
            perm,
            contains_first: a,
        })
    }
}
