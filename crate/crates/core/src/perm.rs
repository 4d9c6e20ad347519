//! Permutations in one-line notation, classical pattern occurrences and the
//! eight symmetries of the square.
//!
//! Positions and values are 1-based throughout, so `w.value(1)` is the first
//! letter of `w` and an [`Occurrence`] stores positions in `1..=n`.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::ops::ControlFlow;
use core::str::FromStr;

use crate::{Error, Result};

/// A permutation of `1..=n` in one-line notation, `n >= 1`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    word: Vec<usize>,
}

impl Permutation {
    /// Validates that `word` is a bijection on `1..=word.len()`.
    pub fn new(word: Vec<usize>) -> Result<Self> {
        let n = word.len();
        if n == 0 {
            return Err(Error::EmptyPermutation);
        }
        if let Some(&value) = word.iter().find(|&&v| v == 0 || v > n) {
            return Err(Error::ValueOutOfRange { value, len: n });
        }
        let mut seen = alloc::vec![false; n + 1];
        let mut duplicate = None;
        for &v in &word {
            if seen[v] {
                duplicate.get_or_insert(v);
            }
            seen[v] = true;
        }
        match duplicate {
            Some(value) => {
                let missing = (1..=n).find(|&v| !seen[v]).unwrap_or(0);
                Err(Error::DuplicateValue { value, missing })
            }
            None => Ok(Permutation { word }),
        }
    }

    /// Builds a permutation from a word already known to be a bijection.
    pub(crate) fn from_word_unchecked(word: Vec<usize>) -> Self {
        debug_assert!(Permutation::new(word.clone()).is_ok());
        Permutation { word }
    }

    pub fn identity(n: usize) -> Self {
        assert!(n >= 1, "identity permutation needs n >= 1");
        Permutation {
            word: (1..=n).collect(),
        }
    }

    /// Number of letters.
    pub fn len(&self) -> usize {
        self.word.len()
    }

    /// Always false; kept for API symmetry with slices.
    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    /// `w(i)` for `i` in `1..=n`.
    pub fn value(&self, i: usize) -> usize {
        self.word[i - 1]
    }

    /// The graph `G(w)` as `(i, w(i))` pairs.
    pub fn points(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.word.iter().enumerate().map(|(i, &v)| (i + 1, v))
    }

    pub fn contains_point(&self, x: usize, y: usize) -> bool {
        (1..=self.len()).contains(&x) && self.word[x - 1] == y
    }

    pub fn inverse(&self) -> Self {
        let mut inv = alloc::vec![0; self.len()];
        for (i, &v) in self.word.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Permutation { word: inv }
    }

    /// Applies one of the eight symmetries to the graph of `self`.
    pub fn transformed(&self, s: Symmetry) -> Self {
        let n = self.len();
        let mut word = alloc::vec![0; n];
        for (x, y) in self.points() {
            let (nx, ny) = s.map_point(x, y, n);
            word[nx - 1] = ny;
        }
        Permutation { word }
    }

    /// `self ⊕ other`: `other` shifted above and to the right of `self`.
    pub fn direct_sum(&self, other: &Permutation) -> Self {
        let shift = self.len();
        let word = self
            .word
            .iter()
            .copied()
            .chain(other.word.iter().map(|&v| v + shift))
            .collect();
        Permutation { word }
    }

    /// True when some proper prefix `w(1..=m)` is exactly `{1..=m}`.
    pub fn is_sum_decomposable(&self) -> bool {
        let mut max = 0;
        for (m, &v) in self.word.iter().enumerate().take(self.len() - 1) {
            max = max.max(v);
            if max == m + 1 {
                return true;
            }
        }
        false
    }

    /// Position of `self` among all permutations of its length in
    /// lexicographic order (0-based).
    pub fn lex_rank(&self) -> usize {
        let n = self.len();
        let mut rank = 0;
        let mut used = alloc::vec![false; n + 1];
        for (i, &v) in self.word.iter().enumerate() {
            let smaller_unused = (1..v).filter(|&u| !used[u]).count();
            rank += smaller_unused * factorial(n - 1 - i);
            used[v] = true;
        }
        rank
    }

    /// Inverse of [`Permutation::lex_rank`].
    pub fn from_lex_rank(n: usize, mut rank: usize) -> Self {
        assert!(n >= 1 && rank < factorial(n), "rank out of range");
        let mut pool: Vec<usize> = (1..=n).collect();
        let mut word = Vec::with_capacity(n);
        for i in 0..n {
            let f = factorial(n - 1 - i);
            word.push(pool.remove(rank / f));
            rank %= f;
        }
        Permutation { word }
    }

    /// Inserts a new letter at 0-based index `at` whose value sits just above
    /// `below` (0 for the bottom), renormalizing the rest.
    pub(crate) fn insert_above(&self, at: usize, below: usize) -> Self {
        let bump = |v: usize| if v > below { v + 1 } else { v };
        let mut word: Vec<usize> = self.word[..at].iter().map(|&v| bump(v)).collect();
        word.push(below + 1);
        word.extend(self.word[at..].iter().map(|&v| bump(v)));
        Permutation { word }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

impl fmt::Display for Permutation {
    /// Digit string when every value is a single digit, otherwise
    /// comma-separated values.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len() <= 9 {
            for v in &self.word {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            for (i, v) in self.word.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{v}")?;
            }
            Ok(())
        }
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::EmptyPermutation);
        }
        let word = if s.contains(',') {
            s.split(',')
                .map(|tok| {
                    let tok = tok.trim();
                    tok.parse::<usize>()
                        .map_err(|_| Error::InvalidToken(tok.to_string()))
                })
                .collect::<Result<Vec<_>>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| Error::InvalidToken(String::from(c)))
                })
                .collect::<Result<Vec<_>>>()?
        };
        Permutation::new(word)
    }
}

pub(crate) fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// All permutations of `1..=n` in lexicographic order.
#[derive(Debug, Clone)]
pub struct Permutations {
    next: Option<Vec<usize>>,
}

impl Permutations {
    pub fn new(n: usize) -> Self {
        Permutations {
            next: (n >= 1).then(|| (1..=n).collect()),
        }
    }
}

impl Iterator for Permutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        if next_lex(&mut succ) {
            self.next = Some(succ);
        }
        Some(Permutation { word: current })
    }
}

/// Advances `word` to its lexicographic successor; false at the last one.
pub(crate) fn next_lex(word: &mut [usize]) -> bool {
    let n = word.len();
    if n < 2 {
        return false;
    }
    let Some(i) = (0..n - 1).rev().find(|&i| word[i] < word[i + 1]) else {
        return false;
    };
    let j = (i + 1..n).rev().find(|&j| word[j] > word[i]).unwrap();
    word.swap(i, j);
    word[i + 1..].reverse();
    true
}

/// Strictly increasing host positions `i_1 < ... < i_k` (1-based) of an
/// occurrence of a length-`k` pattern.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Occurrence {
    positions: Vec<usize>,
}

impl Occurrence {
    /// Checks only that positions are strictly increasing and nonzero.
    pub fn new(positions: Vec<usize>) -> Result<Self> {
        if positions.is_empty() || positions[0] == 0 || positions.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::NotAnOccurrence);
        }
        Ok(Occurrence { positions })
    }

    pub(crate) fn from_sorted(positions: Vec<usize>) -> Self {
        Occurrence { positions }
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    /// Host values at the occurrence positions.
    pub fn values(&self, w: &Permutation) -> Vec<usize> {
        self.positions.iter().map(|&i| w.value(i)).collect()
    }

    /// True when the positions are in range and the values of `w` there are
    /// order isomorphic to `p`.
    pub fn is_occurrence_of(&self, p: &Permutation, w: &Permutation) -> bool {
        if self.len() != p.len() || *self.positions.last().unwrap() > w.len() {
            return false;
        }
        let vals = self.values(w);
        (0..p.len()).all(|a| (0..p.len()).all(|b| (vals[a] < vals[b]) == (p.word[a] < p.word[b])))
    }
}

impl fmt::Display for Occurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, p) in self.positions.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

/// Precomputed order constraints of a classical pattern, used to extend
/// partial occurrences one letter at a time.
///
/// When placing pattern letter `d`, its host value must lie strictly between
/// the host values already chosen for the nearest smaller and nearest larger
/// letters among `p(1..d)`.
#[derive(Debug, Clone)]
pub(crate) struct OccurrenceSearch {
    len: usize,
    below: Vec<Option<usize>>,
    above: Vec<Option<usize>>,
}

impl OccurrenceSearch {
    pub fn new(p: &Permutation) -> Self {
        let k = p.len();
        let mut below = Vec::with_capacity(k);
        let mut above = Vec::with_capacity(k);
        for d in 0..k {
            let v = p.word[d];
            below.push((0..d).filter(|&t| p.word[t] < v).max_by_key(|&t| p.word[t]));
            above.push((0..d).filter(|&t| p.word[t] > v).min_by_key(|&t| p.word[t]));
        }
        OccurrenceSearch {
            len: k,
            below,
            above,
        }
    }

    /// Visits every occurrence in lexicographic order of positions. The
    /// visitor receives 1-based positions and may stop the search early.
    pub fn for_each<F>(&self, w: &[usize], mut visit: F) -> ControlFlow<()>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        if self.len > w.len() {
            return ControlFlow::Continue(());
        }
        let mut chosen = alloc::vec![0usize; self.len];
        self.extend(w, 0, 1, &mut chosen, &mut visit)
    }

    fn extend<F>(
        &self,
        w: &[usize],
        depth: usize,
        start: usize,
        chosen: &mut [usize],
        visit: &mut F,
    ) -> ControlFlow<()>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        if depth == self.len {
            return visit(chosen);
        }
        let remaining = self.len - depth - 1;
        let lo = self.below[depth].map_or(0, |t| w[chosen[t] - 1]);
        let hi = self.above[depth].map_or(usize::MAX, |t| w[chosen[t] - 1]);
        for x in start..=w.len() - remaining {
            let v = w[x - 1];
            if v > lo && v < hi {
                chosen[depth] = x;
                self.extend(w, depth + 1, x + 1, chosen, visit)?;
            }
        }
        ControlFlow::Continue(())
    }
}

/// Every occurrence of the classical pattern `p` in `w`, in lexicographic
/// order of positions.
pub fn classical_occurrences(p: &Permutation, w: &Permutation) -> Vec<Occurrence> {
    let mut out = Vec::new();
    let _ = OccurrenceSearch::new(p).for_each(&w.word, |pos| {
        out.push(Occurrence::from_sorted(pos.to_vec()));
        ControlFlow::Continue(())
    });
    out
}

/// An element of the dihedral group of order 8 acting on the square
/// `[0, n+1]^2`: an optional transpose (inverse) followed by optional
/// horizontal (reverse) and vertical (complement) flips.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symmetry {
    transpose: bool,
    flip_x: bool,
    flip_y: bool,
}

impl Symmetry {
    pub const IDENTITY: Symmetry = Symmetry::from_parts(false, false, false);
    pub const REVERSE: Symmetry = Symmetry::from_parts(false, true, false);
    pub const COMPLEMENT: Symmetry = Symmetry::from_parts(false, false, true);
    pub const INVERSE: Symmetry = Symmetry::from_parts(true, false, false);

    pub const ALL: [Symmetry; 8] = [
        Symmetry::from_parts(false, false, false),
        Symmetry::from_parts(false, true, false),
        Symmetry::from_parts(false, false, true),
        Symmetry::from_parts(false, true, true),
        Symmetry::from_parts(true, false, false),
        Symmetry::from_parts(true, true, false),
        Symmetry::from_parts(true, false, true),
        Symmetry::from_parts(true, true, true),
    ];

    const fn from_parts(transpose: bool, flip_x: bool, flip_y: bool) -> Self {
        Symmetry {
            transpose,
            flip_x,
            flip_y,
        }
    }

    /// Signed permutation matrix on centered coordinates.
    fn matrix(self) -> [[i8; 2]; 2] {
        let fx = if self.flip_x { -1 } else { 1 };
        let fy = if self.flip_y { -1 } else { 1 };
        if self.transpose {
            [[0, fx], [fy, 0]]
        } else {
            [[fx, 0], [0, fy]]
        }
    }

    fn from_matrix(m: [[i8; 2]; 2]) -> Self {
        let transpose = m[0][0] == 0;
        let (x, y) = if transpose {
            (m[0][1], m[1][0])
        } else {
            (m[0][0], m[1][1])
        };
        Symmetry::from_parts(transpose, x < 0, y < 0)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(self, other: Symmetry) -> Symmetry {
        let (a, b) = (self.matrix(), other.matrix());
        let mut m = [[0i8; 2]; 2];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Symmetry::from_matrix(m)
    }

    pub fn inverse(self) -> Symmetry {
        Symmetry::ALL
            .into_iter()
            .find(|&t| t.compose(self) == Symmetry::IDENTITY)
            .unwrap()
    }

    /// Image of the lattice point `(x, y)` of `[0, n+1]^2`.
    pub fn map_point(self, x: usize, y: usize, n: usize) -> (usize, usize) {
        let (mut x, mut y) = if self.transpose { (y, x) } else { (x, y) };
        if self.flip_x {
            x = n + 1 - x;
        }
        if self.flip_y {
            y = n + 1 - y;
        }
        (x, y)
    }

    /// Image of the unit square with lower-left corner `(a, b)` in the grid of
    /// a length-`k` pattern.
    pub fn map_square(self, a: usize, b: usize, k: usize) -> (usize, usize) {
        let (mut a, mut b) = if self.transpose { (b, a) } else { (a, b) };
        if self.flip_x {
            a = k - a;
        }
        if self.flip_y {
            b = k - b;
        }
        (a, b)
    }

    /// Whether the symmetry exchanges NE and SE diagonal directions.
    pub fn swaps_diagonals(self) -> bool {
        self.flip_x != self.flip_y
    }

    pub fn name(self) -> &'static str {
        match (self.transpose, self.flip_x, self.flip_y) {
            (false, false, false) => "id",
            (false, true, false) => "r",
            (false, false, true) => "c",
            (false, true, true) => "rc",
            (true, false, false) => "i",
            (true, true, false) => "ri",
            (true, false, true) => "ci",
            (true, true, true) => "rci",
        }
    }
}

impl fmt::Display for Symmetry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Symmetry {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Symmetry::ALL
            .into_iter()
            .find(|sym| sym.name() == s)
            .ok_or_else(|| Error::InvalidToken(s.to_string()))
    }
}
