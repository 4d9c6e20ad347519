//! Shading moves: squares that can be added to a mesh without changing the
//! set of avoiders.
//!
//! The north-east single-square rule and the east pair rule are written out
//! once; the other seven variants are obtained by conjugating the pattern with
//! the symmetry that carries their direction to the written one, testing, and
//! mapping the squares back.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use crate::mesh::{blocked_mask, points_in_squares, Mesh, MeshPattern};
use crate::perm::{Occurrence, Permutation, Symmetry};
use crate::{Error, Result};

/// Direction of a single shadeable square, seen from its pattern point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Corner {
    NorthEast,
    NorthWest,
    SouthEast,
    SouthWest,
}

/// Side of a pattern point covered by a shadeable pair of squares.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    East,
    West,
    North,
    South,
}

impl Corner {
    pub const ALL: [Corner; 4] = [
        Corner::NorthEast,
        Corner::NorthWest,
        Corner::SouthEast,
        Corner::SouthWest,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Corner::NorthEast => "NE",
            Corner::NorthWest => "NW",
            Corner::SouthEast => "SE",
            Corner::SouthWest => "SW",
        }
    }

    /// Symmetry taking this corner to north-east. Each one is an involution.
    fn to_north_east(self) -> Symmetry {
        match self {
            Corner::NorthEast => Symmetry::IDENTITY,
            Corner::NorthWest => Symmetry::REVERSE,
            Corner::SouthEast => Symmetry::COMPLEMENT,
            Corner::SouthWest => Symmetry::REVERSE.compose(Symmetry::COMPLEMENT),
        }
    }
}

impl Side {
    pub const ALL: [Side; 4] = [Side::East, Side::West, Side::North, Side::South];

    pub fn tag(self) -> &'static str {
        match self {
            Side::East => "E",
            Side::West => "W",
            Side::North => "N",
            Side::South => "S",
        }
    }

    /// Symmetry taking this side to east.
    fn to_east(self) -> Symmetry {
        match self {
            Side::East => Symmetry::IDENTITY,
            Side::West => Symmetry::REVERSE,
            Side::North => Symmetry::INVERSE,
            Side::South => Symmetry::REVERSE.compose(Symmetry::INVERSE),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ShadeShape {
    Single(Corner),
    Pair(Side),
}

impl ShadeShape {
    /// `"single"` or `"pair"`.
    pub fn kind(self) -> &'static str {
        match self {
            ShadeShape::Single(_) => "single",
            ShadeShape::Pair(_) => "pair",
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            ShadeShape::Single(c) => c.tag(),
            ShadeShape::Pair(s) => s.tag(),
        }
    }

    pub fn parse(kind: &str, dir: &str) -> Option<Self> {
        match kind {
            "single" => Corner::ALL
                .into_iter()
                .find(|c| c.tag() == dir)
                .map(ShadeShape::Single),
            "pair" => Side::ALL
                .into_iter()
                .find(|s| s.tag() == dir)
                .map(ShadeShape::Pair),
            _ => None,
        }
    }
}

/// A square or pair of squares that may be shaded next to a pattern point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ShadeOption {
    /// The pattern point `(i, p(i))`.
    pub point: (usize, usize),
    pub shape: ShadeShape,
    pub squares: Mesh,
}

impl fmt::Display for ShadeOption {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{}) {} {} {}",
            self.point.0,
            self.point.1,
            self.shape.kind(),
            self.shape.tag(),
            self.squares
        )
    }
}

/// One simultaneous shading step: at most one option per pattern point.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ShadeMove {
    assignments: Vec<ShadeOption>,
    added: Mesh,
}

impl ShadeMove {
    /// Checks that every option is shadeable in `pi` and that no point is
    /// used twice.
    pub fn new(pi: &MeshPattern, mut assignments: Vec<ShadeOption>) -> Result<Self> {
        if assignments.is_empty() {
            return Err(Error::IllegalMove("no assignments".into()));
        }
        assignments.sort();
        if assignments.windows(2).any(|w| w[0].point == w[1].point) {
            return Err(Error::IllegalMove("a point is assigned twice".into()));
        }
        let legal = options(pi);
        for a in &assignments {
            if !legal.iter().flatten().any(|o| o == a) {
                return Err(Error::IllegalMove(format!("{a} is not shadeable in {pi}")));
            }
        }
        Ok(ShadeMove::from_sorted(pi.len(), assignments))
    }

    fn from_sorted(k: usize, assignments: Vec<ShadeOption>) -> Self {
        let added = assignments
            .iter()
            .fold(Mesh::empty(k), |acc, a| acc.union(a.squares));
        ShadeMove { assignments, added }
    }

    /// Assignments ordered by pattern point.
    pub fn assignments(&self) -> &[ShadeOption] {
        &self.assignments
    }

    /// Union of the assigned squares.
    pub fn added(&self) -> Mesh {
        self.added
    }

    /// Whether the move could have been produced by [`ssl_moves`] on `pi`.
    pub fn is_legal_for(&self, pi: &MeshPattern) -> bool {
        ShadeMove::new(pi, self.assignments.clone()).is_ok_and(|m| m.added == self.added)
    }
}

impl fmt::Display for ShadeMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, a) in self.assignments.iter().enumerate() {
            if n > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

/// The north-east shading rule at point `(i, j)`.
fn north_east_ok(mesh: Mesh, k: usize, i: usize, j: usize) -> bool {
    let r = |x: usize, y: usize| mesh.contains(x, y);
    if r(i, j) || r(i - 1, j - 1) || (r(i, j - 1) && r(i - 1, j)) {
        return false;
    }
    let rows_ok = (0..=k)
        .filter(|&x| x + 1 != i && x != i)
        .all(|x| !r(x, j - 1) || r(x, j));
    let cols_ok = (0..=k)
        .filter(|&y| y + 1 != j && y != j)
        .all(|y| !r(i - 1, y) || r(i, y));
    rows_ok && cols_ok
}

/// The east pair rule at point `(i, j)`.
fn east_ok(mesh: Mesh, k: usize, i: usize, j: usize) -> bool {
    let r = |x: usize, y: usize| mesh.contains(x, y);
    if r(i, j) || r(i, j - 1) || r(i - 1, j) || r(i - 1, j - 1) {
        return false;
    }
    (0..=k).all(|x| r(x, j - 1) == r(x, j)) && (0..=k).all(|y| !r(i - 1, y) || r(i, y))
}

/// Runs `rule` on the image of `pi` under `s` and maps the squares back.
fn conjugated(
    pi: &MeshPattern,
    (i, j): (usize, usize),
    s: Symmetry,
    rule: fn(Mesh, usize, usize, usize) -> bool,
    squares: fn(usize, usize) -> [(usize, usize); 2],
) -> Option<Mesh> {
    let k = pi.len();
    let (x, y) = s.map_point(i, j, k);
    if !rule(pi.mesh().transformed(s), k, x, y) {
        return None;
    }
    let back = s.inverse();
    let bits = squares(x, y)
        .into_iter()
        .fold(Mesh::empty(k), |acc, (a, b)| {
            let (a, b) = back.map_square(a, b, k);
            acc.with(a, b)
        });
    Some(bits)
}

fn singles_at(pi: &MeshPattern, point: (usize, usize)) -> impl Iterator<Item = ShadeOption> + '_ {
    Corner::ALL.into_iter().filter_map(move |c| {
        conjugated(pi, point, c.to_north_east(), north_east_ok, |x, y| {
            [(x, y), (x, y)]
        })
        .map(|squares| ShadeOption {
            point,
            shape: ShadeShape::Single(c),
            squares,
        })
    })
}

fn pairs_at(pi: &MeshPattern, point: (usize, usize)) -> impl Iterator<Item = ShadeOption> + '_ {
    Side::ALL.into_iter().filter_map(move |side| {
        conjugated(pi, point, side.to_east(), east_ok, |x, y| {
            [(x, y), (x, y - 1)]
        })
        .map(|squares| ShadeOption {
            point,
            shape: ShadeShape::Pair(side),
            squares,
        })
    })
}

/// Every single square addable by a shading rule, grouped by point order and
/// then direction.
pub fn shadeable_singles(pi: &MeshPattern) -> Vec<ShadeOption> {
    pi.perm()
        .points()
        .flat_map(|g| singles_at(pi, g).collect::<Vec<_>>())
        .collect()
}

/// Every pair of squares addable by a pair shading rule.
pub fn shadeable_pairs(pi: &MeshPattern) -> Vec<ShadeOption> {
    pi.perm()
        .points()
        .flat_map(|g| pairs_at(pi, g).collect::<Vec<_>>())
        .collect()
}

/// Shadeable options per pattern point, singles first.
fn options(pi: &MeshPattern) -> Vec<Vec<ShadeOption>> {
    pi.perm()
        .points()
        .map(|g| singles_at(pi, g).chain(pairs_at(pi, g)).collect())
        .collect()
}

/// All simultaneous shading moves on `pi`, one per distinct added set.
///
/// Every choice of at most one option per point (other than choosing
/// nothing) is enumerated; the first choice reaching a given union is kept.
pub fn ssl_moves(pi: &MeshPattern) -> Vec<ShadeMove> {
    let per_point: Vec<Vec<ShadeOption>> =
        options(pi).into_iter().filter(|o| !o.is_empty()).collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(per_point.len());
    choose(pi.len(), &per_point, &mut chosen, &mut seen, &mut out);
    out
}

fn choose(
    k: usize,
    per_point: &[Vec<ShadeOption>],
    chosen: &mut Vec<ShadeOption>,
    seen: &mut BTreeSet<u64>,
    out: &mut Vec<ShadeMove>,
) {
    let Some((first, rest)) = per_point.split_first() else {
        if !chosen.is_empty() {
            let mv = ShadeMove::from_sorted(k, chosen.clone());
            if seen.insert(mv.added.bits()) {
                out.push(mv);
            }
        }
        return;
    };
    choose(k, rest, chosen, seen, out);
    for option in first {
        chosen.push(*option);
        choose(k, rest, chosen, seen, out);
        chosen.pop();
    }
}

/// Turns a mesh occurrence of `pi` into one of `pi` with the move's squares
/// added, following the constructive shifting argument.
///
/// While some assigned region holds host points, the smallest pattern index
/// with a non-empty region has its host point replaced by the extreme point
/// of that region: topmost for `N` pairs, bottommost for `S` pairs, rightmost
/// for `E` pairs and leftmost for `W` pairs. A single square moves vertically
/// away from the point (topmost for northern corners), unless the square
/// sharing its column on the other side of the point is shaded; then it moves
/// horizontally away from the point. Returns the whole walk, starting with
/// `occ`.
pub fn ssl_repair_path(
    pi: &MeshPattern,
    mv: &ShadeMove,
    w: &Permutation,
    occ: &Occurrence,
) -> Result<Vec<Occurrence>> {
    let k = pi.len();
    if !mv.is_legal_for(pi) {
        return Err(Error::IllegalMove(format!("{mv} on {pi}")));
    }
    if occ.len() != k
        || !occ.is_occurrence_of(pi.perm(), w)
        || blocked_mask(w.word(), occ.positions()) & pi.mesh().bits() != 0
    {
        return Err(Error::NotAnOccurrence);
    }

    let limit = 2 * k * w.len();
    let mut positions = occ.positions().to_vec();
    let mut path = alloc::vec![occ.clone()];
    'walk: for _ in 0..=limit {
        for a in &mv.assignments {
            let h = a.point.0 - 1;
            let region = points_in_squares(w.word(), &positions, a.squares);
            if region.is_empty() {
                continue;
            }
            let pick = |key: fn(&(usize, usize)) -> usize, largest: bool| {
                let it = region.iter().copied();
                if largest {
                    it.max_by_key(key)
                } else {
                    it.min_by_key(key)
                }
            };
            let (x, _) = match a.shape {
                ShadeShape::Pair(Side::North) => pick(|p| p.1, true),
                ShadeShape::Pair(Side::South) => pick(|p| p.1, false),
                ShadeShape::Pair(Side::East) => pick(|p| p.0, true),
                ShadeShape::Pair(Side::West) => pick(|p| p.0, false),
                ShadeShape::Single(c) => {
                    let (east, north) = match c {
                        Corner::NorthEast => (true, true),
                        Corner::NorthWest => (false, true),
                        Corner::SouthEast => (true, false),
                        Corner::SouthWest => (false, false),
                    };
                    // The square across the point's row from the target is
                    // shaded: a vertical step could land above a host point
                    // inside it, so step horizontally instead.
                    let (i, j) = a.point;
                    let col = if east { i } else { i - 1 };
                    let row = if north { j - 1 } else { j };
                    if pi.mesh().contains(col, row) {
                        pick(|p| p.0, east)
                    } else {
                        pick(|p| p.1, north)
                    }
                }
            }
            .expect("region is non-empty");
            positions[h] = x;
            debug_assert!(positions.windows(2).all(|p| p[0] < p[1]));
            path.push(Occurrence::from_sorted(positions.clone()));
            continue 'walk;
        }
        let target = pi.mesh().union(mv.added);
        if blocked_mask(w.word(), &positions) & target.bits() != 0 {
            return Err(Error::RepairDiverged(path.len() - 1));
        }
        return Ok(path);
    }
    Err(Error::RepairDiverged(limit))
}

/// Final occurrence of [`ssl_repair_path`].
pub fn ssl_repair_occurrence(
    pi: &MeshPattern,
    mv: &ShadeMove,
    w: &Permutation,
    occ: &Occurrence,
) -> Result<Occurrence> {
    let mut path = ssl_repair_path(pi, mv, w, occ)?;
    Ok(path.pop().expect("the walk starts at occ"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::{contains, fingerprint, mesh_occurrences};
    use alloc::string::ToString;
    use alloc::vec;

    fn pat(s: &str) -> MeshPattern {
        s.parse().unwrap()
    }

    fn mesh(k: usize, squares: &[(usize, usize)]) -> Mesh {
        Mesh::from_squares(k, squares.iter().copied()).unwrap()
    }

    fn has(
        list: &[ShadeOption],
        point: (usize, usize),
        shape: ShadeShape,
        sq: &[(usize, usize)],
    ) -> bool {
        list.iter().any(|o| {
            o.point == point && o.shape == shape && o.squares == mesh(o.squares.pattern_len(), sq)
        })
    }

    #[test]
    fn single_square_examples() {
        let singles = shadeable_singles(&pat("231:(0,0)(3,2)(3,3)"));
        assert!(has(
            &singles,
            (1, 2),
            ShadeShape::Single(Corner::NorthWest),
            &[(0, 2)]
        ));

        // (1,0) without (1,1) blocks the row condition; the two meshes are
        // separated by 42513.
        let singles = shadeable_singles(&pat("231:(1,0)(3,2)"));
        assert!(!singles.iter().any(|o| o.squares == mesh(3, &[(3, 1)])));
        let singles = shadeable_singles(&pat("231:(1,0)(1,1)(3,2)"));
        assert!(has(
            &singles,
            (3, 1),
            ShadeShape::Single(Corner::NorthEast),
            &[(3, 1)]
        ));
        let singles = shadeable_singles(&pat("231:(1,0)(3,1)(3,2)"));
        assert!(has(
            &singles,
            (1, 2),
            ShadeShape::Single(Corner::SouthEast),
            &[(1, 1)]
        ));

        let singles = shadeable_singles(&pat("12:(2,0)"));
        assert!(!has(
            &singles,
            (1, 1),
            ShadeShape::Single(Corner::NorthEast),
            &[(1, 1)]
        ));
    }

    #[test]
    fn pair_examples() {
        let pairs = shadeable_pairs(&pat("12:(2,0)"));
        assert!(has(
            &pairs,
            (1, 1),
            ShadeShape::Pair(Side::South),
            &[(0, 0), (1, 0)]
        ));

        let pairs = shadeable_pairs(&pat("12:(0,0)(1,0)(2,0)"));
        assert!(has(
            &pairs,
            (2, 2),
            ShadeShape::Pair(Side::West),
            &[(1, 1), (1, 2)]
        ));

        let pairs = shadeable_pairs(&pat("231:(0,0)(3,2)(3,3)"));
        assert!(has(
            &pairs,
            (2, 3),
            ShadeShape::Pair(Side::North),
            &[(1, 3), (2, 3)]
        ));
    }

    #[test]
    fn candidate_squares_follow_direction() {
        // The empty mesh on 1 lets every rule fire at the single point.
        let pi = pat("1");
        let singles = shadeable_singles(&pi);
        assert!(has(
            &singles,
            (1, 1),
            ShadeShape::Single(Corner::NorthEast),
            &[(1, 1)]
        ));
        assert!(has(
            &singles,
            (1, 1),
            ShadeShape::Single(Corner::NorthWest),
            &[(0, 1)]
        ));
        assert!(has(
            &singles,
            (1, 1),
            ShadeShape::Single(Corner::SouthEast),
            &[(1, 0)]
        ));
        assert!(has(
            &singles,
            (1, 1),
            ShadeShape::Single(Corner::SouthWest),
            &[(0, 0)]
        ));
        let pairs = shadeable_pairs(&pi);
        assert!(has(
            &pairs,
            (1, 1),
            ShadeShape::Pair(Side::East),
            &[(1, 1), (1, 0)]
        ));
        assert!(has(
            &pairs,
            (1, 1),
            ShadeShape::Pair(Side::West),
            &[(0, 1), (0, 0)]
        ));
        assert!(has(
            &pairs,
            (1, 1),
            ShadeShape::Pair(Side::North),
            &[(0, 1), (1, 1)]
        ));
        assert!(has(
            &pairs,
            (1, 1),
            ShadeShape::Pair(Side::South),
            &[(0, 0), (1, 0)]
        ));
    }

    #[test]
    fn blocked_shadings() {
        let r1 = pat("231:(0,0)(3,2)(3,3)(0,2)");
        assert!(!shadeable_pairs(&r1)
            .iter()
            .any(|o| o.point == (1, 2) && o.shape == ShadeShape::Pair(Side::North)));
        let r2 = pat("231:(0,0)(3,2)(3,3)(1,3)(2,3)");
        assert!(!shadeable_singles(&r2)
            .iter()
            .any(|o| o.point == (1, 2) && o.shape == ShadeShape::Single(Corner::NorthWest)));
    }

    #[test]
    fn simultaneous_move_examples() {
        let pi = pat("1423:(4,0)(4,1)");
        let target = mesh(4, &[(0, 0), (1, 0), (1, 4), (2, 4), (3, 1)]);
        let mv = ssl_moves(&pi)
            .into_iter()
            .find(|m| m.added() == target)
            .expect("move present");
        assert!(mv.is_legal_for(&pi));

        let pi = pat("231:(0,0)(3,2)(3,3)");
        let target = mesh(3, &[(0, 2), (1, 3), (2, 3)]);
        assert!(ssl_moves(&pi).iter().any(|m| m.added() == target));
    }

    #[test]
    fn full_mesh_has_no_moves() {
        let pi = MeshPattern::new("12".parse().unwrap(), Mesh::full(2)).unwrap();
        assert!(ssl_moves(&pi).is_empty());
    }

    #[test]
    fn moves_are_deduplicated() {
        let moves = ssl_moves(&pat("1"));
        let mut unions: Vec<u64> = moves.iter().map(|m| m.added().bits()).collect();
        let before = unions.len();
        unions.sort_unstable();
        unions.dedup();
        assert_eq!(unions.len(), before);
    }

    #[test]
    fn illegal_moves_are_rejected() {
        let pi = pat("12:(2,0)");
        let bogus = ShadeOption {
            point: (1, 1),
            shape: ShadeShape::Single(Corner::NorthEast),
            squares: mesh(2, &[(1, 1)]),
        };
        assert!(matches!(
            ShadeMove::new(&pi, vec![bogus]),
            Err(Error::IllegalMove(_))
        ));
        assert!(ShadeMove::new(&pi, vec![]).is_err());
    }

    #[test]
    fn repair_walk_reproduces_the_figure() {
        let pi = pat("1423:(4,0)(4,1)");
        let target = mesh(4, &[(0, 0), (1, 0), (1, 4), (2, 4), (3, 1)]);
        let mv = ssl_moves(&pi)
            .into_iter()
            .find(|m| m.added() == target)
            .unwrap();
        let w: Permutation = "4,8,2,9,5,1,10,3,7,6".parse().unwrap();
        let occ = Occurrence::new(vec![1, 2, 5, 9]).unwrap();
        let path: Vec<_> = ssl_repair_path(&pi, &mv, &w, &occ)
            .unwrap()
            .iter()
            .map(|o| o.to_string())
            .collect();
        assert_eq!(
            path,
            [
                "(1,2,5,9)",
                "(1,4,5,9)",
                "(3,4,5,9)",
                "(3,4,8,9)",
                "(3,7,8,9)",
                "(6,7,8,9)"
            ]
        );
        let end = ssl_repair_occurrence(&pi, &mv, &w, &occ).unwrap();
        let enlarged = pi.with_mesh(pi.mesh().union(mv.added()));
        assert!(mesh_occurrences(&enlarged, &w).contains(&end));
    }

    #[test]
    fn repair_rejects_non_occurrences() {
        let pi = pat("1423:(4,0)(4,1)");
        let mv = ssl_moves(&pi).remove(0);
        let w: Permutation = "4,8,2,9,5,1,10,3,7,6".parse().unwrap();
        let occ = Occurrence::new(vec![1, 2, 3, 4]).unwrap();
        assert_eq!(
            ssl_repair_occurrence(&pi, &mv, &w, &occ).unwrap_err(),
            Error::NotAnOccurrence
        );
    }

    #[test]
    fn settled_occurrence_is_unchanged() {
        let pi = pat("12:(2,0)");
        let mv = ssl_moves(&pi)
            .into_iter()
            .find(|m| m.added() == mesh(2, &[(0, 0), (1, 0)]))
            .unwrap();
        let w: Permutation = "123".parse().unwrap();
        let occ = Occurrence::new(vec![1, 2]).unwrap();
        assert!(contains(&pi, &w));
        assert_eq!(ssl_repair_path(&pi, &mv, &w, &occ).unwrap(), [occ]);
    }

    #[test]
    fn moves_preserve_fingerprints_for_length_two() {
        for p in ["12", "21"] {
            for m in Mesh::all(2).step_by(7) {
                let pi = MeshPattern::new(p.parse().unwrap(), m).unwrap();
                let fp = fingerprint(&pi, 5);
                for mv in ssl_moves(&pi) {
                    let enlarged = pi.with_mesh(m.union(mv.added()));
                    assert_eq!(fingerprint(&enlarged, 5), fp, "{pi} + {mv}");
                }
            }
        }
    }
}
