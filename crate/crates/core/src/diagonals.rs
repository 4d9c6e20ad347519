//! Enclosed diagonals of a mesh pattern.
//!
//! A proper enclosed NE-diagonal is a run of shaded squares
//! `(a+i, b+i)`, `0 <= i <= c`, `c >= 1`, whose shared corners
//! `(a+1, b+1) .. (a+c, b+c)` are exactly the points of `G(p)` on that line
//! segment, with both end corners `(a, b)` and `(a+c+1, b+c+1)` free of
//! points. SE-diagonals are the mirror image, threading the corners
//! `(a+i, b+1-i)` of the squares `(a+i, b-i)`. A length-one enclosed diagonal
//! is a *pointless* square: a shaded square none of whose corners is a point
//! of `G(p)`.
//!
//! The free end corners make every diagonal maximal, and every shaded square
//! belongs to at most one of them.

use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;

use crate::mesh::{contains, square_bit, Mesh, MeshPattern, MeshSquare, Witness};
use crate::perm::Symmetry;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Orientation {
    NorthEast,
    SouthEast,
    /// A single square; it counts as both NE and SE.
    Pointless,
}

impl Orientation {
    pub fn tag(self) -> &'static str {
        match self {
            Orientation::NorthEast => "NE",
            Orientation::SouthEast => "SE",
            Orientation::Pointless => "PT",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EnclosedDiagonal {
    anchor: MeshSquare,
    orientation: Orientation,
    len: usize,
    mesh: Mesh,
}

impl EnclosedDiagonal {
    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    /// First square of the run, `(a, b)`.
    pub fn anchor(&self) -> MeshSquare {
        self.anchor
    }

    /// Number of squares, `c + 1`.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The squares as a mesh over the pattern's grid.
    pub fn mesh(&self) -> Mesh {
        self.mesh
    }

    /// Squares in order along the diagonal, starting at the anchor.
    pub fn squares(&self) -> Vec<MeshSquare> {
        let MeshSquare { col, row } = self.anchor;
        (0..self.len)
            .map(|i| match self.orientation {
                Orientation::SouthEast => MeshSquare::new(col + i, row - i),
                _ => MeshSquare::new(col + i, row + i),
            })
            .collect()
    }
}

impl fmt::Display for EnclosedDiagonal {
    /// `NE (2,0)-(3,1) len=2` or `PT (1,0)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let squares = self.squares();
        match self.orientation {
            Orientation::Pointless => write!(f, "PT {}", squares[0]),
            o => write!(
                f,
                "{} {}-{} len={}",
                o.tag(),
                squares[0],
                squares[squares.len() - 1],
                self.len
            ),
        }
    }
}

/// Every enclosed diagonal of `pi`, sorted by anchor.
pub fn enclosed_diagonals(pi: &MeshPattern) -> Vec<EnclosedDiagonal> {
    let k = pi.len();
    let mesh = pi.mesh();
    let point = |x: usize, y: usize| pi.has_point(x, y);
    let mut out = Vec::new();
    for sq in mesh.squares() {
        let (a, b) = (sq.col, sq.row);
        if !point(a, b) && !point(a + 1, b) && !point(a, b + 1) && !point(a + 1, b + 1) {
            out.push(EnclosedDiagonal {
                anchor: sq,
                orientation: Orientation::Pointless,
                len: 1,
                mesh: Mesh::raw(k, square_bit(k, a, b)),
            });
        }
        if !point(a, b) {
            if let Some(len) = run_length(mesh, a, b, false, &point) {
                let bits = (0..len).fold(0, |acc, i| acc | square_bit(k, a + i, b + i));
                out.push(EnclosedDiagonal {
                    anchor: sq,
                    orientation: Orientation::NorthEast,
                    len,
                    mesh: Mesh::raw(k, bits),
                });
            }
        }
        if !point(a, b + 1) {
            if let Some(len) = run_length(mesh, a, b, true, &point) {
                let bits = (0..len).fold(0, |acc, i| acc | square_bit(k, a + i, b - i));
                out.push(EnclosedDiagonal {
                    anchor: sq,
                    orientation: Orientation::SouthEast,
                    len,
                    mesh: Mesh::raw(k, bits),
                });
            }
        }
    }
    out.sort();
    out
}

/// Length `c + 1 >= 2` of the proper diagonal anchored at the shaded square
/// `(a, b)`, whose starting corner is already known to be free, or `None`.
///
/// Ascending runs thread the corners `(a+i, b+i)`, descending ones
/// `(a+i, b+1-i)`; each threaded corner must be a point and be followed by
/// another shaded square, until a free corner closes the run.
fn run_length(
    mesh: Mesh,
    a: usize,
    b: usize,
    descending: bool,
    point: &impl Fn(usize, usize) -> bool,
) -> Option<usize> {
    let mut c = 0;
    loop {
        let i = c + 1;
        let (corner, next_row) = if descending {
            ((a + i, (b + 1).checked_sub(i)?), b.checked_sub(i))
        } else {
            ((a + i, b + i), Some(b + i))
        };
        if !point(corner.0, corner.1) {
            return (c >= 1).then_some(c + 1);
        }
        if !mesh.contains(a + i, next_row?) {
            return None;
        }
        c = i;
    }
}

/// Square sets of the enclosed diagonals, sorted; orientation is implied by
/// the squares except for pointless ones, which carry both labels.
pub(crate) fn enc_key(pi: &MeshPattern) -> Vec<u64> {
    let mut key: Vec<u64> = enclosed_diagonals(pi)
        .iter()
        .map(|d| d.mesh.bits())
        .collect();
    key.sort_unstable();
    key
}

/// Whether two patterns over the same permutation have the same enclosed
/// diagonals.
pub fn same_enc(pi: &MeshPattern, other: &MeshPattern) -> Result<bool> {
    if pi.perm() != other.perm() {
        return Err(Error::DifferentPermutations);
    }
    Ok(enc_key(pi) == enc_key(other))
}

/// A mesh pattern is coincident with a classical pattern exactly when it has
/// no enclosed diagonal.
pub fn is_coincident_with_classical(pi: &MeshPattern) -> bool {
    enclosed_diagonals(pi).is_empty()
}

/// Image of a mesh pattern under a symmetry.
pub fn apply_symmetry_mesh(s: Symmetry, pi: &MeshPattern) -> MeshPattern {
    pi.transformed(s)
}

/// Builds a permutation of length `k + 1` separating two patterns over the
/// same `p` with different enclosed diagonals.
///
/// Picks a diagonal present in one pattern only (preferring one of `pi`),
/// turning an SE-diagonal into an NE-diagonal by complementing. For an
/// NE-diagonal anchored at `(a, b)` the new letter `b + 1/2` is inserted right
/// after `p(a)`; the result avoids the pattern owning the diagonal and
/// contains the other one. The direction is re-verified before returning.
pub fn enc_witness(pi: &MeshPattern, other: &MeshPattern) -> Result<Witness> {
    if pi.perm() != other.perm() {
        return Err(Error::DifferentPermutations);
    }
    let (enc_a, enc_b) = (enclosed_diagonals(pi), enclosed_diagonals(other));
    let missing_from = |from: &[EnclosedDiagonal], to: &[EnclosedDiagonal]| {
        from.iter()
            .find(|d| to.iter().all(|e| e.mesh != d.mesh))
            .cloned()
    };
    let (owner, diagonal) = match missing_from(&enc_a, &enc_b) {
        Some(d) => (pi, d),
        None => match missing_from(&enc_b, &enc_a) {
            Some(d) => (other, d),
            None => return Err(Error::SameEnclosedDiagonals),
        },
    };

    let q = if diagonal.orientation == Orientation::SouthEast {
        let flipped = owner.transformed(Symmetry::COMPLEMENT);
        let target = diagonal.mesh.transformed(Symmetry::COMPLEMENT);
        let image = enclosed_diagonals(&flipped)
            .into_iter()
            .find(|d| d.mesh == target)
            .ok_or_else(|| Error::WitnessVerification(flipped.to_string()))?;
        debug_assert_eq!(image.orientation, Orientation::NorthEast);
        insert_in_diagonal(&flipped, &image).transformed(Symmetry::COMPLEMENT)
    } else {
        insert_in_diagonal(owner, &diagonal)
    };

    match Witness::check(q.clone(), pi, other) {
        Some(w) if !contains(owner, &w.perm) => Ok(w),
        _ => Err(Error::WitnessVerification(q.to_string())),
    }
}

fn insert_in_diagonal(owner: &MeshPattern, d: &EnclosedDiagonal) -> crate::Permutation {
    let MeshSquare { col, row } = d.anchor;
    owner.perm().insert_above(col, row)
}
