//! Brute-force reference implementations checked against the library.

use meshcide_core::coincidence::{decide_coincidence, VerdictStatus};
use meshcide_core::diagonals::{enclosed_diagonals, same_enc};
use meshcide_core::mesh::{
    contains, fingerprint, is_mesh_occurrence, mesh_occurrences, Mesh, MeshPattern,
};
use meshcide_core::perm::{Occurrence, Permutation, Permutations};
use meshcide_core::shading::{ssl_moves, ssl_repair_path};
use meshcide_core::{classify_family, ssl_closure};

/// Every increasing `k`-subset of `1..=n`.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..=n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, n, k, &mut Vec::new(), &mut out);
    out
}

/// Occurrences straight from the definition: same relative order, and no
/// host point strictly inside the box of any shaded square.
fn naive_occurrences(pi: &MeshPattern, w: &Permutation) -> Vec<Vec<usize>> {
    let k = pi.len();
    let n = w.len();
    let pw = pi.perm().word();
    subsets(n, k)
        .into_iter()
        .filter(|pos| {
            let vals: Vec<usize> = pos.iter().map(|&i| w.word()[i - 1]).collect();
            let order_ok = (0..k).all(|a| (0..k).all(|b| (pw[a] < pw[b]) == (vals[a] < vals[b])));
            if !order_ok {
                return false;
            }
            let mut sorted = vals.clone();
            sorted.sort_unstable();
            let xs: Vec<usize> = [0]
                .into_iter()
                .chain(pos.iter().copied())
                .chain([n + 1])
                .collect();
            let ys: Vec<usize> = [0].into_iter().chain(sorted).chain([n + 1]).collect();
            pi.mesh().squares().all(|sq| {
                (1..=n).all(|x| {
                    let y = w.word()[x - 1];
                    !(xs[sq.col] < x && x < xs[sq.col + 1] && ys[sq.row] < y && y < ys[sq.row + 1])
                })
            })
        })
        .collect()
}

#[test]
fn occurrences_match_definition_for_short_patterns() {
    for k in 1..=2 {
        for p in Permutations::new(k) {
            for m in Mesh::all(k) {
                let pi = MeshPattern::new(p.clone(), m).unwrap();
                for n in 0..=5 {
                    for w in Permutations::new(n) {
                        let got: Vec<Vec<usize>> = mesh_occurrences(&pi, &w)
                            .iter()
                            .map(|o| o.positions().to_vec())
                            .collect();
                        assert_eq!(got, naive_occurrences(&pi, &w), "{pi} in {w}");
                    }
                }
            }
        }
    }
}

#[test]
fn occurrences_match_definition_for_length_three_sample() {
    let p: Permutation = "231".parse().unwrap();
    for bits in (0u64..1 << 16).step_by(97) {
        let pi = MeshPattern::new(p.clone(), Mesh::from_bits(3, bits).unwrap()).unwrap();
        for w in Permutations::new(6) {
            assert_eq!(
                contains(&pi, &w),
                !naive_occurrences(&pi, &w).is_empty(),
                "{pi} in {w}"
            );
        }
    }
}

#[test]
fn occurrence_type_rejects_unsorted_positions() {
    assert!(Occurrence::new(vec![3, 1]).is_err());
    assert!(Occurrence::new(vec![1, 3]).is_ok());
}

/// Two meshes over the same permutation agreeing through length `k + 3` share
/// their enclosed diagonals.
#[test]
fn equal_fingerprints_imply_equal_enc() {
    for k in 1..=2 {
        for p in Permutations::new(k) {
            let meshes: Vec<(Mesh, _)> = Mesh::all(k)
                .map(|m| {
                    (
                        m,
                        fingerprint(&MeshPattern::new(p.clone(), m).unwrap(), k + 3),
                    )
                })
                .collect();
            for (a, fa) in &meshes {
                for (b, fb) in &meshes {
                    if fa == fb {
                        let pa = MeshPattern::new(p.clone(), *a).unwrap();
                        let pb = MeshPattern::new(p.clone(), *b).unwrap();
                        assert!(same_enc(&pa, &pb).unwrap(), "{pa} vs {pb}");
                    }
                }
            }
        }
    }
}

/// For every length-5 vincular pair over one permutation, same enclosed
/// diagonals forces identical meshes.
#[test]
fn long_vincular_patterns_are_determined_by_enc() {
    let p: Permutation = "25314".parse().unwrap();
    let mut seen = std::collections::BTreeMap::new();
    for col in 0u64..1 << 6 {
        let mut squares = Vec::new();
        for a in 0..6 {
            if col >> a & 1 == 1 {
                squares.extend((0..6).map(|b| (a, b)));
            }
        }
        let pi = MeshPattern::from_squares(p.clone(), squares).unwrap();
        assert!(classify_family(&pi).vincular);
        let enc: Vec<String> = enclosed_diagonals(&pi)
            .iter()
            .map(|d| d.to_string())
            .collect();
        if let Some(prev) = seen.insert(enc, pi.mesh()) {
            panic!("{prev} and {} share enc", pi.mesh());
        }
    }
}

/// Isolating meshes over 213 with equal enclosed diagonals are proven
/// coincident, and the proofs agree with fingerprints.
#[test]
fn isolating_scan_over_213() {
    let p: Permutation = "213".parse().unwrap();
    let isolating: Vec<MeshPattern> = Mesh::all(3)
        .map(|m| MeshPattern::new(p.clone(), m).unwrap())
        .filter(|pi| classify_family(pi).isolating)
        .collect();
    assert!(!isolating.is_empty());
    let mut proven = 0;
    for a in &isolating {
        for b in &isolating {
            if a.mesh() >= b.mesh() || !same_enc(a, b).unwrap() {
                continue;
            }
            let v = decide_coincidence(a, b, 6);
            assert_eq!(v.status, VerdictStatus::ProvenCoincident, "{a} vs {b}");
            assert!(v.trace.unwrap().proves(a, b));
            assert_eq!(fingerprint(a, 6), fingerprint(b, 6));
            proven += 1;
        }
    }
    assert!(proven > 0);
}

/// The class of 231 with {(1,0),(3,1),(3,2)} has two set-minimal members.
/// Shading only grows meshes, so both are seeded and must merge.
#[test]
fn class_with_two_minimal_members() {
    let p: Permutation = "231".parse().unwrap();
    let seed = Mesh::from_squares(3, [(1, 0), (3, 1), (3, 2)]).unwrap();
    let other = Mesh::from_squares(3, [(1, 0), (1, 1), (3, 2)]).unwrap();
    let result = ssl_closure(&p, &[seed, other], 1_000_000);
    assert!(result.is_complete());
    assert!(result.same_class(seed, other));
    let class = result.class_of(seed).unwrap();
    let minimal: Vec<Mesh> = class
        .iter()
        .copied()
        .filter(|&m| !class.iter().any(|&o| o != m && o.is_subset(m)))
        .collect();
    assert_eq!(minimal.len(), 2, "{minimal:?}");
    assert!(minimal.contains(&seed) && minimal.contains(&other));
    let fp = fingerprint(&MeshPattern::new(p.clone(), seed).unwrap(), 6);
    for &m in &class {
        assert_eq!(fingerprint(&MeshPattern::new(p.clone(), m).unwrap(), 6), fp);
    }
}

/// Runs the repair walk for up to `max_moves` evenly spaced moves of `pi`.
fn check_repairs(pi: &MeshPattern, hosts: &[Permutation], max_moves: usize) -> usize {
    let all = ssl_moves(pi);
    let moves: Vec<_> = all
        .iter()
        .step_by(all.len().div_ceil(max_moves).max(1))
        .collect();
    let mut walks = 0;
    for w in hosts {
        for occ in mesh_occurrences(pi, w) {
            for &mv in &moves {
                let shaded = pi.with_mesh(pi.mesh().union(mv.added()));
                let path = ssl_repair_path(pi, mv, w, &occ)
                    .unwrap_or_else(|e| panic!("{pi} by {mv} in {w} from {occ}: {e}"));
                assert!(path.len() <= 2 * pi.len() * w.len() + 1);
                assert!(is_mesh_occurrence(&shaded, w, path.last().unwrap()));
                walks += 1;
            }
        }
    }
    walks
}

#[test]
fn repair_walks_end_on_shaded_occurrences() {
    let hosts: Vec<Permutation> = (1..=6).flat_map(Permutations::new).collect();
    let mut walks = 0;
    for k in 1..=2 {
        for p in Permutations::new(k) {
            for m in Mesh::all(k) {
                walks +=
                    check_repairs(&MeshPattern::new(p.clone(), m).unwrap(), &hosts, usize::MAX);
            }
        }
    }
    assert!(walks > 0);
}

#[test]
fn repair_walks_for_length_three_sample() {
    let hosts: Vec<Permutation> = Permutations::new(6).collect();
    for p in Permutations::new(3) {
        for bits in (0u64..1 << 16).step_by(647) {
            let pi = MeshPattern::new(p.clone(), Mesh::from_bits(3, bits).unwrap()).unwrap();
            check_repairs(&pi, &hosts, 24);
        }
    }
}
