use std::collections::BTreeSet;

use meshcide_core::coincidence::{decide_coincidence, VerdictStatus};
use meshcide_core::diagonals::{enclosed_diagonals, same_enc};
use meshcide_core::mesh::{contains, is_mesh_occurrence, mesh_occurrences, Mesh, MeshPattern};
use meshcide_core::perm::{Permutation, Permutations, Symmetry};
use meshcide_core::shading::{
    shadeable_pairs, shadeable_singles, ssl_moves, ssl_repair_occurrence,
};
use meshcide_core::ssl_closure;
use proptest::prelude::*;

fn permutation(max: usize) -> impl Strategy<Value = Permutation> {
    (1..=max)
        .prop_flat_map(|n| Just((1..=n).collect::<Vec<_>>()).prop_shuffle())
        .prop_map(|w| Permutation::new(w).unwrap())
}

fn pattern(max: usize) -> impl Strategy<Value = MeshPattern> {
    permutation(max).prop_flat_map(|p| {
        let k = p.len();
        any::<u64>().prop_map(move |bits| {
            let bits = bits & ((1u64 << ((k + 1) * (k + 1))) - 1);
            MeshPattern::new(p.clone(), Mesh::from_bits(k, bits).unwrap()).unwrap()
        })
    })
}

fn symmetry() -> impl Strategy<Value = Symmetry> {
    (0..8usize).prop_map(|i| Symmetry::ALL[i])
}

fn option_set(pi: &MeshPattern, s: Symmetry) -> BTreeSet<((usize, usize), u64)> {
    let k = pi.len();
    shadeable_singles(pi)
        .into_iter()
        .chain(shadeable_pairs(pi))
        .map(|o| {
            (
                s.map_point(o.point.0, o.point.1, k),
                o.squares.transformed(s).bits(),
            )
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn containment_is_symmetry_equivariant(pi in pattern(3), w in permutation(7), s in symmetry()) {
        prop_assert_eq!(contains(&pi, &w), contains(&pi.transformed(s), &w.transformed(s)));
    }

    #[test]
    fn more_shading_is_harder_to_contain(pi in pattern(3), extra in any::<u64>(), w in permutation(7)) {
        let k = pi.len();
        let extra = Mesh::from_bits(k, extra & ((1u64 << ((k + 1) * (k + 1))) - 1)).unwrap();
        let heavier = pi.with_mesh(pi.mesh().union(extra));
        if contains(&heavier, &w) {
            prop_assert!(contains(&pi, &w));
        }
    }

    #[test]
    fn enc_is_symmetry_equivariant(pi in pattern(4), s in symmetry()) {
        let image = pi.transformed(s);
        prop_assert_eq!(enclosed_diagonals(&pi).len(), enclosed_diagonals(&image).len());
        let moved: BTreeSet<u64> = enclosed_diagonals(&pi)
            .iter()
            .map(|d| d.mesh().transformed(s).bits())
            .collect();
        let direct: BTreeSet<u64> = enclosed_diagonals(&image).iter().map(|d| d.mesh().bits()).collect();
        prop_assert_eq!(moved, direct);
    }

    #[test]
    fn shading_moves_keep_enc(pi in pattern(3)) {
        for mv in ssl_moves(&pi) {
            let shaded = pi.with_mesh(pi.mesh().union(mv.added()));
            prop_assert!(same_enc(&pi, &shaded).unwrap(), "{} by {}", pi, mv);
        }
    }

    #[test]
    fn shading_options_are_conjugation_consistent(pi in pattern(3), s in symmetry()) {
        let image = pi.transformed(s);
        prop_assert_eq!(option_set(&pi, s), option_set(&image, Symmetry::IDENTITY));
        let moved: BTreeSet<u64> = ssl_moves(&pi).iter().map(|m| m.added().transformed(s).bits()).collect();
        let direct: BTreeSet<u64> = ssl_moves(&image).iter().map(|m| m.added().bits()).collect();
        prop_assert_eq!(moved, direct);
    }

    #[test]
    fn repair_terminates_on_a_shaded_occurrence(pi in pattern(3), w in permutation(7), pick in any::<usize>()) {
        let moves = ssl_moves(&pi);
        let occurrences = mesh_occurrences(&pi, &w);
        if !moves.is_empty() && !occurrences.is_empty() {
            let mv = &moves[pick % moves.len()];
            let occ = &occurrences[(pick / moves.len()) % occurrences.len()];
            let end = ssl_repair_occurrence(&pi, mv, &w, occ).unwrap();
            let shaded = pi.with_mesh(pi.mesh().union(mv.added()));
            prop_assert!(is_mesh_occurrence(&shaded, &w, &end));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn closure_certificates_verify(pi in pattern(2)) {
        let result = ssl_closure(pi.perm(), &[pi.mesh()], 1_000_000);
        let class = result.class_of(pi.mesh()).unwrap();
        for &m in &class {
            let trace = result.trace(pi.mesh(), m).unwrap();
            prop_assert!(trace.proves(&pi, &pi.with_mesh(m)));
        }
    }

    #[test]
    fn verdicts_carry_valid_evidence(a in pattern(2), bits in any::<u64>()) {
        let k = a.len();
        let b = a.with_mesh(Mesh::from_bits(k, bits & ((1u64 << ((k + 1) * (k + 1))) - 1)).unwrap());
        let v = decide_coincidence(&a, &b, 6);
        match v.status {
            VerdictStatus::Refuted => prop_assert!(v.witness.unwrap().verify(&a, &b)),
            VerdictStatus::ProvenCoincident => prop_assert!(v.trace.unwrap().proves(&a, &b)),
            VerdictStatus::ProvenEqual => prop_assert_eq!(a, b),
            VerdictStatus::Undecided => {}
        }
    }
}

#[test]
fn verdicts_are_symmetry_invariant_for_length_one() {
    let p = Permutation::identity(1);
    let all: Vec<MeshPattern> = Mesh::all(1)
        .map(|m| MeshPattern::new(p.clone(), m).unwrap())
        .collect();
    for a in &all {
        for b in &all {
            let status = decide_coincidence(a, b, 6).status;
            for s in Symmetry::ALL {
                let image = decide_coincidence(&a.transformed(s), &b.transformed(s), 6).status;
                assert_eq!(status, image, "{a} vs {b} under {s}");
            }
        }
    }
}

#[test]
fn verdicts_are_symmetry_invariant_for_length_two_sample() {
    let all: Vec<MeshPattern> = Permutations::new(2)
        .flat_map(|p| Mesh::all(2).map(move |m| MeshPattern::new(p.clone(), m).unwrap()))
        .collect();
    for (i, a) in all.iter().enumerate().step_by(37) {
        for b in all.iter().skip(i % 11).step_by(53) {
            let status = decide_coincidence(a, b, 6).status;
            for s in Symmetry::ALL {
                let image = decide_coincidence(&a.transformed(s), &b.transformed(s), 6).status;
                assert_eq!(status, image, "{a} vs {b} under {s}");
            }
        }
    }
}
