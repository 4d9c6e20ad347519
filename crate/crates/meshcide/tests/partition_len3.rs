use meshcide::report;
use meshcide_core::{Mesh, PartitionOptions, Permutation};

/// The length-3 partition of 123 separates a pair with equal fingerprints
/// that no implemented rule connects.
#[test]
fn undecided_pair_is_a_conjectured_class() {
    let p: Permutation = "123".parse().unwrap();
    let opts = PartitionOptions {
        n_max: Some(7),
        ..PartitionOptions::default()
    };
    let rep = report::compute(&p, &opts).unwrap();
    assert!(rep.summary.complete);
    assert_eq!(rep.summary.classes, rep.records.len());
    assert!(rep.summary.conjectured > 0);

    let r = Mesh::from_squares(
        3,
        [
            (0, 0),
            (0, 1),
            (1, 0),
            (2, 0),
            (2, 2),
            (3, 0),
            (3, 2),
            (3, 3),
        ],
    )
    .unwrap();
    let r2 = r.with(2, 1);
    let squares = |m: Mesh| meshcide::json::squares(m);
    let class = rep
        .records
        .iter()
        .find(|c| c.meshes.contains(&squares(r)))
        .unwrap();
    assert_eq!(class.status, "CONJECTURED");
    assert!(class.meshes.contains(&squares(r2)));
    let block_of = |m: Mesh| class.blocks.iter().position(|b| b.contains(&squares(m)));
    assert_ne!(block_of(r), block_of(r2));
}
