//! Mesh pattern containment and coincidence for permutations.
//!
//! A mesh pattern `(p, R)` is a classical pattern `p` together with a set `R`
//! of unit squares of its `(k+1) x (k+1)` grid. A host permutation contains it
//! when some occurrence of `p` leaves every region corresponding to a square
//! of `R` free of host points. Two mesh patterns are coincident when they are
//! avoided by exactly the same permutations.
//!
//! This crate provides:
//!
//! * [`perm`]: permutations, classical occurrences, the dihedral symmetries.
//! * [`mesh`]: mesh patterns, containment, avoiders and truncated
//!   containment fingerprints.
//! * [`diagonals`]: enclosed diagonals, the classical-coincidence criterion
//!   and distinguishing-permutation construction.
//! * [`shading`]: the single, double and simultaneous shading moves and the
//!   occurrence repair walk behind them.
//! * [`closure`] and [`trace`]: proof graphs over meshes and re-checkable
//!   proof certificates.
//! * [`coincidence`] and [`partition`]: the decision procedure and the
//!   whole-space classifier.
//!
//! The crate is `no_std` and only needs `alloc`.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod closure;
pub mod coincidence;
pub mod diagonals;
mod error;
pub mod mesh;
pub mod partition;
pub mod perm;
pub mod shading;
pub mod trace;
mod unionfind;

pub use closure::{ssl_closure, ClosureResult};
pub use coincidence::{
    classify_family, contains_gamma_oracle, decide_coincidence, decide_coincidence_with,
    gamma_patterns, gamma_rule, isolating_rule, vincular_rule, CoincidenceVerdict, DecideOptions,
    FamilyTags, VerdictStatus,
};
pub use diagonals::{
    enc_witness, enclosed_diagonals, is_coincident_with_classical, same_enc, EnclosedDiagonal,
    Orientation,
};
pub use error::Error;
pub use mesh::{
    avoiders, contains, corresponding_region, default_depth, fingerprint, is_mesh_occurrence,
    mesh_occurrences, ContainmentTable, Fingerprint, Mesh, MeshPattern, MeshSquare, OpenBox,
    Witness, MAX_PATTERN_LEN,
};
pub use partition::{
    partition_meshes, partition_with_fingerprints, ClassStatus, MeshClass, Partition,
    PartitionOptions,
};
pub use perm::{classical_occurrences, Occurrence, Permutation, Permutations, Symmetry};
pub use shading::{
    shadeable_pairs, shadeable_singles, ssl_moves, ssl_repair_occurrence, ssl_repair_path, Corner,
    ShadeMove, ShadeOption, ShadeShape, Side,
};
pub use trace::{ProofStep, ProofTrace, Rule, StepDetail, TraceError};

pub type Result<T> = core::result::Result<T, Error>;
