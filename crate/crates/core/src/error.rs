use alloc::string::String;

/// Errors raised by parsing, validation and the constructive procedures.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("a permutation must have at least one entry")]
    EmptyPermutation,
    #[error("value {value} is outside 1..={len}")]
    ValueOutOfRange { value: usize, len: usize },
    #[error("value {value} appears more than once and value {missing} is missing")]
    DuplicateValue { value: usize, missing: usize },
    #[error("invalid token {0:?}")]
    InvalidToken(String),
    #[error("square ({col},{row}) lies outside the grid of a length-{len} pattern")]
    SquareOutOfGrid { col: usize, row: usize, len: usize },
    #[error("pattern length {0} exceeds the supported maximum of {max}", max = crate::MAX_PATTERN_LEN)]
    PatternTooLong(usize),
    #[error("grid of size {found} does not match a pattern of length {expected}")]
    GridMismatch { expected: usize, found: usize },
    #[error("the patterns have different underlying permutations")]
    DifferentPermutations,
    #[error("the patterns have the same enclosed diagonals")]
    SameEnclosedDiagonals,
    #[error("constructed permutation {0} does not distinguish the patterns")]
    WitnessVerification(String),
    #[error("illegal shading move: {0}")]
    IllegalMove(String),
    #[error("positions do not form an occurrence of the pattern")]
    NotAnOccurrence,
    #[error("occurrence repair did not settle within {0} steps")]
    RepairDiverged(usize),
    #[error("pattern length {len} exceeds the partition bound {max}")]
    PartitionTooLarge { len: usize, max: usize },
}
