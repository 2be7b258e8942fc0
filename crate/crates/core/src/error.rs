use crate::report::Report;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("duplicate point label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown point label `{0}`")]
    UnknownLabel(String),
    #[error("assignment sends source point {index} to {image}, but the target has {target_len} points")]
    DanglingPoint {
        index: usize,
        image: usize,
        target_len: usize,
    },
    #[error("not a metric:\n{0}")]
    InvalidMetric(Report),
    #[error("not a submetric:\n{0}")]
    InvalidSubmetric(Report),
    #[error("map is not non-expansive:\n{0}")]
    NotNonExpansive(Report),
    #[error("relation is not a preorder: {0}")]
    NotPreorder(String),
    #[error("{0} space is not separated")]
    NotSeparated(&'static str),
    #[error("composition boundary mismatch: target of the first map differs from source of the second")]
    BoundaryMismatch,
    #[error("maps are not parallel")]
    NotParallel,
    #[error("maps do not share a {0}")]
    NoCommonBoundary(&'static str),
    #[error("square does not commute")]
    NotCommuting,
    #[error("{0} is not an embedding")]
    NotEmbedding(&'static str),
    #[error("{0} is not surjective")]
    NotSurjective(&'static str),
    #[error("cospan is not jointly surjective")]
    NotJointlySurjective,
    #[error("block metric is not reflexive")]
    NotReflexive,
    #[error("block metric is not an equivalence")]
    NotEquivalence,
    #[error("cost matrix is not min-plus idempotent")]
    NotIdempotent,
    #[error("relation is not idempotent")]
    RelationNotIdempotent,
    #[error("pair ({0}, {1}) is not in the relation")]
    PairNotRelated(String, String),
    #[error("operation requires a nonempty base")]
    EmptyBase,
    #[error("search space of {candidates} candidates exceeds the cap of {cap}")]
    CapExceeded { candidates: u128, cap: u128 },
    #[error("invalid generator configuration: {0}")]
    InvalidConfig(&'static str),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
}
