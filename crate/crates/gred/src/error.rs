use thiserror::Error;

use crate::graph::Graph;
use crate::reduction::Rule;

/// Errors reported by graph construction, reduction, and the file loaders.
///
/// Shape mismatches and out-of-range indices in the raw matrix layer are
/// contract violations and panic instead; everything that can be triggered
/// by user-supplied data lands here.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),

    #[error("invalid vertex label `{0}`: labels must be nonempty and free of whitespace, commas and braces")]
    InvalidLabel(String),

    #[error("self-edge on `{0}`: loops are encoded by the + sign, not by edges")]
    SelfEdge(String),

    #[error("adjacency is not symmetric at ({row}, {col})")]
    Asymmetric { row: String, col: String },

    #[error("letter `{letter}` occurs {count} times; every letter of a legal string occurs exactly twice")]
    LetterCount { letter: String, count: usize },

    #[error("vertex set is not reducible: column of `{witness}` lies outside the image of the principal submatrix")]
    NotReducible { witness: String },

    #[error("rule {rule} is not applicable: {reason}")]
    NotApplicable { rule: Rule, reason: String },

    #[error("strategy fails at step {step}: {source}")]
    StrategyFailed {
        /// 0-based index of the first inapplicable rule.
        step: usize,
        /// The graph the failing rule was applied to.
        graph: Box<Graph>,
        source: Box<Error>,
    },

    #[error("matrix is singular (nullity {nullity})")]
    Singular { nullity: usize },

    #[error("matrix pair [A|B] has rank {rank} but needs full row rank {need}")]
    RankDeficient { rank: usize, need: usize },

    #[error("{n} vertices exceeds the cap of {cap} for exhaustive enumeration")]
    TooManyVertices { n: usize, cap: usize },

    #[error("poset member {{{member}}} is not a subset of the ground set")]
    MemberNotInGroundSet { member: String },

    #[error("label `{0}` collides with an existing vertex")]
    LabelCollision(String),

    #[error("census sample count must be positive")]
    EmptySample,

    #[error("edge ({0}, {1}) is not present")]
    MissingEdge(String, String),

    #[error("vertex `{0}` has a loop")]
    LoopedVertex(String),

    #[error("edges share vertex `{0}`")]
    SharedVertex(String),
}

pub type Result<T> = std::result::Result<T, Error>;
