use thiserror::Error;

/// Everything that can go wrong in the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank {0} is outside the supported range 1..=26")]
    InvalidRank(usize),
    #[error("letter {letter} is not in the alphabet of rank {rank}")]
    InvalidLetter { letter: i32, rank: usize },
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("integer overflow in exponent arithmetic")]
    Overflow,
    #[error("all generators are trivial")]
    TrivialSubgroup,
    #[error("word is not a member of the subgroup")]
    NotAMember,
    #[error("subgroup has infinite index; no coset action")]
    NotACovering,
    #[error("permutation action is not transitive")]
    NotConnected,
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("edge set is not a spanning tree: {0}")]
    NotASpanningTree(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("the identity word is not allowed here")]
    TrivialWord,
    #[error("parameter out of range: {0}")]
    Parameter(String),
    #[error("section property fails: {0}")]
    SectionProperty(String),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
}

pub type Result<T> = std::result::Result<T, Error>;
