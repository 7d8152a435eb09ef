use thiserror::Error;

use crate::matroid::AxiomViolation;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ground set has {0} elements; at most {max} are supported", max = crate::subset::MAX_ELEMENTS)]
    TooManyElements(usize),

    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),

    #[error("unknown label `{label}`{}", context_suffix(.context))]
    UnknownLabel { label: String, context: String },

    #[error("duplicate set {set}{}", context_suffix(.context))]
    DuplicateSet { set: String, context: String },

    #[error("element index {0} is outside the ground set")]
    IndexOutOfRange(usize),

    #[error("family must contain at least one set")]
    EmptyFamily,

    #[error("lattice must contain at least one element")]
    EmptyLattice,

    #[error("unknown lattice element `{0}`")]
    UnknownName(String),

    #[error("cover relation contains a cycle through `{0}`")]
    CyclicCovers(String),

    #[error("`{x}` and `{y}` have no unique {bound}")]
    NotALattice {
        x: String,
        y: String,
        bound: &'static str,
    },

    #[error("axiom violation: {0}")]
    Axiom(AxiomViolation),

    #[error("ground set has {size} elements; subset enumeration is capped at {cap}")]
    GroundSetTooLarge { size: usize, cap: usize },

    #[error("instance too large for exhaustive search ({size} elements, cap {cap})")]
    TooLarge { size: usize, cap: usize },

    #[error("{0} cyclic flats exceed the antichain enumeration cap")]
    TooManyCyclicFlats(usize),

    #[error("contract and delete sets overlap")]
    OverlappingMinorSpec,

    #[error("ground sets overlap on `{0}`")]
    OverlappingGroundSets(String),

    #[error("label `{0}` is already in use")]
    LabelInUse(String),

    #[error("cannot relax {0}: {1}")]
    NotRelaxable(String, &'static str),

    #[error("truncation of a rank-zero matroid")]
    RankZero,

    #[error("rank-generating matrix dimensions do not match: {0}")]
    DimensionMismatch(String),

    #[error("matroid is not nested: its cyclic flats do not form a chain")]
    NotNested,

    #[error("chain of cyclic flats has {len} members; need at least {needed}")]
    ChainTooShort { len: usize, needed: usize },

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("unknown catalog entry `{0}`")]
    UnknownCatalogName(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

fn context_suffix(context: &str) -> String {
    if context.is_empty() {
        String::new()
    } else {
        format!(" (in {context})")
    }
}
