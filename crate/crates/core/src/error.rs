use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown point `{0}`")]
    UnknownPoint(String),
    #[error("duplicate point `{0}`")]
    DuplicatePoint(String),
    #[error("order relation has a cycle through `{0}`")]
    Cycle(String),
    #[error("{what}: {size} exceeds the cap of {cap}")]
    CapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("not a lattice: `{0}` and `{1}` have no {2}")]
    NotALattice(String, String, &'static str),
    #[error("not a lattice: no elements")]
    EmptyLattice,
    #[error("declared {0} `{1}` is not the {0} of the order")]
    MissingBound(&'static str, String),
    #[error("invalid objects: {0}")]
    InvalidObjects(String),
    #[error("augmentation needs at least one atom label")]
    EmptyLabels,
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("augmentation needs a lattice with bottom distinct from top")]
    TrivialBase,
    #[error("relabeling is not a bijection: {0}")]
    NotABijection(String),
    #[error("lattice has no classified provenance")]
    NotClassified,
    #[error("classification unavailable: {0}")]
    ClassificationUnavailable(String),
    #[error("invalid local type `{0}`")]
    InvalidTag(String),
    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
}

impl Error {
    /// True for errors caused by a resource cap rather than malformed input.
    pub fn is_cap(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
