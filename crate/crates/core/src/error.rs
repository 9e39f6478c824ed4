use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Parse(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("incompatible generators: {0}")]
    IncompatibleGenerators(String),
    #[error("group closure exceeds the order cap of {cap}")]
    CapExceeded { cap: usize },
    #[error("search budget exceeded: {0}")]
    CensusCapExceeded(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("singular matrix")]
    Singular,
    #[error("element is not in the group")]
    ElementNotInGroup,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("subgroup is not central")]
    NotCentral,
    #[error("group is not abelian")]
    NotAbelian,
    #[error("assignment does not extend to a homomorphism")]
    NotAHomomorphism,
    #[error("eigenspaces span dimension {found} of {n}; the conductor is too small")]
    IncompleteSplit { found: usize, n: usize },
    #[error("subspace image is not one of the eigenspaces")]
    NotInvariant,
    #[error("nilpotency class {class:?} exceeds the bound {bound}")]
    ClassTooLarge { class: Option<usize>, bound: usize },
    #[error("class hypothesis violated: {0}")]
    ClassHypothesisViolated(String),
    #[error("automorphism image is not nilpotent of class at most {bound}")]
    GammaNotNilpotent { bound: usize },
    #[error("automorphism image moves roots of unity")]
    RootsOfUnityMoved,
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
