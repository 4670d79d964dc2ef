use thiserror::Error;

use crate::linalg::LinalgError;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Linalg(#[from] LinalgError),

    #[error("representations live over different algebras")]
    AlgebraMismatch,

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),

    #[error("relation {index} ({relation}) does not vanish")]
    RelationViolated { index: usize, relation: String },

    #[error("morphism squares do not commute at arrow {0}")]
    NotAMorphism(String),

    #[error("subspaces are not stable under arrow {0}")]
    NotArrowStable(String),

    #[error("{what}: {value} exceeds the configured cap {cap}")]
    CapExceeded { what: &'static str, value: usize, cap: usize },

    #[error("module with dimension vector {dims:?} does not decompose over the catalog (incomplete catalog?)")]
    UnknownModule { dims: Vec<usize> },

    #[error("catalog entries {0} and {1} are isomorphic")]
    DuplicateIso(String, String),

    #[error("catalog entries {0} and {1} have the same dimension vector and Hom profile")]
    ProfileCollision(String, String),

    #[error("catalog entry {0} is decomposable")]
    Decomposable(String),

    #[error("catalog entry {0} has an endomorphism ring whose residue field is larger than the prime field")]
    NonSplitEndomorphisms(String),

    #[error("catalog is empty")]
    EmptyCatalog,

    #[error("catalog has {0} indecomposables; subcategory bitsets support at most 64")]
    CatalogTooLarge(usize),

    #[error("unknown catalog name {0:?}")]
    UnknownName(String),

    #[error("invalid builtin descriptor {0:?}: {1}")]
    InvalidBuiltin(String, String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("subcategory is not a torsion-free class")]
    NotTorsionFree,

    #[error("strategy {strategy} is not available for {kind}")]
    StrategyMismatch { strategy: &'static str, kind: &'static str },

    #[error("{file}:{line}:{column}: {message}")]
    Parse {
        file: String,
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{file}: {source}")]
    InFile {
        file: String,
        #[source]
        source: Box<Error>,
    },

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
