use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("element {element} is outside the ground set of size {ground_size}")]
    ElementOutOfRange { element: usize, ground_size: usize },

    #[error("matroid has loops {0:?}; a loopless matroid is required")]
    HasLoops(Vec<usize>),

    #[error("{what}: {size} elements exceeds the enumeration bound {bound}")]
    SizeBound {
        what: &'static str,
        size: usize,
        bound: usize,
    },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("graph is not {required}-edge-connected: {detail}")]
    Connectivity { required: usize, detail: String },

    #[error("cannot cover the ground set with {k} independent sets: witness {witness:?} has rank {rank}")]
    InfeasibleCover {
        k: usize,
        witness: Vec<usize>,
        rank: usize,
    },

    #[error("algorithm {algorithm} tried to accept element {element}, making the accepted set dependent")]
    ContractViolation { algorithm: String, element: usize },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("io error on {path}: {message}")]
    Io { path: String, message: String },

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_elements(set: &[usize], ground_size: usize) -> Result<()> {
    match set.iter().find(|&&e| e >= ground_size) {
        Some(&element) => Err(Error::ElementOutOfRange {
            element,
            ground_size,
        }),
        None => Ok(()),
    }
}
