use thiserror::Error;

/// Errors raised by the compute modules.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot compose {first} with {second}: target {target} does not match source {source_level}")]
    Composition {
        first: String,
        second: String,
        target: usize,
        source_level: usize,
    },
    #[error("index {index} out of range 1..={level}")]
    IndexOutOfRange { index: usize, level: usize },
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),
    #[error("enumeration of {requested} candidates exceeds the guard of {guard}")]
    GuardExceeded { requested: u128, guard: u64 },
    #[error("arity {arity} exceeds the truncation level {max_level}")]
    Truncation { arity: usize, max_level: usize },
    #[error("max level {0} is below the required minimum of 2")]
    LevelTooLow(usize),
    #[error("invalid monoid: {0}")]
    InvalidMonoid(String),
    #[error("invalid hyper-operation table: {0}")]
    InvalidTable(String),
    #[error("invalid gamma-set: {0}")]
    InvalidGammaSet(String),
    #[error("subobject is not closed under {morphism}: element {element} of level {level} leaves the subobject")]
    NotActionClosed {
        morphism: String,
        level: usize,
        element: String,
    },
    #[error("map is not additive: {c} lies in {a} + {b} but g({c}) != g({a}) + g({b})")]
    NotAdditive { a: String, b: String, c: String },
    #[error("map is not pointed: the basepoint maps to {0}")]
    NotPointed(String),
    #[error("gamma-maps do not match: {0}")]
    MapMismatch(String),
    #[error("unknown label {label:?} at level {level}")]
    UnknownLabel { label: String, level: usize },
    #[error("invalid parenthesization: {0}")]
    InvalidShape(String),
    #[error("internal consistency failure: {0}")]
    Consistency(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

pub type Result<T> = std::result::Result<T, Error>;
