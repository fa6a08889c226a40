use thiserror::Error;

/// Errors surfaced by validating constructors and deciders.
///
/// Element and state references are reported by index into the structure
/// that rejected them; callers that know the element names should render
/// them before display.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("multiplication table is not associative at ({x}, {y}, {z})")]
    NotAssociative { x: usize, y: usize, z: usize },
    #[error("claimed identity fails at element {x}")]
    BadIdentity { x: usize },
    #[error("table is not square or indexes out of range")]
    MalformedTable,
    #[error("generator {index} is not a function on {q} states")]
    BadGenerator { index: usize, q: usize },
    #[error("alphabets disagree: {left} vs {right} symbols")]
    AlphabetMismatch { left: usize, right: usize },
    #[error("automaton is not deterministic (state {state}, symbol {symbol})")]
    NotDeterministic { state: usize, symbol: usize },
    #[error("operands belong to different monoids")]
    MonoidMismatch,
    #[error("expression or component evaluates to {found}, which is not idempotent")]
    NotIdempotent { found: usize },
    #[error("components evaluate to different elements: {first} vs {other}")]
    UnequalEvaluations { first: usize, other: usize },
    #[error("monoid is not totally ordered (witness pair ({a}, {b}))")]
    NotTotallyOrdered { a: usize, b: usize },
    #[error("witness pair ({a}, {b}) does not violate total ordering")]
    WitnessInvalid { a: usize, b: usize },
    #[error("no selection set at the least common ancestor {vertex}")]
    MuMissingAtLca { vertex: usize },
    #[error("forest path context mismatch: expected ({a}, {b})")]
    ContextMismatch { a: usize, b: usize },
    #[error("structure too large for brute-force search: {size} nodes (cap {cap})")]
    TooLarge { size: usize, cap: usize },
    #[error("enumeration exceeds cap of {cap} words")]
    EnumerationCap { cap: usize },
    #[error("state cap exceeded: reached {states} states (cap {cap})")]
    ResourceCap { states: usize, cap: usize },
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("{0}")]
    Invalid(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }
}
