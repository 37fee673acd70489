use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("alphabet size must be at least 2, got {0}")]
    AlphabetTooSmall(u32),
    #[error("symbol {symbol} out of range for alphabet of size {q}")]
    SymbolOutOfRange { symbol: u32, q: u32 },
    #[error("code {code} out of range for {n} wires over alphabet of size {q}")]
    CodeOutOfRange { code: usize, n: usize, q: u32 },
    #[error("table degree {degree} exceeds the supported cap {cap}")]
    DegreeTooLarge { degree: u128, cap: usize },
    #[error("table of length {len} is not a bijection of 0..{len}")]
    NotABijection { len: usize },
    #[error("gate arity must be at least 1")]
    ZeroArity,
    #[error("alphabet mismatch: {0} vs {1}")]
    AlphabetMismatch(u32, u32),
    #[error("arity mismatch: {0} vs {1}")]
    ArityMismatch(usize, usize),
    #[error("word length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("{0} is not a permutation of 0..{1}")]
    NotAWirePermutation(usize, usize),
    #[error("composition overlap {k} out of range 0..={max}")]
    OverlapOutOfRange { k: usize, max: usize },
    #[error("position {pos} out of range for {n} wires")]
    PositionOutOfRange { pos: usize, n: usize },
    #[error("position {0} listed twice")]
    RepeatedPosition(usize),
    #[error("expected {expected} positions, got {got}")]
    PositionCount { expected: usize, got: usize },
    #[error("modulus must be at least 1")]
    ZeroModulus,
    #[error("family base arity {arity} exceeds the {n} available wires")]
    FamilyArityExceedsWires { arity: usize, n: usize },
    #[error("gate is not conservative (weight changes on word code {witness})")]
    NotConservative { witness: usize },
    #[error("generator {index} lies outside the target class (witness word code {witness})")]
    GeneratorOutsideClass { index: usize, witness: usize },
    #[error("target lies outside the requested class (witness word code {witness})")]
    TargetOutsideClass { witness: usize },
    #[error("permutation degree {0} does not match chain degree {1}")]
    DegreeMismatch(usize, usize),
    #[error("permutation is not a member of the group")]
    NotInGroup,
    #[error("no unreachable witness among the candidate classes; the span already covers them")]
    WitnessNotFound,
    #[error("hypergraph has {got} vertices, over the {max} supported for group checks")]
    GraphTooLarge { got: usize, max: usize },
    #[error("hypergraph edge sizes are not uniform")]
    MixedEdgeSizes,
    #[error("hypergraph edge {0:?} is out of the vertex range or has repeated vertices")]
    BadEdge(Vec<usize>),
    #[error("words have different weights, no rotation route can exist")]
    WeightMismatch,
    #[error("need five pairwise distinct words, got a repeat")]
    NeedFiveDistinctWords,
    #[error("symbols do not satisfy the required pattern: {0}")]
    MalformedPattern(String),
    #[error("gate '{0}' has no control structure and cannot be lifted")]
    NotControlled(String),
    #[error("basis is not control-universal for the target class at arity {n}")]
    BasisNotUniversal { n: usize },
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("duplicate gate name '{0}'")]
    DuplicateGateName(String),
    #[error("unknown gate name '{0}'")]
    UnknownGateName(String),
    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),
}
