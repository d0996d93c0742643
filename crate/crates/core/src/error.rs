use thiserror::Error;

/// Errors produced by parsing, validation preconditions and surgery.
#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("duplicate facet id {id} at line {line}")]
    DuplicateFacetId { id: usize, line: usize },
    #[error("facet ids are not contiguous from 0: missing id {missing}")]
    FacetIdGap { missing: usize },
    #[error("vertex ids are not contiguous from 0: missing id {missing}")]
    VertexIdGap { missing: usize },
    #[error("unknown builtin polytope `{0}`")]
    UnknownBuiltin(String),
    #[error("unknown facet id {0}")]
    UnknownFacet(usize),
    #[error("invalid polytope: {0}")]
    InvalidPolytope(String),
    #[error("operation requires a {expected}-dimensional polytope, got dimension {actual}")]
    Dimension { expected: usize, actual: usize },
    #[error("vertex count {0} is odd; polytope is not simple")]
    OddVertexCount(usize),
    #[error("coloring assigns {assigned} facets but the polytope has {expected}")]
    MissingFacetColor { assigned: usize, expected: usize },
    #[error("coloring lives in GF(2)^{coloring} but the polytope has dimension {polytope}")]
    ColoringDimension { coloring: usize, polytope: usize },
    #[error("color {color} for facet {facet} is out of range 1..{max}")]
    ColorOutOfRange { facet: usize, color: u8, max: u8 },
    #[error("coloring is not characteristic: dependent colors at vertex {vertex}")]
    NotCharacteristic { vertex: usize },
    #[error("cannot double along facet {facet}: {reason}")]
    Double { facet: usize, reason: String },
    #[error("explicit strategy list has {have} entries but depth {depth} needs one per level")]
    StrategyListTooShort { have: usize, depth: usize },
    #[error("constant must be positive, got {0}")]
    NonPositiveConstant(String),
    #[error("{0}")]
    Domain(String),
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
