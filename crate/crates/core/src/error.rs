use thiserror::Error;

/// What went wrong while reading one of the text input formats.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("malformed line: {0}")]
    Malformed(String),
    #[error("missing header line \"p <n> <m>\"")]
    MissingHeader,
    #[error("loop edge at vertex {0}")]
    Loop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("vertex {0} out of range")]
    OutOfRange(usize),
    #[error("header announced {expected} edges, found {found}")]
    EdgeCount { expected: usize, found: usize },
    #[error("no such edge ({0}, {1}) in the graph")]
    NoSuchEdge(usize, usize),
    #[error("vertex {0} listed twice")]
    DuplicateVertex(usize),
    #[error("negative value for vertex {0}")]
    NegativeValue(usize),
    #[error("vertex {0} uncovered")]
    MissingVertex(usize),
}

/// Parse failure, with the 1-based line number when one applies.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{}{kind}", line.map(|l| format!("line {l}: ")).unwrap_or_default())]
pub struct ParseError {
    pub line: Option<usize>,
    pub kind: ParseErrorKind,
}

impl ParseError {
    pub(crate) fn at(line: usize, kind: ParseErrorKind) -> Self {
        Self { line: Some(line), kind }
    }

    pub(crate) fn global(kind: ParseErrorKind) -> Self {
        Self { line: None, kind }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("invalid graph: {0}")]
    InvalidGraph(ParseErrorKind),
    #[error("function has {found} values, graph has {expected} vertices")]
    LengthMismatch { expected: usize, found: usize },
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("edge index {0} out of range")]
    EdgeOutOfRange(usize),
    #[error("sets S and T share vertex {0}")]
    NotDisjoint(usize),
    #[error("g({vertex}) = {g} exceeds f({vertex}) = {f}")]
    BoundsOrder { vertex: usize, g: u32, f: u32 },
    #[error("{role}({vertex}) = 0 but a positive value is required")]
    NotPositive { vertex: usize, role: &'static str },
    #[error("hypothesis violated at vertex {vertex}: {detail}")]
    Hypothesis { vertex: usize, detail: String },
    #[error("r({vertex}) = {value} exceeds the degree {degree}")]
    ExceedsDegree { vertex: usize, value: u32, degree: usize },
    #[error("canonical mode without H requires an empty H, got {0} edges")]
    NonEmptySubgraph(usize),
    #[error("guard exceeded: {what} needs {needed}, limit is {limit}")]
    Guard {
        what: &'static str,
        needed: u128,
        limit: u128,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
