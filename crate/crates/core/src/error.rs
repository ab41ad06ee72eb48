use thiserror::Error;

/// Errors produced by the library.
///
/// Every variant maps to a stable code (see [`Error::code`]) that the command
/// line front end prints as `ERROR <code>: <detail>`.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {detail}")]
    MalformedLine { line: usize, detail: String },
    #[error("edge {u} {v} appears more than once")]
    DuplicateEdge { u: String, v: String },
    #[error("edge {vertex} {vertex} is a loop")]
    LoopEdge { vertex: String },
    #[error("vertex {vertex} has degree {degree} but there are {colors} colors")]
    NotRegular {
        vertex: String,
        degree: usize,
        colors: usize,
    },
    #[error("vertex {vertex} has colors {{{colors}}}")]
    NotProperlyColored { vertex: String, colors: String },
    #[error("graph has {components} connected components")]
    NotConnected { components: usize },
    #[error("{colors} colors requested, at most 64 are supported")]
    TooManyColors { colors: usize },
    #[error("{0}")]
    Infeasible(String),
    #[error("{what} is {size}, budget is {limit}")]
    ScaleExceeded {
        what: &'static str,
        size: u128,
        limit: u128,
    },
    #[error("{0}")]
    NotAPolytope(String),
    #[error("{0}")]
    MalformedPolytope(String),
    #[error("generator {index} is not an involution")]
    NotInvolution { index: usize },
    #[error("generator {index} repeats generator {earlier}")]
    DuplicateGenerator { index: usize, earlier: usize },
    #[error("{0}")]
    DoesNotGenerate(String),
    #[error("{0}")]
    HypothesisViolated(String),
    #[error("polytope has rank {rank}, expected 3")]
    NotRankThree { rank: usize },
    #[error("{0}")]
    InvariantViolated(String),
}

impl Error {
    /// Stable machine-readable name of the error kind.
    pub fn code(&self) -> &'static str {
        match self {
            Error::MalformedLine { .. } => "MalformedLine",
            Error::DuplicateEdge { .. } => "DuplicateEdge",
            Error::LoopEdge { .. } => "LoopEdge",
            Error::NotRegular { .. } => "NotRegular",
            Error::NotProperlyColored { .. } => "NotProperlyColored",
            Error::NotConnected { .. } => "NotConnected",
            Error::TooManyColors { .. } => "TooManyColors",
            Error::Infeasible(_) => "Infeasible",
            Error::ScaleExceeded { .. } => "ScaleExceeded",
            Error::NotAPolytope(_) => "NotAPolytope",
            Error::MalformedPolytope(_) => "MalformedPolytope",
            Error::NotInvolution { .. } => "NotInvolution",
            Error::DuplicateGenerator { .. } => "DuplicateGenerator",
            Error::DoesNotGenerate(_) => "DoesNotGenerate",
            Error::HypothesisViolated(_) => "HypothesisViolated",
            Error::NotRankThree { .. } => "NotRankThree",
            Error::InvariantViolated(_) => "InvariantViolated",
        }
    }

    pub(crate) fn scale(what: &'static str, size: impl Into<u128>, limit: impl Into<u128>) -> Self {
        Error::ScaleExceeded {
            what,
            size: size.into(),
            limit: limit.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
