use std::fmt;

use thiserror::Error;

use crate::poset::Chain;

/// Which bound operation failed in a [`Error::NotLattice`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    Meet,
    Join,
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundKind::Meet => f.write_str("meet"),
            BoundKind::Join => f.write_str("join"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("empty poset: at least one element is required")]
    Empty,

    #[error("element id {id} out of range for {n} elements{}", context_suffix(.context))]
    Bounds {
        id: usize,
        n: usize,
        context: Option<String>,
    },

    #[error("edges contain a cycle through elements {0:?}")]
    Cycle(Vec<usize>),

    #[error("edge ({0}, {1}) is implied by other edges")]
    RedundantEdge(usize, usize),

    #[error("invalid labels: {0}")]
    Labels(String),

    #[error("{what} limit of {limit} exceeded")]
    Limit { what: &'static str, limit: usize },

    #[error("elements {0} and {1} are not in the required order")]
    NotComparable(usize, usize),

    #[error("{kind}({x}, {y}) is not defined: extremal bounds {bounds:?}")]
    NotLattice {
        kind: BoundKind,
        x: usize,
        y: usize,
        bounds: Vec<usize>,
    },

    #[error("interval [{x}, {y}] is not graded: chains {short} and {long}")]
    NotGraded {
        x: usize,
        y: usize,
        short: Chain,
        long: Chain,
    },

    #[error("poset has no least element")]
    NoLeastElement,

    #[error("not semimodular: {x} covers {x}∧{y} but {x}∨{y} does not cover {y}")]
    NotSemimodular { x: usize, y: usize },

    #[error("set is not an antichain: {0} < {1}")]
    NotAntichain(usize, usize),

    #[error("set {0:?} is a level class")]
    IsLevelClass(Vec<usize>),

    #[error("set is empty")]
    EmptySet,

    #[error("not a maximal chain: {0}")]
    InvalidChain(String),

    #[error("invalid generator parameters: {0}")]
    Param(String),

    #[error("generated poset would have {size} elements (cap {cap})")]
    Size { size: usize, cap: usize },

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

fn context_suffix(context: &Option<String>) -> String {
    match context {
        Some(c) => format!(" (at {c})"),
        None => String::new(),
    }
}

impl Error {
    pub(crate) fn bounds(id: usize, n: usize) -> Self {
        Error::Bounds {
            id,
            n,
            context: None,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
