use thiserror::Error;

/// Why an instance falls outside the class handled by the pattern formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Unsupported {
    /// Two consecutive interior spine vertices without pendant leaves.
    AdjacentTrunks { index: usize },
    /// A caterpillar of length zero, i.e. a star.
    Star,
}

impl std::fmt::Display for Unsupported {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Unsupported::AdjacentTrunks { index } => {
                write!(
                    f,
                    "adjacent trunks at spine indices {} and {}",
                    index,
                    index + 1
                )
            }
            Unsupported::Star => f.write_str("caterpillar of length 0 (star)"),
        }
    }
}

impl Unsupported {
    /// Stable machine-readable tag.
    pub fn code(&self) -> &'static str {
        match self {
            Unsupported::AdjacentTrunks { .. } => "adjacent_trunks",
            Unsupported::Star => "star",
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid caterpillar: {0}")]
    InvalidCaterpillar(String),
    #[error("invalid tree: {0}")]
    InvalidTree(String),
    #[error("broadcast has {got} values but the tree has {expected} vertices")]
    DomainMismatch { expected: usize, got: usize },
    #[error("broadcast is not valid: f({vertex}) = {value} exceeds eccentricity {eccentricity}")]
    InvalidBroadcast {
        vertex: usize,
        value: u32,
        eccentricity: u32,
    },
    #[error("broadcast is not independent: vertices {0} and {1} conflict")]
    NotIndependent(usize, usize),
    #[error("unsupported instance: {0}")]
    Unsupported(Unsupported),
    #[error("oracle budget exceeded: {needed} {what} but the budget is {budget}")]
    BudgetExceeded {
        what: &'static str,
        needed: usize,
        budget: usize,
    },
    #[error("occurrence does not belong to the {0} pattern family")]
    WrongPatternFamily(&'static str),
    #[error("invalid sweep parameters: {0}")]
    InvalidParams(String),
    #[error("pattern syntax error at byte {pos}: {msg}")]
    PatternSyntax { pos: usize, msg: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
