use thiserror::Error;

/// Errors raised by the algebra, cohomology and search routines.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input: bad indices, zero coefficients, length mismatches,
    /// degrees out of range.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The structure constants define a Lie algebra whose lower central series
    /// stabilizes above zero.
    #[error("algebra is not nilpotent: lower central series dims {dims:?} stabilize above 0")]
    NotNilpotent { dims: Vec<usize> },

    /// The Jacobi identity fails for at least one basis triple (1-based).
    #[error("Jacobi identity fails on {} basis triple(s), first {:?}", .triples.len(), .triples.first())]
    Jacobi { triples: Vec<(usize, usize, usize)> },

    /// An operation was called on an input violating its precondition.
    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unknown algebra {name:?}{}", suggestion_suffix(.suggestions))]
    UnknownAlgebra {
        name: String,
        suggestions: Vec<String>,
    },

    #[error("parse error: {0}")]
    Parse(String),
}

fn suggestion_suffix(suggestions: &[String]) -> String {
    if suggestions.is_empty() {
        String::new()
    } else {
        format!("; did you mean: {}", suggestions.join(", "))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
