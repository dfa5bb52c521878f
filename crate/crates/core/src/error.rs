use thiserror::Error;

/// Errors produced while constructing or analysing rings and modules.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("axiom violation: {axiom} (witness: {witness})")]
    AxiomViolation { axiom: String, witness: String },

    #[error("size guard exceeded: {what} needs {needed}, guard is {guard}")]
    SizeGuard {
        what: String,
        needed: usize,
        guard: usize,
    },

    #[error("not semisimple: J(R) is nonzero")]
    NotSemisimple,

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("precondition violated: {0}")]
    PreconditionViolation(String),

    #[error("witness search exhausted: {what} (bound {bound})")]
    SearchExhausted { what: String, bound: usize },

    #[error("no extension found: {0}")]
    ExtensionNotFound(String),

    #[error("coherence failure: {0}")]
    CoherenceFailure(String),

    #[error("internal assertion failed: {0}")]
    InternalAssertion(String),

    #[error("spec error: {0}")]
    Spec(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn axiom(axiom: impl Into<String>, witness: impl Into<String>) -> Self {
        Error::AxiomViolation {
            axiom: axiom.into(),
            witness: witness.into(),
        }
    }

    pub fn guard(what: impl Into<String>, needed: usize, guard: usize) -> Self {
        Error::SizeGuard {
            what: what.into(),
            needed,
            guard,
        }
    }
}
