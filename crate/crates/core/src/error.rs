use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("{what} did not converge within {terms} terms")]
    NotConvergent { what: &'static str, terms: usize },

    #[error("internal consistency check failed for {what}: {left} vs {right}")]
    Consistency {
        what: &'static str,
        left: f64,
        right: f64,
    },

    #[error("degenerate parameters: {0}")]
    Degenerate(String),

    #[error("inconsistent input: {0}")]
    InconsistentInput(String),

    #[error("lambda_{n} = {value} is negative; operators would not be real")]
    NegativeLambda { n: i64, value: f64 },

    #[error("wrong representation case: {0}")]
    WrongCase(String),

    #[error("matrix is not symmetric")]
    NonSymmetric,

    #[error("configuration error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
