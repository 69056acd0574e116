use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot substitute q = 0: q^-1 is undefined there")]
    ZeroSubstitution,
    #[error("exponent out of range")]
    ExponentOverflow,
    #[error("degree length mismatch: {0} vs {1}")]
    DegreeLength(usize, usize),
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("unknown presentation `{0}`")]
    UnknownPresentation(String),
    #[error("malformed presentation: {0}")]
    Malformed(String),
    #[error("presentation `{name}` is not confluent: {detail}")]
    NotConfluent { name: String, detail: String },
    #[error("elements belong to different presentations (`{0}` and `{1}`)")]
    PresentationMismatch(String, String),
    #[error("{0}")]
    Unsupported(String),
    #[error("unknown check `{0}`")]
    UnknownCheck(String),
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}
