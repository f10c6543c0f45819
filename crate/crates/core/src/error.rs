use thiserror::Error;

/// Errors raised by the covering toolkit.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A partition or component was used with a group of another degree.
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: u32, found: u32 },

    /// The rule engine cannot decide membership for this component.
    #[error("membership of {ty} in {component} is undecidable by the encoded rules")]
    Undecidable { component: String, ty: String },

    /// A named set was requested where its construction does not apply.
    #[error("{set} is not defined for n = {n}: requires {hypothesis}")]
    Applicability {
        set: String,
        n: u32,
        hypothesis: String,
    },

    /// The data does not describe a special metacyclic generator.
    #[error("invalid metacyclic shape: {0}")]
    InvalidShape(String),

    /// A computation was refused because it exceeds a resource guard.
    #[error("resource limit: {0}")]
    Resource(String),

    /// A certificate failed re-validation.
    #[error("certificate rejected: {0}")]
    Certificate(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
