use std::path::PathBuf;

use crate::arith::BigRat;
use crate::density::KmzPlan;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Malformed input. `field` names the offending field or argument.
    #[error("parse error in `{field}`: {message}")]
    Parse { field: String, message: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unknown group `{0}`")]
    UnknownGroup(String),

    /// A configured hard limit (sieve bound, enumeration cap, lattice cap)
    /// was hit. `reached` is how far the computation got before stopping.
    #[error("resource limit exceeded: {what} (limit {limit}, reached {reached})")]
    Resource {
        what: String,
        limit: u64,
        reached: u64,
    },

    #[error(
        "term budget exhausted after scanning {scanned} terms ({included} included); \
         product reached about {achieved:.9} (needed {target_approx:.9})"
    )]
    Budget {
        scanned: u64,
        included: usize,
        achieved: f64,
        target_approx: f64,
    },

    #[error("base pair insufficient: its ratio {rho0} exceeds the target {target}")]
    BaseInsufficient {
        rho0: BigRat,
        target: BigRat,
        plan: Box<KmzPlan>,
    },

    #[error("value {0} is too large for a double")]
    Overflow(String),

    #[error("I/O error on {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn parse(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            field: field.into(),
            message: message.into(),
        }
    }
}
