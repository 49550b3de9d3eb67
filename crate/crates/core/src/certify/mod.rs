//! Certificates: the data model, its canonical JSON form, and a verifier
//! that recomputes every claim.

mod certificate;
mod verify;

pub use certificate::{Certificate, Mode, Trace, WitnessEntry, CERT_EXTENSION, CERT_VERSION};
pub use verify::{verify, verify_with, Check, Verdict, VerdictStatus};
