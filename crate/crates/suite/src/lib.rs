//! Named objects from the classification of quadrics through a rational
//! normal quartic, and a catalog of exact verification checks over them.
//!
//! Every check is a pure function of the registry and the parameter
//! bindings, so reports are reproducible bit for bit.

pub mod checks;
pub mod elimination;
pub mod oracle;
pub mod registry;
pub mod report;
pub mod session;

pub use checks::{catalog, forbidding, run_all, run_check, CheckSpec, RunOptions, SuiteError};
pub use oracle::{numeric_oracle, MapClaim, OracleError, OracleResult};
pub use registry::{registry, NamedObject, ObjectKind, ObjectValue, Registry};
pub use report::{CheckResult, Report, Status, Witness};
pub use session::{session, Session};
