//! Batch experiments, identity verification and table rendering.

pub mod config;
pub mod experiment;
pub mod streams;
pub mod tables;
pub mod verify;

pub use config::{OutputFormat, RunConfig, TrentMode};
pub use experiment::{run_experiment, RateEstimate, RunReport, SessionSummary, SCHEMA_VERSION};
pub use tables::{emit_tables, TableReport};
pub use verify::{verify_identities, IdentityResidual};
