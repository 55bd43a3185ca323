//! Batch front end: run configuration, eigenform data ingestion and the
//! four report commands.

mod commands;
mod config;
mod ingest;

pub use commands::{run, run_with_store, Item, ItemVerdict, Report, RunOutput, Summary, REPORT_FORMAT};
pub use config::{parse_levels, parse_primes, Command, RunConfig, CACHE_ENV};
pub use ingest::{parse_ingest, serialize_ingest, IngestRecord};
