//! The `halg` command-line tool: JSON ingest, the built-in corpus, and
//! deterministic report output on top of `halg-core`.

mod app;
pub mod corpus;
pub mod ingest;
pub mod render;

pub use app::{run, RunOutput, DEFAULT_MAX_DIM};
