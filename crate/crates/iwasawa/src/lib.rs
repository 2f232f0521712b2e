//! Files, reports, parallel scans and the command line on top of
//! `iwasawa-core`.

pub mod cli;
pub mod ingest;
pub mod parallel;
