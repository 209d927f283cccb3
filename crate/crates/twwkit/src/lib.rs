//! File formats, deterministic corpora, verification suites, and the
//! report format for the `twwkit` command-line tool. The algorithms live
//! in `twwkit-core`.

pub mod corpus;
pub mod formats;
pub mod report;
pub mod suites;
