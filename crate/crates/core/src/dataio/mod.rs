//! Getting data in and results out: categorical-table ingestion, the
//! `hyperlap/1` file format, seeded experiment runs, CSV output and the
//! invariant checks behind `hyperlap check`.

mod check;
mod csv_out;
mod experiment;
mod format;
mod ingest;

pub use check::{run_checks, CheckOutcome};
pub use csv_out::{emit_csv, parse_csv, read_csv, write_csv, COLUMNS};
pub use experiment::{
    aggregate, best_p, default_p_grid, derive_seed, draw_labeled, run_cut_experiment,
    run_ssl_experiment, Aggregate, ExperimentConfig, MuChoice, ResultRecord, Task,
};
pub use format::{from_document, load_hypergraph, save_hypergraph, to_document, FORMAT_VERSION};
pub use ingest::{
    ingest, ingest_preset, ingest_reader, Dataset, DatasetSpec, FeatureColumns, MissingPolicy,
    PRESETS,
};
