//! Exact checks of the claim registry over a corpus, plus counterexample
//! mining.

pub mod claims;
pub mod corpus;
pub mod mining;
pub mod report;
pub mod suite;
pub mod sweep;

pub use claims::{claim, ClaimDef, Scope, ANCHORS, CLAIMS};
pub use corpus::{homomorphisms, projections, Corpus, CorpusEntry, HomEntry};
pub use mining::{mine_counterexamples, Hit, MineResult, Query};
pub use report::{witness_record, write_witness_files, ClaimReport, Counts, Status, Subject, SuiteReport};
pub use suite::{contraction_spaces, map_corpus, run_theorem_suite, SuiteOptions, DEFAULT_SAMPLES, DEFAULT_SEED};
pub use sweep::{sweep, SweepSpec};
