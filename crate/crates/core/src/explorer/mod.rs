//! Finite-field census of Leonard systems, classified by the kernel/image
//! equality flags of Υ and Υ* and by the bipartite flags.

mod classify;
mod enumerate;
mod job;
mod report;
mod run;

pub use classify::{classify, CensusRecord, EqualityClass};
pub use enumerate::{enumerate_candidates, split_spectrum, CandidateSpace, CandidateStream};
pub use job::{CensusJob, Mode};
pub use report::{census_report, Summary, SummaryKey, SummaryRow};
pub use run::{checkpoint_path, read_records, run_census, CensusOutcome, RunOptions};
