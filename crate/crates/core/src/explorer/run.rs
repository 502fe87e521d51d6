//! Census driver: parallel over index ranges, append-only records file,
//! checkpoint after every chunk.

use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::ops::Range;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::classify::{classify, CensusRecord};
use super::enumerate::CandidateSpace;
use super::job::CensusJob;
use super::report::{census_report, Summary};
use crate::error::ExplorerError;
use crate::serial::canonical_json;

#[derive(Clone, Debug)]
pub struct RunOptions {
    pub workers: usize,
    /// Continue from the checkpoint next to the records file.
    pub resume: bool,
    /// Stop after this many chunks (simulates an interrupted run).
    pub max_chunks: Option<usize>,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            workers: 1,
            resume: false,
            max_chunks: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct CensusOutcome {
    pub records: Vec<CensusRecord>,
    /// Candidates that failed classification.
    pub skipped: u64,
    /// Indices scanned so far.
    pub scanned: u64,
    /// All indices of the job have been scanned.
    pub complete: bool,
    pub summary: Summary,
}

#[derive(Serialize, Deserialize)]
struct Checkpoint {
    job: serde_json::Value,
    next_index: u64,
    records_written: u64,
    skipped: u64,
}

pub fn checkpoint_path(records: &Path) -> PathBuf {
    let mut s = records.as_os_str().to_owned();
    s.push(".checkpoint");
    PathBuf::from(s)
}

fn resume_err(msg: impl Into<String>) -> ExplorerError {
    ExplorerError::Resume(msg.into())
}

fn load_checkpoint(
    job: &CensusJob,
    out: &Path,
) -> Result<(Checkpoint, Vec<CensusRecord>), ExplorerError> {
    let cp_path = checkpoint_path(out);
    let text = fs::read_to_string(&cp_path)
        .map_err(|e| resume_err(format!("{}: {e}", cp_path.display())))?;
    let cp: Checkpoint = serde_json::from_str(&text)
        .map_err(|e| resume_err(format!("corrupt checkpoint {}: {e}", cp_path.display())))?;
    if canonical_json(&cp.job) != canonical_json(&job.to_json()) {
        return Err(resume_err("checkpoint belongs to a different job"));
    }
    let file = File::open(out).map_err(|e| resume_err(format!("{}: {e}", out.display())))?;
    let mut records = Vec::new();
    for line in BufReader::new(file)
        .lines()
        .take(cp.records_written as usize)
    {
        let line = line?;
        let rec: CensusRecord =
            serde_json::from_str(&line).map_err(|e| resume_err(format!("corrupt record: {e}")))?;
        records.push(rec);
    }
    if records.len() as u64 != cp.records_written {
        return Err(resume_err(format!(
            "checkpoint expects {} records, file has {}",
            cp.records_written,
            records.len()
        )));
    }
    Ok((cp, records))
}

fn rewrite_records(out: &Path, records: &[CensusRecord]) -> Result<(), ExplorerError> {
    let mut f = File::create(out)?;
    for r in records {
        writeln!(f, "{}", canonical_json(r))?;
    }
    f.sync_all()?;
    Ok(())
}

/// Classifies a range with `workers` threads; results come back in index
/// order whatever the worker count.
fn process_range(
    space: &CandidateSpace,
    range: Range<u64>,
    workers: usize,
) -> (Vec<CensusRecord>, u64) {
    let workers = workers.max(1) as u64;
    let width = range.end - range.start;
    let step = width.div_ceil(workers).max(1);
    let parts: Vec<Range<u64>> = (0..workers)
        .map(|w| {
            let s = range.start + (w * step).min(width);
            let e = range.start + ((w + 1) * step).min(width);
            s..e
        })
        .filter(|r| !r.is_empty())
        .collect();
    let results: Vec<(Vec<CensusRecord>, u64)> = std::thread::scope(|scope| {
        let handles: Vec<_> = parts
            .into_iter()
            .map(|r| {
                scope.spawn(move || {
                    let mut recs = Vec::new();
                    let mut skipped = 0;
                    for (index, c) in space.scan(r) {
                        match classify(index, &c) {
                            Ok(rec) => recs.push(rec),
                            Err(_) => skipped += 1,
                        }
                    }
                    (recs, skipped)
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("census worker panicked"))
            .collect()
    });
    let mut recs = Vec::new();
    let mut skipped = 0;
    for (r, s) in results {
        recs.extend(r);
        skipped += s;
    }
    (recs, skipped)
}

/// Runs (or resumes) a census job.
pub fn run_census(job: &CensusJob, opts: &RunOptions) -> Result<CensusOutcome, ExplorerError> {
    let space = CandidateSpace::new(job)?;
    let out = job.output.as_deref();
    let (mut next, mut records, mut skipped) = match (opts.resume, out) {
        (true, Some(path)) if checkpoint_path(path).exists() => {
            let (cp, recs) = load_checkpoint(job, path)?;
            // Drop anything appended after the checkpoint was taken.
            rewrite_records(path, &recs)?;
            (cp.next_index, recs, cp.skipped)
        }
        (true, None) => return Err(resume_err("resuming needs an output path")),
        _ => {
            if let Some(path) = out {
                File::create(path)?;
                let _ = fs::remove_file(checkpoint_path(path));
            }
            (0, Vec::new(), 0)
        }
    };

    let chunk = if job.checkpoint_every == 0 {
        space.len().max(1)
    } else {
        job.checkpoint_every
    };
    let mut chunks_done = 0usize;
    while next < space.len() {
        if opts.max_chunks.is_some_and(|m| chunks_done >= m) {
            break;
        }
        let end = (next + chunk).min(space.len());
        let (batch, s) = process_range(&space, next..end, opts.workers);
        skipped += s;
        if let Some(path) = out {
            let mut f = OpenOptions::new().append(true).open(path)?;
            for r in &batch {
                writeln!(f, "{}", canonical_json(r))?;
            }
            f.sync_all()?;
        }
        records.extend(batch);
        next = end;
        chunks_done += 1;
        if let (Some(path), true) = (out, job.checkpoint_every > 0) {
            let cp = Checkpoint {
                job: job.to_json(),
                next_index: next,
                records_written: records.len() as u64,
                skipped,
            };
            let tmp = checkpoint_path(path).with_extension("checkpoint.tmp");
            fs::write(&tmp, canonical_json(&cp))?;
            fs::rename(&tmp, checkpoint_path(path))?;
        }
    }
    let summary = census_report(&records);
    Ok(CensusOutcome {
        complete: next >= space.len(),
        scanned: next,
        records,
        skipped,
        summary,
    })
}

/// Reads a newline-delimited records file.
pub fn read_records(path: &Path) -> Result<Vec<CensusRecord>, ExplorerError> {
    let file = File::open(path)?;
    let mut out = Vec::new();
    for line in BufReader::new(file).lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(serde_json::from_str(&line)?);
    }
    Ok(out)
}
