use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::error::ExplorerError;
use crate::linalg::FieldSpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Exhaustive,
    RandomSample,
}

/// A census over `GF(p)` at a fixed diameter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusJob {
    pub field: FieldSpec,
    pub d: usize,
    pub mode: Mode,
    /// Number of random draws (random mode only).
    pub sample_count: u64,
    pub seed: u64,
    /// Candidate indices per checkpoint; 0 disables checkpoints.
    pub checkpoint_every: u64,
    /// Records file (newline-delimited JSON).
    pub output: Option<PathBuf>,
    /// Bypasses the exhaustive-mode cost guard.
    pub allow_expensive: bool,
}

#[derive(Serialize, Deserialize)]
struct JobFile {
    field: String,
    d: usize,
    mode: Mode,
    #[serde(default)]
    sample_count: u64,
    #[serde(default)]
    seed: u64,
    #[serde(default)]
    checkpoint_every: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    output: Option<PathBuf>,
    #[serde(default)]
    allow_expensive: bool,
}

impl CensusJob {
    pub fn exhaustive(p: u64, d: usize) -> Result<Self, ExplorerError> {
        let job = CensusJob {
            field: FieldSpec::prime(p).map_err(|e| ExplorerError::InvalidJob(e.to_string()))?,
            d,
            mode: Mode::Exhaustive,
            sample_count: 0,
            seed: 0,
            checkpoint_every: 0,
            output: None,
            allow_expensive: false,
        };
        job.check()?;
        Ok(job)
    }

    pub fn random(p: u64, d: usize, sample_count: u64, seed: u64) -> Result<Self, ExplorerError> {
        let job = CensusJob {
            mode: Mode::RandomSample,
            sample_count,
            seed,
            ..Self::exhaustive(p, d)?
        };
        job.check()?;
        Ok(job)
    }

    pub fn modulus(&self) -> u64 {
        self.field.modulus().expect("census fields are prime")
    }

    /// Checks the structural requirements (not the cost guard).
    pub fn check(&self) -> Result<(), ExplorerError> {
        let p = self
            .field
            .modulus()
            .ok_or_else(|| ExplorerError::InvalidJob("census needs a prime field".into()))?;
        if self.d < 2 {
            return Err(ExplorerError::InvalidJob(format!(
                "d must be at least 2, got {}",
                self.d
            )));
        }
        if (p as u128) < (self.d as u128 + 1) {
            return Err(ExplorerError::InvalidJob(format!(
                "GF({p}) has fewer than d + 1 = {} elements",
                self.d + 1
            )));
        }
        Ok(())
    }

    pub fn from_json(s: &str) -> Result<Self, ExplorerError> {
        let f: JobFile = serde_json::from_str(s)?;
        let field = f
            .field
            .parse::<FieldSpec>()
            .map_err(|e| ExplorerError::InvalidJob(e.to_string()))?;
        let job = CensusJob {
            field,
            d: f.d,
            mode: f.mode,
            sample_count: f.sample_count,
            seed: f.seed,
            checkpoint_every: f.checkpoint_every,
            output: f.output,
            allow_expensive: f.allow_expensive,
        };
        job.check()?;
        Ok(job)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(JobFile {
            field: self.field.to_string(),
            d: self.d,
            mode: self.mode,
            sample_count: self.sample_count,
            seed: self.seed,
            checkpoint_every: self.checkpoint_every,
            output: self.output.clone(),
            allow_expensive: self.allow_expensive,
        })
        .expect("serializable job")
    }
}
