use serde::{Deserialize, Serialize};

use crate::awrel::{aw_params, bipartite_flags, upsilon_report, UpsilonReport, Which};
use crate::error::ExplorerError;
use crate::leonard::{validate, LeonardCandidate};
use crate::serial::candidate_to_json;
use crate::xspace::{compute_x, verify_main_theorem};

/// Whether the kernel and image containments for one map are equalities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum EqualityClass {
    BothEqual,
    NeitherEqual,
    /// Only possible for `d ≤ 2`.
    Mixed,
}

impl EqualityClass {
    fn of(r: &UpsilonReport) -> Self {
        match (r.equality_i, r.equality_ii) {
            (true, true) => EqualityClass::BothEqual,
            (false, false) => EqualityClass::NeitherEqual,
            _ => EqualityClass::Mixed,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            EqualityClass::BothEqual => "BothEqual",
            EqualityClass::NeitherEqual => "NeitherEqual",
            EqualityClass::Mixed => "Mixed",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRecord {
    /// Position in the job's candidate space.
    pub index: u64,
    pub candidate: serde_json::Value,
    pub d: usize,
    pub field: String,
    pub dim_x: usize,
    pub ker_upsilon_dim: usize,
    pub im_upsilon_dim: usize,
    pub ker_upsilon_star_dim: usize,
    pub im_upsilon_star_dim: usize,
    pub bipartite: bool,
    pub dual_bipartite: bool,
    pub equality_class: EqualityClass,
    pub equality_class_star: EqualityClass,
}

fn invariant(index: u64, message: impl Into<String>) -> ExplorerError {
    ExplorerError::Invariant {
        index,
        message: message.into(),
    }
}

/// Runs the full pipeline on one candidate and re-checks what must hold
/// for every Leonard system with `d ≥ 2`.
pub fn classify(index: u64, c: &LeonardCandidate) -> Result<CensusRecord, ExplorerError> {
    let ls = validate(c)?;
    let xb = compute_x(&ls);
    let main = verify_main_theorem(&xb);
    if ls.d() >= 2 && (xb.dim() != 5 || !main.spans || !main.independent) {
        return Err(invariant(
            index,
            format!(
                "dim X = {}, spans = {}, independent = {}",
                xb.dim(),
                main.spans,
                main.independent
            ),
        ));
    }
    let params = aw_params(&ls)?;
    let up = upsilon_report(&ls, &params, Which::Upsilon)?;
    let ups = upsilon_report(&ls, &params, Which::UpsilonStar)?;
    let flags = bipartite_flags(&ls);

    let class = EqualityClass::of(&up);
    let class_star = EqualityClass::of(&ups);
    if ls.d() >= 3 {
        if class == EqualityClass::Mixed || class_star == EqualityClass::Mixed {
            return Err(invariant(index, "mixed equality class at d >= 3"));
        }
        if flags.bipartite && (ups.kernel_dim, ups.image_dim) != (3, 2) {
            return Err(invariant(
                index,
                "bipartite system without Ker/Im(Υ*) dims (3, 2)",
            ));
        }
        if flags.dual_bipartite && (up.kernel_dim, up.image_dim) != (3, 2) {
            return Err(invariant(
                index,
                "dual bipartite system without Ker/Im(Υ) dims (3, 2)",
            ));
        }
    }
    Ok(CensusRecord {
        index,
        candidate: candidate_to_json(c),
        d: ls.d(),
        field: ls.field().to_string(),
        dim_x: xb.dim(),
        ker_upsilon_dim: up.kernel_dim,
        im_upsilon_dim: up.image_dim,
        ker_upsilon_star_dim: ups.kernel_dim,
        im_upsilon_star_dim: ups.image_dim,
        bipartite: flags.bipartite,
        dual_bipartite: flags.dual_bipartite,
        equality_class: class,
        equality_class_star: class_star,
    })
}
