use std::fs;
use std::io::{self, Read, Write};
use std::path::Path;

use anyhow::{anyhow, Context};
use leonard_core::awrel::{aw_params, upsilon_report, Which};
use leonard_core::explorer::{census_report, read_records, run_census, CensusJob, RunOptions};
use leonard_core::leonard::{affine_transform, krawtchouk_family, LeonardCandidate};
use leonard_core::serial::{
    candidate_from_json, candidate_to_json, canonical_json, matrix_to_json, system_from_json,
    system_to_json,
};
use leonard_core::xspace::{compute_x, verify_main_theorem};
use leonard_core::{ExplorerError, FieldSpec, LeonardError, LeonardSystem};
use serde_json::{json, Value};

use crate::{CensusArgs, Cli, Command, ConstructArgs, Family};

pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure {
            code: 1,
            message: format!("error: {e:#}"),
        }
    }
}

/// Input that parsed but is not a Leonard system: exit 2 with a JSON
/// diagnostic on stderr.
fn rejected(e: &LeonardError) -> Failure {
    let mut diag = json!({ "error": "not a Leonard system", "message": e.to_string() });
    if let Some(axiom) = e.axiom() {
        diag["axiom"] = json!(axiom.label());
    }
    if let LeonardError::Support {
        product,
        i,
        j,
        row,
        col,
        entry,
        ..
    } = e
    {
        diag["product"] = json!(product);
        diag["indices"] = json!([i, j]);
        diag["entry"] = json!({ "row": row, "col": col, "value": entry });
    }
    Failure {
        code: 2,
        message: canonical_json(&diag),
    }
}

fn leonard_failure(e: LeonardError) -> Failure {
    match e {
        LeonardError::Malformed(_) | LeonardError::Linalg(_) | LeonardError::InvalidArgument(_) => {
            anyhow!(e).into()
        }
        other => rejected(&other),
    }
}

fn read_input(cli: &Cli) -> anyhow::Result<String> {
    match &cli.input {
        Some(p) => fs::read_to_string(p).with_context(|| format!("reading {}", p.display())),
        None => read_stdin(),
    }
}

fn read_stdin() -> anyhow::Result<String> {
    let mut s = String::new();
    io::stdin()
        .read_to_string(&mut s)
        .context("reading stdin")?;
    Ok(s)
}

fn read_json(cli: &Cli) -> anyhow::Result<Value> {
    let text = read_input(cli)?;
    serde_json::from_str(&text).context("input is not valid JSON")
}

fn emit(cli: &Cli, text: &str) -> anyhow::Result<()> {
    match &cli.output {
        Some(p) => {
            fs::write(p, format!("{text}\n")).with_context(|| format!("writing {}", p.display()))
        }
        None => {
            let mut out = io::stdout().lock();
            writeln!(out, "{text}").context("writing stdout")
        }
    }
}

fn load_system(cli: &Cli) -> Result<LeonardSystem, Failure> {
    let v = read_json(cli)?;
    system_from_json(&v).map_err(leonard_failure)
}

pub fn run(cli: &Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Construct(args) => {
            let c = construct(args)?;
            emit(cli, &canonical_json(&candidate_to_json(&c)))?;
        }
        Command::Validate => {
            let ls = load_system(cli)?;
            emit(cli, &canonical_json(&system_to_json(&ls)))?;
        }
        Command::Xspace => {
            let ls = load_system(cli)?;
            let xb = compute_x(&ls);
            let rep = verify_main_theorem(&xb);
            let doc = json!({
                "dim": xb.dim(),
                "basis": xb.basis().iter().map(matrix_to_json).collect::<Vec<_>>(),
                "spans": rep.spans,
                "independent": rep.independent,
            });
            emit(cli, &canonical_json(&doc))?;
        }
        Command::Awparams => {
            let ls = load_system(cli)?;
            let p = aw_params(&ls).map_err(anyhow::Error::from)?;
            emit(cli, &canonical_json(&p.to_json()))?;
        }
        Command::Upsilon { star } => {
            let ls = load_system(cli)?;
            let p = aw_params(&ls).map_err(anyhow::Error::from)?;
            let which = if *star {
                Which::UpsilonStar
            } else {
                Which::Upsilon
            };
            let rep = upsilon_report(&ls, &p, which).map_err(anyhow::Error::from)?;
            emit(cli, &canonical_json(&rep.to_json()))?;
        }
        Command::Census(args) => census(cli, args)?,
        Command::Report { records, text } => {
            let recs = match records {
                Some(p) => read_records(p).with_context(|| format!("reading {}", p.display()))?,
                None => {
                    let body = read_stdin()?;
                    body.lines()
                        .filter(|l| !l.trim().is_empty())
                        .map(serde_json::from_str)
                        .collect::<Result<_, _>>()
                        .context("records must be newline-delimited JSON")?
                }
            };
            let summary = census_report(&recs);
            if *text {
                emit(cli, summary.to_table().trim_end())?;
            } else {
                emit(cli, &canonical_json(&summary))?;
            }
        }
    }
    Ok(())
}

fn construct(args: &ConstructArgs) -> Result<LeonardCandidate, Failure> {
    let c = match (args.family, &args.from) {
        (Some(Family::Krawtchouk), _) => {
            let field: FieldSpec = args.field.parse().map_err(|e| anyhow!("--field: {e}"))?;
            let d = args.d.ok_or_else(|| anyhow!("--family needs --d"))?;
            krawtchouk_family(d, field).map_err(|e| anyhow!(e))?
        }
        (None, Some(path)) => {
            let text = if path == Path::new("-") {
                read_stdin()?
            } else {
                fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
            };
            let v: Value =
                serde_json::from_str(&text).context("candidate file is not valid JSON")?;
            candidate_from_json(&v).map_err(|e| anyhow!(e))?
        }
        (None, None) => return Err(anyhow!("construct needs --family or --from").into()),
    };
    match &args.affine {
        None => Ok(c),
        Some(spec) => {
            let f = c.field();
            let parts: Vec<_> = spec
                .split(',')
                .map(|s| f.parse_scalar(s.trim()))
                .collect::<Result<_, _>>()
                .map_err(|e| anyhow!("--affine: {e}"))?;
            let [u, v, us, vs]: [_; 4] = parts
                .try_into()
                .map_err(|_| anyhow!("--affine takes four comma-separated scalars"))?;
            Ok(affine_transform(&c, &u, &v, &us, &vs).map_err(|e| anyhow!(e))?)
        }
    }
}

fn census(cli: &Cli, args: &CensusArgs) -> Result<(), Failure> {
    let text =
        fs::read_to_string(&args.job).with_context(|| format!("reading {}", args.job.display()))?;
    let mut job = CensusJob::from_json(&text).map_err(anyhow::Error::from)?;
    if let Some(seed) = cli.seed {
        job.seed = seed;
    }
    if let Some(p) = &args.records {
        job.output = Some(p.clone());
    }
    let opts = RunOptions {
        workers: args.workers.max(1),
        resume: args.resume,
        max_chunks: None,
    };
    let out = run_census(&job, &opts).map_err(|e| match e {
        ExplorerError::Invariant { .. } => Failure {
            code: 2,
            message: format!("error: {e}"),
        },
        other => anyhow!(other).into(),
    })?;
    let mut doc = json!({
        "complete": out.complete,
        "scanned": out.scanned,
        "skipped": out.skipped,
        "summary": serde_json::to_value(&out.summary).map_err(anyhow::Error::from)?,
    });
    match &job.output {
        Some(p) => doc["records_file"] = json!(p.display().to_string()),
        None => doc["records"] = serde_json::to_value(&out.records).map_err(anyhow::Error::from)?,
    }
    emit(cli, &canonical_json(&doc))?;
    Ok(())
}
