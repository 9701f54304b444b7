use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use chamberscope::invariants::{invariant_bundle, ring_oracle};
use chamberscope::pipeline::{read_jsonl, run_jsonl, sha256_file, RunManifest, RunOptions};
use chamberscope::realize::{in_plus_image, minus_map, realize, realize_all, ChamberRecord};
use chamberscope::verify::{verify, VerifyOptions};
use chamberscope::{enumerate_codes, CodeLine, Error, GeneticCode, Result};

use crate::{table, CheckpointArgs, Command};

/// Runs one subcommand and returns the process exit code.
pub fn run(command: Command) -> Result<u8> {
    match command {
        Command::Enumerate { m, out, checkpoint } => {
            let codes = enumerate_codes(m)?.codes;
            let lines = |c: &GeneticCode| Ok(serde_json::to_string(&CodeLine::from_code(c))?);
            write_lines("enumerate", m, &codes, out.as_deref(), &[], &checkpoint, lines)?;
        }
        Command::Realize { m, codes, out, checkpoint } => {
            let list = match &codes {
                Some(path) => read_codes(path, m)?,
                None => enumerate_codes(m)?.codes,
            };
            let inputs: Vec<PathBuf> = codes.into_iter().collect();
            let line = |c: &GeneticCode| Ok(serde_json::to_string(&realize(c)?)?);
            write_lines("realize", m, &list, out.as_deref(), &inputs, &checkpoint, line)?;
        }
        Command::Strata { m, out } => {
            let records = realize_all(m)?;
            let strata = records
                .iter()
                .filter(|r| in_plus_image(r))
                .map(|r| minus_map(&r.code))
                .collect::<Result<Vec<_>>>()?;
            println!("{}", strata.len());
            if let Some(out) = out {
                let line = |s: &_| Ok(serde_json::to_string(s)?);
                let none = CheckpointArgs {
                    checkpoint_dir: None,
                    checkpoint_interval: usize::MAX,
                };
                write_lines("strata", m, &strata, Some(&out), &[], &none, line)?;
            }
        }
        Command::Invariants {
            m,
            input,
            ring_oracle: oracle,
            out,
        } => {
            let records = load_records(input.as_deref(), m)?;
            let with = attach_invariants(records, oracle)?;
            let inputs: Vec<PathBuf> = input.into_iter().collect();
            let none = CheckpointArgs {
                checkpoint_dir: None,
                checkpoint_interval: usize::MAX,
            };
            let line = |r: &ChamberRecord| Ok(serde_json::to_string(r)?);
            write_lines("invariants", m, &with, out.as_deref(), &inputs, &none, line)?;
        }
        Command::Table { m, format, input, out } => {
            let records = load_records(input.as_deref(), m)?;
            let chambers: Vec<ChamberRecord> = records.into_iter().filter(|r| r.realizable).collect();
            let with = attach_invariants(chambers, false)?;
            let text = table::render(&with, format)?;
            match out {
                Some(path) => fs::write(path, text)?,
                None => io::stdout().write_all(text.as_bytes())?,
            }
        }
        Command::Verify { m, long } => {
            let report = verify(&VerifyOptions { m, long })?;
            print!("{report}");
            return Ok(if report.all_passed() { 0 } else { 2 });
        }
    }
    Ok(0)
}

/// One JSONL line per item, to `out` through the checkpointed pipeline, or
/// to stdout.
fn write_lines<T: Sync>(
    command: &str,
    m: u8,
    items: &[T],
    out: Option<&Path>,
    inputs: &[PathBuf],
    checkpoint: &CheckpointArgs,
    map: impl Fn(&T) -> Result<String> + Sync,
) -> Result<()> {
    let Some(out) = out else {
        let lines: Vec<String> = items.par_iter().map(&map).collect::<Result<_>>()?;
        let mut w = BufWriter::new(io::stdout().lock());
        for l in lines {
            writeln!(w, "{l}")?;
        }
        w.flush()?;
        return Ok(());
    };
    let mut opts = RunOptions::new(checkpoint.checkpoint_dir.clone());
    opts.interval = checkpoint.checkpoint_interval;
    let records = run_jsonl(command, m, items, out, &opts, map)?;
    RunManifest {
        m,
        command: command.to_owned(),
        inputs: inputs.to_vec(),
        output: out.to_owned(),
        workers: rayon::current_num_threads(),
        checkpoint_interval: opts.interval,
        records,
        output_sha256: sha256_file(out)?,
    }
    .store()?;
    Ok(())
}

/// Codes from a file: `enumerate` JSONL lines or bare code text.
fn read_codes(path: &Path, m: u8) -> Result<Vec<GeneticCode>> {
    let text = fs::read_to_string(path)?;
    let mut codes = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let code = if line.starts_with('{') {
            let parsed: CodeLine = serde_json::from_str(line).map_err(|e| Error::Parse {
                what: "code line",
                input: format!("{}:{}", path.display(), n + 1),
                reason: e.to_string(),
            })?;
            parsed.to_code()?
        } else {
            GeneticCode::parse(line, m)?
        };
        if code.m() != m {
            return Err(Error::AmbientMismatch { left: m, right: code.m() });
        }
        codes.push(code);
    }
    Ok(codes)
}

fn load_records(input: Option<&Path>, m: u8) -> Result<Vec<ChamberRecord>> {
    let records = match input {
        Some(path) => read_jsonl::<ChamberRecord>(path)?,
        None => realize_all(m)?,
    };
    if let Some(r) = records.iter().find(|r| r.m != m) {
        return Err(Error::AmbientMismatch { left: m, right: r.m });
    }
    Ok(records)
}

fn attach_invariants(records: Vec<ChamberRecord>, oracle: bool) -> Result<Vec<ChamberRecord>> {
    records
        .into_par_iter()
        .map(|mut r| {
            let s = r.code.short_family()?;
            let bundle = invariant_bundle(&s)?;
            if oracle && r.realizable {
                let top = bundle.betti.len().saturating_sub(1) as u32;
                let dims: Vec<i64> = ring_oracle(&s, top).into_iter().map(|d| d as i64).collect();
                // the empty chamber has no ring; its bundle is all zeros by convention
                if !bundle.betti.iter().all(|&b| b == 0) && dims != bundle.betti {
                    return Err(Error::Inconsistency(format!(
                        "{}: ring dimensions {dims:?} disagree with Betti numbers {:?}",
                        r.code, bundle.betti
                    )));
                }
            }
            r.invariants = Some(bundle);
            Ok(r)
        })
        .collect()
}
