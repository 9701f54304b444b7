//! Ordered, checkpointed JSONL output for long runs.
//!
//! Items are processed in chunks; each chunk is mapped in parallel, written
//! in input order, flushed, and then recorded in a checkpoint file that
//! holds the number of items and bytes committed. A resumed run truncates
//! the output to the committed length and skips the committed items, so the
//! final file is identical to an uninterrupted run.

use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, Read, Seek, SeekFrom, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

pub const DEFAULT_CHECKPOINT_INTERVAL: usize = 100_000;
pub const CACHE_ENV: &str = "CHAMBERSCOPE_CACHE";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub command: String,
    pub m: u8,
    pub output: PathBuf,
    pub items_done: u64,
    pub bytes_done: u64,
}

impl Checkpoint {
    pub fn load(path: &Path) -> Result<Option<Checkpoint>> {
        match fs::read(path) {
            Ok(bytes) => Checkpoint::decode(&bytes)
                .map(Some)
                .map_err(|reason| Error::Checkpoint {
                    path: path.to_owned(),
                    reason,
                }),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
            Err(e) => Err(e.into()),
        }
    }

    pub fn decode(bytes: &[u8]) -> std::result::Result<Checkpoint, String> {
        serde_json::from_slice(bytes).map_err(|e| e.to_string())
    }

    /// Write-then-rename, so a crash leaves either the old or the new state.
    pub fn store(&self, path: &Path) -> Result<()> {
        let tmp = path.with_extension("tmp");
        {
            let mut f = File::create(&tmp)?;
            serde_json::to_writer(&mut f, self)?;
            f.sync_all()?;
        }
        fs::rename(&tmp, path)?;
        Ok(())
    }
}

/// Where a run keeps its checkpoint, if anywhere.
#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    pub checkpoint_dir: Option<PathBuf>,
    pub interval: usize,
    /// Stop with [`Error::Interrupted`] after this many chunks; used to
    /// exercise resume.
    pub stop_after_chunks: Option<usize>,
}

impl RunOptions {
    /// `--checkpoint-dir` wins over the environment variable.
    pub fn new(checkpoint_dir: Option<PathBuf>) -> RunOptions {
        RunOptions {
            checkpoint_dir: checkpoint_dir.or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from)),
            interval: DEFAULT_CHECKPOINT_INTERVAL,
            stop_after_chunks: None,
        }
    }

    fn checkpoint_path(&self, command: &str, m: u8) -> Option<PathBuf> {
        self.checkpoint_dir
            .as_ref()
            .map(|d| d.join(format!("{command}-m{m}.checkpoint.json")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunManifest {
    pub m: u8,
    pub command: String,
    pub inputs: Vec<PathBuf>,
    pub output: PathBuf,
    pub workers: usize,
    pub checkpoint_interval: usize,
    pub records: u64,
    /// Hex SHA-256 of the output file.
    pub output_sha256: String,
}

impl RunManifest {
    pub fn path_for(output: &Path) -> PathBuf {
        let mut name = output.file_name().unwrap_or_default().to_os_string();
        name.push(".manifest.json");
        output.with_file_name(name)
    }

    pub fn store(&self) -> Result<()> {
        let text = serde_json::to_string_pretty(self)?;
        fs::write(RunManifest::path_for(&self.output), text + "\n")?;
        Ok(())
    }
}

pub fn sha256_file(path: &Path) -> Result<String> {
    let mut f = File::open(path)?;
    let mut hasher = Sha256::new();
    let mut buf = vec![0u8; 1 << 16];
    loop {
        let n = f.read(&mut buf)?;
        if n == 0 {
            break;
        }
        hasher.update(&buf[..n]);
    }
    Ok(hasher
        .finalize()
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect())
}

/// Map `items` to one JSONL line each and write them to `output` in order,
/// resuming from a matching checkpoint when one exists. Returns the number
/// of lines in the finished file.
pub fn run_jsonl<T, F>(
    command: &str,
    m: u8,
    items: &[T],
    output: &Path,
    opts: &RunOptions,
    map: F,
) -> Result<u64>
where
    T: Sync,
    F: Fn(&T) -> Result<String> + Sync,
{
    let ckpt_path = opts.checkpoint_path(command, m);
    let interval = opts.interval.max(1);
    let mut state = Checkpoint {
        command: command.to_owned(),
        m,
        output: output.to_owned(),
        items_done: 0,
        bytes_done: 0,
    };
    if let Some(path) = &ckpt_path {
        if let Some(prev) = Checkpoint::load(path)? {
            if prev.command == state.command && prev.m == m && prev.output == state.output {
                if prev.items_done > items.len() as u64 {
                    return Err(Error::Checkpoint {
                        path: path.clone(),
                        reason: format!("records {} items but the run has {}", prev.items_done, items.len()),
                    });
                }
                state = prev;
                log::info!("resuming {command} m={m} after {} items", state.items_done);
            }
        }
        fs::create_dir_all(path.parent().unwrap_or(Path::new(".")))?;
    }
    let mut file = OpenOptions::new().create(true).write(true).truncate(false).open(output)?;
    let len = file.metadata()?.len();
    if len < state.bytes_done {
        return Err(Error::Checkpoint {
            path: ckpt_path.unwrap_or_default(),
            reason: format!("output has {len} bytes, checkpoint expects at least {}", state.bytes_done),
        });
    }
    file.set_len(state.bytes_done)?;
    file.seek(SeekFrom::End(0))?;

    let mut chunks = 0;
    let start = state.items_done as usize;
    for chunk in items[start..].chunks(interval) {
        let lines: Vec<String> = chunk.par_iter().map(&map).collect::<Result<_>>()?;
        let mut buf = String::with_capacity(lines.iter().map(|l| l.len() + 1).sum());
        for l in &lines {
            buf.push_str(l);
            buf.push('\n');
        }
        file.write_all(buf.as_bytes())?;
        file.sync_data()?;
        state.items_done += chunk.len() as u64;
        state.bytes_done += buf.len() as u64;
        if let Some(path) = &ckpt_path {
            state.store(path)?;
        }
        chunks += 1;
        if opts.stop_after_chunks == Some(chunks) && (state.items_done as usize) < items.len() {
            return Err(Error::Interrupted(state.items_done));
        }
    }
    if let Some(path) = &ckpt_path {
        fs::remove_file(path).ok();
    }
    Ok(state.items_done)
}

/// Non-empty lines of a JSONL file, parsed.
pub fn read_jsonl<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<Vec<T>> {
    let f = BufReader::new(File::open(path)?);
    let mut out = Vec::new();
    for (n, line) in f.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let item = serde_json::from_str(&line).map_err(|e| Error::Parse {
            what: "JSONL record",
            input: format!("{}:{}", path.display(), n + 1),
            reason: e.to_string(),
        })?;
        out.push(item);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts(dir: &Path, interval: usize, stop: Option<usize>) -> RunOptions {
        RunOptions {
            checkpoint_dir: Some(dir.to_owned()),
            interval,
            stop_after_chunks: stop,
        }
    }

    #[test]
    fn resume_matches_uninterrupted_run() {
        let dir = tempfile::tempdir().unwrap();
        let items: Vec<u32> = (0..1000).collect();
        let map = |x: &u32| Ok(format!("{{\"x\":{x}}}"));
        let whole = dir.path().join("whole.jsonl");
        run_jsonl("t", 5, &items, &whole, &opts(&dir.path().join("a"), 64, None), map).unwrap();

        let part = dir.path().join("part.jsonl");
        let o = opts(&dir.path().join("b"), 64, Some(3));
        assert!(matches!(
            run_jsonl("t", 5, &items, &part, &o, map),
            Err(Error::Interrupted(192))
        ));
        // a torn write past the committed length is discarded on resume
        OpenOptions::new().append(true).open(&part).unwrap().write_all(b"{\"x\":19").unwrap();
        let n = run_jsonl("t", 5, &items, &part, &opts(&dir.path().join("b"), 64, None), map).unwrap();
        assert_eq!(n, 1000);
        assert_eq!(fs::read(&whole).unwrap(), fs::read(&part).unwrap());
        assert!(!dir.path().join("b/t-m5.checkpoint.json").exists());
    }

    #[test]
    fn checkpoint_round_trip_and_garbage() {
        let c = Checkpoint {
            command: "realize".into(),
            m: 9,
            output: "out.jsonl".into(),
            items_done: 10,
            bytes_done: 300,
        };
        let bytes = serde_json::to_vec(&c).unwrap();
        assert_eq!(Checkpoint::decode(&bytes).unwrap(), c);
        assert!(Checkpoint::decode(b"{\"m\":9}").is_err());
    }

    #[test]
    fn sha256_of_known_content() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("abc");
        fs::write(&p, b"abc").unwrap();
        assert_eq!(
            sha256_file(&p).unwrap(),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }
}
