//! On-disk state sets. A file is one plain header line
//! `GDL1 <problem> <height> <mode> <flags>` followed by a gzip stream of packed
//! states, one decimal integer per line, in ascending order.

use std::fs;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::{Path, PathBuf};

use flate2::read::GzDecoder;
use flate2::write::GzEncoder;
use flate2::Compression;

use crate::error::{Error, Result};
use crate::problem::{Mode, ProblemSpec};
use crate::state::{enumerate_states_with_budget, StateSet, DEFAULT_STATE_BUDGET};

pub const MAGIC: &str = "GDL1";

fn header(problem: &str, height: usize, mode: Mode, pruned: bool) -> String {
    format!("{MAGIC} {problem} {height} {} {}", mode.tag(), if pruned { "pruned" } else { "full" })
}

/// File holding the states of one (problem, height, mode, pruning) key.
pub fn cache_path(dir: &Path, problem: &str, height: usize, mode: Mode, pruned: bool) -> PathBuf {
    let name: String = problem.chars().map(|c| if c.is_ascii_alphanumeric() || c == '-' { c } else { '_' }).collect();
    dir.join(format!("{name}-h{height}-{}-{}.gdl", mode.tag(), if pruned { "pruned" } else { "full" }))
}

fn io(e: std::io::Error) -> Error {
    Error::Cache(e.to_string())
}

pub fn write_states(path: &Path, set: &StateSet) -> Result<()> {
    let mut body = GzEncoder::new(Vec::new(), Compression::default());
    for p in set.packed() {
        writeln!(body, "{p}").map_err(io)?;
    }
    let body = body.finish().map_err(io)?;
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent).map_err(io)?;
    }
    // Written beside the target and renamed so readers never see a partial file.
    let tmp = path.with_extension("tmp");
    let mut f = fs::File::create(&tmp).map_err(io)?;
    writeln!(f, "{}", header(&set.problem, set.height, set.mode, set.pruned_by_symmetry)).map_err(io)?;
    f.write_all(&body).map_err(io)?;
    f.sync_all().map_err(io)?;
    fs::rename(&tmp, path).map_err(io)
}

pub fn read_states(path: &Path, spec: &ProblemSpec, height: usize, mode: Mode, pruned: bool) -> Result<StateSet> {
    let mut reader = BufReader::new(fs::File::open(path).map_err(io)?);
    let mut first = String::new();
    reader.read_line(&mut first).map_err(io)?;
    let expected = header(&spec.name, height, mode, pruned);
    if first.trim_end() != expected {
        return Err(Error::Cache(format!("header `{}` does not match `{expected}`", first.trim_end())));
    }
    let mut text = String::new();
    GzDecoder::new(reader).read_to_string(&mut text).map_err(io)?;
    let states = text
        .lines()
        .map(|l| l.parse::<u128>().map_err(|e| Error::Cache(format!("bad record `{l}`: {e}"))))
        .collect::<Result<Vec<_>>>()?;
    if !states.windows(2).all(|w| w[0] < w[1]) {
        return Err(Error::Cache("records are not strictly ascending".into()));
    }
    Ok(StateSet::from_sorted(spec, height, mode, pruned, states))
}

/// States from `dir` when cached there, otherwise enumerated and then stored.
pub fn cached_states(
    dir: Option<&Path>,
    spec: &ProblemSpec,
    height: usize,
    mode: Mode,
    pruned: bool,
) -> Result<StateSet> {
    let Some(dir) = dir else {
        return enumerate_states_with_budget(spec, height, mode, pruned, DEFAULT_STATE_BUDGET);
    };
    let path = cache_path(dir, &spec.name, height, mode, pruned);
    if path.exists() {
        return read_states(&path, spec, height, mode, pruned);
    }
    let set = enumerate_states_with_budget(spec, height, mode, pruned, DEFAULT_STATE_BUDGET)?;
    write_states(&path, &set)?;
    Ok(set)
}
