//! Exhaustive census over every system with `n` colors.
//!
//! Systems are indexed `a · 4^{n²} + H · 2^{n²} + V` with `H` and `V` the
//! row-major relation masks, so index order is origin, then `H`, then `V`,
//! each ascending. Each system is classified; the largest certified bounded
//! length gives a lower bound on `μ(n)`, which is exact once no system is
//! left unknown.
//!
//! Work is cut into chunks of consecutive indices and each chunk into one
//! contiguous slice per worker. Records are emitted in index order whatever
//! the worker count, and a file sink records a cursor after every chunk so an
//! interrupted run can resume.

use std::collections::{HashMap, HashSet};
use std::fs::{self, File, OpenOptions};
use std::io::{self, BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;
use std::thread;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coloring::PeriodicWitness;
use crate::search::{SearchBudget, Searcher, Verdict, VerdictKind};
use crate::system::{full_mask, Color, ColoringSystem};

/// Largest `n` accepted by [`enumerate_systems`].
pub const MAX_ENUMERATION_COLORS: usize = 8;
/// Largest `n` whose system indices fit 64 bits.
pub const MAX_CENSUS_COLORS: usize = 5;

#[derive(Debug, Error)]
pub enum CensusError {
    #[error("color count {0} outside 1..={1}")]
    Colors(usize, usize),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{path}: cannot resume: {reason}")]
    Resume { path: PathBuf, reason: String },
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> CensusError + '_ {
    move |source| CensusError::Io { path: path.to_path_buf(), source }
}

/// `n · 2^{n²} · 2^{n²}`, when it fits 64 bits.
pub fn system_count(n: usize) -> Option<u64> {
    let shift = u32::try_from(2 * n * n).ok()?;
    1u64.checked_shl(shift).filter(|_| shift < 64).and_then(|p| p.checked_mul(n as u64))
}

/// The system at `index` in census order.
pub fn system_at(n: usize, index: u64) -> ColoringSystem {
    let bits = n * n;
    let mask = full_mask(bits);
    let v = index & mask;
    let h = (index >> bits) & mask;
    let a = index >> (2 * bits);
    ColoringSystem::from_masks(n, a as Color, h, v)
}

/// Iterator over all systems with `n` colors in census order.
#[derive(Debug, Clone)]
pub struct Systems {
    n: usize,
    max: u64,
    next: Option<(Color, u64, u64)>,
}

impl Iterator for Systems {
    type Item = ColoringSystem;

    fn next(&mut self) -> Option<ColoringSystem> {
        let (a, h, v) = self.next?;
        let sys = ColoringSystem::from_masks(self.n, a, h, v);
        self.next = if v < self.max {
            Some((a, h, v + 1))
        } else if h < self.max {
            Some((a, h + 1, 0))
        } else if (a as usize) + 1 < self.n {
            Some((a + 1, 0, 0))
        } else {
            None
        };
        Some(sys)
    }
}

pub fn enumerate_systems(n: usize) -> Result<Systems, CensusError> {
    if !(1..=MAX_ENUMERATION_COLORS).contains(&n) {
        return Err(CensusError::Colors(n, MAX_ENUMERATION_COLORS));
    }
    Ok(Systems { n, max: full_mask(n * n), next: Some((0, 0, 0)) })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusRecord {
    pub system_index: u64,
    pub system: ColoringSystem,
    pub verdict: Verdict,
    /// `origin:H:V` of the canonical form, masks in hex.
    pub canonical_id: String,
}

/// Verdict-specific fields of a record line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
enum Detail {
    Bounded { max_length: usize },
    HasColoring { p: usize, q: usize, cells: Vec<Vec<Color>> },
    Unknown { depth_reached: usize, period_cap_reached: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct RecordLine {
    system_index: u64,
    canonical_id: String,
    verdict: VerdictKind,
    detail: Detail,
}

impl CensusRecord {
    /// One JSON line, keys in fixed order, with trailing newline.
    pub fn to_line(&self) -> String {
        let detail = match &self.verdict {
            Verdict::Bounded { max_length } => Detail::Bounded { max_length: *max_length },
            Verdict::HasColoring(w) => Detail::HasColoring { p: w.p(), q: w.q(), cells: w.rows() },
            Verdict::Unknown { depth_reached, period_cap_reached } => {
                Detail::Unknown { depth_reached: *depth_reached, period_cap_reached: *period_cap_reached }
            }
        };
        let line = RecordLine {
            system_index: self.system_index,
            canonical_id: self.canonical_id.clone(),
            verdict: self.verdict.kind(),
            detail,
        };
        let mut s = serde_json::to_string(&line).expect("plain data serializes");
        s.push('\n');
        s
    }

    pub fn from_line(n: usize, line: &str) -> Result<CensusRecord, String> {
        let r: RecordLine = serde_json::from_str(line).map_err(|e| e.to_string())?;
        let verdict = match (r.verdict, r.detail) {
            (VerdictKind::Bounded, Detail::Bounded { max_length }) => Verdict::Bounded { max_length },
            (VerdictKind::HasColoring, Detail::HasColoring { cells, .. }) => {
                Verdict::HasColoring(PeriodicWitness::from_rows(&cells).map_err(|e| e.to_string())?)
            }
            (VerdictKind::Unknown, Detail::Unknown { depth_reached, period_cap_reached }) => {
                Verdict::Unknown { depth_reached, period_cap_reached }
            }
            (kind, _) => return Err(format!("detail does not match verdict {kind:?}")),
        };
        Ok(CensusRecord {
            system_index: r.system_index,
            system: system_at(n, r.system_index),
            verdict,
            canonical_id: r.canonical_id,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct VerdictCounts {
    pub bounded: u64,
    pub has_coloring: u64,
    pub unknown: u64,
}

impl VerdictCounts {
    fn bump(&mut self, kind: VerdictKind) {
        match kind {
            VerdictKind::Bounded => self.bounded += 1,
            VerdictKind::HasColoring => self.has_coloring += 1,
            VerdictKind::Unknown => self.unknown += 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusSummary {
    pub n: usize,
    pub total_systems: u64,
    pub budget: SearchBudget,
    /// Raw system counts per verdict.
    pub counts: VerdictCounts,
    /// Isomorphism classes per verdict.
    pub class_counts: VerdictCounts,
    /// Largest certified bounded length.
    pub max_bounded_length: Option<usize>,
    /// `1 + max_bounded_length`: every bounded system's sequences are
    /// shorter than this.
    pub mu_lower_bound: usize,
    /// Present only when no verdict is unknown.
    pub mu_exact: Option<usize>,
    /// First system index reaching `max_bounded_length`.
    pub champion: Option<u64>,
}

impl CensusSummary {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data serializes");
        s.push('\n');
        s
    }
}

/// Running totals from which the summary is derived.
#[derive(Debug, Default)]
struct Tally {
    seen: u64,
    counts: VerdictCounts,
    classes: HashSet<(VerdictKind, String)>,
    best: Option<(usize, u64)>,
}

impl Tally {
    fn add(&mut self, r: &CensusRecord) {
        self.seen += 1;
        let kind = r.verdict.kind();
        self.counts.bump(kind);
        self.classes.insert((kind, r.canonical_id.clone()));
        if let Some(l) = r.verdict.bounded_length() {
            if self.best.is_none_or(|(b, _)| l > b) {
                self.best = Some((l, r.system_index));
            }
        }
    }

    fn summary(&self, n: usize, total: u64, budget: SearchBudget) -> CensusSummary {
        let mut class_counts = VerdictCounts::default();
        for (kind, _) in &self.classes {
            class_counts.bump(*kind);
        }
        let max_bounded_length = self.best.map(|(l, _)| l);
        let mu_lower_bound = 1 + max_bounded_length.unwrap_or(0);
        CensusSummary {
            n,
            total_systems: total,
            budget,
            counts: self.counts,
            class_counts,
            max_bounded_length,
            mu_lower_bound,
            mu_exact: (self.counts.unknown == 0 && self.seen == total).then_some(mu_lower_bound),
            champion: self.best.map(|(_, i)| i),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CensusOptions {
    pub budget: SearchBudget,
    /// Classify one system per isomorphism class and carry its verdict over.
    pub dedupe: bool,
    pub jobs: usize,
    /// Systems per emitted chunk; also the cursor granularity.
    pub chunk: u64,
    /// Stop after this many systems in total (for staged runs).
    pub stop_after: Option<u64>,
}

impl CensusOptions {
    pub fn new(budget: SearchBudget) -> Self {
        CensusOptions { budget, dedupe: false, jobs: 1, chunk: 4096, stop_after: None }
    }

    pub fn dedupe(mut self, on: bool) -> Self {
        self.dedupe = on;
        self
    }

    pub fn jobs(mut self, jobs: usize) -> Self {
        self.jobs = jobs.max(1);
        self
    }
}

fn inverse(perm: &[Color]) -> Vec<Color> {
    let mut inv = vec![0; perm.len()];
    for (c, &p) in perm.iter().enumerate() {
        inv[p as usize] = c as Color;
    }
    inv
}

type Cache = Mutex<HashMap<ColoringSystem, Verdict>>;

fn classify_range(
    n: usize,
    range: std::ops::Range<u64>,
    opts: &CensusOptions,
    cache: &Cache,
) -> Vec<CensusRecord> {
    let mut searcher = Searcher::new(opts.budget);
    range
        .map(|system_index| {
            let system = system_at(n, system_index);
            let (canon, perm) = system.canonical_labeling();
            let canonical_id = canon.mask_id().expect("census systems have n <= 8");
            let verdict = if opts.dedupe {
                let cached = cache.lock().expect("cache lock").get(&canon).cloned();
                let v = cached.unwrap_or_else(|| {
                    let v = searcher.classify(&canon);
                    cache.lock().expect("cache lock").insert(canon, v.clone());
                    v
                });
                v.relabel(&inverse(&perm))
            } else {
                searcher.classify(&system)
            };
            CensusRecord { system_index, system, verdict, canonical_id }
        })
        .collect()
}

/// Classifies systems `start..end`, splitting the range across workers.
fn classify_chunk(n: usize, start: u64, end: u64, opts: &CensusOptions, cache: &Cache) -> Vec<CensusRecord> {
    let jobs = opts.jobs.max(1) as u64;
    if jobs == 1 || end - start < 2 {
        return classify_range(n, start..end, opts, cache);
    }
    let span = (end - start).div_ceil(jobs);
    thread::scope(|scope| {
        let handles: Vec<_> = (0..jobs)
            .map(|w| {
                let lo = (start + w * span).min(end);
                let hi = (lo + span).min(end);
                scope.spawn(move || classify_range(n, lo..hi, opts, cache))
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("census worker panicked")).collect()
    })
}

fn check_colors(n: usize) -> Result<u64, CensusError> {
    if !(1..=MAX_CENSUS_COLORS).contains(&n) {
        return Err(CensusError::Colors(n, MAX_CENSUS_COLORS));
    }
    Ok(system_count(n).expect("fits for n <= 5"))
}

/// Runs the census from `first`, feeding records in index order to `sink`
/// one chunk at a time.
fn drive(
    n: usize,
    opts: &CensusOptions,
    first: u64,
    tally: &mut Tally,
    mut sink: impl FnMut(&[CensusRecord], u64) -> Result<(), CensusError>,
) -> Result<(), CensusError> {
    let total = check_colors(n)?;
    let stop = opts.stop_after.map_or(total, |s| s.min(total));
    let cache = Mutex::new(HashMap::new());
    let mut start = first;
    while start < stop {
        let end = (start + opts.chunk.max(1)).min(stop);
        let records = classify_chunk(n, start, end, opts, &cache);
        for r in &records {
            tally.add(r);
        }
        sink(&records, end)?;
        start = end;
    }
    Ok(())
}

/// Classifies every `n`-color system, handing records to `sink` in index
/// order. Budget exhaustion never aborts the run; those systems are unknown.
pub fn run_census(
    n: usize,
    opts: &CensusOptions,
    mut sink: impl FnMut(&CensusRecord),
) -> Result<CensusSummary, CensusError> {
    let total = check_colors(n)?;
    let mut tally = Tally::default();
    drive(n, opts, 0, &mut tally, |records, _| {
        records.iter().for_each(&mut sink);
        Ok(())
    })?;
    Ok(tally.summary(n, total, opts.budget))
}

/// Resumption state kept next to the record file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct Cursor {
    n: usize,
    budget: SearchBudget,
    dedupe: bool,
    /// Systems `0..completed` are in the record file.
    completed: u64,
    /// Byte length of the record file at that point.
    bytes: u64,
}

fn sidecar(out: &Path, suffix: &str) -> PathBuf {
    let mut name = out.as_os_str().to_os_string();
    name.push(suffix);
    PathBuf::from(name)
}

pub fn cursor_path(out: &Path) -> PathBuf {
    sidecar(out, ".cursor")
}

pub fn summary_path(out: &Path) -> PathBuf {
    sidecar(out, ".summary.json")
}

fn write_atomic(path: &Path, contents: &str) -> Result<(), CensusError> {
    let tmp = sidecar(path, ".tmp");
    fs::write(&tmp, contents).map_err(io_err(&tmp))?;
    fs::rename(&tmp, path).map_err(io_err(path))
}

/// Runs the census into a JSON-lines file at `out`, with `out.cursor` and
/// `out.summary.json` beside it. With `resume`, continues from the cursor,
/// discarding anything written after it.
pub fn run_census_to_file(
    n: usize,
    opts: &CensusOptions,
    out: &Path,
    resume: bool,
) -> Result<CensusSummary, CensusError> {
    let total = check_colors(n)?;
    let cursor_file = cursor_path(out);
    let mut tally = Tally::default();
    let mut cursor = Cursor { n, budget: opts.budget, dedupe: opts.dedupe, completed: 0, bytes: 0 };

    let mut file = if resume && cursor_file.exists() {
        let resume_err = |reason: String| CensusError::Resume { path: out.to_path_buf(), reason };
        let saved: Cursor =
            serde_json::from_str(&fs::read_to_string(&cursor_file).map_err(io_err(&cursor_file))?)
                .map_err(|e| resume_err(format!("bad cursor: {e}")))?;
        if (saved.n, saved.budget, saved.dedupe) != (n, opts.budget, opts.dedupe) {
            return Err(resume_err("cursor was written with different settings".into()));
        }
        let file = OpenOptions::new().read(true).write(true).open(out).map_err(io_err(out))?;
        file.set_len(saved.bytes).map_err(io_err(out))?;
        let mut read = 0;
        for (i, line) in BufReader::new(&file).lines().enumerate() {
            let line = line.map_err(io_err(out))?;
            let record =
                CensusRecord::from_line(n, &line).map_err(|e| resume_err(format!("line {}: {e}", i + 1)))?;
            if record.system_index != read {
                return Err(resume_err(format!("line {} holds system {}", i + 1, record.system_index)));
            }
            tally.add(&record);
            read += 1;
        }
        if read != saved.completed {
            return Err(resume_err(format!("cursor says {} records, file has {read}", saved.completed)));
        }
        cursor = saved;
        OpenOptions::new().append(true).open(out).map_err(io_err(out))?
    } else {
        File::create(out).map_err(io_err(out))?
    };
    write_atomic(&cursor_file, &serde_json::to_string(&cursor).expect("serializes"))?;

    let first = cursor.completed;
    drive(n, opts, first, &mut tally, |records, end| {
        let mut buf = String::new();
        for r in records {
            buf.push_str(&r.to_line());
        }
        file.write_all(buf.as_bytes()).map_err(io_err(out))?;
        file.flush().map_err(io_err(out))?;
        cursor.completed = end;
        cursor.bytes += buf.len() as u64;
        write_atomic(&cursor_file, &serde_json::to_string(&cursor).expect("serializes"))
    })?;

    let summary = tally.summary(n, total, opts.budget);
    if cursor.completed == total {
        write_atomic(&summary_path(out), &summary.to_json())?;
    }
    Ok(summary)
}

/// Bounds on `μ(n)` from a census.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Mu {
    pub exact: Option<usize>,
    pub lower_bound: usize,
}

pub fn mu(n: usize, budget: SearchBudget) -> Result<Mu, CensusError> {
    let jobs = thread::available_parallelism().map_or(1, |j| j.get());
    let opts = CensusOptions::new(budget).dedupe(true).jobs(jobs);
    let s = run_census(n, &opts, |_| {})?;
    Ok(Mu { exact: s.mu_exact, lower_bound: s.mu_lower_bound })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(system_count(1), Some(4));
        assert_eq!(system_count(2), Some(512));
        assert_eq!(system_count(3), Some(786_432));
        assert_eq!(system_count(5), Some(5 << 50));
        assert_eq!(system_count(6), None);
    }

    #[test]
    fn enumeration_order() {
        let all: Vec<_> = enumerate_systems(1).unwrap().collect();
        assert_eq!(all.len(), 4);
        assert_eq!(all[0], ColoringSystem::new(1, 0, [], []).unwrap());
        assert_eq!(all[1], ColoringSystem::new(1, 0, [], [(0, 0)]).unwrap());
        assert_eq!(all[3], ColoringSystem::new(1, 0, [(0, 0)], [(0, 0)]).unwrap());
        for (i, s) in enumerate_systems(2).unwrap().enumerate() {
            assert_eq!(system_at(2, i as u64), s);
        }
        assert_eq!(enumerate_systems(2).unwrap().count(), 512);
        assert!(enumerate_systems(0).is_err());
        assert!(enumerate_systems(9).is_err());
        assert!(enumerate_systems(8).is_ok());
    }

    #[test]
    fn record_lines_roundtrip() {
        let w = PeriodicWitness::from_rows(&[vec![0, 1]]).unwrap();
        for verdict in [
            Verdict::Bounded { max_length: 2 },
            Verdict::HasColoring(w),
            Verdict::Unknown { depth_reached: 8, period_cap_reached: 4 },
        ] {
            let r = CensusRecord {
                system_index: 7,
                system: system_at(2, 7),
                verdict,
                canonical_id: "0:0:7".into(),
            };
            let line = r.to_line();
            assert!(line.starts_with("{\"system_index\":7,\"canonical_id\":\"0:0:7\",\"verdict\":"));
            assert_eq!(CensusRecord::from_line(2, line.trim_end()).unwrap(), r);
        }
        assert!(CensusRecord::from_line(
            2,
            r#"{"system_index":0,"canonical_id":"x","verdict":"unknown","detail":{"max_length":1}}"#
        )
        .is_err());
    }

    #[test]
    fn inverse_undoes() {
        let p = [2, 0, 1];
        let inv = inverse(&p);
        for c in 0..3 {
            assert_eq!(inv[p[c] as usize] as usize, c);
        }
    }
}
