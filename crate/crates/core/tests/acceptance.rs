//! The eight acceptance criteria, each timed against its limit. Prints one
//! PASS/FAIL line per criterion and fails if any criterion fails.

mod common;

use std::io::Write;
use std::panic::{self, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use colorsys::census::{self, CensusOptions, CensusRecord};
use colorsys::diag::{index_of, tile_at};
use colorsys::fixtures::{example_system, example_triangle, EXAMPLE_HORIZONTAL, EXAMPLE_VERTICAL};
use colorsys::search::{self, Chain};
use colorsys::system::Color;
use colorsys::{
    canonical_form, check_sequence, check_triangle, ColorSequence, SearchBudget, Searcher, Tile, Verdict,
};
use common::{accepts, all_systems, brute_enumerate, random_system, Tables};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

/// Writes to the process stdout directly so the lines survive test capture.
fn emit(line: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{line}");
    let _ = out.flush();
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

struct Report {
    lines: Vec<String>,
    failed: usize,
}

impl Report {
    fn run(&mut self, id: usize, name: &str, limit: Option<Duration>, f: impl FnOnce() -> Outcome) {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            Err(e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        let took = start.elapsed();
        let outcome = outcome.and_then(|detail| match limit {
            Some(l) if took > l => Err(format!("took {took:.2?}, over the limit")),
            _ => Ok(detail),
        });
        let bound = limit.map_or("no limit".to_string(), |l| format!("limit {l:?}"));
        let line = match &outcome {
            Ok(detail) => format!("PASS [{id}] {name} ({took:.2?}, {bound}): {detail}"),
            Err(why) => {
                self.failed += 1;
                format!("FAIL [{id}] {name} ({took:.2?}, {bound}): {why}")
            }
        };
        emit(&line);
        self.lines.push(line);
    }
}

fn example_check() -> Outcome {
    let sys = example_system();
    ensure(sys.colors() == 13, || "13 colors".into())?;
    ensure(EXAMPLE_HORIZONTAL.len() == 36 && sys.horizontal().len() == 36, || "36 H pairs".into())?;
    ensure(EXAMPLE_VERTICAL.len() == 53 && sys.vertical().len() == 53, || "53 V pairs".into())?;

    let fixtures = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let status = Command::new(env!("CARGO_BIN_EXE_colorsys"))
        .arg("check")
        .arg(fixtures.join("example1.system.json"))
        .arg(fixtures.join("example1.triangle.json"))
        .output()
        .map_err(|e| e.to_string())?
        .status;
    ensure(status.code() == Some(0), || format!("cli check exited {status}"))?;

    let tri = example_triangle();
    ensure(tri.tile_count() == 55, || "55 tiles".into())?;
    ensure(check_triangle(&sys, &tri).unwrap().is_accepted(), || "fixture rejected".into())?;

    let table = Tables::of(&sys);
    let base = tri.to_sequence().into_inner();
    let (mut violating, mut harmless) = (0, 0);
    for k in 0..55u64 {
        let t = tile_at(k);
        for c in 0..13 as Color {
            if c == base[k as usize] {
                continue;
            }
            let mut g = tri.clone();
            g.set(t, c);
            let mut seq = base.clone();
            seq[k as usize] = c;
            let breaks = !accepts(&table, &seq);
            let verdict = check_triangle(&sys, &g).unwrap();
            ensure(verdict.is_accepted() != breaks, || format!("corrupting {t} to {c}: {verdict:?}"))?;
            if breaks {
                violating += 1;
                ensure(verdict.violation().unwrap().index() <= 54, || "index in domain".into())?;
            } else {
                harmless += 1;
            }
        }
    }
    ensure(violating + harmless == 660, || "55 x 12 corruptions".into())?;
    Ok(format!("cli exit 0; {violating} violating corruptions all rejected, {harmless} harmless accepted"))
}

fn codec() -> Outcome {
    #[rustfmt::skip]
    let figure: [((u64, u64), u64); 15] = [
        ((0, 0), 0), ((0, 1), 1), ((1, 0), 2), ((0, 2), 3), ((1, 1), 4),
        ((2, 0), 5), ((0, 3), 6), ((1, 2), 7), ((2, 1), 8), ((3, 0), 9),
        ((0, 4), 10), ((1, 3), 11), ((2, 2), 12), ((3, 1), 13), ((4, 0), 14),
    ];
    for ((x, y), k) in figure {
        let t = Tile::new(x, y);
        ensure(index_of(t) == Ok(k), || format!("D{t} = {:?}, figure shows {k}", index_of(t)))?;
        ensure(tile_at(k) == t, || format!("inverse of {k}"))?;
    }
    let mut tiles = 0u64;
    'outer: for s in 0.. {
        for x in 0..=s {
            let t = Tile::new(x, s - x);
            ensure(tile_at(index_of(t).unwrap()) == t, || format!("roundtrip at {t}"))?;
            tiles += 1;
            if tiles == 1_000_000 {
                break 'outer;
            }
        }
    }
    for k in 0..1_000_000u64 {
        ensure(index_of(tile_at(k)) == Ok(k), || format!("roundtrip at index {k}"))?;
    }
    Ok("15 figure values; 10^6 roundtrips each way".into())
}

fn oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut searcher = Searcher::new(SearchBudget::default());
    let mut sequences = 0usize;
    for i in 0..200 {
        let n = if i % 2 == 0 { 2 } else { 3 };
        let density = rng.gen_range(0.3..0.95);
        let sys = random_system(&mut rng, n, density);
        for len in 1..=10 {
            let e = searcher.enumerate(&sys, len, usize::MAX);
            let got: std::collections::BTreeSet<Vec<Color>> =
                e.sequences.iter().map(|s| s.as_slice().to_vec()).collect();
            ensure(got.len() == e.sequences.len(), || "duplicate sequences".into())?;
            let want = brute_enumerate(&sys, len);
            ensure(got == want, || format!("{sys} at L={len}: {} vs {}", got.len(), want.len()))?;
            sequences += got.len();
        }
    }
    Ok(format!("200 systems, L = 1..10, {sequences} sequences matched"))
}

fn mu_one() -> Outcome {
    let mut records = Vec::new();
    let s = census::run_census(1, &CensusOptions::new(SearchBudget::default()), |r| records.push(r.clone()))
        .map_err(|e| e.to_string())?;
    // by hand: (H,V) = (∅,∅) → 1, (∅,{00}) → 2, ({00},∅) → 1, full → all of ℕ²
    let expected = [Some(1), Some(2), Some(1), None];
    for (r, want) in records.iter().zip(expected) {
        ensure(r.verdict.bounded_length() == want, || format!("system {}: {:?}", r.system_index, r.verdict))?;
    }
    ensure(matches!(records[3].verdict, Verdict::HasColoring(_)), || "full system has a coloring".into())?;
    ensure(s.counts.has_coloring == 1 && s.counts.unknown == 0, || format!("{:?}", s.counts))?;
    ensure(s.mu_exact == Some(3), || format!("mu_exact {:?}", s.mu_exact))?;
    Ok("bounded {1, 1, 2}, one has_coloring, mu_exact = 3".into())
}

fn two_color_census() -> Outcome {
    let budget = SearchBudget::new(32, 4);
    let collect = |jobs| {
        let mut lines = String::new();
        let mut records = Vec::new();
        let s = census::run_census(2, &CensusOptions::new(budget).jobs(jobs), |r: &CensusRecord| {
            lines.push_str(&r.to_line());
            records.push(r.clone());
        })
        .unwrap();
        (s, lines, records)
    };
    let (s1, one, records) = collect(1);
    let (s8, eight, _) = collect(8);
    ensure(records.len() == 512 && s1.total_systems == 512, || "512 systems".into())?;
    ensure(one == eight, || "1- and 8-worker streams differ".into())?;
    ensure(s1 == s8, || "summaries differ".into())?;
    for r in &records {
        match &r.verdict {
            Verdict::Bounded { max_length } => {
                ensure(search::enumerate(&r.system, max_length + 1, 1).sequences.is_empty(), || {
                    format!("system {} extends past {max_length}", r.system_index)
                })?
            }
            Verdict::HasColoring(w) => {
                ensure(check_triangle(&r.system, &w.expand(50)).unwrap().is_accepted(), || {
                    format!("system {} witness rejected", r.system_index)
                })?
            }
            Verdict::Unknown { .. } => {}
        }
    }
    let c = s1.counts;
    ensure((c.bounded, c.has_coloring, c.unknown) == (314, 176, 22), || format!("{c:?}"))?;
    ensure(s1.max_bounded_length == Some(5) && s1.mu_lower_bound == 6, || format!("{s1:?}"))?;
    ensure(s1.mu_exact.is_none(), || "exact with unknowns".into())?;
    Ok(format!(
        "512 records identical across 1/8 workers; {} bounded, {} has_coloring, {} unknown; mu_lower_bound = {}",
        c.bounded, c.has_coloring, c.unknown, s1.mu_lower_bound
    ))
}

fn prefix_closure() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let mut searcher = Searcher::new(SearchBudget::default());
    let mut sampled = 0;
    let mut systems = 0;
    while sampled < 1000 {
        let n = rng.gen_range(1..=6);
        let density = rng.gen_range(0.3..0.95);
        let sys = random_system(&mut rng, n, density);
        systems += 1;
        let mut batch = searcher.enumerate(&sys, rng.gen_range(1..=12), 3).sequences;
        if let Chain::Reached(s) = searcher.build_chain(&sys, rng.gen_range(1..=60)) {
            batch.push(s);
        }
        for s in batch.into_iter().take(1000 - sampled) {
            ensure(check_sequence(&sys, &s).unwrap().is_accepted(), || format!("{s} itself"))?;
            for k in 0..s.len() {
                let p = s.truncated(k);
                ensure(check_sequence(&sys, &p).unwrap().is_accepted(), || {
                    format!("{sys}: prefix {p} of {s}")
                })?;
            }
            sampled += 1;
        }
    }
    Ok(format!("1000 sequences from {systems} systems, every prefix accepted"))
}

fn chain_200() -> Outcome {
    let sys = example_system();
    let Chain::Reached(s) = search::build_chain(&sys, 200, SearchBudget::default()) else {
        return Err("no chain to 200".into());
    };
    ensure(s.len() == 200, || format!("length {}", s.len()))?;
    ensure(check_sequence(&sys, &s).unwrap().is_accepted(), || "chain rejected".into())?;
    for k in 0..200 {
        ensure(check_sequence(&sys, &s.truncated(k)).unwrap().is_accepted(), || format!("prefix {k}"))?;
    }
    ensure(accepts(&Tables::of(&sys), s.as_slice()), || "oracle rejects chain".into())?;
    Ok(format!(
        "length 200 accepted, all prefixes accepted; starts {}",
        ColorSequence::new(s.as_slice()[..8].to_vec())
    ))
}

fn isomorphism_invariance() -> Outcome {
    let budget = SearchBudget::new(32, 4);
    let swap = [1 as Color, 0];
    for sys in census::enumerate_systems(2).map_err(|e| e.to_string())? {
        let a = search::classify(&sys, budget);
        for perm in [[0 as Color, 1], swap] {
            let image = sys.relabel(&perm);
            let b = search::classify(&image, budget);
            ensure(a.kind() == b.kind() && a.bounded_length() == b.bounded_length(), || {
                format!("{sys}: {a:?} vs {image}: {b:?}")
            })?;
        }
    }
    let mut checked = 0;
    for n in 1..=3 {
        for sys in all_systems(n) {
            let c = canonical_form(&sys);
            ensure(canonical_form(&c) == c, || format!("not idempotent on {sys}"))?;
            checked += 1;
        }
    }
    Ok(format!("512 systems x 2 bijections invariant; idempotence on {checked} systems"))
}

#[test]
fn acceptance() {
    let mut report = Report { lines: Vec::new(), failed: 0 };
    let secs = |s| Some(Duration::from_secs(s));
    report.run(1, "example verification", secs(1), example_check);
    report.run(2, "diagonal codec", secs(1), codec);
    report.run(3, "oracle equivalence", secs(120), oracle_equivalence);
    report.run(4, "mu(1) = 3", secs(1), mu_one);
    report.run(5, "two-color census", secs(60), two_color_census);
    report.run(6, "prefix closure", None, prefix_closure);
    report.run(7, "chain to horizon 200", secs(10), chain_200);
    report.run(8, "isomorphism invariance", None, isomorphism_invariance);
    emit(&format!("{} of 8 criteria passed", 8 - report.failed));
    assert_eq!(report.failed, 0, "failed criteria:\n{}", report.lines.join("\n"));
}
