//! Command-line driver. Exit status: 0 accepted / success, 1 rejected or
//! negative answer, 2 malformed input or IO failure.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use colorsys::census::{self, CensusOptions};
use colorsys::io::{self as cio, ColoringFile};
use colorsys::render::{self, Format, Palette};
use colorsys::search::{Chain, Searcher};
use colorsys::system::find_isomorphism;
use colorsys::{check_sequence, check_triangle, Check, SearchBudget, TriangleColoring};

#[derive(Parser)]
#[command(name = "colorsys", version, about = "Check, search and census origin-anchored coloring systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Caps {
    /// Longest sequence explored by length searches.
    #[arg(long, default_value_t = 64, value_parser = clap::value_parser!(u64).range(1..))]
    depth_cap: u64,
    /// Largest torus period tried for witnesses.
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..=64))]
    period_cap: u64,
    /// Placements allowed per search.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    node_cap: Option<u64>,
}

impl Caps {
    fn budget(self) -> SearchBudget {
        let b = SearchBudget::new(self.depth_cap as usize, self.period_cap as usize);
        match self.node_cap {
            Some(n) => b.with_node_cap(n),
            None => b,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check a sequence, triangle or witness against a system.
    Check { system: PathBuf, coloring: PathBuf },
    /// Classify a system; optionally build a chain or enumerate sequences.
    Solve {
        system: PathBuf,
        #[command(flatten)]
        caps: Caps,
        /// Build the least chain of acceptable sequences up to this length.
        #[arg(long, value_name = "M")]
        chain: Option<usize>,
        /// List acceptable sequences of this length.
        #[arg(long, value_name = "L")]
        enumerate: Option<usize>,
        /// At most this many enumerated sequences.
        #[arg(long, value_name = "K", default_value_t = 100)]
        limit: usize,
    },
    /// Print the verdict as JSON.
    Classify {
        system: PathBuf,
        #[command(flatten)]
        caps: Caps,
    },
    /// Classify every system with n colors.
    Census {
        #[arg(long, short = 'n')]
        colors: usize,
        #[command(flatten)]
        caps: Caps,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// JSON-lines record file; cursor and summary sidecars go beside it.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Continue from the cursor next to --out.
        #[arg(long, requires = "out")]
        resume: bool,
        /// Classify one representative per isomorphism class.
        #[arg(long)]
        dedupe: bool,
        #[arg(long, hide = true)]
        stop_after: Option<u64>,
    },
    /// Render a triangle, sequence or witness.
    Render {
        coloring: PathBuf,
        #[arg(long, default_value = "text")]
        format: Format,
        /// Pixels per cell (ppm).
        #[arg(long, default_value_t = 1)]
        scale: usize,
        /// Largest diagonal drawn when expanding a witness.
        #[arg(long, default_value_t = 9)]
        depth: usize,
        /// System whose color count sizes the palette.
        #[arg(long)]
        system: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exit 0 when the two systems are isomorphic, 1 otherwise.
    Isomorphic { first: PathBuf, second: PathBuf },
    /// Print the canonical form of a system.
    Canon { system: PathBuf },
}

/// Failure carrying the process exit status.
struct Fail(u8, String);

impl<E: std::fmt::Display> From<E> for Fail {
    fn from(e: E) -> Self {
        Fail(2, e.to_string())
    }
}

fn located(path: &Path) -> impl Fn(cio::FormatError) -> Fail + '_ {
    move |e| Fail(2, format!("{}: {e}", path.display()))
}

fn emit(out: Option<&Path>, bytes: &[u8]) -> Result<(), Fail> {
    match out {
        Some(p) => fs::write(p, bytes).map_err(|e| Fail(2, format!("{}: {e}", p.display()))),
        None => {
            std::io::stdout().write_all(bytes)?;
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<u8, Fail> {
    match cli.command {
        Command::Check { system, coloring } => {
            let sys = cio::read_system(&system).map_err(located(&system))?;
            let check = match cio::read_coloring(&coloring).map_err(located(&coloring))? {
                ColoringFile::Sequence(s) => check_sequence(&sys, &s),
                ColoringFile::Triangle(t) => check_triangle(&sys, &t),
                ColoringFile::Witness(w) => {
                    return Ok(match w.verify(&sys) {
                        Ok(()) => {
                            println!("accepted: periodic {}x{} coloring", w.p(), w.q());
                            0
                        }
                        Err(e) => {
                            println!("rejected: {e}");
                            1
                        }
                    });
                }
            }
            .map_err(|e| Fail(2, format!("{}: {e}", coloring.display())))?;
            Ok(match check {
                Check::Accepted => {
                    println!("accepted");
                    0
                }
                Check::Rejected(v) => {
                    println!("rejected: {v}");
                    1
                }
            })
        }
        Command::Solve { system, caps, chain, enumerate, limit } => {
            let sys = cio::read_system(&system).map_err(located(&system))?;
            let mut searcher = Searcher::new(caps.budget());
            println!("{}", searcher.classify(&sys).describe());
            let mut status = 0;
            if let Some(m) = chain {
                match searcher.build_chain(&sys, m) {
                    Chain::Reached(seq) => {
                        println!("chain {m}: {seq}");
                        let tri = TriangleColoring::from_sequence(&seq)?;
                        print!("{}", render::render_text(&tri));
                    }
                    Chain::Unreachable => {
                        println!("chain {m}: no acceptable sequence of length {m}");
                        status = 1;
                    }
                    Chain::Indeterminate => {
                        println!("chain {m}: node cap exhausted");
                        status = 1;
                    }
                }
            }
            if let Some(len) = enumerate {
                let e = searcher.enumerate(&sys, len, limit);
                println!(
                    "length {len}: {} sequence(s){}",
                    e.sequences.len(),
                    if e.truncated { ", truncated" } else { "" }
                );
                for s in &e.sequences {
                    println!("{s}");
                }
            }
            Ok(status)
        }
        Command::Classify { system, caps } => {
            let sys = cio::read_system(&system).map_err(located(&system))?;
            let v = Searcher::new(caps.budget()).classify(&sys);
            println!("{}", serde_json::to_string(&v)?);
            Ok(0)
        }
        Command::Census { colors, caps, jobs, out, resume, dedupe, stop_after } => {
            let mut opts = CensusOptions::new(caps.budget()).dedupe(dedupe).jobs(jobs);
            opts.stop_after = stop_after;
            let summary = match &out {
                Some(path) => census::run_census_to_file(colors, &opts, path, resume)?,
                None => census::run_census(colors, &opts, |_| {})?,
            };
            print!("{}", summary.to_json());
            Ok(0)
        }
        Command::Render { coloring, format, scale, depth, system, out } => {
            let tri = match cio::read_coloring(&coloring).map_err(located(&coloring))? {
                ColoringFile::Sequence(s) => TriangleColoring::from_sequence(&s)?,
                ColoringFile::Triangle(t) => t,
                ColoringFile::Witness(w) => w.expand(depth),
            };
            let colors = match &system {
                Some(p) => cio::read_system(p).map_err(located(p))?.colors(),
                None => Palette::example().len().max(tri.max_color() as usize + 1),
            };
            let bytes = render::render_scaled(&tri, &Palette::for_colors(colors), format, scale)?;
            emit(out.as_deref(), &bytes)?;
            Ok(0)
        }
        Command::Isomorphic { first, second } => {
            let a = cio::read_system(&first).map_err(located(&first))?;
            let b = cio::read_system(&second).map_err(located(&second))?;
            Ok(match find_isomorphism(&a, &b) {
                Some(perm) => {
                    let map: Vec<String> =
                        perm.iter().enumerate().map(|(c, p)| format!("{c}->{p}")).collect();
                    println!("isomorphic: {}", map.join(" "));
                    0
                }
                None => {
                    println!("not isomorphic");
                    1
                }
            })
        }
        Command::Canon { system } => {
            let sys = cio::read_system(&system).map_err(located(&system))?;
            print!("{}", sys.canonical_form().to_json());
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(Fail(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
