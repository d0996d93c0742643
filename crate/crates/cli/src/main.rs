//! Command-line front end: validation, h-vectors, cover enumeration and
//! classification, the homology oracle, doubling towers, and
//! rank-gradient reports.
//!
//! Exit codes: 0 on success, 1 on domain errors (diagnostic on stderr),
//! 2 on usage errors.

mod csv;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_rational::Rational64;
use smallcover::cover::{self, Coloring};
use smallcover::gradient::{self, TowerSummary};
use smallcover::homology;
use smallcover::hvector;
use smallcover::polytope::{builtin, Polytope};
use smallcover::tower::{build_tower, Strategy, TowerState};
use smallcover::{Error, Result};

#[derive(Parser)]
#[command(
    name = "smallcover",
    version,
    about = "Small covers of simple polytopes: h-vectors, colorings, mod-2 homology, doubling towers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// A polytope given either by builtin name or by file.
#[derive(Args)]
#[group(required = true, multiple = false)]
struct PolytopeArg {
    /// Builtin seed: square, pentagon, cube, dodecahedron, or <k>-prism
    #[arg(long)]
    builtin: Option<String>,
    /// Polytope file (dim= header plus face lines)
    #[arg(long)]
    polytope: Option<PathBuf>,
}

impl PolytopeArg {
    fn load(&self) -> Result<Polytope> {
        match (&self.builtin, &self.polytope) {
            (Some(name), None) => builtin(name),
            (None, Some(path)) => Polytope::parse(&fs::read_to_string(path)?),
            _ => unreachable!("clap enforces exactly one source"),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check the simple-polytope invariants; exits 1 when violated
    Validate {
        #[command(flatten)]
        input: PolytopeArg,
        /// Also require 3-connectivity of the vertex-edge graph
        #[arg(long)]
        strict: bool,
    },
    /// Print the h-vector
    Hvector {
        #[command(flatten)]
        input: PolytopeArg,
    },
    /// Enumerate, classify, or search characteristic colorings
    Covers {
        #[command(subcommand)]
        action: CoversAction,
    },
    /// Betti numbers of the cover defined by a coloring, with the
    /// h-vector comparison
    Homology {
        #[command(flatten)]
        input: PolytopeArg,
        /// Coloring file (facet: bits lines)
        #[arg(long)]
        coloring: PathBuf,
    },
    /// Build a doubling tower and emit one CSV row per level
    Tower {
        /// Seed polytope: builtin name or file path
        #[arg(long)]
        seed: String,
        /// Coloring file; defaults to the first characteristic coloring
        #[arg(long)]
        coloring: Option<PathBuf>,
        /// min-face | round-robin | list:f0,f1,...
        #[arg(long, default_value = "min-face")]
        strategy: String,
        #[arg(long)]
        depth: usize,
        /// Write the CSV here instead of stdout
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Rank-gradient report over a tower (built here or re-ingested)
    Rgr {
        /// Tower CSV produced by the tower subcommand
        #[arg(long, group = "source", required = true)]
        tower: Option<PathBuf>,
        /// Seed polytope: builtin name or file path
        #[arg(long, group = "source", requires = "depth")]
        seed: Option<String>,
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long, default_value = "min-face")]
        strategy: String,
        #[arg(long)]
        coloring: Option<PathBuf>,
        /// Volume-constant ratio C/D for the growth check, e.g. 5/6
        #[arg(long)]
        rho: Option<String>,
        /// Assumed rank of the base group for Reidemeister-Schreier
        /// ceilings
        #[arg(long)]
        base_rank: Option<u64>,
        /// Write the CSV here instead of stdout
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum CoversAction {
    /// Stream every characteristic coloring and the total count
    Enumerate {
        #[command(flatten)]
        input: PolytopeArg,
    },
    /// Count colorings up to polytope symmetry and GL(n, 2)
    Classify {
        #[command(flatten)]
        input: PolytopeArg,
    },
    /// Print the first orientable characteristic coloring
    Orientable {
        #[command(flatten)]
        input: PolytopeArg,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (name, outcome) = match cli.command {
        Command::Validate { input, strict } => ("validate", run_validate(&input, strict)),
        Command::Hvector { input } => ("hvector", run_hvector(&input)),
        Command::Covers { action } => ("covers", run_covers(action)),
        Command::Homology { input, coloring } => ("homology", run_homology(&input, &coloring)),
        Command::Tower {
            seed,
            coloring,
            strategy,
            depth,
            csv,
        } => (
            "tower",
            run_tower(&seed, coloring.as_deref(), &strategy, depth, csv.as_deref()),
        ),
        Command::Rgr {
            tower,
            seed,
            depth,
            strategy,
            coloring,
            rho,
            base_rank,
            csv,
        } => (
            "rgr",
            run_rgr(
                tower.as_deref(),
                seed.as_deref(),
                depth,
                &strategy,
                coloring.as_deref(),
                rho.as_deref(),
                base_rank,
                csv.as_deref(),
            ),
        ),
    };
    match outcome {
        Ok(code) => code,
        Err(err) => {
            eprintln!("smallcover {name}: {err}");
            ExitCode::from(1)
        }
    }
}

fn run_validate(input: &PolytopeArg, strict: bool) -> Result<ExitCode> {
    let p = input.load()?;
    let report = if strict { p.validate_strict() } else { p.validate() };
    println!("{report}");
    Ok(if report.ok() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn run_hvector(input: &PolytopeArg) -> Result<ExitCode> {
    let p = input.load()?;
    let h = hvector::h_vector(&p)?;
    println!("{}", join(h.as_slice()));
    Ok(ExitCode::SUCCESS)
}

fn run_covers(action: CoversAction) -> Result<ExitCode> {
    match action {
        CoversAction::Enumerate { input } => {
            let p = input.load()?;
            let n = p.dim();
            let mut count = 0u64;
            for c in cover::enumerate_characteristic(&p)? {
                let words: Vec<String> = c
                    .colors()
                    .iter()
                    .map(|&code| cover::code_to_bits(code, n))
                    .collect();
                println!("{}", words.join(" "));
                count += 1;
            }
            println!("count: {count}");
        }
        CoversAction::Classify { input } => {
            let p = input.load()?;
            let cls = cover::equivalence_classes(&p)?;
            println!("total: {}", cls.total_count);
            println!("classes: {}", cls.class_count);
            println!("group_order: {}", cls.group_order_used);
        }
        CoversAction::Orientable { input } => {
            let p = input.load()?;
            match cover::find_orientable(&p)? {
                Some(c) => print!("{}", c.serialize()),
                None => println!("none"),
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run_homology(input: &PolytopeArg, coloring: &Path) -> Result<ExitCode> {
    let p = input.load()?;
    let c = Coloring::parse(&fs::read_to_string(coloring)?)?;
    let qc = homology::build_quotient_complex(&p, &c)?;
    let betti = qc.betti();
    let h = hvector::h_vector(&p)?;
    println!("cells: {}", join(&qc.cell_counts()));
    println!("betti: {}", join(betti.as_slice()));
    println!("h_vector: {}", join(h.as_slice()));
    println!("betti_equals_h: {}", homology::verify_betti_equals_h(&p, &c)?);
    Ok(ExitCode::SUCCESS)
}

fn run_tower(
    seed: &str,
    coloring: Option<&Path>,
    strategy: &str,
    depth: usize,
    csv_path: Option<&Path>,
) -> Result<ExitCode> {
    let tower = resolve_tower(seed, coloring, strategy, depth)?;
    let text = csv::tower_csv(&tower)?;
    emit(csv_path, &text)?;
    Ok(ExitCode::SUCCESS)
}

#[allow(clippy::too_many_arguments)]
fn run_rgr(
    tower_csv: Option<&Path>,
    seed: Option<&str>,
    depth: Option<usize>,
    strategy: &str,
    coloring: Option<&Path>,
    rho: Option<&str>,
    base_rank: Option<u64>,
    csv_path: Option<&Path>,
) -> Result<ExitCode> {
    let summary = match (tower_csv, seed) {
        (Some(path), None) => csv::parse_tower_csv(&fs::read_to_string(path)?)?,
        (None, Some(seed)) => {
            let depth = depth.expect("clap enforces depth alongside seed");
            TowerSummary::from_tower(&resolve_tower(seed, coloring, strategy, depth)?)
        }
        _ => unreachable!("clap enforces exactly one source"),
    };
    let report = gradient::rgr_ratios_from_summary(&summary, base_rank)?;
    let atkinson = match rho {
        Some(rho) => {
            let (c, d) = parse_rho(rho)?;
            Some(gradient::atkinson_check_summary(&summary, c, d)?)
        }
        None => None,
    };
    let text = csv::gradient_csv(&report, atkinson.as_ref());
    emit(csv_path, &text)?;
    match report.limit_estimate {
        Some(limit) => eprintln!(
            "limit_estimate: {} ({})",
            gradient::format_ratio(limit),
            if report.tail_constant {
                "constant face sizes"
            } else {
                "last face size continued"
            }
        ),
        None => eprintln!("limit_estimate: none (no doubling observed)"),
    }
    if let Some(a) = &atkinson {
        if !a.precondition_ok {
            eprintln!("volume growth check skipped: seed needs more than 8 vertices");
        } else if let Some(max_rho) = a.max_rho {
            eprintln!("max_rho: {}", max_rho);
        }
    }
    Ok(ExitCode::SUCCESS)
}

/// Seed lookup order: builtin names first, then the filesystem.
fn load_seed(seed: &str) -> Result<Polytope> {
    match builtin(seed) {
        Ok(p) => Ok(p),
        Err(Error::UnknownBuiltin(_)) if Path::new(seed).exists() => {
            Polytope::parse(&fs::read_to_string(seed)?)
        }
        Err(e) => Err(e),
    }
}

fn resolve_tower(
    seed: &str,
    coloring: Option<&Path>,
    strategy: &str,
    depth: usize,
) -> Result<TowerState> {
    let p = load_seed(seed)?;
    let c = match coloring {
        Some(path) => Coloring::parse(&fs::read_to_string(path)?)?,
        None => cover::enumerate_characteristic(&p)?
            .next()
            .ok_or_else(|| Error::Domain("polytope admits no characteristic coloring".into()))?,
    };
    build_tower(&p, &c, parse_strategy(strategy)?, depth)
}

fn parse_strategy(s: &str) -> Result<Strategy> {
    match s {
        "min-face" => Ok(Strategy::MinVertexFace),
        "round-robin" => Ok(Strategy::RoundRobin),
        _ => match s.strip_prefix("list:") {
            Some(items) => {
                let list = items
                    .split(',')
                    .map(|x| {
                        x.trim()
                            .parse::<usize>()
                            .map_err(|_| Error::Domain(format!("bad facet id `{x}` in strategy list")))
                    })
                    .collect::<Result<Vec<usize>>>()?;
                Ok(Strategy::Explicit(list))
            }
            None => Err(Error::Domain(format!(
                "unknown strategy `{s}` (use min-face, round-robin, or list:<ids>)"
            ))),
        },
    }
}

/// `P/Q` or a bare integer, as the exact ratio C/D.
fn parse_rho(s: &str) -> Result<(Rational64, Rational64)> {
    let bad = || Error::Domain(format!("bad ratio `{s}` (use P/Q with positive integers)"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: i64 = num.parse().map_err(|_| bad())?;
    let d: i64 = den.parse().map_err(|_| bad())?;
    if n <= 0 || d <= 0 {
        return Err(bad());
    }
    Ok((Rational64::from_integer(n), Rational64::from_integer(d)))
}

fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn join<T: std::fmt::Display>(items: &[T]) -> String {
    items
        .iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}
