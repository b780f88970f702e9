//! The `pmd` command line.
//!
//! Exit codes: 0 on success, 1 for bad input (unreadable or invalid files,
//! unmet preconditions), 2 when a computation contradicts a structure
//! theorem.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::decomp::decompose;
use crate::error::{Error, Result};
use crate::ingest::{interlevel_h0, random_module, sublevel_h0, GeneratorSpec, SampledFunction};
use crate::io::{field_from_env, read_module, write_module, Payload, ReportFile, SummandReport};
use crate::module::PersistenceModule;
use crate::poset::Shape;
use crate::structure::{
    barcode_chain, block_decompose, check_middle_exact, extend_zigzag, verify_triangle_blocks, zigzag_barcode,
    Barcode, BlockList,
};
use crate::svg::{render_barcode, render_blocks};

#[derive(Debug, Parser)]
#[command(name = "pmd", version, about = "Decompose persistence modules over finite posets")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse a module file and check functoriality.
    Validate { file: PathBuf },
    /// Decompose into indecomposable summands.
    Decompose {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also write a JSON report here.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Barcode of a module over a chain.
    Barcode { file: PathBuf },
    /// Block decomposition of a middle exact module over a grid or triangular region.
    Blocks {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Check exactness of every unit square.
    MiddleExact { file: PathBuf },
    /// Write the dual module (over a grid: transported back onto the grid).
    Dualize {
        file: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Extend a zigzag fence module to the grid of its window.
    Extend {
        file: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Barcode of a fence module, cross-checked along two routes.
    Zigzag {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Generate a module from a JSON spec.
    Gen {
        kind: GenKind,
        spec: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        /// Overrides the seed in an `intervals` spec.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Draw a barcode or block decomposition as SVG.
    Plot {
        file: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenKind {
    Intervals,
    Interlevel,
    Sublevel,
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| {
        Error::parse(format!("{} line {} column {}", path.display(), e.line(), e.column()), e.to_string())
    })
}

fn blocks_for(m: &PersistenceModule, seed: u64) -> Result<BlockList> {
    match m.poset().shape() {
        Shape::TriangleRegion { .. } => verify_triangle_blocks(m, seed),
        _ => block_decompose(m, seed),
    }
}

fn print_barcode(out: &mut dyn Write, b: &Barcode) -> std::io::Result<()> {
    writeln!(out, "{} bars", b.total())?;
    for bar in &b.bars {
        writeln!(out, "{:?} x{}", bar.carrier.elements(), bar.multiplicity)?;
    }
    Ok(())
}

fn execute(cmd: &Command, argv: &[String], out: &mut dyn Write) -> Result<()> {
    match cmd {
        Command::Validate { file } => {
            let m = read_module(file)?;
            writeln!(
                out,
                "valid: {} over {}, {} elements, total dimension {}",
                m.poset().shape(),
                m.field(),
                m.poset().len(),
                m.total_dim()
            )?;
        }
        Command::Decompose { file, seed, json } => {
            let m = read_module(file)?;
            let d = decompose(&m, *seed);
            let summands = SummandReport::all(&d);
            writeln!(out, "{} summands", summands.len())?;
            for (i, s) in summands.iter().enumerate() {
                writeln!(out, "summand {i}: support {:?} dims {:?} ({})", s.support, s.dims, s.certificate)?;
            }
            if let Some(path) = json {
                let report = ReportFile {
                    command: argv.to_vec(),
                    seed: Some(*seed),
                    result: Payload::Decomposition { summands },
                    counterexample: None,
                };
                std::fs::write(path, report.to_json())?;
            }
        }
        Command::Barcode { file } => {
            let m = read_module(file)?;
            print_barcode(out, &barcode_chain(&m)?)?;
        }
        Command::Blocks { file, seed } => {
            let m = read_module(file)?;
            let b = blocks_for(&m, *seed)?;
            writeln!(out, "{} blocks", b.total())?;
            for block in &b.blocks {
                let tags: Vec<&str> = block.types.iter().map(|t| t.tag()).collect();
                writeln!(out, "{:?} [{}] x{}", block.carrier.elements(), tags.join(","), block.multiplicity)?;
            }
        }
        Command::MiddleExact { file } => {
            let m = read_module(file)?;
            let r = check_middle_exact(&m)?;
            match r.first_failure() {
                None if r.is_short_exact() => writeln!(out, "middle exact ({} squares, all short exact)", r.squares.len())?,
                None => writeln!(out, "middle exact ({} squares)", r.squares.len())?,
                Some(bad) => writeln!(out, "not middle exact: {bad}")?,
            }
        }
        Command::Dualize { file, output } => {
            let m = read_module(file)?;
            let d = match m.poset().shape() {
                Shape::Grid(..) => m.dualize_on_grid()?,
                _ => m.dualize(),
            };
            write_module(output, &d)?;
            writeln!(out, "wrote {}", output.display())?;
        }
        Command::Extend { file, output } => {
            let m = read_module(file)?;
            let e = extend_zigzag(&m)?;
            write_module(output, &e)?;
            writeln!(out, "wrote {} ({})", output.display(), e.poset().shape())?;
        }
        Command::Zigzag { file, seed } => {
            let m = read_module(file)?;
            print_barcode(out, &zigzag_barcode(&m, *seed)?)?;
        }
        Command::Gen { kind, spec, output, seed } => {
            let field = field_from_env()?;
            let m = match kind {
                GenKind::Intervals => {
                    let mut s: GeneratorSpec = read_json(spec)?;
                    if let Some(seed) = seed {
                        s.seed = *seed;
                    }
                    random_module(&s, field)?.module
                }
                GenKind::Interlevel => interlevel_h0(&read_json::<SampledFunction>(spec)?, field)?,
                GenKind::Sublevel => sublevel_h0(&read_json::<SampledFunction>(spec)?, field)?,
            };
            write_module(output, &m)?;
            writeln!(out, "wrote {}", output.display())?;
        }
        Command::Plot { file, output, seed } => {
            let m = read_module(file)?;
            let svg = match m.poset().shape() {
                Shape::Chain(n) => render_barcode(&barcode_chain(&m)?, *n),
                Shape::ZigzagFence(_) => render_barcode(&zigzag_barcode(&m, *seed)?, m.poset().len()),
                Shape::Grid(..) | Shape::TriangleRegion { .. } => render_blocks(&blocks_for(&m, *seed)?, m.poset()),
                other => return Err(Error::NotGridLike(other.to_string())),
            };
            std::fs::write(output, svg)?;
            writeln!(out, "wrote {}", output.display())?;
        }
    }
    Ok(())
}

/// Run `pmd` with the given arguments (including the program name) and
/// return the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    let argv: Vec<String> = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    match execute(&cli.command, &argv, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_counterexample() {
                2
            } else {
                1
            }
        }
    }
}
