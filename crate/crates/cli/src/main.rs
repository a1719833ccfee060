//! `bkl`: verify, build, decompose and enumerate BKL Hermitian Lie algebras.
//!
//! Exit codes: 0 success, 1 other error, 2 verification mismatch with
//! `--expect`, 3 malformed input, 4 failed internal post-check.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bkl_core::decompose::{bkl_decompose_with_tol, STRUCTURE_TOL};
use bkl_core::enumerate::{enumerate_full_bkl, format_table};
use bkl_core::hermitian::{classify, DEFAULT_TOL};
use bkl_core::io;
use bkl_core::linalg::DEFAULT_SEED;
use bkl_core::roots::{cartan_subalgebra_with_seed, root_decompose_with_seed, Positivity};
use bkl_core::standard::{build_standard, with_random_a, TorusComplex};
use bkl_core::Error;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::Value;

#[derive(Parser, Debug)]
#[command(
    name = "bkl",
    version,
    about = "BKL Hermitian structures on metric Lie algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify a Hermitian Lie algebra (Kähler, pluriclosed, BKL, CYT, Vaisman, ...).
    Verify {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        /// Exit with status 2 unless the BKL verdict matches.
        #[arg(long)]
        expect: Option<Expect>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Build the standard model described by a spec file.
    Build {
        #[arg(short, long)]
        spec: PathBuf,
        /// Seed used when the spec asks for `"torus_complex": "random"`.
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Split a BKL structure into Kähler, Euclidean, Sasaki and flat parts.
    Decompose {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long, default_value_t = STRUCTURE_TOL)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Root datum of a compact metric Lie algebra.
    Roots {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Full BKL factor types of a given complex dimension.
    Enumerate {
        #[arg(long)]
        dim: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Expect {
    Bkl,
    NotBkl,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Json,
    Text,
}

enum Failure {
    Mismatch(String),
    Core(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Io(format!("{}: {e}", p.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn check_tol(tol: f64) -> Result<(), Failure> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(Failure::Core(Error::Schema(format!(
            "--tol must be positive, got {tol}"
        ))))
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Verify {
            input,
            tol,
            expect,
            format,
            out,
        } => {
            check_tol(tol)?;
            let h = io::parse_hermitian(&read(&input)?)?;
            let report = classify(&h, tol)?;
            let text = match format {
                Format::Json => pretty(&serde_json::to_value(&report).expect("serializable")),
                Format::Text => {
                    let f = &report.flags;
                    let mut lines = vec![
                        format!("kaehler          {}", f.kaehler),
                        format!("pluriclosed      {}", f.pluriclosed),
                        format!("parallel_torsion {}", f.parallel_torsion),
                        format!("bkl              {}", f.bkl),
                        format!("bismut_flat      {}", f.bismut_flat),
                        format!("cyt              {}", f.cyt),
                    ];
                    let v = f.vaisman.map_or("n/a".to_string(), |b| b.to_string());
                    lines.push(format!("vaisman          {v}"));
                    for (name, value) in &report.defects {
                        lines.push(format!("defect {name:<12} {value:.3e}"));
                    }
                    lines.join("\n")
                }
            };
            emit(&text, out.as_deref())?;
            if let Some(e) = expect {
                let want = e == Expect::Bkl;
                if report.flags.bkl != want {
                    return Err(Failure::Mismatch(format!(
                        "expected bkl = {want}, found bkl = {}",
                        report.flags.bkl
                    )));
                }
            }
            Ok(())
        }
        Command::Build { spec, seed, out } => {
            let mut s = io::parse_spec(&read(&spec)?)?;
            if matches!(&s.torus_complex, TorusComplex::Token(t) if t == "random") {
                s = with_random_a(s, seed)?;
            }
            let model = build_standard(&s)?;
            emit(
                &pretty(&io::hermitian_to_json(&model.hermitian)),
                out.as_deref(),
            )
        }
        Command::Decompose {
            input,
            tol,
            format,
            out,
        } => {
            check_tol(tol)?;
            let h = io::parse_hermitian(&read(&input)?)?;
            let d = bkl_decompose_with_tol(&h, tol)?;
            let text = match format {
                Format::Json => pretty(&io::decomposition_to_json(&d)),
                Format::Text => {
                    let types: Vec<String> = d.flat_types().iter().map(|t| t.to_string()).collect();
                    let cs: Vec<String> = d
                        .sasaki_constants()
                        .iter()
                        .map(|c| format!("{c:.9}"))
                        .collect();
                    [
                        format!("kaehler_dim    {}", d.kaehler.ncols()),
                        format!("euclidean_rank {}", d.euclidean_rank()),
                        format!("sasaki         [{}]", cs.join(", ")),
                        format!("flat_ideal     [{}]", types.join(", ")),
                        format!("r_B            {}", d.bookkeeping.r_b),
                    ]
                    .join("\n")
                }
            };
            emit(&text, out.as_deref())
        }
        Command::Roots { input, seed, out } => {
            let alg = io::parse_algebra(&read(&input)?)?;
            let torus = cartan_subalgebra_with_seed(&alg, seed)?;
            let datum = root_decompose_with_seed(&alg, &torus, &Positivity::Lexicographic, seed)?;
            emit(&pretty(&io::root_datum_to_json(&datum)), out.as_deref())
        }
        Command::Enumerate { dim, format, out } => {
            let entries = enumerate_full_bkl(dim)?;
            let text = match format {
                Format::Json => pretty(&io::enumeration_to_json(&entries)),
                Format::Text => format_table(&entries).trim_end().to_string(),
            };
            emit(&text, out.as_deref())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch(msg)) => {
            eprintln!("mismatch: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Schema(_) => 3,
                Error::PostCheckFailed { .. } => 4,
                _ => 1,
            })
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
