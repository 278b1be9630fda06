//! Command-line front door: parse complexes, dispatch computations, and emit
//! deterministic JSON reports.
//!
//! Exit codes: 0 success, 1 failed verification, 2 malformed input, 3
//! internal invariant breach.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use rmac_core::{
    betti_profile, block_profiles, combinatorial_generators, genus, polygon_boundary, ring_table,
    simplex_boundary, verify, Complex, Error,
};

#[derive(Parser)]
#[command(
    name = "rmac",
    version,
    about = "Integral cohomology rings of real moment-angle complexes",
    long_about = "Computes the integral cohomology of the real moment-angle complex of a \
finite simplicial complex, block by block, with exact integer arithmetic; for polygon \
boundaries it cross-checks the closed-form surface ring description against the brute-force \
engine."
)]
struct Cli {
    /// Pretty-print the JSON output.
    #[arg(long, global = true)]
    pretty: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Per-degree ranks and torsion of a complex read from a JSON file.
    Betti {
        /// JSON file with {"m": <vertices>, "facets": [[v, ...], ...]}.
        file: PathBuf,
        /// Include the per-block breakdown (nontrivial blocks only).
        #[arg(long)]
        blocks: bool,
    },
    /// The full cohomology ring: basis classes and all nonzero products.
    Ring {
        /// JSON file with {"m": <vertices>, "facets": [[v, ...], ...]}.
        file: PathBuf,
    },
    /// Combinatorial generator summary for the boundary of an n-gon.
    Polygon {
        /// Number of polygon vertices (3..=63; 3..=12 with --verify).
        n: usize,
        /// Cross-check the closed-form description against the engine.
        #[arg(long)]
        verify: bool,
    },
    /// Cross-check the closed-form n-gon description against the engine.
    Verify {
        /// Number of polygon vertices (3..=12).
        n: usize,
    },
    /// Check that the boundary of the m-simplex produces the m-sphere.
    SphereCheck {
        /// Sphere dimension (1..=62).
        m: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads();
    match run(cli) {
        Ok(code) => code,
        Err(error) => {
            eprintln!("error: {error}");
            classify(&error)
        }
    }
}

/// Maps error kinds to the documented exit codes: malformed or out-of-range
/// input is 2, anything pointing at a broken internal invariant is 3.
fn classify(error: &Error) -> ExitCode {
    match error {
        Error::Parse(_)
        | Error::TooLarge { .. }
        | Error::InvalidVertex { .. }
        | Error::InvalidPolygon { .. }
        | Error::InvalidDimension { .. }
        | Error::OutOfRange { .. } => ExitCode::from(2),
        Error::InvalidInsertion { .. }
        | Error::NotACocycle { .. }
        | Error::Mismatch(_)
        | Error::Internal(_) => ExitCode::from(3),
    }
}

fn configure_threads() {
    let Ok(value) = std::env::var("RMAC_THREADS") else {
        return;
    };
    match value.parse::<usize>() {
        Ok(threads) if threads >= 1 => {
            if let Err(error) = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build_global()
            {
                eprintln!("warning: could not apply RMAC_THREADS: {error}");
            }
        }
        _ => eprintln!("warning: RMAC_THREADS must be a positive integer, ignoring {value:?}"),
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Betti { file, blocks } => {
            let complex = load_complex(&file)?;
            let mut output = serde_json::json!({
                "m": complex.vertex_count(),
                "profile": betti_profile(&complex).to_json(),
            });
            if blocks {
                let breakdown: Vec<serde_json::Value> = block_profiles(&complex)
                    .iter()
                    .map(|summary| {
                        serde_json::json!({
                            "block": summary.block.vertices(),
                            "profile": summary.profile.to_json(),
                        })
                    })
                    .collect();
                output["blocks"] = serde_json::json!(breakdown);
            }
            emit(&output, cli.pretty)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Ring { file } => {
            let complex = load_complex(&file)?;
            let table = ring_table(&complex)?;
            emit(&table.to_json(), cli.pretty)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Polygon { n, verify: check } => {
            if check {
                return run_verify(n, cli.pretty);
            }
            let complex = polygon_boundary(n)?;
            let generators: Vec<serde_json::Value> = combinatorial_generators(n)
                .iter()
                .map(|g| {
                    serde_json::json!({
                        "block": g.block().vertices(),
                        "arc": g.arc().map(|a| a.vertices()),
                        "degree": g.degree(),
                    })
                })
                .collect();
            let output = serde_json::json!({
                "n": n,
                "vertices": complex.vertex_count(),
                "genus": genus(n).ok().as_ref().map(rmac_core::linalg::int_to_json),
                "degree_one_generators": generators.len() - 1,
                "generators": generators,
            });
            emit(&output, cli.pretty)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { n } => run_verify(n, cli.pretty),
        Command::SphereCheck { m } => {
            let profile = betti_profile(&simplex_boundary(m)?);
            let ranks = profile.ranks();
            let expected: Vec<usize> = (0..=m).map(|d| usize::from(d == 0 || d == m)).collect();
            let passed = ranks == expected && profile.is_torsion_free();
            let output = serde_json::json!({
                "m": m,
                "profile": profile.to_json(),
                "expected_ranks": expected,
                "passed": passed,
            });
            emit(&output, cli.pretty)?;
            if passed {
                Ok(ExitCode::SUCCESS)
            } else {
                eprintln!("sphere check failed for m = {m}");
                Ok(ExitCode::from(1))
            }
        }
    }
}

fn run_verify(n: usize, pretty: bool) -> Result<ExitCode, Error> {
    let report = verify(n)?;
    emit(&report.to_json(), pretty)?;
    if report.passed() {
        Ok(ExitCode::SUCCESS)
    } else {
        for check in report.checks().iter().filter(|c| !c.passed) {
            eprintln!("failed check {}: {}", check.name, check.detail);
        }
        Ok(ExitCode::from(1))
    }
}

fn load_complex(path: &PathBuf) -> Result<Complex, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|error| Error::Parse(format!("cannot read {}: {error}", path.display())))?;
    Complex::from_json(&text)
}

fn emit(value: &serde_json::Value, pretty: bool) -> Result<(), Error> {
    let text = if pretty {
        serde_json::to_string_pretty(value)
    } else {
        serde_json::to_string(value)
    }
    .map_err(|error| Error::Internal(format!("serialization failed: {error}")))?;
    let stdout = std::io::stdout();
    let mut handle = stdout.lock();
    writeln!(handle, "{text}")
        .and_then(|()| handle.flush())
        .map_err(|error| Error::Internal(format!("cannot write output: {error}")))
}
