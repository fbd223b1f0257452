mod verify;

use std::fmt;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::value::RawValue;

use lawson_core::catalog::{build_catalog, raw_number, write_csv, write_json};
use lawson_core::mesh::{sample_grid, Mesh, MeshFamily};
use lawson_core::spectral::{spectral_record, Verdict};
use lawson_core::surfaces::{
    canonicalize_and_classify, GeneralizedImmersion, LawsonPair, LawsonTau, Regime, Topology,
};

#[derive(Parser)]
#[command(
    name = "lawson",
    version,
    about = "Generalized Lawson surfaces: classification, spectral catalog, checks and meshes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Canonicalize T(a,b,c) and print its classification and Λ as JSON.
    #[command(allow_negative_numbers = true)]
    Classify { a: i64, b: i64, c: i64 },
    /// Tabulate every canonical triple with a+b+c <= N.
    Catalog {
        #[arg(long)]
        max_sum: u32,
        #[arg(long, value_enum, default_value_t = CatalogFormat::Csv)]
        format: CatalogFormat,
        /// Output file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        parallel: bool,
    },
    /// Run a numerical check suite: minimal, isometry, area or elliptic.
    Verify {
        suite: String,
        /// Surface or parameters for the suite, e.g. `T 1 0 2`, `3 1`, `0.5 -1`.
        #[arg(long, num_args = 1.., allow_negative_numbers = true)]
        params: Vec<String>,
        /// Overrides the suite's default tolerance.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Sample an immersion on a periodic grid of [0,2π)².
    Mesh {
        /// tau (or τ), bipolar, or T.
        family: String,
        #[arg(required = true, num_args = 2..=3)]
        params: Vec<u32>,
        #[arg(long, default_value_t = 64)]
        nx: usize,
        #[arg(long, default_value_t = 64)]
        ny: usize,
        #[arg(long, value_enum, default_value_t = MeshFormat::Csv)]
        format: MeshFormat,
        /// Output file; standard output when omitted. OBJ output to a file
        /// also writes all coordinates to a sibling `.csv`.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CatalogFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum MeshFormat {
    Obj,
    Csv,
}

/// Exit status 2 for bad input, 3 for I/O, 1 for anything else.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Io(String),
    Internal(String),
    ChecksFailed,
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Io(_) => 3,
            Failure::Internal(_) | Failure::ChecksFailed => 1,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) | Failure::Internal(m) => f.write_str(m),
            Failure::Io(m) => write!(f, "I/O error: {m}"),
            Failure::ChecksFailed => f.write_str("one or more checks failed"),
        }
    }
}

impl From<lawson_core::Error> for Failure {
    fn from(e: lawson_core::Error) -> Self {
        use lawson_core::Error::*;
        match e {
            InvalidParams(_) | Domain(_) => Failure::Usage(e.to_string()),
            _ => Failure::Internal(e.to_string()),
        }
    }
}

fn io_failure(path: Option<&Path>, e: io::Error) -> Failure {
    match path {
        Some(p) => Failure::Io(format!("{}: {e}", p.display())),
        None => Failure::Io(e.to_string()),
    }
}

/// Runs `body` against a buffered file or stdout and flushes it.
fn with_output<F>(out: Option<&Path>, body: F) -> Result<(), Failure>
where
    F: FnOnce(&mut dyn Write) -> io::Result<()>,
{
    let result = match out {
        Some(p) => File::create(p).and_then(|f| {
            let mut w = BufWriter::new(f);
            body(&mut w)?;
            w.flush()
        }),
        None => {
            let stdout = io::stdout();
            let mut w = BufWriter::new(stdout.lock());
            body(&mut w).and_then(|_| w.flush())
        }
    };
    result.map_err(|e| io_failure(out, e))
}

#[derive(Serialize)]
struct PairJson {
    r: u32,
    m: u32,
}

#[derive(Serialize)]
struct Classification {
    canonical: [u32; 3],
    topology: Topology,
    regime: Regime,
    index: u32,
    lambda: Box<RawValue>,
    verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    bipolar_pair: Option<PairJson>,
}

fn classify(a: i64, b: i64, c: i64) -> Result<(), Failure> {
    let t = canonicalize_and_classify(a, b, c)?;
    let rec = spectral_record(&t)?;
    let out = Classification {
        canonical: [t.a(), t.b(), t.c()],
        topology: rec.topology,
        regime: rec.regime,
        index: rec.index_j,
        lambda: raw_number(rec.lambda_value),
        verdict: rec.verdict,
        bipolar_pair: rec.bipolar_pair.map(|(r, m)| PairJson { r, m }),
    };
    let json = serde_json::to_string(&out).map_err(|e| Failure::Internal(e.to_string()))?;
    println!("{json}");
    Ok(())
}

fn catalog(
    max_sum: u32,
    format: CatalogFormat,
    out: Option<&Path>,
    parallel: bool,
) -> Result<(), Failure> {
    let rows = build_catalog(max_sum, parallel)?;
    with_output(out, |w| match format {
        CatalogFormat::Csv => write_csv(&rows, w),
        CatalogFormat::Json => write_json(&rows, w),
    })
}

fn mesh_family(family: &str, params: &[u32]) -> Result<MeshFamily, Failure> {
    let family_lower = family.to_ascii_lowercase();
    match (family_lower.as_str(), params) {
        ("tau" | "τ", &[m, n]) => Ok(MeshFamily::Tau(LawsonTau::new(m, n)?)),
        ("bipolar", &[r, m]) => Ok(MeshFamily::Bipolar(LawsonPair::new(r, m)?)),
        ("t", &[a, b, c]) => Ok(MeshFamily::Generalized(GeneralizedImmersion::ordered(
            a, b, c,
        )?)),
        ("tau" | "τ" | "bipolar", _) => {
            Err(Failure::Usage(format!("{family} takes two parameters")))
        }
        ("t", _) => Err(Failure::Usage("T takes three parameters a b c".into())),
        _ => Err(Failure::Usage(format!(
            "unknown family {family:?}; expected tau, bipolar or T"
        ))),
    }
}

fn mesh(
    family: &str,
    params: &[u32],
    (nx, ny): (usize, usize),
    format: MeshFormat,
    out: Option<&Path>,
) -> Result<(), Failure> {
    let fam = mesh_family(family, params)?;
    let companion = match (format, out) {
        (MeshFormat::Obj, Some(p)) => {
            let c = p.with_extension("csv");
            if c == p {
                return Err(Failure::Usage(
                    "OBJ output path must not end in .csv".into(),
                ));
            }
            Some(c)
        }
        _ => None,
    };
    let grid: Mesh = sample_grid(fam.immersion(), nx, ny)?;
    match format {
        MeshFormat::Csv => with_output(out, |w| grid.write_csv(w)),
        MeshFormat::Obj => {
            with_output(out, |w| grid.write_obj(w))?;
            match companion {
                Some(c) => with_output(Some(&c), |w| grid.write_csv(w)),
                None => Ok(()),
            }
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Classify { a, b, c } => classify(a, b, c),
        Command::Catalog {
            max_sum,
            format,
            out,
            parallel,
        } => catalog(max_sum, format, out.as_deref(), parallel),
        Command::Verify { suite, params, tol } => verify::run(&suite, &params, tol),
        Command::Mesh {
            family,
            params,
            nx,
            ny,
            format,
            out,
        } => mesh(&family, &params, (nx, ny), format, out.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("lawson: {f}");
            ExitCode::from(f.code())
        }
    }
}
