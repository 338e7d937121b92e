//! Command-line front end.
//!
//! Exit status: 0 when every check passes, 1 when a check fails, 2 on input
//! errors (unreadable files, schema violations, bad flags).

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::Value;

use crate::algebra::Precision;
use crate::audit::audit;
use crate::catalog::{family, instantiate_default, list_families, Surface};
use crate::error::Error;
use crate::mesh::{immerse_surface, write_obj, write_ply, MeshOptions, MeshSpec};
use crate::r3::verify;
use crate::r4::verify4;
use crate::report::{self, DEFAULT_QUADRATURE_GRID};
use crate::wdata;
use crate::weierstrass::{VerificationReport, VerifyOptions};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INPUT_ERROR: i32 = 2;

const DEFAULT_MESH_GRID: (usize, usize) = (64, 64);

#[derive(Parser, Debug)]
#[command(name = "minsurf", version, about = "Genus-zero minimal surfaces from rational Weierstrass data")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Working precision in decimal digits.
    #[arg(long, global = true, default_value_t = 64)]
    precision: u32,
    /// Period tolerance for inexact data.
    #[arg(long, global = true, default_value_t = 1e-10)]
    tol: f64,
    /// Grid size NxM (mesh vertices, or quadrature cells for `curvature`).
    #[arg(long, global = true, value_parser = parse_grid)]
    grid: Option<(usize, usize)>,
    /// Radius of the disks excluded around finite punctures.
    #[arg(long, global = true, default_value_t = 0.01)]
    exclude_radius: f64,
    /// Outer radius of the parameter region.
    #[arg(long, global = true, default_value_t = 100.0)]
    outer_radius: f64,
    /// Output format for `mesh`; inferred from --out when omitted.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Output path; standard output when omitted.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Built-in families.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Conformality, regularity, periods and completeness.
    Verify { file: PathBuf },
    /// Ramification profile of each Gauss map and the flat points.
    Analyze { file: PathBuf },
    /// Evaluate every ramification bound on verified data.
    Audit { file: PathBuf },
    /// Triangulated immersion as OBJ, PLY or JSON.
    Mesh { file: PathBuf },
    /// Exact and numeric total curvature.
    Curvature { file: PathBuf },
}

#[derive(Subcommand, Debug)]
enum CatalogAction {
    /// List families with parameters and defaults.
    List,
    /// Explicit W-data of a family at its default parameters.
    Show { name: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Obj,
    Ply,
    Json,
}

fn parse_grid(s: &str) -> std::result::Result<(usize, usize), String> {
    let (a, b) = s.split_once(['x', 'X']).ok_or_else(|| format!("expected NxM, got {s:?}"))?;
    let n: usize = a.trim().parse().map_err(|_| format!("bad grid size {a:?}"))?;
    let m: usize = b.trim().parse().map_err(|_| format!("bad grid size {b:?}"))?;
    if n < 2 || m < 2 {
        return Err("grid sizes must be at least 2".into());
    }
    Ok((n, m))
}

/// Failure of one invocation, carrying its exit status.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotVerified(_) | Error::ClosureTolExceeded(_) | Error::FlatSurface | Error::RegularityRequired => {
                EXIT_CHECK_FAILED
            }
            _ => EXIT_INPUT_ERROR,
        };
        Failure { code, message: e.to_string() }
    }
}

fn io_failure(path: &Path, e: io::Error) -> Failure {
    Failure { code: EXIT_INPUT_ERROR, message: format!("{}: {e}", path.display()) }
}

/// Reads a W-data file. A path that does not exist but names a built-in
/// family loads that family at its default parameters.
fn load(path: &Path) -> Result<Surface, Failure> {
    if !path.exists() {
        if let Some(name) = path.to_str().filter(|n| family(n).is_ok()) {
            return Ok(instantiate_default(name)?);
        }
    }
    let text = std::fs::read_to_string(path).map_err(|e| io_failure(path, e))?;
    wdata::from_json_str(&text).map_err(|e| Failure { code: EXIT_INPUT_ERROR, message: format!("{}: {e}", path.display()) })
}

struct Output {
    code: i32,
    bytes: Vec<u8>,
}

impl Output {
    fn json(v: &Value, pass: bool) -> Self {
        Output { code: if pass { EXIT_PASS } else { EXIT_CHECK_FAILED }, bytes: report::to_string(v).into_bytes() }
    }
}

impl Cli {
    fn verify_options(&self) -> VerifyOptions {
        VerifyOptions { prec: Precision::digits(self.precision), tol: self.tol, ..VerifyOptions::default() }
    }

    fn verification(&self, s: &Surface) -> Result<VerificationReport, Failure> {
        let opts = self.verify_options();
        Ok(match s {
            Surface::R3(w) => verify(w, &opts)?,
            Surface::R4(w) => verify4(w, &opts)?,
        })
    }

    fn run(&self) -> Result<Output, Failure> {
        let prec = Precision::digits(self.precision);
        match &self.command {
            Command::Catalog { action: CatalogAction::List } => {
                Ok(Output::json(&report::families_json(&list_families()), true))
            }
            Command::Catalog { action: CatalogAction::Show { name } } => {
                let s = instantiate_default(name)?;
                Ok(Output { code: EXIT_PASS, bytes: wdata::to_json_string(&s).into_bytes() })
            }
            Command::Verify { file } => {
                let s = load(file)?;
                let r = self.verification(&s)?;
                Ok(Output::json(&report::verification_json(s.space(), &r), r.overall))
            }
            Command::Analyze { file } => Ok(Output::json(&report::analysis_json(&load(file)?, prec)?, true)),
            Command::Audit { file } => {
                let s = load(file)?;
                let r = audit(&s, &self.verify_options())?;
                Ok(Output::json(&report::audit_json(&r), !r.contradiction))
            }
            Command::Curvature { file } => {
                let s = load(file)?;
                let verified = self.verification(&s)?.overall;
                let grid = self.grid.unwrap_or(DEFAULT_QUADRATURE_GRID);
                let v = report::curvature_report(&s, prec, self.outer_radius, self.exclude_radius, grid, verified)?;
                Ok(Output::json(&v, verified))
            }
            Command::Mesh { file } => {
                let s = load(file)?;
                let grid = self.grid.unwrap_or(DEFAULT_MESH_GRID);
                let spec = MeshSpec::default_for(s.domain(), grid, self.exclude_radius, self.outer_radius);
                let mut opts = MeshOptions::new(spec);
                opts.exclude_radius = self.exclude_radius;
                let format = self.format.unwrap_or_else(|| format_from_path(self.out.as_deref()));
                opts.curvature = format != Format::Obj;
                let mesh = immerse_surface(&s, &opts, &self.verify_options())?;
                let mut bytes = Vec::new();
                match format {
                    Format::Obj => write_obj(&mesh, &mut bytes),
                    Format::Ply => write_ply(&mesh, &mut bytes),
                    Format::Json => bytes.write_all(report::to_string(&report::mesh_summary_json(&mesh)).as_bytes()),
                }
                .map_err(|e| Failure { code: EXIT_INPUT_ERROR, message: e.to_string() })?;
                Ok(Output { code: EXIT_PASS, bytes })
            }
        }
    }
}

fn format_from_path(path: Option<&Path>) -> Format {
    match path.and_then(Path::extension).and_then(|e| e.to_str()) {
        Some(e) if e.eq_ignore_ascii_case("ply") => Format::Ply,
        Some(e) if e.eq_ignore_ascii_case("json") => Format::Json,
        _ => Format::Obj,
    }
}

fn emit(path: Option<&Path>, bytes: &[u8]) -> io::Result<()> {
    match path {
        Some(p) => {
            let mut f = BufWriter::new(File::create(p)?);
            f.write_all(bytes)?;
            f.flush()
        }
        None => {
            let mut out = io::stdout().lock();
            out.write_all(bytes)?;
            out.flush()
        }
    }
}

/// Runs one invocation and returns its exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT_ERROR } else { EXIT_PASS };
        }
    };
    match cli.run() {
        Ok(out) => {
            if let Err(e) = emit(cli.out.as_deref(), &out.bytes) {
                eprintln!("error: {e}");
                return EXIT_INPUT_ERROR;
            }
            out.code
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}
