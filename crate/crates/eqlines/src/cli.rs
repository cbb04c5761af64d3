//! Command-line front end.
//!
//! Exit codes: 0 when the computed object certifies, 1 when it was computed
//! but failed certification (or the search did not converge), 2 for invalid
//! input and I/O errors. Certificates are written in every case that reaches
//! certification.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use eqlines_core::leech::{
    default_type3, leech_176_lines, leech_276_construction, leech_type_vectors, type3_vector,
    LeechVector,
};
use eqlines_core::real::{fano_28_lines, hexagon_lines, icosahedron_lines};
use eqlines_core::seidel::{
    graph_from_seidel, lines_from_seidel, seidel_from_graph, seidel_from_gram, SeidelMatrix,
};
use eqlines_core::wh::{certify_sic, GroupKind, SearchOptions, DEFAULT_RESTARTS};
use eqlines_core::{certify_equiangular, gram, Field, GramMatrix, LineSet, DEFAULT_TOL};

use crate::format::{self, CertificateJson, FiducialJson, FormatError};
use crate::search::search_parallel;

/// Default tolerance for SIC certification after a search.
pub const SEARCH_TOL: f64 = 1e-8;

#[derive(Debug, Parser)]
#[command(name = "eqlines", version, about = "Construct, certify and search for equiangular lines")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Certification tolerance [default: 1e-10, or 1e-8 for search-sic]
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Seed for randomized searches
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads for searches
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,
    /// Output format [default: json for line sets, csv for Leech dumps]
    #[arg(long, global = true, value_enum)]
    pub format: Option<OutputFormat>,
    /// Output file (a directory for search-sic); standard output when omitted
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Text,
    Csv,
    Binary,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a known equiangular line set and certify it
    Construct {
        #[arg(value_enum)]
        name: Construction,
    },
    /// Certify a line set file (SIC check for d^2 complex vectors in C^d)
    Certify { input: PathBuf },
    /// Search for a group-covariant SIC fiducial
    SearchSic {
        /// Dimension (8 for the three-qubit group)
        #[arg(short = 'd', long = "dim")]
        d: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_RESTARTS)]
        restarts: usize,
        #[arg(long, value_enum, default_value_t = Group::Wh)]
        group: Group,
        /// Iteration cap per restart
        #[arg(long, default_value_t = 5000)]
        max_iters: usize,
    },
    /// Convert between line sets, Gram matrices, Seidel matrices and graphs.
    ///
    /// Graphs use the convention that a Seidel entry of -1 is an edge and +1
    /// a non-edge. Graph files hold the vertex count on the first line and one
    /// "u v" pair per edge after it.
    Convert {
        input: PathBuf,
        #[arg(long, value_enum)]
        to: Target,
        #[arg(long, value_enum, default_value_t = Source::Lines)]
        from: Source,
        /// Overlap magnitude used when rebuilding Gram matrices or lines
        #[arg(long)]
        alpha: Option<f64>,
    },
    /// Leech lattice enumeration and the 276-line construction
    Leech {
        #[command(subcommand)]
        command: LeechCommand,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Construction {
    Hexagon,
    Icosahedron,
    Fano28,
    Leech276,
    Restrict176,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Group {
    Wh,
    ThreeQubit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Gram,
    Seidel,
    Graph,
    Lines,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Source {
    Lines,
    Seidel,
    Graph,
}

#[derive(Debug, Subcommand)]
pub enum LeechCommand {
    /// Enumerate the 196560 minimal vectors
    EnumerateType2 {
        /// Print only the count
        #[arg(long)]
        count_only: bool,
    },
    /// Pair type-2 vectors summing to a type-3 vector and emit the 276 lines
    Pairs {
        /// 24 comma-separated integer coordinates (scaled by sqrt 8)
        #[arg(long, allow_hyphen_values = true)]
        v3: Option<String>,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    Core(#[from] eqlines_core::Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
}

impl From<io::Error> for CliError {
    fn from(source: io::Error) -> Self {
        CliError::Io {
            path: PathBuf::from("<stdout>"),
            source,
        }
    }
}

type CliResult<T> = Result<T, CliError>;

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

/// Runs a parsed command. `Ok(pass)` distinguishes exit codes 0 and 1.
pub fn execute(cli: &Cli) -> CliResult<bool> {
    let g = &cli.global;
    if let Some(tol) = g.tol {
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(CliError::Usage(format!("--tol must be positive, got {tol}")));
        }
    }
    if g.threads == 0 {
        return Err(CliError::Usage("--threads must be at least 1".into()));
    }
    match &cli.command {
        Command::Construct { name } => cmd_construct(g, *name),
        Command::Certify { input } => cmd_certify(g, input),
        Command::SearchSic {
            d,
            restarts,
            group,
            max_iters,
        } => cmd_search_sic(g, *d, *restarts, *group, *max_iters),
        Command::Convert {
            input,
            to,
            from,
            alpha,
        } => cmd_convert(g, input, *from, *to, *alpha),
        Command::Leech { command } => match command {
            LeechCommand::EnumerateType2 { count_only } => cmd_enumerate(g, *count_only),
            LeechCommand::Pairs { v3 } => cmd_pairs(g, v3.as_deref()),
        },
    }
}

fn read_input(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write_file(path: &Path, bytes: &[u8]) -> CliResult<()> {
    fs::write(path, bytes).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Fails early when the output file's directory does not exist.
fn check_out_file(out: Option<&Path>) -> CliResult<()> {
    if let Some(parent) = out.and_then(Path::parent) {
        if !parent.as_os_str().is_empty() && !parent.is_dir() {
            return Err(CliError::Usage(format!(
                "output directory {} does not exist",
                parent.display()
            )));
        }
    }
    Ok(())
}

/// Writes the main artifact to `--out`, or to standard output.
fn emit(g: &GlobalArgs, bytes: &[u8]) -> CliResult<()> {
    match &g.out {
        Some(path) => write_file(path, bytes),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(bytes)?;
            stdout.flush()?;
            Ok(())
        }
    }
}

/// The certificate goes to standard output when the artifact went to a file,
/// and to standard error otherwise, so standard output stays parseable.
fn emit_certificate(g: &GlobalArgs, cert: &CertificateJson) -> CliResult<()> {
    let text = cert.to_json();
    if g.out.is_some() {
        print!("{text}");
    } else {
        eprint!("{text}");
    }
    Ok(())
}

fn lineset_bytes(g: &GlobalArgs, ls: &LineSet) -> CliResult<String> {
    match g.format.unwrap_or(OutputFormat::Json) {
        OutputFormat::Json => Ok(format::lineset_to_json(ls)),
        OutputFormat::Text => Ok(format::lineset_to_text(ls)),
        other => Err(CliError::Usage(format!("format {other:?} does not apply to line sets"))),
    }
}

fn certify_lines(ls: &LineSet, tol: f64) -> CliResult<CertificateJson> {
    if ls.field() == Field::Complex && ls.dimension() > 0 && ls.len() == ls.dimension() * ls.dimension() {
        Ok(CertificateJson::sic(ls, &certify_sic(ls, tol)?))
    } else {
        Ok(CertificateJson::equiangular(ls, &certify_equiangular(ls, tol)?))
    }
}

fn cmd_construct(g: &GlobalArgs, name: Construction) -> CliResult<bool> {
    check_out_file(g.out.as_deref())?;
    let ls = match name {
        Construction::Hexagon => hexagon_lines(),
        Construction::Icosahedron => icosahedron_lines(),
        Construction::Fano28 => fano_28_lines(),
        Construction::Leech276 => leech_276_construction(&default_type3())?.lines,
        Construction::Restrict176 => leech_176_lines(&default_type3())?,
    };
    let body = lineset_bytes(g, &ls)?;
    let cert = certify_lines(&ls, g.tol.unwrap_or(DEFAULT_TOL))?;
    emit(g, body.as_bytes())?;
    emit_certificate(g, &cert)?;
    Ok(cert.pass)
}

fn cmd_certify(g: &GlobalArgs, input: &Path) -> CliResult<bool> {
    check_out_file(g.out.as_deref())?;
    let ls = format::lineset_from_str(&read_input(input)?)?;
    let cert = certify_lines(&ls, g.tol.unwrap_or(DEFAULT_TOL))?;
    let text = cert.to_json();
    if let Some(out) = &g.out {
        write_file(out, text.as_bytes())?;
    }
    print!("{text}");
    Ok(cert.pass)
}

fn cmd_search_sic(
    g: &GlobalArgs,
    d: Option<usize>,
    restarts: usize,
    group: Group,
    max_iters: usize,
) -> CliResult<bool> {
    let kind = match (group, d) {
        (Group::Wh, None) => return Err(CliError::Usage("search-sic needs -d".into())),
        (Group::Wh, Some(d)) if d < 2 => {
            return Err(CliError::Usage(format!("dimension must be at least 2, got {d}")))
        }
        (Group::Wh, Some(d)) => GroupKind::WeylHeisenberg(d),
        (Group::ThreeQubit, None | Some(8)) => GroupKind::ThreeQubitPauli,
        (Group::ThreeQubit, Some(d)) => {
            return Err(CliError::Usage(format!("the three-qubit group acts in d = 8, not {d}")))
        }
    };
    if restarts == 0 {
        return Err(CliError::Usage("--restarts must be at least 1".into()));
    }
    if let Some(dir) = &g.out {
        fs::create_dir_all(dir).map_err(|source| CliError::Io {
            path: dir.clone(),
            source,
        })?;
    }
    let opts = SearchOptions {
        group: kind,
        seed: g.seed,
        restarts,
        max_iters,
        tol: g.tol.unwrap_or(SEARCH_TOL),
    };
    let outcome = search_parallel(&opts, g.threads)?;
    for r in &outcome.log {
        eprintln!(
            "restart {:>3}  iterations {:>5}  potential {:.16e}  pass {}",
            r.restart, r.iterations, r.potential, r.certificate.pass
        );
    }
    let orbit = eqlines_core::wh::CovarianceGroup::new(kind)?.orbit(&outcome.fiducial)?;
    let fiducial = FiducialJson::new(&outcome.fiducial, outcome.potential).to_json();
    let cert = CertificateJson::sic(&orbit, &outcome.certificate);
    match &g.out {
        Some(dir) => {
            write_file(&dir.join("fiducial.json"), fiducial.as_bytes())?;
            write_file(&dir.join("orbit.json"), lineset_bytes(g, &orbit)?.as_bytes())?;
            write_file(&dir.join("certificate.json"), cert.to_json().as_bytes())?;
            print!("{}", cert.to_json());
        }
        None => {
            print!("{fiducial}");
            eprint!("{}", cert.to_json());
        }
    }
    Ok(cert.pass)
}

fn read_seidel(source: Source, text: &str) -> CliResult<SeidelMatrix> {
    match source {
        Source::Seidel => Ok(format::seidel_from_text(text)?),
        Source::Graph => Ok(seidel_from_graph(&format::graph_from_text(text)?)),
        Source::Lines => unreachable!("line sets are handled by the caller"),
    }
}

fn need_alpha(alpha: Option<f64>) -> CliResult<f64> {
    alpha.ok_or_else(|| CliError::Usage("--alpha is required for this conversion".into()))
}

fn cmd_convert(
    g: &GlobalArgs,
    input: &Path,
    from: Source,
    to: Target,
    alpha: Option<f64>,
) -> CliResult<bool> {
    check_out_file(g.out.as_deref())?;
    let tol = g.tol.unwrap_or(DEFAULT_TOL);
    let text = read_input(input)?;
    let output = match from {
        Source::Lines => {
            let ls = format::lineset_from_str(&text)?;
            match to {
                Target::Lines => lineset_bytes(g, &ls)?,
                Target::Gram => format::gram_to_text(&gram(&ls)),
                Target::Seidel | Target::Graph => {
                    if ls.field() != Field::Real {
                        return Err(CliError::Usage(
                            "Seidel matrices exist only for real line sets".into(),
                        ));
                    }
                    let alpha = match alpha {
                        Some(a) => a,
                        None => certify_equiangular(&ls, tol)?.alpha,
                    };
                    let s = seidel_from_gram(&gram(&ls), alpha, tol)?;
                    if to == Target::Seidel {
                        format::seidel_to_text(&s)
                    } else {
                        format::graph_to_text(&graph_from_seidel(&s))
                    }
                }
            }
        }
        source => {
            let s = read_seidel(source, &text)?;
            match to {
                Target::Seidel => format::seidel_to_text(&s),
                Target::Graph => format::graph_to_text(&graph_from_seidel(&s)),
                Target::Gram => {
                    let a = need_alpha(alpha)?;
                    let real = s.gram_with_alpha(a);
                    format::gram_to_text(&GramMatrix::from_entries(real.map(|x| x.into())))
                }
                Target::Lines => lineset_bytes(g, &lines_from_seidel(&s, need_alpha(alpha)?, tol)?)?,
            }
        }
    };
    emit(g, output.as_bytes())?;
    Ok(true)
}

fn cmd_enumerate(g: &GlobalArgs, count_only: bool) -> CliResult<bool> {
    check_out_file(g.out.as_deref())?;
    let vectors = leech_type_vectors(2, None)?;
    if count_only {
        emit(g, format!("{}\n", vectors.len()).as_bytes())?;
        return Ok(vectors.len() == 196_560);
    }
    let mut buf = Vec::new();
    match g.format.unwrap_or(OutputFormat::Csv) {
        OutputFormat::Csv => format::write_leech_csv(&mut buf, &vectors)?,
        OutputFormat::Binary => format::write_leech_binary(&mut buf, &vectors)?,
        other => {
            return Err(CliError::Usage(format!("format {other:?} does not apply to vector dumps")))
        }
    }
    emit(g, &buf)?;
    eprintln!("{} type-2 vectors", vectors.len());
    Ok(vectors.len() == 196_560)
}

fn cmd_pairs(g: &GlobalArgs, v3: Option<&str>) -> CliResult<bool> {
    check_out_file(g.out.as_deref())?;
    let v3: LeechVector = match v3 {
        Some(s) => type3_vector(format::parse_leech_coords(s)?)?,
        None => default_type3(),
    };
    let c = leech_276_construction(&v3)?;
    eprintln!("v3 = {}: {} pairs", c.v3, c.pairs.len());
    let body = lineset_bytes(g, &c.lines)?;
    let cert = certify_lines(&c.lines, g.tol.unwrap_or(DEFAULT_TOL))?;
    emit(g, body.as_bytes())?;
    emit_certificate(g, &cert)?;
    Ok(cert.pass && c.pairs.len() == 276)
}
