//! `aslfunc`: compute, verify and sweep L-functions of the Artin–Schreier
//! family from the command line.
//!
//! Exit codes: 0 success, 1 a check failed, 2 a size cap or work limit was
//! exceeded, 3 an integrality failure, 64 a usage error.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use aslfunc_core::checks::{verify_all, VerifyOptions};
use aslfunc_core::curve_oracle::CurveParams;
use aslfunc_core::field_arith::base_field;
use aslfunc_core::report::{grid, run_sweep, sweep_csv, to_json, Instance};
use aslfunc_core::{Error, Limits};
use clap::{Args, Parser, Subcommand, ValueEnum};

const EXIT_CHECK: u8 = 1;
const EXIT_CAP: u8 = 2;
const EXIT_INTEGRALITY: u8 = 3;
const EXIT_USAGE: u8 = 64;

#[derive(Parser, Debug)]
#[command(name = "aslfunc", version, about = "L-functions of y^2 = x(x+16γ)(x+℘_a(t)^2) over F_q(t)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the L-polynomial, rank and special value as JSON.
    Lfunc(Single),
    /// Run every consistency check and print a pass/fail table.
    Verify {
        #[command(flatten)]
        single: Single,
        /// Compare series coefficients S_1..S_n with point counts.
        #[arg(long, default_value_t = 2)]
        n_max: u32,
        /// Debug: add 1 to this L-coefficient before checking the functional equation.
        #[arg(long, value_name = "K")]
        inject_mutation: Option<usize>,
    },
    /// Print the Sato–Tate statistics of one instance as JSON.
    Stats {
        #[command(flatten)]
        single: Single,
        /// Also write the per-place angle table as CSV.
        #[arg(long, value_name = "PATH")]
        angles: Option<PathBuf>,
    },
    /// Run a grid of instances and write a summary CSV.
    Sweep {
        /// Comma-separated field sizes.
        #[arg(long, value_delimiter = ',', required = true)]
        q: Vec<u64>,
        /// Comma-separated extension degrees.
        #[arg(long, value_delimiter = ',', required = true)]
        a: Vec<u32>,
        /// "all" or a comma-separated list of indices in F_q.
        #[arg(long, default_value = "all")]
        gamma: String,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Directory for summary.csv and per-instance files; stdout if absent.
        #[arg(long)]
        out_dir: Option<PathBuf>,
        /// json writes per-instance JSON and angle files next to the summary.
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[command(flatten)]
        caps: Caps,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug)]
struct Single {
    #[arg(long)]
    q: u64,
    #[arg(long)]
    a: u32,
    /// Index of γ in the enumeration of F_q, in [1, q−1].
    #[arg(long)]
    gamma: u64,
    /// Write output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    caps: Caps,
}

#[derive(Args, Debug)]
struct Caps {
    /// Largest field that may be enumerated.
    #[arg(long, default_value_t = Limits::default().enumeration_cap)]
    enumeration_cap: u64,
    /// Largest number of field operations a point count may take.
    #[arg(long, default_value_t = Limits::default().work_limit)]
    work_limit: u128,
    /// Largest q^a for which ℘ is factored.
    #[arg(long, default_value_t = Limits::default().factorization_cap)]
    factorization_cap: u64,
}

impl Caps {
    fn limits(&self) -> Result<Limits, Failure> {
        if self.enumeration_cap == 0 || self.work_limit == 0 || self.factorization_cap == 0 {
            return Err(Failure::usage("caps must be positive"));
        }
        Ok(Limits {
            enumeration_cap: self.enumeration_cap,
            work_limit: self.work_limit,
            factorization_cap: self.factorization_cap,
        })
    }
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(msg: impl Into<String>) -> Failure {
        Failure {
            code: EXIT_USAGE,
            message: msg.into(),
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::SizeCapExceeded { .. } | Error::WorkLimitExceeded { .. } => EXIT_CAP,
        Error::NotRationalInteger { .. } => EXIT_INTEGRALITY,
        Error::NotPrime(_)
        | Error::EvenCharacteristic
        | Error::ZeroParameter
        | Error::InvalidParameter(_)
        | Error::NotASubfield { .. } => EXIT_USAGE,
        _ => EXIT_CHECK,
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure {
            code: exit_code(&e),
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Failure {
        Failure {
            code: EXIT_CHECK,
            message: format!("i/o error: {e}"),
        }
    }
}

/// Validate (q, a, γ) as usage: q an odd prime power, a ≥ 1, γ ∈ [1, q−1].
fn validate(q: u64, a: u32, gamma: u64) -> Result<(), Failure> {
    base_field(q).map_err(|e| Failure::usage(format!("--q {q}: {e}")))?;
    if a == 0 {
        return Err(Failure::usage("--a must be positive"));
    }
    if gamma == 0 || gamma >= q {
        return Err(Failure::usage(format!("--gamma must lie in [1, {}]", q - 1)));
    }
    Ok(())
}

fn params(s: &Single) -> Result<CurveParams, Failure> {
    validate(s.q, s.a, s.gamma)?;
    Ok(CurveParams::with_limits(s.q, s.a, s.gamma, s.caps.limits()?)?)
}

/// Write via a temporary file in the same directory, then rename.
fn write_atomic(path: &Path, contents: &str) -> Result<(), Failure> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.persist(path).map_err(|e| Failure::from(e.error))?;
    Ok(())
}

fn emit(out: &Option<PathBuf>, contents: &str) -> Result<(), Failure> {
    match out {
        Some(p) => write_atomic(p, contents),
        None => {
            std::io::stdout().write_all(contents.as_bytes())?;
            Ok(())
        }
    }
}

fn cmd_lfunc(s: &Single) -> Result<u8, Failure> {
    let inst = Instance::compute(&params(s)?)?;
    emit(&s.out, &to_json(&inst.lpoly_document()))?;
    Ok(0)
}

fn cmd_verify(s: &Single, n_max: u32, mutate: Option<usize>) -> Result<u8, Failure> {
    let p = params(s)?;
    let rows = verify_all(&p, &VerifyOptions { n_max, mutate })?;
    let mut table = String::new();
    for c in &rows {
        let mark = if c.passed { "PASS" } else { "FAIL" };
        table.push_str(&format!("{mark}  {:<20} {}\n", c.name, c.detail));
    }
    emit(&s.out, &table)?;
    match rows.iter().find(|c| !c.passed) {
        Some(c) => {
            eprintln!("aslfunc: check failed: {}", c.name);
            Ok(EXIT_CHECK)
        }
        None => Ok(0),
    }
}

fn cmd_stats(s: &Single, angles: &Option<PathBuf>) -> Result<u8, Failure> {
    let inst = Instance::compute(&params(s)?)?;
    emit(&s.out, &to_json(&inst.stats_document()?))?;
    if let Some(path) = angles {
        write_atomic(path, &inst.angles_csv())?;
    }
    Ok(0)
}

fn parse_gammas(list: &str) -> Result<Option<Vec<u64>>, Failure> {
    if list == "all" {
        return Ok(None);
    }
    list.split(',')
        .map(|g| {
            g.trim()
                .parse::<u64>()
                .map_err(|_| Failure::usage(format!("--gamma: cannot parse {g:?}")))
        })
        .collect::<Result<Vec<_>, _>>()
        .map(Some)
}

fn cmd_sweep(
    qs: &[u64],
    as_: &[u32],
    gamma: &str,
    jobs: usize,
    out_dir: &Option<PathBuf>,
    format: Format,
    caps: &Caps,
) -> Result<u8, Failure> {
    let limits = caps.limits()?;
    if jobs == 0 {
        return Err(Failure::usage("--jobs must be positive"));
    }
    let gammas = parse_gammas(gamma)?;
    let points = grid(qs, as_, gammas.as_deref());
    if points.is_empty() {
        return Err(Failure::usage("empty grid"));
    }
    for &(q, a, g) in &points {
        validate(q, a, g)?;
    }
    let entries = run_sweep(&points, limits, jobs);
    let summary = sweep_csv(&entries)?;
    match out_dir {
        Some(dir) => {
            std::fs::create_dir_all(dir)?;
            if format == Format::Json {
                for e in &entries {
                    if let Ok(inst) = &e.outcome {
                        for (name, body) in inst.files()? {
                            write_atomic(&dir.join(name), &body)?;
                        }
                    }
                }
            }
            write_atomic(&dir.join("summary.csv"), &summary)?;
        }
        None => std::io::stdout().write_all(summary.as_bytes())?,
    }
    let mut code = 0;
    for e in &entries {
        if let Err(err) = &e.outcome {
            eprintln!("aslfunc: q={} a={} gamma={}: {err}", e.q, e.a, e.gamma);
            code = code.max(exit_code(err));
        }
    }
    Ok(code)
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match &cli.command {
        Command::Lfunc(s) => cmd_lfunc(s),
        Command::Verify {
            single,
            n_max,
            inject_mutation,
        } => cmd_verify(single, *n_max, *inject_mutation),
        Command::Stats { single, angles } => cmd_stats(single, angles),
        Command::Sweep {
            q,
            a,
            gamma,
            jobs,
            out_dir,
            format,
            caps,
        } => cmd_sweep(q, a, gamma, *jobs, out_dir, *format, caps),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("aslfunc: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
