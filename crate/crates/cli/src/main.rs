use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use quasipos::action::Family;
use quasipos::angle::Angle;
use quasipos::charclass::{p1_integral_m13, p1_mod_p, IntegralFixtures};
use quasipos::scan::{run_scan, write_report, Format, ScanConfig};
use quasipos::verify::{verify_eschenburg, verify_m13, verify_n11, Mode, Verdict, VerifyOptions};
use quasipos::Error;

#[derive(Parser)]
#[command(name = "quasipos", version, about = "Flat-plane certificates and Pontrjagin classes for biquotients of SO(8) and U(n+1)")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Certify one point; exit 0 no flat plane, 1 flat plane found, 2 bad input, 3 inconclusive.
    Verify(VerifyArgs),
    /// Sweep Eschenburg weights and write a CSV or JSON report.
    Scan(ScanArgs),
    /// Print the first Pontrjagin class.
    Pontrjagin(PontArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    M13,
    N11,
    Eschenburg,
}

#[derive(Clone, Copy, ValueEnum)]
enum PontFamily {
    S1xg2,
    So3xg2,
    M13,
    N11,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

fn parse_mode(s: &str) -> Result<Mode, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_angle(s: &str) -> Result<Angle, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Args)]
struct Common {
    /// exact, numeric or both
    #[arg(long, default_value = "exact", value_parser = parse_mode)]
    mode: Mode,
    #[arg(long, env = "QUASIPOS_SEED", default_value_t = 0)]
    seed: u64,
    /// Search restarts.
    #[arg(long, default_value_t = 1000)]
    budget: usize,
    /// Write here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(value_enum)]
    target: Target,
    /// Rational multiple of pi, e.g. pi/4 or 2pi/3.
    #[arg(long, value_parser = parse_angle)]
    theta: Option<Angle>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    p: Vec<i64>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    q: Vec<i64>,
    #[arg(long)]
    n: Option<usize>,
    #[command(flatten)]
    common: Common,
}

fn parse_range(s: &str) -> Result<RangeInclusive<i64>, String> {
    let bad = || format!("expected LO..HI or a single integer, got {s:?}");
    match s.split_once("..") {
        Some((a, b)) => Ok(a.trim().parse().map_err(|_| bad())?..=b.trim().parse().map_err(|_| bad())?),
        None => {
            let v: i64 = s.trim().parse().map_err(|_| bad())?;
            Ok(v..=v)
        }
    }
}

#[derive(Args)]
struct ScanArgs {
    #[arg(long, default_value_t = 2)]
    n: usize,
    /// Bound B on |p_i|.
    #[arg(long, default_value_t = 1)]
    bound: i64,
    /// Range for q1 and q2, or two ranges separated by a comma.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    q: String,
    #[arg(long, value_enum, default_value = "csv")]
    format: FormatArg,
    /// Worker threads.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Fill the ms column; reports then differ between runs.
    #[arg(long)]
    timing: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct PontArgs {
    #[arg(value_enum)]
    family: PontFamily,
    /// Weights of the circle in the SO(8) torus.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    q: Vec<i64>,
    /// Integral magnitude instead of the rational coefficient (m13 only).
    #[arg(long)]
    integral: bool,
}

fn output(path: &Option<PathBuf>) -> Result<Box<dyn Write>, Error> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(io::stdout().lock()),
    })
}

fn exit_for(v: Verdict) -> ExitCode {
    ExitCode::from(match v {
        Verdict::NoFlatPlane => 0,
        Verdict::FlatPlaneFound => 1,
        Verdict::Inconclusive => 3,
    })
}

fn verify(a: VerifyArgs) -> Result<ExitCode, Error> {
    let opts = VerifyOptions::new(a.common.mode, a.common.budget, a.common.seed);
    let cert = match a.target {
        Target::M13 | Target::N11 => {
            if !a.p.is_empty() || !a.q.is_empty() || a.n.is_some() {
                return Err(Error::Precondition("m13 and n11 take no weights".into()));
            }
            let theta = match a.theta {
                Some(t) => t,
                None => Angle::pi_times(1, 4)?,
            };
            match a.target {
                Target::M13 => verify_m13(theta, &opts)?,
                _ => verify_n11(theta, &opts)?,
            }
        }
        Target::Eschenburg => {
            if a.theta.is_some() {
                return Err(Error::Precondition("eschenburg takes no angle".into()));
            }
            let q: [i64; 2] = a
                .q
                .as_slice()
                .try_into()
                .map_err(|_| Error::Precondition(format!("--q needs two weights, got {}", a.q.len())))?;
            if let Some(n) = a.n {
                if a.p.len() != n + 1 {
                    return Err(Error::Precondition(format!("--p has {} weights but n = {n} needs {}", a.p.len(), n + 1)));
                }
            }
            verify_eschenburg(&a.p, q, &opts)?
        }
    };
    let mut w = output(&a.common.out)?;
    serde_json::to_writer_pretty(&mut w, &cert)?;
    writeln!(w)?;
    w.flush()?;
    eprintln!("verdict: {}", cert.verdict);
    Ok(exit_for(cert.verdict))
}

fn scan(a: ScanArgs) -> Result<ExitCode, Error> {
    let ranges: Vec<&str> = a.q.split(',').collect();
    let (q1, q2) = match ranges.as_slice() {
        [r] => (parse_range(r), parse_range(r)),
        [r, s] => (parse_range(r), parse_range(s)),
        _ => return Err(Error::Precondition(format!("bad --q {:?}", a.q))),
    };
    let cfg = ScanConfig {
        n: a.n,
        bound: a.bound,
        q1: q1.map_err(Error::Precondition)?,
        q2: q2.map_err(Error::Precondition)?,
        seed: a.common.seed,
        restarts: a.common.budget,
        mode: a.common.mode,
        jobs: a.jobs,
    };
    cfg.validate()?;
    // Open the output first so a bad path fails before any work.
    let w = output(&a.common.out)?;
    let records = run_scan(&cfg)?;
    let format = match a.format {
        FormatArg::Csv => Format::Csv,
        FormatArg::Json => Format::Json,
    };
    write_report(&records, format, a.timing, w)?;
    Ok(ExitCode::SUCCESS)
}

fn pontrjagin(a: PontArgs) -> Result<ExitCode, Error> {
    if a.integral {
        if !matches!(a.family, PontFamily::M13) || !a.q.is_empty() {
            return Err(Error::Precondition("--integral is only available for m13".into()));
        }
        let r = p1_integral_m13(&IntegralFixtures::default())?;
        println!("|p1| = {}", r.magnitude);
        println!("k in {:?}", r.ks);
        return Ok(ExitCode::SUCCESS);
    }
    let (family, q) = match a.family {
        PontFamily::S1xg2 => (Family::S1xG2, a.q),
        PontFamily::So3xg2 => (Family::So3xG2, a.q),
        PontFamily::M13 | PontFamily::N11 if !a.q.is_empty() => {
            return Err(Error::Precondition("m13 and n11 have fixed weights".into()));
        }
        PontFamily::M13 => (Family::S1xG2, vec![0, 0, 0, 1]),
        PontFamily::N11 => (Family::So3xG2, vec![0, 0, 0, 1]),
    };
    let c = p1_mod_p(family, &q)?;
    println!("p1 = {c}·φ*(ū²)");
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.cmd {
        Cmd::Verify(a) => verify(a),
        Cmd::Scan(a) => scan(a),
        Cmd::Pontrjagin(a) => pontrjagin(a),
    };
    match res {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
