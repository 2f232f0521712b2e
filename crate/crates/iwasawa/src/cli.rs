//! The `iwasawa` command line.
//!
//! Exit codes: 0 success or criterion met, 1 invalid input, 2 a resource cap
//! was hit, 3 criterion not met. Data goes to standard output (or `--out`),
//! progress to standard error.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use iwasawa_core::arith::{count_points, PrimeEngine};
use iwasawa_core::densities::{chebotarev_set_size, has_cm, CountMode};
use iwasawa_core::extensions::unique_extension_of_conductor_q;
use iwasawa_core::iwasawa::{
    good_ordinary_at, kida_lambda, lambda_stable, lkr_check, IwasawaAssumptions, LkrVerdict,
    NotMetReason, Stability, Warning,
};
use iwasawa_core::local::{conductor, tate_algorithm};
use iwasawa_core::matsuno::{matsuno_plan, sha_two_rank_lower_bound, TWIST_ASSUMPTION};
use iwasawa_core::Error as CoreError;

use crate::ingest::{
    parse_curve_file, write_density_csv, write_scan_csv, write_verdict_csv, CurveRecord,
    IngestError, VerdictRow,
};
use crate::parallel;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_CAP: i32 = 2;
pub const EXIT_NOT_MET: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "iwasawa", version, about = "Selmer growth criteria and prime densities for elliptic curves over Q")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct CurveArgs {
    /// Inline curve "a1 a2 a3 a4 a6 [label] [key=value ...]".
    #[arg(long)]
    curve: Option<String>,
    /// File with one curve per line.
    #[arg(long)]
    curve_file: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct AssumeArgs {
    #[arg(long)]
    assume_rank0: bool,
    #[arg(long)]
    assume_mu0: bool,
    #[arg(long)]
    assume_lambda0: bool,
    #[arg(long)]
    assume_sha_finite: bool,
    #[arg(long)]
    assume_torsion_trivial: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CriterionKind {
    Lkr,
    LambdaStable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Formula,
    Bruteforce,
}

fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Rank-zero expression for each prime p in [pmin, pmax].
    TableExpression {
        #[arg(long, default_value_t = 3)]
        pmin: u64,
        #[arg(long, default_value_t = 47)]
        pmax: u64,
        #[arg(long, default_value_t = 179_424_673)]
        xbound: u64,
        #[arg(long, default_value_t = default_workers())]
        workers: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Enemy/friendly/neutral counts over q <= X.
    Scan {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        xbound: u64,
        #[arg(long, default_value_t = default_workers())]
        workers: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate a criterion for the extension of conductor q.
    Criterion {
        #[arg(value_enum)]
        kind: CriterionKind,
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long)]
        p: u64,
        #[arg(long, visible_alias = "q")]
        conductor: u64,
        #[command(flatten)]
        assume: AssumeArgs,
        /// Also write a verdict CSV.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Size of {g in GL2(F_p) : tr g = 2, det g = 1}.
    Gl2Count {
        #[arg(long)]
        p: u64,
        #[arg(long, value_enum, default_value_t = Mode::Formula)]
        mode: Mode,
    },
    /// Kida's formula from ramification data such as "P2:31:e=5".
    Kida {
        #[arg(long, default_value_t = 0)]
        lambda: u64,
        #[arg(long)]
        p: u64,
        #[arg(long = "profile")]
        profile: Vec<String>,
    },
    /// Primes and conductor estimate for 2-rank growth of Sha.
    Matsuno {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 0)]
        rank: u32,
    },
    /// Local data from Tate's algorithm.
    Tate {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long)]
        q: u64,
    },
}

/// Error with its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Self { code: EXIT_INPUT, message: message.into() }
    }
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Self {
        let code = match e {
            CoreError::CapExceeded { .. } => EXIT_CAP,
            _ => EXIT_INPUT,
        };
        Self { code, message: e.to_string() }
    }
}

impl From<IngestError> for Failure {
    fn from(e: IngestError) -> Self {
        Self::input(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Self::input(e.to_string())
    }
}

type Outcome = Result<i32, Failure>;

/// Runs the command line with explicit output streams; returns the exit
/// code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_INPUT
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    match cmd {
        Command::TableExpression { pmin, pmax, xbound, workers, out: path } => {
            table_expression(pmin, pmax, xbound, workers, path.as_deref(), out, err)
        }
        Command::Scan { curve, p, xbound, workers, out: path } => {
            scan(&curve, p, xbound, workers, path.as_deref(), out, err)
        }
        Command::Criterion { kind, curve, p, conductor, assume, out: path } => {
            criterion(kind, &curve, p, conductor, &assume, path.as_deref(), out)
        }
        Command::Gl2Count { p, mode } => {
            let mode = match mode {
                Mode::Formula => CountMode::Formula,
                Mode::Bruteforce => CountMode::BruteForce,
            };
            writeln!(out, "{}", chebotarev_set_size(p, mode)?)?;
            Ok(EXIT_OK)
        }
        Command::Kida { lambda, p, profile } => kida(lambda, p, &profile, out),
        Command::Matsuno { curve, n, rank } => matsuno(&curve, n, rank, out),
        Command::Tate { curve, q } => tate(&curve, q, out),
    }
}

fn load_curves(args: &CurveArgs) -> Result<Vec<CurveRecord>, Failure> {
    match (&args.curve, &args.curve_file) {
        (Some(_), Some(_)) => Err(Failure::input("give either --curve or --curve-file, not both")),
        (None, None) => Err(Failure::input("a curve is required (--curve or --curve-file)")),
        (Some(spec), None) => match CurveRecord::parse_line(spec, 1)? {
            Some(rec) => Ok(vec![rec]),
            None => Err(Failure::input("empty curve specification")),
        },
        (None, Some(path)) => {
            let recs = parse_curve_file(path)?;
            if recs.is_empty() {
                return Err(Failure::input(format!("{} holds no curves", path.display())));
            }
            Ok(recs)
        }
    }
}

fn single_curve(args: &CurveArgs) -> Result<CurveRecord, Failure> {
    let mut recs = load_curves(args)?;
    if recs.len() != 1 {
        return Err(Failure::input(format!("expected one curve, found {}", recs.len())));
    }
    Ok(recs.remove(0))
}

/// Writes to `path`, or to `out` when no path is given.
fn with_sink(
    path: Option<&Path>,
    out: &mut dyn Write,
    f: impl FnOnce(&mut dyn Write) -> Result<(), IngestError>,
) -> Result<(), Failure> {
    match path {
        Some(p) => {
            let mut file = File::create(p)?;
            f(&mut file)?;
        }
        None => f(out)?,
    }
    Ok(())
}

fn table_expression(
    pmin: u64,
    pmax: u64,
    xbound: u64,
    workers: usize,
    path: Option<&Path>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Outcome {
    if pmin < 3 || pmin > pmax {
        return Err(Failure::input(format!("need 3 <= pmin <= pmax, got {pmin}..{pmax}")));
    }
    if xbound < 2 {
        return Err(Failure::input("xbound must be at least 2"));
    }
    let primes: Vec<u64> = PrimeEngine::range(pmin, pmax, None).collect();
    writeln!(err, "evaluating {} primes over q <= {xbound} with {workers} workers", primes.len())?;
    let rows = parallel::rank_zero_expressions(&primes, xbound, workers)?;
    with_sink(path, out, |w| write_density_csv(w, &rows))?;
    Ok(EXIT_OK)
}

fn scan(
    args: &CurveArgs,
    p: u64,
    xbound: u64,
    workers: usize,
    path: Option<&Path>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Outcome {
    let rec = single_curve(args)?;
    let curve = rec.curve();
    writeln!(err, "scanning q <= {xbound} for {} at p = {p} with {workers} workers", rec.name())?;
    let report = parallel::scan_proportions(&curve, p, xbound, workers)?;
    writeln!(
        err,
        "enemy {:.6}  friendly {:.6}  neutral {:.6}  (of pi(X) = {})",
        report.enemy_fraction(),
        report.friendly_fraction(),
        report.neutral_fraction(),
        report.pi_x
    )?;
    with_sink(path, out, |w| write_scan_csv(w, &[report]))?;
    Ok(EXIT_OK)
}

fn assumptions_for(rec: &CurveRecord, flags: &AssumeArgs) -> Result<IwasawaAssumptions, Failure> {
    let conflict = |what: &str| {
        Failure::input(format!("{}: record states {what}, contradicting the flag", rec.name()))
    };
    if flags.assume_rank0 && rec.rank.is_some_and(|r| r > 0) {
        return Err(conflict("a positive rank"));
    }
    if flags.assume_mu0 && rec.mu.is_some_and(|m| m > 0) {
        return Err(conflict("a positive mu"));
    }
    if flags.assume_lambda0 && rec.lambda.is_some_and(|l| l > 0) {
        return Err(conflict("a positive lambda"));
    }
    let lambda_q = match rec.lambda {
        Some(l) => l as u64,
        None if flags.assume_lambda0 => 0,
        // unknown λ is treated as failing the λ = 0 hypothesis
        None => 1,
    };
    Ok(IwasawaAssumptions {
        rank_zero: flags.assume_rank0 || rec.rank == Some(0),
        torsion_p_trivial: flags.assume_torsion_trivial,
        mu_zero: flags.assume_mu0 || rec.mu == Some(0),
        lambda_q,
        sha_finite_over_l: flags.assume_sha_finite,
        good_ordinary_at_p: false,
        residual_surjective: false,
    })
}

fn warning_code(w: &Warning) -> &'static str {
    match w {
        Warning::DegreeThree => "warn:p_is_3",
        Warning::NotGoodOrdinaryAtP { .. } => "warn:not_good_ordinary_at_p",
    }
}

fn criterion(
    kind: CriterionKind,
    args: &CurveArgs,
    p: u64,
    q: u64,
    flags: &AssumeArgs,
    path: Option<&Path>,
    out: &mut dyn Write,
) -> Outcome {
    let recs = load_curves(args)?;
    let profile = unique_extension_of_conductor_q(p, q)?;
    let mut rows = Vec::new();
    let mut all_met = true;
    for rec in &recs {
        let curve = rec.curve();
        let mut assumptions = assumptions_for(rec, flags)?;
        match &rec.label {
            Some(l) => writeln!(out, "{l} {curve}: p = {p}, L of conductor {q}")?,
            None => writeln!(out, "{curve}: p = {p}, L of conductor {q}")?,
        }
        writeln!(out, "  checked: {q} = 1 (mod {p})")?;
        let local = tate_algorithm(&curve, q)?;
        if local.reduction == iwasawa_core::local::ReductionType::Good {
            let n = count_points(&curve, q)?;
            let div = if n % p == 0 { "divisible" } else { "not divisible" };
            writeln!(out, "  checked: good reduction at {q}, #E(F_{q}) = {n}, {div} by {p}")?;
        } else {
            writeln!(out, "  checked: {} reduction at {q}, Kodaira type {}", local.reduction, local.kodaira)?;
        }
        let (verdict, reasons, met) = match kind {
            CriterionKind::Lkr => {
                let report = lkr_check(&curve, p, &profile, &assumptions)?;
                let mut reasons: Vec<String> = Vec::new();
                let (verdict, met) = match &report.verdict {
                    LkrVerdict::SelmerBecomesNonzero { witnesses } => {
                        let w: Vec<String> = witnesses.iter().map(u64::to_string).collect();
                        reasons.push(format!("iii:{}", w.join("+")));
                        writeln!(out, "  verdict: SelmerBecomesNonzero (witness primes {})", w.join(", "))?;
                        writeln!(out, "  consequence: Sel_{{{p}^inf}}(E/Q) = Sha(E/Q)[{p}^inf] = 0")?;
                        writeln!(out, "  consequence: rank E(L) > 0 or Sha(E/L)[{p}^inf] != 0")?;
                        ("SelmerBecomesNonzero", true)
                    }
                    LkrVerdict::CriterionNotMet(why) => {
                        writeln!(out, "  verdict: CriterionNotMet")?;
                        for r in why {
                            writeln!(out, "  reason: {r}")?;
                            reasons.push(match r {
                                NotMetReason::NoQualifyingPrime => "iii:no_qualifying_prime".into(),
                                NotMetReason::MultiplicativeAt { l, .. } => format!("iv:multiplicative_at_{l}"),
                            });
                        }
                        ("CriterionNotMet", false)
                    }
                };
                for w in &report.warnings {
                    writeln!(out, "  warning: {w}")?;
                    reasons.push(warning_code(w).into());
                }
                (verdict, reasons, met)
            }
            CriterionKind::LambdaStable => {
                let (ordinary, ap) = good_ordinary_at(&curve, p)?;
                match ap {
                    Some(a) => writeln!(out, "  checked: good reduction at {p}, a_{p} = {a}")?,
                    None => writeln!(out, "  checked: bad reduction at {p}")?,
                }
                assumptions.good_ordinary_at_p = ordinary;
                match lambda_stable(&curve, p, &profile, &assumptions)? {
                    Stability::Stable => {
                        writeln!(out, "  verdict: Stable")?;
                        writeln!(out, "  consequence: mu(E/L) = lambda(E/L) = 0 and rank E(L) = 0")?;
                        ("Stable", Vec::new(), true)
                    }
                    s @ Stability::Jump { lambda_l, .. } => {
                        let enemies: Vec<String> = s.enemy_primes().iter().map(u64::to_string).collect();
                        writeln!(out, "  verdict: Jump (enemy primes {})", enemies.join(", "))?;
                        writeln!(out, "  consequence: lambda(E/L) = {lambda_l}")?;
                        ("Jump", vec![format!("enemy:{}", enemies.join("+"))], false)
                    }
                }
            }
        };
        if rec.cm.is_some_and(|c| c != has_cm(&curve)) {
            writeln!(out, "  note: cm flag in the record disagrees with the j-invariant")?;
        }
        all_met &= met;
        rows.push(VerdictRow {
            curve: rec.name(),
            p,
            conductor: q.to_string(),
            verdict: verdict.into(),
            reasons: reasons.join(";"),
        });
    }
    if let Some(path) = path {
        write_verdict_csv(File::create(path)?, &rows)?;
    }
    Ok(if all_met { EXIT_OK } else { EXIT_NOT_MET })
}

/// `KIND:PRIME:e=E` with `KIND` one of `P1`, `P2`.
fn parse_profile_entry(s: &str) -> Result<(bool, u64, u64), Failure> {
    let bad = || Failure::input(format!("profile entry {s:?} is not KIND:PRIME:e=E"));
    let parts: Vec<&str> = s.split(':').collect();
    let [kind, prime, e] = parts[..] else {
        return Err(bad());
    };
    let is_p2 = match kind {
        "P1" => false,
        "P2" => true,
        _ => return Err(bad()),
    };
    let prime: u64 = prime.parse().map_err(|_| bad())?;
    let e: u64 = e.strip_prefix("e=").ok_or_else(bad)?.parse().map_err(|_| bad())?;
    if !iwasawa_core::arith::modp::is_prime(prime) {
        return Err(CoreError::NotPrime { value: prime }.into());
    }
    Ok((is_p2, prime, e))
}

fn kida(lambda: u64, p: u64, entries: &[String], out: &mut dyn Write) -> Outcome {
    let (mut p1, mut p2) = (Vec::new(), Vec::new());
    for s in entries {
        let (is_p2, _, e) = parse_profile_entry(s)?;
        if is_p2 {
            p2.push(e);
        } else {
            p1.push(e);
        }
    }
    writeln!(out, "{}", kida_lambda(lambda, p, &p1, &p2)?)?;
    Ok(EXIT_OK)
}

fn matsuno(args: &CurveArgs, n: u32, rank: u32, out: &mut dyn Write) -> Outcome {
    let rec = single_curve(args)?;
    let plan = matsuno_plan(&rec.curve(), n, rank)?;
    let primes: Vec<String> = plan.picked_primes.iter().map(u64::to_string).collect();
    writeln!(out, "k = {}", plan.k)?;
    writeln!(out, "primes = {}", primes.join(" "))?;
    writeln!(out, "conductor_product = {}", plan.conductor_product)?;
    writeln!(out, "galois_degree = {}", plan.galois_degree)?;
    writeln!(out, "c = {}", plan.c)?;
    match plan.asymptotic_estimate {
        Some(v) => writeln!(out, "asymptotic_estimate = {v:.6e}")?,
        None => writeln!(out, "asymptotic_estimate = undefined (n < 2)")?,
    }
    writeln!(out, "sha_2_rank_lower_bound = {}", sha_two_rank_lower_bound(plan.k, rank))?;
    writeln!(out, "assumption: {TWIST_ASSUMPTION}")?;
    Ok(EXIT_OK)
}

fn tate(args: &CurveArgs, q: u64, out: &mut dyn Write) -> Outcome {
    for rec in load_curves(args)? {
        let curve = rec.curve();
        let d = tate_algorithm(&curve, q)?;
        writeln!(
            out,
            "{}: prime={} reduction={} kodaira={} tamagawa={} f={} v(disc_min)={} conductor={}",
            rec.name(),
            d.prime,
            d.reduction,
            d.kodaira,
            d.tamagawa,
            d.conductor_exponent,
            d.disc_valuation,
            conductor(&curve)?
        )?;
    }
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let mut full = vec!["iwasawa"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn gl2_and_kida() {
        assert_eq!(run_str(&["gl2-count", "--p", "5", "--mode", "bruteforce"]).1, "25\n");
        assert_eq!(run_str(&["kida", "--lambda", "0", "--p", "5", "--profile", "P2:31:e=5"]).1, "8\n");
        assert_eq!(run_str(&["kida", "--p", "5", "--profile", "P3:31:e=5"]).0, EXIT_INPUT);
        assert_eq!(run_str(&["gl2-count", "--p", "17", "--mode", "bruteforce"]).0, EXIT_CAP);
    }

    #[test]
    fn curve_source_conflict() {
        let (code, _, err) = run_str(&["tate", "--curve", "0 -1 1 0 0", "--curve-file", "x", "--q", "11"]);
        assert_eq!(code, EXIT_INPUT);
        assert!(err.contains("not both"));
    }

    #[test]
    fn tate_line() {
        let (code, out, _) = run_str(&["tate", "--curve", "0 -1 1 0 0 11a3", "--q", "11"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("reduction=split multiplicative"));
        assert!(out.contains("f=1"));
        assert!(out.contains("conductor=11"));
    }

    #[test]
    fn table_flag_validation() {
        assert_eq!(run_str(&["table-expression", "--pmin", "4", "--pmax", "3"]).0, EXIT_INPUT);
        let (code, out, _) = run_str(&["table-expression", "--pmin", "5", "--pmax", "5", "--xbound", "100"]);
        assert_eq!(code, EXIT_OK);
        assert_eq!(out.lines().count(), 2);
        assert!(out.starts_with("p,value,X\n5,"));
    }
}
