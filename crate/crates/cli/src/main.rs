//! `argshift`: exact verification harness and calculator for quasi-derivations
//! on universal enveloping algebras of the classical Lie algebras.
//!
//! Subcommands:
//! * `check`: run the identity/theorem/counterexample suites, one JSON
//!   report line per check on stdout; exit 0 iff everything passed.
//! * `generate`: emit a quantum Mishchenko--Fomenko generating family.
//! * `apply-dmu`: apply the shift operator `D_mu` repeatedly to an element.
//! * `commute`: compute a commutator and report it as a check.

use std::io::Write;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};

use argshift_core::algebra::{AlgebraSpec, Family};
use argshift_core::check::{run_suite, CheckReport, Status, Suite, SuiteConfig};
use argshift_core::error::AlgebraError;
use argshift_core::generators::amu_generating_family;
use argshift_core::parse::{parse_element, scan_expr};
use argshift_core::quasi::d_mu_iterate;
use argshift_core::shift::ShiftMatrix;

#[derive(Parser)]
#[command(
    name = "argshift",
    about = "Exact symbolic verification of the quantum argument shift method",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite; one JSON line per check on stdout.
    Check(CheckArgs),
    /// Emit the generating family of the quantum Mishchenko-Fomenko
    /// subalgebra as JSON.
    Generate(GenerateArgs),
    /// Apply D_mu to an element p times and print the normalized result.
    ApplyDmu(ApplyArgs),
    /// Commute two elements; pass iff the commutator vanishes.
    Commute(CommuteArgs),
}

#[derive(Args)]
struct CheckArgs {
    /// Which suite to run.
    #[arg(long, default_value = "all", value_parser = ["all", "identities", "theorems", "counterexamples"])]
    suite: String,
    /// Restrict to one family (glN|oN|spN|o2n-canonical).
    #[arg(long)]
    family: Option<String>,
    /// Restrict to specs with N <= this bound.
    #[arg(long, default_value_t = 5)]
    max_n: usize,
    /// Seed for the randomized checks.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Trials for the well-definedness checks (suite `all`).
    #[arg(long, default_value_t = 200)]
    trials: usize,
}

#[derive(Args)]
struct GenerateArgs {
    /// Family: glN|oN|spN|o2n-canonical.
    #[arg(long)]
    family: String,
    /// Matrix size N.
    #[arg(long)]
    n: usize,
    /// Shift matrix file (JSON); defaults to the family's generic mu.
    #[arg(long)]
    mu: Option<String>,
    /// Output file (defaults to stdout).
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args)]
struct ApplyArgs {
    /// Shift matrix file (JSON); declares the family and N.
    #[arg(long)]
    mu: String,
    /// Element expression, e.g. "E[1,1]^2 + 2*E[1,2]E[2,1]".
    #[arg(long)]
    element: String,
    /// Number of applications of D_mu (0 echoes the normalized input).
    #[arg(long, default_value_t = 1)]
    power: u32,
}

#[derive(Args)]
struct CommuteArgs {
    /// First element expression.
    #[arg(long)]
    a: String,
    /// Second element expression.
    #[arg(long)]
    b: String,
    /// Family (inferred as glN from `E[...]` expressions when omitted).
    #[arg(long)]
    family: Option<String>,
    /// Matrix size N (inferred from the largest index when omitted).
    #[arg(long)]
    n: Option<usize>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<bool, AlgebraError> {
    match cli.command {
        Command::Check(args) => {
            let suite = Suite::parse(&args.suite).unwrap();
            let families = match &args.family {
                Some(f) => Some(vec![Family::parse(f)?]),
                None => None,
            };
            let cfg = SuiteConfig {
                families,
                max_n: args.max_n,
                seed: args.seed,
                trials: args.trials.max(1),
            };
            let reports = run_suite(suite, &cfg);
            let mut stdout = std::io::stdout().lock();
            let mut all = true;
            for r in &reports {
                all &= r.passed();
                writeln!(stdout, "{}", r.to_json_line())
                    .map_err(|e| AlgebraError::Io(e.to_string()))?;
            }
            Ok(all)
        }
        Command::Generate(args) => {
            let family = Family::parse(&args.family)?;
            let spec = AlgebraSpec::build(family, args.n)?;
            let mu = load_mu_for(&spec, args.mu.as_deref())?;
            let fam = amu_generating_family(&spec, &mu)?;
            let json = serde_json::to_string_pretty(&fam.to_json()).unwrap();
            match args.out {
                Some(path) => std::fs::write(&path, json + "\n")
                    .map_err(|e| AlgebraError::Io(format!("{path}: {e}")))?,
                None => println!("{json}"),
            }
            Ok(true)
        }
        Command::ApplyDmu(args) => {
            let mu = load_mu(&args.mu)?;
            let spec = mu.spec().clone();
            let f = parse_element(&spec, &args.element)?;
            let result = d_mu_iterate(&mu, &f, args.power);
            println!("{result}");
            Ok(true)
        }
        Command::Commute(args) => {
            let spec = commute_spec(&args)?;
            let a = parse_element(&spec, &args.a)?;
            let b = parse_element(&spec, &args.b)?;
            let c = a.commutator(&b);
            let report = CheckReport {
                check: "commute".to_string(),
                status: if c.is_zero() {
                    Status::Pass
                } else {
                    Status::Fail
                },
                witness: (!c.is_zero()).then(|| c.to_string()),
                ms: 0,
            };
            println!("{}", report.to_json_line());
            Ok(c.is_zero())
        }
    }
}

fn load_mu(path: &str) -> Result<ShiftMatrix, AlgebraError> {
    let text =
        std::fs::read_to_string(path).map_err(|e| AlgebraError::Io(format!("{path}: {e}")))?;
    ShiftMatrix::from_json(&text)
}

fn load_mu_for(spec: &Arc<AlgebraSpec>, path: Option<&str>) -> Result<ShiftMatrix, AlgebraError> {
    match path {
        None => Ok(ShiftMatrix::generic(spec)),
        Some(p) => {
            let mu = load_mu(p)?;
            if mu.spec().key() != spec.key() {
                return Err(AlgebraError::SpecMismatch {
                    left: format!("{} N={}", spec.family(), spec.n()),
                    right: format!("{} N={}", mu.spec().family(), mu.spec().n()),
                });
            }
            Ok(mu)
        }
    }
}

fn commute_spec(args: &CommuteArgs) -> Result<Arc<AlgebraSpec>, AlgebraError> {
    let scanned = scan_expr(&args.a).or_else(|| scan_expr(&args.b));
    let family = match &args.family {
        Some(f) => Family::parse(f)?,
        None => match scanned {
            Some(('E', _)) => Family::GlN,
            Some(('F', _)) => {
                return Err(AlgebraError::Parse(
                    "F-generators are ambiguous between oN, spN and o2n-canonical: \
                     pass --family explicitly"
                        .to_string(),
                ))
            }
            _ => {
                return Err(AlgebraError::Parse(
                    "no generators found; pass --family and --n".to_string(),
                ))
            }
        },
    };
    let n = match args.n {
        Some(n) => n,
        None => {
            let hint = scan_expr(&args.a)
                .map(|(_, n)| n)
                .unwrap_or(0)
                .max(scan_expr(&args.b).map(|(_, n)| n).unwrap_or(0));
            if hint < 1 {
                return Err(AlgebraError::Parse(
                    "cannot infer N from the expressions; pass --n".to_string(),
                ));
            }
            hint.max(2)
        }
    };
    AlgebraSpec::build(family, n)
}
