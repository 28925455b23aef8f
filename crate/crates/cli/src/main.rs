use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use hsph::gamma::gamma_cocycle;
use hsph::json::{lift_surd, surd_to_json, to_json};
use hsph::latex::{emit_latex_in, Variables};
use hsph::oracle::{
    omega_n1_closed_at, oracle_omega_n1, oracle_siegel_n1, siegel_b_n1_at, OracleConfig,
};
use hsph::siegel::{
    chain_identity, f_n_from_gamma_rho, fe_factor, fe_involution, siegel_b_n1, verify_thm44_n1,
    zeta_ratio, IdentityCheck, SiegelParams,
};
use hsph::spherical::{f_factor, omega_explicit, SphericalInput};
use hsph::verify::{run_suite, Suite, SuiteOptions};
use hsph::weyl::{format_word, parse_word};
use hsph::{Error, RatFunc, SurdRatFunc};

/// Exact spherical functions on U(n,n) and hermitian Siegel series.
#[derive(Parser)]
#[command(name = "hsph", version)]
struct Cli {
    /// Output format of the artifact on standard output.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Latex,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// The gamma factor of a Weyl element given as a generator word.
    Gamma {
        #[arg(long)]
        n: usize,
        /// Generator word such as "s1 s2 t"; the empty word is the identity.
        #[arg(long, default_value = "")]
        sigma: String,
        #[arg(long, default_value_t = 0)]
        e0: u32,
    },
    /// The spherical function omega and its normalization F * omega.
    Spherical(SphericalArgs),
    #[command(subcommand)]
    Siegel(SiegelCommand),
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Runs a verification suite, or all of them.
    Verify {
        /// One of cocycle, gamma-rho, spherical-fe, polynomial-invariance,
        /// n1-consistency, oracle-omega, siegel-n1, siegel-chain, zeta-k1-fe,
        /// algebra-properties, or all.
        suite: String,
        /// Restricts rank-indexed suites to this n.
        #[arg(long)]
        n: Option<usize>,
    },
}

#[derive(Args)]
struct SphericalArgs {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, value_parser = parse_lambda)]
    lambda: Lambda,
    #[arg(long, default_value_t = 0)]
    e0: u32,
}

#[derive(Subcommand)]
enum SiegelCommand {
    /// The functional-equation multiplier, checked to be an involution
    /// (and, for n = 1, checked against the Siegel series).
    Fe(SphericalArgs),
    /// The rank-one Siegel series as a function of V = q^{-s/2}.
    B1 {
        #[arg(long)]
        lambda: i64,
    },
    /// The identities behind the functional equation in rank n.
    Chain {
        #[arg(long)]
        n: usize,
        /// Checks only this e0; both 0 and 1 by default.
        #[arg(long)]
        e0: Option<u32>,
    },
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Brute-force rank-one spherical function at precision N.
    Omega1 {
        #[arg(long)]
        p: i64,
        #[arg(long = "N")]
        precision: u32,
        #[arg(long)]
        lambda: i64,
        #[arg(long)]
        e: i64,
        /// Compare with the closed form and exit 1 on mismatch.
        #[arg(long)]
        check: bool,
    },
    /// Brute-force rank-one Siegel series.
    Siegel1 {
        #[arg(long)]
        p: i64,
        #[arg(long)]
        lambda: u32,
        #[arg(long)]
        check: bool,
    },
}

#[derive(Clone, Debug)]
struct Lambda(Vec<i64>);

fn parse_lambda(s: &str) -> Result<Lambda, String> {
    let v: Vec<i64> = s
        .split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|e| format!("{t:?}: {e}")))
        .collect::<Result<_, _>>()?;
    if v.windows(2).any(|w| w[0] < w[1]) {
        return Err(format!("{v:?} is not weakly decreasing"));
    }
    Ok(Lambda(v))
}

/// `println!` that ends the process quietly once standard output is gone,
/// as when piped into `head`.
macro_rules! out {
    ($($arg:tt)*) => {
        if writeln!(std::io::stdout(), $($arg)*).is_err() {
            std::process::exit(0);
        }
    };
}

/// How a command ended: the artifact was produced, or a check failed.
enum Outcome {
    Ok,
    Mismatch,
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<hsph::AlgebraError> for Failure {
    fn from(e: hsph::AlgebraError) -> Self {
        Failure::Core(e.into())
    }
}

type CmdResult = Result<Outcome, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let result = run(&cli);
    eprintln!("wall time {:.3}s", start.elapsed().as_secs_f64());
    match result {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Mismatch) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            match e {
                Error::BudgetExceeded { .. } => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn run(cli: &Cli) -> CmdResult {
    let fmt = cli.format;
    match &cli.command {
        Command::Gamma { n, sigma, e0 } => {
            let word = parse_word(sigma, *n)?;
            let g = gamma_cocycle(*n, &word, *e0);
            let text = vec![
                format!(
                    "sigma = {} = {}",
                    display_word(&format_word(&word)),
                    g.sigma
                ),
                format!("Gamma = {}", g.value),
            ];
            emit(fmt, Variables::Spectral, &[&g.value], text);
            Ok(Outcome::Ok)
        }
        Command::Spherical(args) => {
            let input = spherical_input(args)?;
            let omega = omega_explicit(&input)?.value;
            let normalized = f_factor(input.n(), input.e0()).mul(&omega);
            let text = vec![
                format!("omega = {omega}"),
                format!("F * omega = {normalized}"),
            ];
            emit(fmt, Variables::Spectral, &[&omega, &normalized], text);
            Ok(Outcome::Ok)
        }
        Command::Siegel(cmd) => siegel(fmt, cmd),
        Command::Oracle(cmd) => oracle(fmt, cmd),
        Command::Verify { suite, n } => verify(fmt, suite, *n),
    }
}

fn display_word(w: &str) -> &str {
    if w.is_empty() {
        "1"
    } else {
        w
    }
}

fn spherical_input(args: &SphericalArgs) -> Result<SphericalInput, Failure> {
    if let Some(n) = args.n {
        if n != args.lambda.0.len() {
            return Err(Failure::Input(format!(
                "--n {n} does not match lambda of length {}",
                args.lambda.0.len()
            )));
        }
    }
    Ok(SphericalInput::new(args.lambda.0.clone(), args.e0)?)
}

/// Prints the artifacts: one JSON document per line, one LaTeX line each,
/// or the text lines.
fn emit(fmt: Format, vars: Variables, items: &[&RatFunc], text: Vec<String>) {
    match fmt {
        Format::Json => {
            for f in items {
                out!("{}", to_json(f));
            }
        }
        Format::Latex => {
            for f in items {
                out!("{}", emit_latex_in(f, vars));
            }
        }
        Format::Text => {
            for line in text {
                out!("{line}");
            }
        }
    }
}

fn emit_surd(fmt: Format, vars: Variables, f: &SurdRatFunc) {
    match fmt {
        Format::Json => out!("{}", surd_to_json(f)),
        Format::Latex => {
            let lifted = f
                .map_coeffs(|c| Some(lift_surd(c)))
                .expect("lifting is an embedding");
            out!("{}", emit_latex_in(&lifted, vars));
        }
        Format::Text => out!("{f}"),
    }
}

/// Prints the outcome of identity checks and folds them into an exit
/// status.
fn report_checks(fmt: Format, checks: &[IdentityCheck]) -> Outcome {
    let mut ok = true;
    for c in checks {
        let holds = c.holds();
        ok &= holds;
        match fmt {
            Format::Json => {
                let mut v = json!({ "check": c.label, "holds": holds });
                if !holds {
                    v["lhs"] = to_json(&c.lhs);
                    v["rhs"] = to_json(&c.rhs);
                }
                out!("{v}");
            }
            _ => out!("{} {}", if holds { "ok  " } else { "FAIL" }, c.label),
        }
    }
    if ok {
        Outcome::Ok
    } else {
        Outcome::Mismatch
    }
}

fn siegel(fmt: Format, cmd: &SiegelCommand) -> CmdResult {
    match cmd {
        SiegelCommand::Fe(args) => {
            let input = spherical_input(args)?;
            let params = SiegelParams::new(input.lambda().to_vec(), input.e0())?;
            let fe = fe_factor(&params);
            let mut checks = vec![fe_involution(&params)];
            if params.n() == 1 {
                checks.push(verify_thm44_n1(params.lambda()[0], params.e0())?);
            }
            emit(fmt, Variables::HalfS, &[&fe], vec![format!("FE = {fe}")]);
            Ok(report_checks(fmt, &checks))
        }
        SiegelCommand::B1 { lambda } => {
            let b = siegel_b_n1(*lambda)?;
            emit(fmt, Variables::HalfS, &[&b], vec![format!("b = {b}")]);
            Ok(Outcome::Ok)
        }
        SiegelCommand::Chain { n, e0 } => {
            if *n == 0 {
                return Err(Failure::Input("--n must be positive".into()));
            }
            let mut checks = vec![zeta_ratio(*n)?];
            let e0s = match e0 {
                Some(e) => vec![*e],
                None => vec![0, 1],
            };
            for e in e0s {
                checks.push(f_n_from_gamma_rho(*n, e)?);
                checks.push(chain_identity(*n, e)?);
            }
            Ok(report_checks(fmt, &checks))
        }
    }
}

fn budget_from_env() -> Result<Option<u128>, Failure> {
    match std::env::var("HS_BUDGET") {
        Ok(v) => v
            .trim()
            .parse::<u128>()
            .map(Some)
            .map_err(|e| Failure::Input(format!("HS_BUDGET={v:?}: {e}"))),
        Err(_) => Ok(None),
    }
}

fn oracle(fmt: Format, cmd: &OracleCommand) -> CmdResult {
    let vars = match cmd {
        OracleCommand::Omega1 { .. } => Variables::Spectral,
        OracleCommand::Siegel1 { .. } => Variables::HalfS,
    };
    let (value, closed) = match cmd {
        OracleCommand::Omega1 {
            p,
            precision,
            lambda,
            e,
            check,
        } => {
            let mut cfg = OracleConfig::new(*p, *precision)?;
            if let Some(b) = budget_from_env()? {
                cfg = cfg.with_budget(b);
            }
            let value = oracle_omega_n1(&cfg, *lambda, *e)?;
            let closed = check
                .then(|| omega_n1_closed_at(*p, *lambda, *e))
                .transpose()?;
            (value, closed)
        }
        OracleCommand::Siegel1 { p, lambda, check } => {
            let value = oracle_siegel_n1(*p, *lambda)?;
            let closed = check
                .then(|| siegel_b_n1_at(*p, *lambda as i64))
                .transpose()?;
            (value, closed)
        }
    };
    emit_surd(fmt, vars, &value);
    match closed {
        Some(c) if !value.equals(&c) => {
            eprintln!("mismatch: closed form is {c}");
            Ok(Outcome::Mismatch)
        }
        Some(_) => {
            eprintln!("matches the closed form");
            Ok(Outcome::Ok)
        }
        None => Ok(Outcome::Ok),
    }
}

fn verify(fmt: Format, suite: &str, n: Option<usize>) -> CmdResult {
    let suites: Vec<Suite> = if suite == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![suite.parse()?]
    };
    let opts = SuiteOptions {
        n,
        budget: budget_from_env()?,
    };
    let mut ok = true;
    for s in suites {
        let report = run_suite(s, &opts)?;
        ok &= report.passed();
        eprintln!("{} took {:.3}s", s, report.wall.as_secs_f64());
        match fmt {
            Format::Json => out!("{}", report.to_json()),
            _ => {
                out!("{}", report.summary());
                for note in &report.notes {
                    out!("  note: {note}");
                }
                for f in &report.failures {
                    out!("  failed: {}", f.case);
                }
            }
        }
    }
    Ok(if ok { Outcome::Ok } else { Outcome::Mismatch })
}
