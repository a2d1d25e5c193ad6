//! Command-line front end: runs the identity suites, emits the algebra
//! basis, and evaluates user-specified eigenfamilies and rational maps.
//! All output is JSON with floats at 17 significant digits; identical
//! flags and seed produce byte-identical output.
//!
//! Exit codes: 0 all checks pass, 1 verification failure, 2 input or
//! parse error, 3 inconclusive (pole guard excluded every sample).

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use g2kit::g2alg::{build_g2_basis, casimir_scalar};
use g2kit::harmonic::{
    check_eigenfamily, check_harmonic_morphism, make_eigenfamily, HarmonicError, PolyFn,
    RationalMap,
};
use g2kit::report::f17;
use g2kit::text::parse_vec7c;
use g2kit::verify::{run_all, SuiteConfig};

const EXIT_OK: u8 = 0;
const EXIT_VERIFICATION_FAILURE: u8 = 1;
const EXIT_INPUT_ERROR: u8 = 2;
const EXIT_INCONCLUSIVE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "g2kit",
    version,
    about = "Numerical certification of the seven-dimensional cross product, \
             its symmetry algebra inside so(7), and eigenfamilies and harmonic \
             morphisms built from them"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct RunOpts {
    /// Seed for every sampled input.
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Sample count override; each check has its own default.
    #[arg(long)]
    samples: Option<usize>,
    /// Tolerance override; each check has its own default.
    #[arg(long)]
    tol: Option<f64>,
    /// Step for first-order central differences (second order uses 10h).
    #[arg(long)]
    h: Option<f64>,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Run every identity suite and report per-check residuals.
    Verify(RunOpts),
    /// Emit the 14-matrix orthonormal basis with its residuals.
    Basis(RunOpts),
    /// Certify the eigenfamily of an isotropic vector, e.g. "1,i,0,0,0,0,0".
    Eigenfamily {
        /// Isotropic vector as 7 comma-separated complex numbers ("a+bi").
        p: String,
        #[command(flatten)]
        opts: RunOpts,
    },
    /// Certify a rational map P/Q in the seven family members.
    Morphism {
        /// Numerator polynomial in z1..z7, e.g. "z1^2+z2*z3".
        numerator: String,
        /// Denominator polynomial of the same degree, e.g. "z4^2".
        denominator: String,
        /// Isotropic vector as 7 comma-separated complex numbers.
        p: String,
        #[command(flatten)]
        opts: RunOpts,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (value, code) = match &cli.command {
        Command::Verify(opts) => cmd_verify(opts),
        Command::Basis(opts) => cmd_basis(opts),
        Command::Eigenfamily { p, opts } => cmd_eigenfamily(p, opts),
        Command::Morphism {
            numerator,
            denominator,
            p,
            opts,
        } => cmd_morphism(numerator, denominator, p, opts),
    };
    let out = match &cli.command {
        Command::Verify(o) | Command::Basis(o) => &o.out,
        Command::Eigenfamily { opts, .. } | Command::Morphism { opts, .. } => &opts.out,
    };
    let text = serde_json::to_string_pretty(&value).expect("report serializes");
    match out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text + "\n") {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(EXIT_INPUT_ERROR);
            }
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            let _ = writeln!(stdout, "{text}");
        }
    }
    ExitCode::from(code)
}

fn suite_config(opts: &RunOpts) -> SuiteConfig {
    SuiteConfig {
        seed: opts.seed,
        samples: opts.samples,
        tol: opts.tol,
        h: opts.h,
    }
}

fn config_json(opts: &RunOpts) -> serde_json::Value {
    let mut m = serde_json::Map::new();
    m.insert("seed".into(), opts.seed.into());
    if let Some(n) = opts.samples {
        m.insert("samples".into(), n.into());
    }
    if let Some(t) = opts.tol {
        m.insert("tol".into(), f17(t));
    }
    if let Some(h) = opts.h {
        m.insert("h".into(), f17(h));
    }
    serde_json::Value::Object(m)
}

fn report_shell(opts: &RunOpts) -> serde_json::Map<String, serde_json::Value> {
    let mut m = serde_json::Map::new();
    m.insert(
        "tool_version".into(),
        env!("CARGO_PKG_VERSION").to_string().into(),
    );
    m.insert("config".into(), config_json(opts));
    m
}

fn error_report(
    opts: &RunOpts,
    code: &str,
    message: impl std::fmt::Display,
    exit: u8,
) -> (serde_json::Value, u8) {
    eprintln!("error ({code}): {message}");
    let mut m = report_shell(opts);
    m.insert("error".into(), code.into());
    m.insert("message".into(), message.to_string().into());
    (serde_json::Value::Object(m), exit)
}

fn cmd_verify(opts: &RunOpts) -> (serde_json::Value, u8) {
    let cfg = suite_config(opts);
    let outcomes = match run_all(&cfg) {
        Ok(o) => o,
        Err(e) => return error_report(opts, "construction", e, EXIT_VERIFICATION_FAILURE),
    };
    let all_pass = outcomes.iter().all(|o| o.pass);
    for o in outcomes.iter().filter(|o| !o.pass) {
        eprintln!(
            "FAIL {}: {} (max residual {:.3e}, tol {:.3e})",
            o.check, o.identity, o.max_abs_error, o.tol
        );
    }
    let mut m = report_shell(opts);
    m.insert(
        "checks".into(),
        serde_json::Value::Array(outcomes.iter().map(|o| o.to_json()).collect()),
    );
    m.insert("pass".into(), all_pass.into());
    (
        serde_json::Value::Object(m),
        if all_pass {
            EXIT_OK
        } else {
            EXIT_VERIFICATION_FAILURE
        },
    )
}

fn cmd_basis(opts: &RunOpts) -> (serde_json::Value, u8) {
    let basis = match build_g2_basis() {
        Ok(b) => b,
        Err(e) => return error_report(opts, "construction", e, EXIT_VERIFICATION_FAILURE),
    };
    let lambda = match casimir_scalar(&basis) {
        Ok(l) => l,
        Err(e) => return error_report(opts, "construction", e, EXIT_VERIFICATION_FAILURE),
    };
    let mut m = report_shell(opts);
    m.insert("lambda".into(), f17(lambda));
    m.insert("gram_residual".into(), f17(basis.gram_residual()));
    m.insert("basis".into(), basis.to_json());
    (serde_json::Value::Object(m), EXIT_OK)
}

fn cmd_eigenfamily(p_spec: &str, opts: &RunOpts) -> (serde_json::Value, u8) {
    let p = match parse_vec7c(p_spec) {
        Ok(p) => p,
        Err(e) => return error_report(opts, "parse", e, EXIT_INPUT_ERROR),
    };
    let basis = match build_g2_basis() {
        Ok(b) => b,
        Err(e) => return error_report(opts, "construction", e, EXIT_VERIFICATION_FAILURE),
    };
    let fam = match make_eigenfamily(&p, &basis) {
        Ok(f) => f,
        Err(e) => return error_report(opts, e.code(), e, EXIT_INPUT_ERROR),
    };
    let report = check_eigenfamily(
        &fam,
        &basis,
        opts.samples.unwrap_or(100).max(1),
        opts.seed,
        opts.tol.unwrap_or(1e-9),
    );
    let mut m = report_shell(opts);
    let pass = report.pass;
    m.insert("report".into(), report.to_json());
    (
        serde_json::Value::Object(m),
        if pass { EXIT_OK } else { EXIT_VERIFICATION_FAILURE },
    )
}

fn cmd_morphism(
    num_spec: &str,
    den_spec: &str,
    p_spec: &str,
    opts: &RunOpts,
) -> (serde_json::Value, u8) {
    let numerator = match PolyFn::parse(num_spec) {
        Ok(p) => p,
        Err(e) => return error_report(opts, "parse", format!("numerator: {e}"), EXIT_INPUT_ERROR),
    };
    let denominator = match PolyFn::parse(den_spec) {
        Ok(p) => p,
        Err(e) => {
            return error_report(opts, "parse", format!("denominator: {e}"), EXIT_INPUT_ERROR)
        }
    };
    let map = match RationalMap::new(numerator, denominator) {
        Ok(m) => m,
        Err(e) => return error_report(opts, e.code(), e, EXIT_INPUT_ERROR),
    };
    let p = match parse_vec7c(p_spec) {
        Ok(p) => p,
        Err(e) => return error_report(opts, "parse", e, EXIT_INPUT_ERROR),
    };
    let basis = match build_g2_basis() {
        Ok(b) => b,
        Err(e) => return error_report(opts, "construction", e, EXIT_VERIFICATION_FAILURE),
    };
    let fam = match make_eigenfamily(&p, &basis) {
        Ok(f) => f,
        Err(e) => return error_report(opts, e.code(), e, EXIT_INPUT_ERROR),
    };
    let report = check_harmonic_morphism(
        &map,
        &fam,
        &basis,
        opts.samples.unwrap_or(150).max(1),
        opts.seed,
        opts.tol.unwrap_or(1e-7),
    );
    match report {
        Ok(report) => {
            let mut m = report_shell(opts);
            m.insert("numerator".into(), map.num().to_string().into());
            m.insert("denominator".into(), map.den().to_string().into());
            let pass = report.pass;
            m.insert("report".into(), report.to_json());
            (
                serde_json::Value::Object(m),
                if pass { EXIT_OK } else { EXIT_VERIFICATION_FAILURE },
            )
        }
        Err(e @ HarmonicError::PoleGuardExhausted { .. }) => {
            error_report(opts, e.code(), e, EXIT_INCONCLUSIVE)
        }
        Err(e) => error_report(opts, e.code(), e, EXIT_INPUT_ERROR),
    }
}
