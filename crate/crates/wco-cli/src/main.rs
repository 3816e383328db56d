//! `wco`: classify disc selfmaps, synthesize unitary/normal weighted
//! composition pairs, check operator properties, compute finite-section
//! spectra, evaluate the boundary residual, and run the verification battery.
//!
//! Exit codes: 0 success, 1 check failed, 2 usage or parse error, 3 domain
//! error.

mod parse;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde_json::{json, Value};
use std::fs;
use std::process::ExitCode;

use parse::{parse_complex, parse_phi_spec};
use wco::operator::{is_normal, is_unitary, EqMode, Symbol, WcoSpec};
use wco::serial;
use wco::spectrum::{
    bbc_numeric_check, bbc_residual_sq, hausdorff, kernel_orbit_points, predict_spectrum,
    section_eigenvalues, sort_points, SpectrumError, SpectrumPrediction,
};
use wco::synthesis::{normal_pair_interior, normal_pair_parabolic, unitary_pair, LftWco};
use wco::verify::run_battery;
use wco::TaylorPoly;

const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_DOMAIN: u8 = 3;

#[derive(Parser)]
#[command(
    name = "wco",
    about = "Weighted composition operators on the Hardy space: classification, synthesis, checks, spectra",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    run: RunFlags,
}

#[derive(Args)]
struct RunFlags {
    /// Section dimension (8..=512)
    #[arg(long = "N", global = true, default_value_t = wco::hardy::DEFAULT_ORDER)]
    n: usize,
    /// Numeric tolerance (1e-14..=1e-2)
    #[arg(long, global = true, default_value_t = 1e-8)]
    tol: f64,
    /// Output format for the primary payload (default: json; verify prints a
    /// table unless json is requested)
    #[arg(long, global = true, value_parser = ["json", "csv", "table"])]
    format: Option<String>,
    /// Write the primary payload to a file as well as stdout
    #[arg(long, global = true)]
    out: Option<String>,
    /// Seed for randomized sweeps
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a linear fractional selfmap from its coefficient JSON
    Classify {
        /// Inline coefficient JSON [[a_re,a_im],[b..],[c..],[d..]]
        input: Option<String>,
        /// Read the JSON from a file instead
        #[arg(long)]
        spec: Option<String>,
    },
    /// Synthesize a unitary or normal weight/symbol pair
    Synth {
        #[command(subcommand)]
        kind: SynthKind,
    },
    /// Run the normality pipeline on a symbol-pair JSON
    Check {
        input: Option<String>,
        #[arg(long)]
        spec: Option<String>,
    },
    /// Section eigenvalues plus the certified spectrum prediction
    Spectrum {
        input: Option<String>,
        #[arg(long)]
        spec: Option<String>,
    },
    /// Boundary-circle residual: closed form and truncated-series route
    Bbc {
        /// Pure imaginary translation parameter, e.g. 2i
        #[arg(long, allow_hyphen_values = true)]
        t: String,
        /// Kernel offset s > 1
        #[arg(long)]
        s: f64,
        /// Exponent parameter lambda < 0
        #[arg(long, allow_hyphen_values = true)]
        lambda: f64,
    },
    /// Run the named theorem battery and print a pass/fail table
    Verify,
}

#[derive(Subcommand)]
enum SynthKind {
    /// Unitary pair: normalized kernel weight over an automorphism
    Unitary {
        /// Symbol: alpha:P | rotation:Z | parabolic:T | hyperbolic:R:T | JSON
        #[arg(long)]
        phi: String,
        /// Unimodular scalar
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        c: String,
    },
    /// Normal pair with interior fixed point p and derivative delta
    NormalInterior {
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        #[arg(long, allow_hyphen_values = true)]
        delta: String,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        gamma: String,
    },
    /// Normal pair with the canonical parabolic symbol and kernel weight
    NormalParabolic {
        #[arg(long, allow_hyphen_values = true)]
        t: String,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        rho: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if !(8..=512).contains(&cli.run.n) {
        eprintln!("error: --N must lie in [8, 512]");
        return ExitCode::from(EXIT_USAGE);
    }
    if !(1e-14..=1e-2).contains(&cli.run.tol) {
        eprintln!("error: --tol must lie in [1e-14, 1e-2]");
        return ExitCode::from(EXIT_USAGE);
    }
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

struct CmdError {
    code: u8,
    message: String,
}

impl CmdError {
    fn usage(msg: impl Into<String>) -> Self {
        CmdError {
            code: EXIT_USAGE,
            message: msg.into(),
        }
    }

    fn domain(msg: impl Into<String>) -> Self {
        CmdError {
            code: EXIT_DOMAIN,
            message: msg.into(),
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, CmdError> {
    match cli.command {
        Command::Classify {
            ref input,
            ref spec,
        } => cmd_classify(input, spec, &cli.run),
        Command::Synth { ref kind } => cmd_synth(kind, &cli.run),
        Command::Check {
            ref input,
            ref spec,
        } => cmd_check(input, spec, &cli.run),
        Command::Spectrum {
            ref input,
            ref spec,
        } => cmd_spectrum(input, spec, &cli.run),
        Command::Bbc { ref t, s, lambda } => cmd_bbc(t, s, lambda, &cli.run),
        Command::Verify => cmd_verify(&cli.run),
    }
}

fn load_input(input: &Option<String>, spec: &Option<String>) -> Result<String, CmdError> {
    match (input, spec) {
        (Some(_), Some(_)) => Err(CmdError::usage("pass inline JSON or --spec FILE, not both")),
        (Some(s), None) => Ok(s.clone()),
        (None, Some(path)) => fs::read_to_string(path)
            .map_err(|e| CmdError::usage(format!("cannot read {path}: {e}"))),
        (None, None) => Err(CmdError::usage(
            "missing input: pass inline JSON or --spec FILE",
        )),
    }
}

fn emit(payload: &str, run: &RunFlags) -> Result<(), CmdError> {
    println!("{payload}");
    if let Some(path) = &run.out {
        fs::write(path, format!("{payload}\n"))
            .map_err(|e| CmdError::domain(format!("cannot write {path}: {e}")))?;
    }
    Ok(())
}

fn opt_complex(v: Option<Complex64>) -> Value {
    match v {
        Some(z) => serial::complex_to_value(z),
        None => Value::Null,
    }
}

fn cmd_classify(
    input: &Option<String>,
    spec: &Option<String>,
    run: &RunFlags,
) -> Result<ExitCode, CmdError> {
    let text = load_input(input, spec)?;
    let value: Value =
        serde_json::from_str(&text).map_err(|e| CmdError::usage(format!("bad JSON: {e}")))?;
    let map = serial::mobius_from_value(&value)
        .ok_or_else(|| CmdError::usage("expected four [re,im] coefficient pairs"))?;
    let class = map
        .classify()
        .map_err(|e| CmdError::domain(e.to_string()))?;
    let payload = json!({
        "class": class.label(),
        "denjoy_wolff": opt_complex(class.denjoy_wolff()),
        "derivative": opt_complex(class.derivative()),
        "automorphism": class.is_automorphism(),
    });
    emit(&payload.to_string(), run)?;
    Ok(ExitCode::SUCCESS)
}

fn synth_pair(kind: &SynthKind) -> Result<LftWco, CmdError> {
    match kind {
        SynthKind::Unitary { phi, c } => {
            let phi = parse_phi_spec(phi).map_err(CmdError::usage)?;
            let c = parse_complex(c).map_err(CmdError::usage)?;
            unitary_pair(&phi, c).map_err(|e| CmdError::domain(e.to_string()))
        }
        SynthKind::NormalInterior { p, delta, gamma } => {
            let p = parse_complex(p).map_err(CmdError::usage)?;
            let delta = parse_complex(delta).map_err(CmdError::usage)?;
            let gamma = parse_complex(gamma).map_err(CmdError::usage)?;
            normal_pair_interior(p, delta, gamma).map_err(|e| CmdError::domain(e.to_string()))
        }
        SynthKind::NormalParabolic { t, rho } => {
            let t = parse_complex(t).map_err(CmdError::usage)?;
            let rho = parse_complex(rho).map_err(CmdError::usage)?;
            normal_pair_parabolic(t, rho).map_err(|e| CmdError::domain(e.to_string()))
        }
    }
}

fn cmd_synth(kind: &SynthKind, run: &RunFlags) -> Result<ExitCode, CmdError> {
    let pair = synth_pair(kind)?;
    let spec = pair
        .to_spec()
        .map_err(|e| CmdError::domain(e.to_string()))?;
    let (check_name, ok, report_value) = match kind {
        SynthKind::Unitary { .. } => {
            let rep =
                is_unitary(&spec, run.n, run.tol).map_err(|e| CmdError::domain(e.to_string()))?;
            let v = serde_json::to_value(&rep).expect("serializes");
            ("unitary", rep.holds(), v)
        }
        _ => {
            let rep =
                is_normal(&spec, run.n, run.tol).map_err(|e| CmdError::domain(e.to_string()))?;
            let v = serde_json::to_value(&rep).expect("serializes");
            ("normal", rep.is_normal(), v)
        }
    };
    let payload = json!({
        "pair": serial::lft_wco_to_value(&pair),
        "self_check": {
            "property": check_name,
            "passed": ok,
            "report": report_value,
        },
    });
    emit(&payload.to_string(), run)?;
    Ok(if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_CHECK_FAILED)
    })
}

fn parse_symbol(v: &Value, role: &str) -> Result<Symbol, CmdError> {
    let obj = v.as_object().ok_or_else(|| {
        CmdError::usage(format!(
            "{role}: expected {{\"lft\": ...}} or {{\"series\": ...}}"
        ))
    })?;
    if let Some(l) = obj.get("lft") {
        let m = serial::mobius_from_value(l)
            .ok_or_else(|| CmdError::usage(format!("{role}.lft: expected four [re,im] pairs")))?;
        return Ok(Symbol::Lft(m));
    }
    if let Some(s) = obj.get("series") {
        let coeffs = serial::taylor_from_value(s)
            .ok_or_else(|| CmdError::usage(format!("{role}.series: expected [re,im] pairs")))?;
        let t =
            TaylorPoly::new(coeffs).map_err(|e| CmdError::usage(format!("{role}.series: {e}")))?;
        return Ok(Symbol::Series(t));
    }
    Err(CmdError::usage(format!(
        "{role}: missing \"lft\" or \"series\" key"
    )))
}

fn parse_wco_spec(text: &str) -> Result<WcoSpec, CmdError> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| CmdError::usage(format!("bad JSON: {e}")))?;
    let psi = parse_symbol(
        value
            .get("psi")
            .ok_or_else(|| CmdError::usage("missing \"psi\""))?,
        "psi",
    )?;
    let phi = parse_symbol(
        value
            .get("phi")
            .ok_or_else(|| CmdError::usage("missing \"phi\""))?,
        "phi",
    )?;
    let both_lft = matches!((&psi, &phi), (Symbol::Lft(_), Symbol::Lft(_)));
    let mode = match value.get("mode").and_then(|m| m.as_str()) {
        Some("exact") => EqMode::Exact,
        Some("numeric") => EqMode::Numeric,
        Some(other) => return Err(CmdError::usage(format!("unknown mode {other:?}"))),
        None => {
            if both_lft {
                EqMode::Exact
            } else {
                EqMode::Numeric
            }
        }
    };
    WcoSpec::new(psi, phi, mode).map_err(|e| CmdError::domain(e.to_string()))
}

fn cmd_check(
    input: &Option<String>,
    spec: &Option<String>,
    run: &RunFlags,
) -> Result<ExitCode, CmdError> {
    let text = load_input(input, spec)?;
    let w = parse_wco_spec(&text)?;
    let rep = is_normal(&w, run.n, run.tol).map_err(|e| CmdError::domain(e.to_string()))?;
    emit(&rep.to_json(), run)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_spectrum(
    input: &Option<String>,
    spec: &Option<String>,
    run: &RunFlags,
) -> Result<ExitCode, CmdError> {
    let text = load_input(input, spec)?;
    let w = parse_wco_spec(&text)?;
    let mut eigs = section_eigenvalues(&w, run.n).map_err(|e| CmdError::domain(e.to_string()))?;
    sort_points(&mut eigs);
    let csv = serial::points_to_csv(&eigs);

    let exact_pair = match (w.psi(), w.phi()) {
        (Symbol::Lft(weight), Symbol::Lft(symbol)) => LftWco::new(*weight, *symbol).ok(),
        _ => None,
    };
    let prediction = exact_pair.as_ref().map(|p| match predict_spectrum(p) {
        Ok(pred) => Ok(pred),
        Err(SpectrumError::NotCertifiedNormal) => Err(()),
        Err(e) => {
            // construction was validated, so only certification can fail here
            debug_assert!(false, "unexpected prediction error: {e}");
            Err(())
        }
    });

    let (pred_value, hausdorff_value, pass) = match prediction {
        Some(Ok(SpectrumPrediction::KernelOrbit { gamma, delta })) => {
            let target = kernel_orbit_points(gamma, delta, run.n);
            let h = hausdorff(&eigs, &target).map_err(|e| CmdError::domain(e.to_string()))?;
            // eigenvalue convergence is only promised in the compact regime
            let compact = delta.norm() < 1.0;
            let pass = !compact || h < 1e-4;
            (
                json!({"kind": "kernel_orbit", "gamma": serial::complex_to_value(gamma), "delta": serial::complex_to_value(delta)}),
                json!(h),
                pass,
            )
        }
        Some(Ok(SpectrumPrediction::UnitCircle)) => {
            // sections of unitary pairs pollute; the prediction is validated
            // by the residual route (`bbc`), not by eigenvalue comparison
            (json!({"kind": "unit_circle"}), Value::Null, true)
        }
        Some(Ok(SpectrumPrediction::Unpredicted)) => {
            (json!({"kind": "unpredicted"}), Value::Null, true)
        }
        Some(Err(())) => (json!({"kind": "uncertified"}), Value::Null, true),
        None => (json!({"kind": "uncertified"}), Value::Null, true),
    };

    let report = json!({
        "prediction": pred_value,
        "N": run.n,
        "hausdorff": hausdorff_value,
        "pass": pass,
    });
    if run.format.as_deref() == Some("csv") {
        print!("{csv}");
        if let Some(path) = &run.out {
            fs::write(path, &csv)
                .map_err(|e| CmdError::domain(format!("cannot write {path}: {e}")))?;
        }
        eprintln!("{report}");
    } else {
        println!("{report}");
        if let Some(path) = &run.out {
            fs::write(path, &csv)
                .map_err(|e| CmdError::domain(format!("cannot write {path}: {e}")))?;
        } else {
            print!("{csv}");
        }
    }
    Ok(if pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_CHECK_FAILED)
    })
}

fn cmd_bbc(t: &str, s: f64, lambda: f64, run: &RunFlags) -> Result<ExitCode, CmdError> {
    let t = parse_complex(t).map_err(CmdError::usage)?;
    let rho = bbc_residual_sq(t, s).map_err(|e| CmdError::domain(e.to_string()))?;
    let (numeric, numeric_error) = match bbc_numeric_check(t, s, lambda, run.n.max(128)) {
        Ok(r) => (json!(r), Value::Null),
        Err(e) => (Value::Null, json!(e.to_string())),
    };
    let agrees = numeric.as_f64().map(|r| (r - rho.sqrt()).abs() <= 5e-3);
    let payload = json!({
        "t": serial::complex_to_value(t),
        "s": s,
        "lambda": lambda,
        "N": run.n.max(128),
        "closed_form_residual_sq": rho,
        "closed_form_residual": rho.sqrt(),
        "numeric_residual": numeric,
        "numeric_error": numeric_error,
        "agrees": agrees,
    });
    emit(&payload.to_string(), run)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(run: &RunFlags) -> Result<ExitCode, CmdError> {
    let results = run_battery(run.seed);
    let all = results.iter().all(|r| r.passed);
    if run.format.as_deref() == Some("json") {
        let rows: Vec<Value> = results
            .iter()
            .map(|r| json!({"name": r.name, "passed": r.passed, "detail": r.detail}))
            .collect();
        let payload = json!({
            "checks": rows,
            "passed": results.iter().filter(|r| r.passed).count(),
            "total": results.len(),
        });
        emit(&payload.to_string(), run)?;
    } else {
        let mut lines = String::new();
        for r in &results {
            lines.push_str(&format!(
                "{:<16} {}  {}\n",
                r.name,
                if r.passed { "pass" } else { "FAIL" },
                r.detail
            ));
        }
        lines.push_str(&format!(
            "{}/{} checks passed\n",
            results.iter().filter(|r| r.passed).count(),
            results.len()
        ));
        print!("{lines}");
        if let Some(path) = &run.out {
            fs::write(path, &lines)
                .map_err(|e| CmdError::domain(format!("cannot write {path}: {e}")))?;
        }
    }
    Ok(if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_CHECK_FAILED)
    })
}
