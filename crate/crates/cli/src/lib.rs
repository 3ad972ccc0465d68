//! The `dlpq` command line, as a library so tests can drive it in-process.

mod args;
mod commands;
mod verify;

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;
use dlpq_core::expr::{parse_element, ExprError};
use dlpq_core::scalar::scalar_from_json;
use dlpq_core::{AlgebraError, BigRational, ConjMask, Element, Scalar, Signature, Tolerance};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

pub use args::{Backend, Cli};

/// Exit statuses.
pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    Error,
    Warning,
    Note,
}

impl Level {
    fn as_str(self) -> &'static str {
        match self {
            Level::Error => "error",
            Level::Warning => "warning",
            Level::Note => "note",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Diagnostic {
    pub level: Level,
    pub code: String,
    pub message: String,
}

impl Diagnostic {
    pub fn new(level: Level, code: &str, message: impl Into<String>) -> Self {
        Self {
            level,
            code: code.to_string(),
            message: message.into(),
        }
    }

    fn to_json(&self) -> Value {
        json!({"level": self.level.as_str(), "code": self.code, "message": self.message})
    }
}

/// What a successful command produced.
#[derive(Debug)]
pub struct Report {
    pub text: String,
    pub result: Value,
    pub diagnostics: Vec<Diagnostic>,
    pub status: i32,
}

impl Report {
    pub fn ok(text: impl Into<String>, result: Value) -> Self {
        Self {
            text: text.into(),
            result,
            diagnostics: Vec::new(),
            status: EXIT_OK,
        }
    }
}

/// A failed command, with its exit status.
#[derive(Debug)]
pub struct Failure {
    pub status: i32,
    pub error: Diagnostic,
    pub notes: Vec<Diagnostic>,
}

impl Failure {
    pub fn usage(code: &str, message: impl Into<String>) -> Self {
        Self {
            status: EXIT_USAGE,
            error: Diagnostic::new(Level::Error, code, message),
            notes: Vec::new(),
        }
    }

    pub fn domain(code: &str, message: impl Into<String>) -> Self {
        Self {
            status: EXIT_DOMAIN,
            error: Diagnostic::new(Level::Error, code, message),
            notes: Vec::new(),
        }
    }
}

impl From<AlgebraError> for Failure {
    fn from(e: AlgebraError) -> Self {
        match e {
            AlgebraError::InvalidSignature { .. } | AlgebraError::CoefficientCount { .. } => {
                Failure::usage(e.code(), e.to_string())
            }
            _ => Failure::domain(e.code(), e.to_string()),
        }
    }
}

impl From<ExprError> for Failure {
    fn from(e: ExprError) -> Self {
        match e {
            ExprError::GeneratorOutOfRange { .. } => Failure::domain(e.code(), e.to_string()),
            _ => Failure::usage(e.code(), e.to_string()),
        }
    }
}

/// Settings shared by every command once argv is parsed.
pub struct Context {
    pub sig: Signature,
    pub tol: Tolerance,
}

/// Runs one invocation and returns the exit status. `args` includes the
/// program name.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    let outcome = match cli.global.backend {
        Backend::Float64 => execute::<f64>(&cli),
        Backend::Rational => execute::<BigRational>(&cli),
    };
    emit(&cli, outcome, out, err)
}

struct Outcome {
    input: Value,
    result: Result<Report, Failure>,
}

fn execute<S: Scalar>(cli: &Cli) -> Outcome {
    let mut input = json!({
        "backend": cli.global.backend.name(),
        "text": cli.command.input().text,
        "random_seed": cli.global.random,
        "conjugate": Value::Null,
        "element": Value::Null,
        "coefficients": Value::Null,
    });
    let result = prepare::<S>(cli, &mut input)
        .and_then(|(ctx, u)| commands::dispatch(&cli.command, &ctx, &u));
    Outcome { input, result }
}

fn prepare<S: Scalar>(cli: &Cli, input: &mut Value) -> Result<(Context, Element<S>), Failure> {
    let g = &cli.global;
    let sig_text = g
        .signature
        .as_deref()
        .ok_or_else(|| Failure::usage("USAGE", "--signature P,Q is required"))?;
    let sig: Signature = sig_text
        .parse()
        .map_err(|e: String| Failure::usage("INVALID_SIGNATURE", format!("--signature: {e}")))?;
    let tol = tolerance(cli)?;
    let text = cli.command.input().text.as_deref();
    let mut u: Element<S> = match (text, g.random) {
        (Some(_), Some(_)) => {
            return Err(Failure::usage(
                "USAGE",
                "give either INPUT or --random, not both",
            ))
        }
        (None, None) => return Err(Failure::usage("USAGE", "missing INPUT (or --random SEED)")),
        (None, Some(seed)) => random_element(sig, seed),
        (Some(t), None) => read_element(t, sig)?,
    };
    if let Some(list) = &g.conjugate {
        let mask = parse_conjugate(list, sig)?;
        input["conjugate"] = json!(mask.generators());
        u = u.conjugate(mask)?;
    }
    input["element"] = Value::String(u.to_string());
    input["coefficients"] = coeffs_json(&u);
    Ok((Context { sig, tol }, u))
}

fn tolerance(cli: &Cli) -> Result<Tolerance, Failure> {
    let g = &cli.global;
    let mut tol = Tolerance::default();
    for (name, value, slot) in [
        ("--tol-equality", g.tol_equality, &mut tol.equality),
        ("--tol-singular", g.tol_singular, &mut tol.singular),
        ("--tol-grade-leak", g.tol_grade_leak, &mut tol.grade_leak),
        ("--tol-witness", g.tol_witness, &mut tol.witness),
    ] {
        if let Some(v) = value {
            if !(v.is_finite() && v > 0.0) {
                return Err(Failure::usage(
                    "USAGE",
                    format!("{name} must be a positive number, got {v}"),
                ));
            }
            *slot = v;
        }
    }
    Ok(tol)
}

/// Floats uniform in `[-1, 1)`; rationals `a/b` with `|a| <= 9`, `1 <= b <= 9`.
fn random_element<S: Scalar>(sig: Signature, seed: u64) -> Element<S> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if S::EXACT {
        dlpq_core::sample::random_rational(sig, &mut rng, 9, 9).convert(S::from_rational)
    } else {
        dlpq_core::sample::random_float(sig, &mut rng)
            .convert(|x| S::from_rational(&BigRational::from_float(*x).expect("finite sample")))
    }
}

/// A JSON coefficient array (first non-blank character `[`) or an expression.
pub fn read_element<S: Scalar>(text: &str, sig: Signature) -> Result<Element<S>, Failure> {
    if !text.trim_start().starts_with('[') {
        return Ok(parse_element(text, sig)?);
    }
    let value: Value = serde_json::from_str(text).map_err(|e| {
        Failure::usage(
            "SYNTAX_ERROR",
            format!("SYNTAX_ERROR: coefficient array: {e}"),
        )
    })?;
    let items = value
        .as_array()
        .ok_or_else(|| Failure::usage("SYNTAX_ERROR", "SYNTAX_ERROR: expected a JSON array"))?;
    let coeffs = items
        .iter()
        .enumerate()
        .map(|(i, v)| {
            scalar_from_json::<S>(v).ok_or_else(|| {
                Failure::usage(
                    "SYNTAX_ERROR",
                    format!("SYNTAX_ERROR: coefficient {i} is not a number: {v}"),
                )
            })
        })
        .collect::<Result<Vec<S>, _>>()?;
    Ok(Element::from_coeffs(sig, coeffs)?)
}

/// `"1,3"` (or `"{1,3}"`, or empty for the identity) to a mask.
fn parse_conjugate(list: &str, sig: Signature) -> Result<ConjMask, Failure> {
    let body = list.trim().trim_start_matches('{').trim_end_matches('}');
    let mut gens = Vec::new();
    for part in body.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let part = part.strip_prefix('e').unwrap_or(part);
        let g: usize = part
            .parse()
            .map_err(|_| Failure::usage("USAGE", format!("--conjugate: bad generator {part:?}")))?;
        if g == 0 || g > sig.n() {
            return Err(AlgebraError::GeneratorOutOfRange {
                index: g,
                n: sig.n(),
            }
            .into());
        }
        gens.push(g);
    }
    Ok(ConjMask::from_generators(&gens))
}

pub(crate) fn coeffs_json<S: Scalar>(u: &Element<S>) -> Value {
    Value::Array(u.coeffs().iter().map(Scalar::to_json).collect())
}

fn emit(cli: &Cli, outcome: Outcome, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let command = cli.command.name();
    let signature = cli
        .global
        .signature
        .as_deref()
        .map(|t| match t.parse::<Signature>() {
            Ok(sig) => sig.to_string(),
            Err(_) => t.to_string(),
        });
    let (status, result, diagnostics) = match outcome.result {
        Ok(report) => {
            if !cli.global.json {
                let _ = write!(out, "{}", report.text);
                if !report.text.is_empty() && !report.text.ends_with('\n') {
                    let _ = writeln!(out);
                }
            }
            (report.status, report.result, report.diagnostics)
        }
        Err(failure) => {
            let mut diags = vec![failure.error];
            diags.extend(failure.notes);
            (failure.status, Value::Null, diags)
        }
    };
    for d in &diagnostics {
        let _ = writeln!(err, "{}: {}", d.level.as_str(), d.message);
    }
    if cli.global.json {
        let doc = json!({
            "command": command,
            "signature": signature,
            "input": outcome.input,
            "result": result,
            "diagnostics": diagnostics.iter().map(Diagnostic::to_json).collect::<Vec<_>>(),
        });
        let _ = writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&doc).expect("serializable")
        );
    }
    status
}
