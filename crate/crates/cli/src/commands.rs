use dlpq_core::char_ops::{self, CharPoly};
use dlpq_core::expr::format_element;
use dlpq_core::matrix_rep::{self, RepMatrix};
use dlpq_core::zero_divisor::{self, WitnessReport};
use dlpq_core::{AlgebraError, Element, Scalar};
use serde_json::{json, Value};

use crate::args::{AdjointMethod, CharpolyMethod, Command, DetMethod, MatrixFormat};
use crate::{coeffs_json, verify, Context, Diagnostic, Failure, Level, Report};

/// Largest `n` for which the `2^n x 2^n` matrix is built.
pub const MATRIX_MAX_N: usize = 10;
/// Largest `n` for the matrix characteristic polynomial.
pub const MATRIX_CHARPOLY_MAX_N: usize = 6;

pub fn dispatch<S: Scalar>(
    cmd: &Command,
    ctx: &Context,
    u: &Element<S>,
) -> Result<Report, Failure> {
    match cmd {
        Command::Eval(_) => Ok(element_report(u)),
        Command::Det { method, .. } => det(ctx, u, *method),
        Command::Trace(_) => Ok(scalar_report(char_ops::trace(u), "trace")),
        Command::Charpoly { method, .. } => charpoly(ctx, u, *method),
        Command::Adjoint { method, .. } => Ok(element_report(&match method {
            AdjointMethod::Recursive => char_ops::adjoint_recursive(u),
            AdjointMethod::Product => char_ops::adjoint(u),
            AdjointMethod::Fl => char_ops::charpoly_fl(u).adjoint,
        })),
        Command::Inverse(_) => inverse(ctx, u),
        Command::Matrix { format, .. } => matrix(ctx, u, *format),
        Command::Witness(_) => witness(ctx, u),
        Command::Verify { suite, .. } => Ok(verify::run(ctx, u, *suite)),
    }
}

fn element_report<S: Scalar>(u: &Element<S>) -> Report {
    let text = format_element(u);
    let mut report = Report::ok(
        text.clone(),
        json!({"element": text, "coefficients": coeffs_json(u)}),
    );
    if u.coeffs().iter().any(|c| !c.magnitude().is_finite()) {
        report.diagnostics.push(overflow_warning());
    }
    report
}

fn scalar_report<S: Scalar>(value: S, method: &str) -> Report {
    let text = value.to_string();
    let mut report = Report::ok(
        text.clone(),
        json!({"value": value.to_json(), "text": text, "method": method}),
    );
    if !value.magnitude().is_finite() {
        report.diagnostics.push(overflow_warning());
    }
    report
}

fn overflow_warning() -> Diagnostic {
    Diagnostic::new(
        Level::Warning,
        "FLOAT_OVERFLOW",
        "result exceeds the float64 range; --backend rational gives the exact value",
    )
}

fn require_matrix(ctx: &Context, max_n: usize) -> Result<(), Failure> {
    if ctx.sig.n() > max_n {
        return Err(Failure::usage(
            "MATRIX_TOO_LARGE",
            format!(
                "MATRIX_TOO_LARGE: this matrix method is limited to n <= {max_n} (got n = {})",
                ctx.sig.n()
            ),
        ));
    }
    Ok(())
}

fn det<S: Scalar>(ctx: &Context, u: &Element<S>, method: DetMethod) -> Result<Report, Failure> {
    let (value, name) = match method {
        DetMethod::Recursive => (char_ops::det_recursive(u), "recursive"),
        DetMethod::Product => (char_ops::det_full_product_with(u, &ctx.tol)?, "product"),
        DetMethod::Fl => (char_ops::charpoly_fl(u).det, "fl"),
        DetMethod::Matrix => {
            require_matrix(ctx, MATRIX_MAX_N)?;
            (matrix_rep::oracle_det(u), "matrix")
        }
    };
    Ok(scalar_report(value, name))
}

fn charpoly<S: Scalar>(
    ctx: &Context,
    u: &Element<S>,
    method: CharpolyMethod,
) -> Result<Report, Failure> {
    let (poly, name): (CharPoly<S>, _) = match method {
        CharpolyMethod::Recursive => (char_ops::charpoly_recursive(u), "recursive"),
        CharpolyMethod::Symmetric => (char_ops::charpoly_symmetric_with(u, &ctx.tol)?, "symmetric"),
        CharpolyMethod::Fl => (char_ops::charpoly_fl(u).charpoly, "fl"),
        CharpolyMethod::Matrix => {
            require_matrix(ctx, MATRIX_CHARPOLY_MAX_N)?;
            (matrix_rep::oracle_charpoly(u), "matrix")
        }
    };
    let text = poly.to_string();
    Ok(Report::ok(
        text.clone(),
        json!({"coefficients": poly.to_json(), "text": text, "method": name}),
    ))
}

fn inverse<S: Scalar>(ctx: &Context, u: &Element<S>) -> Result<Report, Failure> {
    match char_ops::inverse_with(u, &ctx.tol) {
        Ok(inv) => Ok(element_report(&inv)),
        Err(e @ AlgebraError::NotInvertible { .. }) => {
            let mut failure = Failure::from(e);
            failure.notes.push(witness_hint(ctx, u));
            Err(failure)
        }
        Err(e) => Err(e.into()),
    }
}

fn witness_hint<S: Scalar>(ctx: &Context, u: &Element<S>) -> Diagnostic {
    let message = match zero_divisor::classify_with(u, &ctx.tol) {
        Ok(WitnessReport {
            witness: Some(v), ..
        }) => format!(
            "U is a zero divisor: U * ({}) = 0; `dlpq witness` prints the full report",
            format_element(&v)
        ),
        Ok(_) => {
            "U is numerically singular but no witness passed verification; try --backend rational"
                .to_string()
        }
        Err(e) => e.to_string(),
    };
    Diagnostic::new(Level::Note, "WITNESS_HINT", message)
}

fn matrix<S: Scalar>(
    ctx: &Context,
    u: &Element<S>,
    format: MatrixFormat,
) -> Result<Report, Failure> {
    require_matrix(ctx, MATRIX_MAX_N)?;
    let m = matrix_rep::represent(u);
    let text = match format {
        MatrixFormat::Pretty => pretty_matrix(&m),
        MatrixFormat::Csv => m.to_csv(),
        MatrixFormat::Json => m.to_json().to_string(),
    };
    Ok(Report::ok(
        text,
        json!({"dim": m.dim(), "rows": m.to_json()}),
    ))
}

/// Right-aligned columns separated by two spaces.
fn pretty_matrix<S: Scalar>(m: &RepMatrix<S>) -> String {
    let cells: Vec<Vec<String>> = m
        .rows()
        .map(|r| r.iter().map(|c| c.to_string()).collect())
        .collect();
    let width = cells
        .iter()
        .flatten()
        .map(|c| c.chars().count())
        .max()
        .unwrap_or(1);
    let mut out = String::new();
    for row in cells {
        let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
        out.push_str(&line.join("  "));
        out.push('\n');
    }
    out
}

fn witness<S: Scalar>(ctx: &Context, u: &Element<S>) -> Result<Report, Failure> {
    let report = zero_divisor::classify_with(u, &ctx.tol)?;
    let mut text = String::new();
    let mut result = report.to_json();
    if report.is_unit {
        text.push_str(&format!("unit\ndet: {}\n", report.det));
    } else {
        text.push_str(&format!("zero divisor\ndet: {}\n", report.det));
        if let Some(v) = &report.witness {
            let path: Vec<String> = report.witness_path.iter().map(|m| m.to_string()).collect();
            text.push_str(&format!("witness: {}\n", format_element(v)));
            if !path.is_empty() {
                text.push_str(&format!("path: {}\n", path.join(" ")));
            }
            if let Some(m) = report.method {
                text.push_str(&format!("method: {}\n", m.as_str()));
            }
            result["witness_text"] = Value::String(format_element(v));
        }
    }
    let mut out = Report::ok(text, result);
    if !report.is_unit && report.witness.is_none() {
        out.diagnostics.push(Diagnostic::new(
            Level::Warning,
            "NO_WITNESS",
            "singular within tolerance but no witness passed verification; try --backend rational",
        ));
    }
    Ok(out)
}
