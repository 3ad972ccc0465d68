//! `dlpq verify`: invariant checks on one element.

use dlpq_core::char_ops;
use dlpq_core::matrix_rep;
use dlpq_core::zero_divisor;
use dlpq_core::{AlgebraError, BigRational, ConjMask, Element, Scalar, Signature};
use serde_json::{json, Value};

use crate::args::Suite;
use crate::{Context, Report, EXIT_DOMAIN, EXIT_OK};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
    Skip,
}

impl Outcome {
    fn as_str(self) -> &'static str {
        match self {
            Outcome::Pass => "PASS",
            Outcome::Fail => "FAIL",
            Outcome::Skip => "SKIP",
        }
    }
}

pub struct Check {
    pub name: String,
    pub outcome: Outcome,
    pub detail: String,
}

#[derive(Default)]
struct Checks {
    list: Vec<Check>,
    /// Informational lines printed before the summary.
    info: Vec<(String, String)>,
}

impl Checks {
    fn push(&mut self, name: &str, ok: bool, detail: impl Into<String>) {
        self.list.push(Check {
            name: name.to_string(),
            outcome: if ok { Outcome::Pass } else { Outcome::Fail },
            detail: detail.into(),
        });
    }

    fn skip(&mut self, name: &str, reason: impl Into<String>) {
        self.list.push(Check {
            name: name.to_string(),
            outcome: Outcome::Skip,
            detail: reason.into(),
        });
    }
}

/// Masks a suite iterates over: all of them up to 64, else 64 spread evenly
/// plus the full mask.
fn masks(sig: Signature) -> Vec<ConjMask> {
    let dim = sig.dim() as u32;
    if dim <= 64 {
        return ConjMask::all(sig).collect();
    }
    let step = dim / 64;
    let mut v: Vec<ConjMask> = (0..64).map(|i| ConjMask::new(i * step)).collect();
    v.push(ConjMask::new(sig.full_mask()));
    v
}

fn close<S: Scalar>(a: &S, b: &S, rel: f64) -> bool {
    if S::EXACT {
        return a == b;
    }
    let d = (a.clone() - b.clone()).magnitude();
    d <= rel * a.magnitude().max(b.magnitude())
}

fn elem_close<S: Scalar>(a: &Element<S>, b: &Element<S>, rel: f64) -> bool {
    a.approx_eq(b, rel)
}

/// Max-norm of `x` relative to `scale` (exactly zero or not, on exact backends).
fn small<S: Scalar>(x: &Element<S>, scale: f64, rel: f64) -> bool {
    if S::EXACT {
        x.is_zero()
    } else {
        x.max_norm() <= rel * scale.max(1.0)
    }
}

pub fn run<S: Scalar>(ctx: &Context, u: &Element<S>, suite: Suite) -> Report {
    let mut checks = Checks::default();
    let all = suite == Suite::All;
    if all || suite == Suite::Conjugation {
        conjugation(ctx, u, &mut checks);
    }
    if all || suite == Suite::Trace {
        trace(ctx, u, &mut checks);
    }
    if all || suite == Suite::Det {
        det(ctx, u, &mut checks);
    }
    if all || suite == Suite::Charpoly {
        charpoly(ctx, u, &mut checks);
    }
    if all || suite == Suite::Inverse {
        inverse(ctx, u, &mut checks);
    }
    if all || suite == Suite::ZeroDivisor {
        zero_divisors(ctx, u, &mut checks);
    }
    render(suite, checks)
}

fn render(suite: Suite, checks: Checks) -> Report {
    let count = |o: Outcome| checks.list.iter().filter(|c| c.outcome == o).count();
    let (passed, failed, skipped) = (
        count(Outcome::Pass),
        count(Outcome::Fail),
        count(Outcome::Skip),
    );
    let width = checks.list.iter().map(|c| c.name.len()).max().unwrap_or(0);
    let mut text = String::new();
    for (key, value) in &checks.info {
        text.push_str(&format!("{key}: {value}\n"));
    }
    for c in &checks.list {
        text.push_str(&format!(
            "{}  {:width$}  {}\n",
            c.outcome.as_str(),
            c.name,
            c.detail
        ));
    }
    text.push_str(&format!(
        "summary: {passed} passed, {failed} failed, {skipped} skipped\n"
    ));
    let info: serde_json::Map<String, Value> = checks
        .info
        .iter()
        .map(|(k, v)| (k.clone(), Value::String(v.clone())))
        .collect();
    let result = json!({
        "suite": suite.name(),
        "passed": failed == 0,
        "info": info,
        "checks": checks.list.iter().map(|c| json!({
            "name": c.name,
            "outcome": c.outcome.as_str(),
            "detail": c.detail,
        })).collect::<Vec<_>>(),
    });
    let mut report = Report::ok(text, result);
    report.status = if failed == 0 { EXIT_OK } else { EXIT_DOMAIN };
    report
}

fn conjugation<S: Scalar>(ctx: &Context, u: &Element<S>, out: &mut Checks) {
    let sig = u.signature();
    let ms = masks(sig);
    let rel = ctx.tol.equality;
    // second operand and scalars for the two-argument laws
    let v = u
        .conjugate(ConjMask::new(sig.full_mask()))
        .expect("full mask")
        .add_scalar(&S::one());
    let a = S::from_i64(3);
    let b = S::from_rational(&BigRational::new((-1).into(), 2.into()));
    let conj = |x: &Element<S>, m: ConjMask| x.conjugate(m).expect("mask in range");

    let ok = ms.iter().all(|&m| conj(&conj(u, m), m) == *u);
    out.push("conjugation.involution", ok, format!("{} masks", ms.len()));

    let lin = &u.scale(&a) + &v.scale(&b);
    let ok = ms.iter().all(|&m| {
        elem_close(
            &conj(&lin, m),
            &(&conj(u, m).scale(&a) + &conj(&v, m).scale(&b)),
            rel,
        )
    });
    out.push("conjugation.linearity", ok, format!("{} masks", ms.len()));

    let pairs: Vec<(ConjMask, ConjMask)> = ms
        .iter()
        .flat_map(|&x| ms.iter().map(move |&y| (x, y)))
        .take(4096)
        .collect();
    let ok = pairs.iter().all(|&(x, y)| {
        let xy = conj(&conj(u, x), y);
        xy == conj(&conj(u, y), x) && xy == conj(u, x.compose(y))
    });
    out.push(
        "conjugation.commuting",
        ok,
        format!("{} pairs", pairs.len()),
    );

    if sig.dim() <= 1024 {
        let uv = u * &v;
        let ok = ms
            .iter()
            .all(|&m| elem_close(&conj(&uv, m), &(&conj(u, m) * &conj(&v, m)), rel));
        out.push(
            "conjugation.multiplicative",
            ok,
            format!("{} masks", ms.len()),
        );
    } else {
        out.skip("conjugation.multiplicative", "n > 10");
    }
}

fn trace<S: Scalar>(ctx: &Context, u: &Element<S>, out: &mut Checks) {
    let t = char_ops::trace(u);
    out.info.push(("trace".into(), t.to_string()));
    let by_conj = char_ops::trace_by_conjugates(u);
    let ok = elem_close(
        &by_conj,
        &Element::from_scalar(u.signature(), t.clone()),
        ctx.tol.equality,
    );
    out.push(
        "trace.conjugate_sum",
        ok,
        "sum of all conjugates is the scalar Tr(U)",
    );
    if u.signature().n() <= crate::commands::MATRIX_MAX_N {
        let ok = close(&matrix_rep::oracle_trace(u), &t, ctx.tol.equality);
        out.push("trace.matrix", ok, "N <U>_0 equals the matrix trace");
    } else {
        out.skip("trace.matrix", "n > 10");
    }
}

/// Whether the FL recursion is run for this backend and size.
fn fl_supported<S: Scalar>(n: usize) -> Result<(), &'static str> {
    match (S::EXACT, n) {
        (true, 0..=4) | (false, 0..=7) => Ok(()),
        (true, _) => Err("exact FL is too slow above n = 4"),
        (false, _) => Err("octuple-precision FL is too slow above n = 7"),
    }
}

fn det<S: Scalar>(ctx: &Context, u: &Element<S>, out: &mut Checks) {
    let n = u.signature().n();
    let rel = ctx.tol.equality;
    let d = char_ops::det_recursive(u);
    out.info.push(("det".into(), d.to_string()));
    if n <= 8 {
        match char_ops::det_full_product_with(u, &ctx.tol) {
            Ok(p) => out.push("det.full_product", close(&p, &d, rel), format!("{p}")),
            Err(e) => out.push("det.full_product", false, e.to_string()),
        }
    } else {
        out.skip("det.full_product", "n > 8");
    }
    match fl_supported::<S>(n) {
        Ok(()) => {
            let f = char_ops::charpoly_fl(u).det;
            out.push("det.faddeev_leverrier", close(&f, &d, rel), format!("{f}"));
        }
        Err(why) => out.skip("det.faddeev_leverrier", why),
    }
    let matrix_max = if S::EXACT { 6 } else { 8 };
    if n <= matrix_max {
        let m = matrix_rep::oracle_det(u);
        out.push("det.matrix", close(&m, &d, rel), format!("{m}"));
    } else {
        out.skip("det.matrix", format!("n > {matrix_max}"));
    }
    let ms = masks(u.signature());
    let ok = ms.iter().all(|&m| {
        close(
            &char_ops::det_recursive(&u.conjugate(m).expect("mask in range")),
            &d,
            rel,
        )
    });
    out.push(
        "det.conjugate_invariance",
        ok,
        format!("{} masks", ms.len()),
    );
}

fn charpoly<S: Scalar>(ctx: &Context, u: &Element<S>, out: &mut Checks) {
    let sig = u.signature();
    let n = sig.n();
    if n > 6 {
        out.skip("charpoly", "charpoly checks are limited to n <= 6");
        return;
    }
    let rel = ctx.tol.equality;
    let psi = char_ops::charpoly_recursive(u);
    out.info.push(("charpoly".into(), psi.to_string()));
    if !S::EXACT || n <= 4 {
        match char_ops::charpoly_symmetric_with(u, &ctx.tol) {
            Ok(p) => out.push(
                "charpoly.symmetric",
                p.approx_eq(&psi, rel),
                "product expansion gives the same coefficients",
            ),
            Err(e) => out.push("charpoly.symmetric", false, e.to_string()),
        }
    } else {
        out.skip(
            "charpoly.symmetric",
            "exact product expansion is too slow above n = 4",
        );
    }
    let big_n = sig.dim();
    out.push(
        "charpoly.constant_is_det",
        close(psi.constant(), &char_ops::det_recursive(u), rel),
        "c_0 = Det(U)",
    );
    out.push(
        "charpoly.trace",
        close(&psi.coeffs()[big_n - 1], &-char_ops::trace(u), rel),
        "c_{N-1} = -Tr(U)",
    );
    match fl_supported::<S>(n) {
        Ok(()) => out.push(
            "charpoly.faddeev_leverrier",
            char_ops::charpoly_fl(u).charpoly.approx_eq(&psi, rel),
            "FL recursion gives the same coefficients",
        ),
        Err(why) => out.skip("charpoly.faddeev_leverrier", why),
    }
    let matrix_max = if S::EXACT { 4 } else { 5 };
    if n <= matrix_max {
        out.push(
            "charpoly.matrix",
            matrix_rep::oracle_charpoly(u).approx_eq(&psi, rel),
            "matches det(M - λI)",
        );
    } else {
        out.skip("charpoly.matrix", format!("n > {matrix_max}"));
    }
    // exact Horner evaluation of a degree-2^n polynomial is costly
    let ms = if S::EXACT && n >= 5 {
        vec![ConjMask::IDENTITY, ConjMask::new(sig.full_mask())]
    } else {
        masks(sig)
    };
    let bound = |x: &Element<S>| {
        let norm = x.l1_norm();
        psi.coeffs()
            .iter()
            .enumerate()
            .map(|(k, c)| c.magnitude() * norm.powi(k as i32))
            .sum::<f64>()
    };
    let ok = ms.iter().all(|&m| {
        let x = u.conjugate(m).expect("mask in range");
        small(&psi.evaluate(&x), bound(&x), rel)
    });
    out.push(
        "charpoly.cayley_hamilton",
        ok,
        format!("ψ(U^(A)) = 0 for {} masks", ms.len()),
    );
}

fn inverse<S: Scalar>(ctx: &Context, u: &Element<S>, out: &mut Checks) {
    let sig = u.signature();
    let rel = ctx.tol.equality;
    match char_ops::inverse_with(u, &ctx.tol) {
        Ok(inv) => {
            let one = Element::one(sig);
            out.push(
                "inverse.round_trip",
                elem_close(&(u * &inv), &one, rel),
                "U * U^-1 = 1",
            );
            let adj = char_ops::adjoint_recursive(u);
            let d = char_ops::det_recursive(u);
            out.push(
                "inverse.adjoint",
                elem_close(&(u * &adj), &Element::from_scalar(sig, d), rel),
                "U * Adj(U) = Det(U)",
            );
            let ms = masks(sig);
            let ok = ms.iter().all(|&m| {
                matches!(
                    char_ops::inverse_of_conjugate_check_with(u, m, &ctx.tol),
                    Ok(true)
                )
            });
            out.push(
                "inverse.conjugate",
                ok,
                format!("(U^(A))^-1 = (U^-1)^(A) for {} masks", ms.len()),
            );
        }
        Err(AlgebraError::NotInvertible { det }) => {
            out.push(
                "inverse.not_invertible",
                true,
                format!("NOT_INVERTIBLE branch taken: det = {det}"),
            );
            match zero_divisor::classify_with(u, &ctx.tol) {
                Ok(r) => {
                    let ok = r
                        .witness
                        .as_ref()
                        .is_some_and(|v| zero_divisor::verify_witness(u, v, &ctx.tol));
                    out.push(
                        "inverse.singular_witness",
                        ok,
                        "a verified witness V with UV = 0 exists",
                    );
                }
                Err(e) => out.push("inverse.singular_witness", u.is_zero(), e.to_string()),
            }
        }
        Err(e) => out.push("inverse", false, e.to_string()),
    }
}

fn zero_divisors<S: Scalar>(ctx: &Context, u: &Element<S>, out: &mut Checks) {
    if u.is_zero() {
        out.skip("zero_divisor", "zero element");
        return;
    }
    let report = match zero_divisor::classify_with(u, &ctx.tol) {
        Ok(r) => r,
        Err(e) => {
            out.push("zero_divisor.classify", false, e.to_string());
            return;
        }
    };
    out.info.push((
        "classification".into(),
        if report.is_unit {
            "unit"
        } else {
            "zero divisor"
        }
        .into(),
    ));
    if let Some(v) = &report.witness {
        out.push(
            "zero_divisor.witness",
            zero_divisor::verify_witness(u, v, &ctx.tol),
            "V != 0 and U * V = 0",
        );
    } else if !report.is_unit {
        out.push(
            "zero_divisor.witness",
            false,
            "singular but no verified witness",
        );
    }
    out.push(
        "zero_divisor.predicate",
        zero_divisor::is_zero_divisor_with(u, &ctx.tol) == !report.is_unit,
        "is_zero_divisor agrees with classify",
    );
    if u.signature().n() <= 8 {
        let kernel = matrix_rep::kernel_witness_with(u, ctx.tol.singular).is_some();
        out.push(
            "zero_divisor.kernel",
            kernel == !report.is_unit,
            "matrix kernel is nontrivial iff U is a zero divisor",
        );
    } else {
        out.skip("zero_divisor.kernel", "n > 8");
    }
}
