//! Command execution: every command produces a list of records.

use crate::args::*;
use crate::config;
use crate::input::{format_complex_list, format_real_list, Inputs};
use crate::record::{emit, OutputRecord};
use besselsum::anger::{alt_harmonic_closed, anger_est, averaged_harmonic_sum, gbf_12, plain_harmonic_closed};
use besselsum::appendix::{
    bound_check, gap_asymptotic, gap_coefficient_richardson, riemann_expansion_check, theta_grid, GAP_COEFFICIENT,
};
use besselsum::complex::mixed_error;
use besselsum::kernels::{bessel_j, bessel_j_with, bessel_product_integral, cosine_integral, gamma_complex};
use besselsum::lnsum::*;
use besselsum::qubit::{
    rate_closed, rate_direct, rate_multitone, rate_multitone_direct, sweep, Method, QubitParams, SweepParameter,
    SweepSpec,
};
use besselsum::tail::SumOutcome;
use besselsum::{Error, ModulationCoefficients, QuadratureSpec, SeriesConfig, TruncationSpec};
use clap::Parser;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;
use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::time::Instant;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_NUMERICAL: i32 = 2;

/// A failure detected before any evaluation.
#[derive(Debug)]
pub struct UsageError(pub String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

/// Result of one evaluation.
struct Eval {
    value: Complex64,
    reference: Option<Complex64>,
    /// Defaults to `|value - reference|` when absent.
    est_error: Option<f64>,
    method: String,
    /// Set when the value is computed but fails a check.
    mismatch: Option<String>,
}

impl Eval {
    fn new(value: Complex64, method: impl Into<String>) -> Eval {
        Eval { value, reference: None, est_error: None, method: method.into(), mismatch: None }
    }

    fn reference(mut self, r: Complex64) -> Eval {
        self.reference = Some(r);
        self
    }

    fn est(mut self, e: f64) -> Eval {
        self.est_error = Some(e);
        self
    }
}

fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

/// Outcome class of a record, for the exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Status {
    Ok,
    Usage,
    Numerical,
}

struct Ctx {
    timing: bool,
    quad: QuadratureSpec,
    trunc: TruncationSpec,
    records: Vec<OutputRecord>,
    status: Status,
}

impl Ctx {
    fn push(&mut self, command: &str, target: &str, inputs: &Inputs, method: &str, f: impl FnOnce() -> Result<Eval, Error>) {
        let start = Instant::now();
        let out = f();
        let ms = if self.timing { start.elapsed().as_secs_f64() * 1e3 } else { 0.0 };
        let mut rec = OutputRecord {
            command: command.into(),
            target: target.into(),
            inputs: inputs.render(),
            value_re: None,
            value_im: None,
            reference_re: None,
            reference_im: None,
            method: method.into(),
            est_error: None,
            wall_time_ms: ms,
            error: None,
        };
        match out {
            Ok(e) => {
                rec.value_re = finite(e.value.re);
                rec.value_im = finite(e.value.im);
                rec.reference_re = e.reference.and_then(|r| finite(r.re));
                rec.reference_im = e.reference.and_then(|r| finite(r.im));
                rec.est_error = e.est_error.or(e.reference.map(|r| (e.value - r).norm())).and_then(finite).map(f64::abs);
                rec.method = e.method;
                if let Some(m) = e.mismatch {
                    rec.error = Some(m);
                    self.status = self.status.max(Status::Numerical);
                }
            }
            Err(err) => {
                rec.error = Some(err.to_string());
                let s = if err.is_numerical() { Status::Numerical } else { Status::Usage };
                self.status = self.status.max(s);
            }
        }
        self.records.push(rec);
    }
}

fn quad_spec(n: &NumericsArgs) -> Result<QuadratureSpec, UsageError> {
    let mut q = QuadratureSpec::default();
    if let Some(v) = n.quad_nodes {
        q.nodes_1d = v;
    }
    if let Some(v) = n.quad_panels {
        q.panels_2d = v;
    }
    if let Some(v) = n.quad_order {
        q.order = v;
    }
    if let Some(v) = n.quad_tol {
        q.tol = v;
    }
    q.validate()?;
    Ok(q)
}

fn trunc_spec(n: &NumericsArgs) -> Result<TruncationSpec, UsageError> {
    let mut t = TruncationSpec::default();
    if let Some(v) = n.n_max {
        t.n_max = v;
    }
    if let Some(v) = n.tail_tol {
        t.tail_tol = v;
    }
    if let Some(v) = n.stall_count {
        t.stall_count = v;
    }
    t.fit_cap = n.fit_cap.unwrap_or(t.fit_cap.max(t.n_max));
    t.extrapolate = !n.no_extrapolate;
    t.validate()?;
    Ok(t)
}

fn mods(t: &ToneArgs) -> Result<ModulationCoefficients, UsageError> {
    Ok(ModulationCoefficients::padded(t.x.0.clone(), t.y.0.clone())?)
}

fn tone_inputs(i: Inputs, t: &ToneArgs) -> Inputs {
    i.with("x", format_complex_list(&t.x.0)).with("y", format_complex_list(&t.y.0))
}

fn outcome_method(o: &SumOutcome) -> String {
    let m = match o.method {
        besselsum::tail::SumMethod::Truncated => "truncated",
        besselsum::tail::SumMethod::Extrapolated => "extrapolated",
    };
    format!("{m}:n={}", o.n_used)
}

/// Closed form, brute-force oracle, or the closed form checked against the oracle.
fn sum_eval(
    method: SumMethod,
    closed: impl FnOnce() -> Result<Complex64, Error>,
    oracle: impl FnOnce() -> Result<SumOutcome, Error>,
) -> Result<Eval, Error> {
    match method {
        SumMethod::Closed => Ok(Eval::new(closed()?, "closed")),
        SumMethod::Oracle => {
            let o = oracle()?;
            Ok(Eval::new(o.value, format!("oracle:{}", outcome_method(&o))).est(o.est_error))
        }
        SumMethod::Both => {
            let c = closed()?;
            let o = oracle()?;
            Ok(Eval::new(c, format!("closed-vs-oracle:{}", outcome_method(&o))).reference(o.value))
        }
    }
}

fn ln_inputs(ln: &LnArgs) -> Inputs {
    Inputs::new().c("alpha", ln.alpha).c("beta", ln.beta).r("gamma", ln.gamma).c("mu", ln.mu)
}

fn qubit_params(q: &QubitArgs) -> QubitParams {
    QubitParams {
        delta: q.delta,
        gamma2: q.gamma2,
        epsilon: q.epsilon,
        omega: q.omega,
        a_tones: q.a.0.clone(),
        b_tones: q.b.0.clone(),
    }
}

fn qubit_inputs(q: &QubitArgs) -> Inputs {
    Inputs::new()
        .r("delta", q.delta)
        .r("gamma2", q.gamma2)
        .r("epsilon", q.epsilon)
        .r("omega", q.omega)
        .with("a", format_real_list(&q.a.0))
        .with("b", format_real_list(&q.b.0))
}

fn scan_spec(s: &ScanArgs) -> Result<(Vec<f64>, String), UsageError> {
    if !(s.start < s.stop) {
        return Err(UsageError(format!("sweep start {} is not below stop {}", s.start, s.stop)));
    }
    if s.count < 2 {
        return Err(UsageError(format!("sweep count {} is below 2", s.count)));
    }
    let spec = SweepSpec { parameter: SweepParameter::Epsilon, start: s.start, stop: s.stop, count: s.count };
    Ok((spec.values(), s.param.clone()))
}

fn eval(ctx: &mut Ctx, t: &EvalTarget) -> Result<(), UsageError> {
    let (quad, cfg) = (ctx.quad, SeriesConfig::default());
    match t {
        EvalTarget::Bessel { order, z } => {
            let i = Inputs::new().c("order", *order).c("z", *z);
            ctx.push("eval", "bessel", &i, "series", || {
                let v = bessel_j_with(*order, *z, &cfg)?;
                let method = if v.branch_cut { "series:branch-cut" } else { "series" };
                Ok(Eval::new(v.value, method).est(v.est_rel_err * v.value.norm()))
            });
        }
        EvalTarget::Anger { order, tones } => {
            let m = mods(tones)?;
            let i = tone_inputs(Inputs::new().c("order", *order), tones);
            ctx.push("eval", "anger", &i, "quadrature", || {
                let v = anger_est(*order, &m, &quad)?;
                Ok(Eval::new(v.value, "quadrature").est(v.est_error))
            });
        }
        EvalTarget::Gbf12 { n, x, y } => {
            let i = Inputs::new().with("n", n.to_string()).c("x", *x).c("y", *y);
            let zero = Complex64::new(0.0, 0.0);
            let m = ModulationCoefficients::new(vec![*x, *y], vec![zero, zero])?;
            ctx.push("eval", "gbf12", &i, "convolution", || {
                let v = gbf_12(*n, *x, *y, &cfg)?;
                let r = anger_est(Complex64::new(*n as f64, 0.0), &m, &quad)?;
                Ok(Eval::new(v, "convolution-vs-quadrature").reference(r.value))
            });
        }
        EvalTarget::Gamma { z } => {
            let i = Inputs::new().c("z", *z);
            ctx.push("eval", "gamma", &i, "lanczos", || Ok(Eval::new(gamma_complex(*z)?, "lanczos")));
        }
        EvalTarget::Cosint { x } => {
            let i = Inputs::new().r("x", *x);
            ctx.push("eval", "cosint", &i, "series", || {
                let method = if *x <= 40.0 { "series" } else { "asymptotic" };
                Ok(Eval::new(Complex64::new(cosine_integral(*x)?, 0.0), method))
            });
        }
        EvalTarget::Product { alpha, beta, z } => {
            let i = Inputs::new().c("alpha", *alpha).c("beta", *beta).c("z", *z);
            ctx.push("eval", "product", &i, "integral", || {
                let v = bessel_product_integral(*alpha, *beta, *z, &quad)?;
                let r = bessel_j(*alpha, *z)? * bessel_j(*beta, *z)?;
                Ok(Eval::new(v, "integral-vs-product").reference(r))
            });
        }
    }
    Ok(())
}

fn sum(ctx: &mut Ctx, t: &SumTarget) -> Result<(), UsageError> {
    let (quad, trunc) = (ctx.quad, ctx.trunc);
    match t {
        SumTarget::Classical { ln, z } => {
            let i = ln_inputs(ln).c("z", *z);
            ctx.push("sum", "classical", &i, "closed", || {
                let p = LNParams::new(ln.alpha, ln.beta, ln.gamma, ln.mu, *z)?;
                sum_eval(ln.method, || ln1d_closed(&p), || ln1d_oracle_outcome(&p, &trunc))
            });
        }
        SumTarget::Generalized { ln, tones } => {
            let m = mods(tones)?;
            let i = tone_inputs(ln_inputs(ln), tones);
            ctx.push("sum", "generalized", &i, "closed", || {
                sum_eval(
                    ln.method,
                    || anger_ln_closed(ln.alpha, ln.beta, ln.gamma, ln.mu, &m, &quad),
                    || anger_ln_oracle_outcome(ln.alpha, ln.beta, ln.gamma, ln.mu, &m, &trunc),
                )
            });
        }
        SumTarget::Corrected { alpha, beta, gamma, mu, method, tones } => {
            let m = mods(tones)?;
            let i = tone_inputs(
                Inputs::new().with("alpha", alpha.to_string()).with("beta", beta.to_string()).r("gamma", *gamma).c("mu", *mu),
                tones,
            );
            let (a, b) = (Complex64::new(*alpha as f64, 0.0), Complex64::new(*beta as f64, 0.0));
            ctx.push("sum", "corrected", &i, "closed", || {
                sum_eval(
                    *method,
                    || anger_ln_corrected(*alpha, *beta, *gamma, *mu, &m, &quad),
                    || anger_ln_oracle_outcome(a, b, *gamma, *mu, &m, &trunc),
                )
            });
        }
        SumTarget::GbfSquare { mu, method, tones } => {
            let m = mods(tones)?;
            let i = tone_inputs(Inputs::new().c("mu", *mu), tones);
            ctx.push("sum", "gbf-square", &i, "closed", || {
                sum_eval(*method, || gbf_square_closed(&m, *mu, &quad), || gbf_square_oracle_outcome(&m, *mu, &trunc, &quad))
            });
        }
        SumTarget::Harmonic { mu, theta, plain, n } => {
            let i = Inputs::new().c("mu", *mu).r("theta", *theta).with("plain", plain.to_string()).with("n", n.to_string());
            ctx.push("sum", "harmonic", &i, "closed", || {
                let closed = if *plain { plain_harmonic_closed(*mu, *theta)? } else { alt_harmonic_closed(*mu, *theta)? };
                let avg = averaged_harmonic_sum(*mu, *theta, !*plain, *n);
                Ok(Eval::new(closed, "closed-vs-averaged-partial-sum").reference(avg))
            });
        }
    }
    Ok(())
}

fn rate_eval(q: &QubitParams, method: RateMethod, quad: &QuadratureSpec, trunc: &TruncationSpec) -> Result<Eval, Error> {
    let c = |v: f64| Complex64::new(v, 0.0);
    if q.is_single_tone() {
        match method {
            RateMethod::Direct => Ok(Eval::new(c(rate_direct(q, trunc)?), "direct")),
            RateMethod::Closed => Ok(Eval::new(c(rate_closed(q)?), "closed")),
            RateMethod::Both => Ok(Eval::new(c(rate_closed(q)?), "closed-vs-direct").reference(c(rate_direct(q, trunc)?))),
        }
    } else {
        match method {
            RateMethod::Direct => Ok(Eval::new(rate_multitone_direct(q, trunc)?, "multitone-direct")),
            RateMethod::Closed => Ok(Eval::new(rate_multitone(q, quad)?, "multitone-closed")),
            RateMethod::Both => Ok(Eval::new(rate_multitone(q, quad)?, "multitone-closed-vs-direct")
                .reference(rate_multitone_direct(q, trunc)?)),
        }
    }
}

fn qubit(ctx: &mut Ctx, t: &QubitTarget) -> Result<(), UsageError> {
    let (quad, trunc) = (ctx.quad, ctx.trunc);
    match t {
        QubitTarget::Rate { q } => {
            let p = qubit_params(q);
            p.validate()?;
            ctx.push("qubit", "rate", &qubit_inputs(q), "closed", || rate_eval(&p, q.method, &quad, &trunc));
        }
        QubitTarget::Sweep { q, scan } => {
            let p = qubit_params(q);
            p.validate()?;
            if !p.is_single_tone() {
                return Err(UsageError("qubit sweep needs a single sine tone".into()));
            }
            let parameter: SweepParameter = scan.param.parse()?;
            let spec = SweepSpec { parameter, start: scan.start, stop: scan.stop, count: scan.count };
            spec.validate()?;
            let run = |m| sweep(&p, &spec, m, &trunc);
            let (direct, closed) = match q.method {
                RateMethod::Direct => (Some(run(Method::Direct)?), None),
                RateMethod::Closed => (None, Some(run(Method::Closed)?)),
                RateMethod::Both => (Some(run(Method::Direct)?), Some(run(Method::Closed)?)),
            };
            let base = qubit_inputs(q);
            for k in 0..scan.count {
                let d = direct.as_ref().map(|v| &v[k]);
                let c = closed.as_ref().map(|v| &v[k]);
                let value = d.or(c).map(|r| r.value).unwrap_or_default();
                let i = base.clone().r(parameter.name(), value);
                let name = match q.method {
                    RateMethod::Direct => "direct",
                    RateMethod::Closed => "closed",
                    RateMethod::Both => "closed-vs-direct",
                };
                ctx.push("qubit", "sweep", &i, name, || {
                    let re = |v: f64| Complex64::new(v, 0.0);
                    let rate = |r: Option<&besselsum::qubit::SweepRow>| -> Result<Option<f64>, Error> {
                        match r {
                            None => Ok(None),
                            Some(row) => match &row.rate {
                                Ok(v) => Ok(Some(*v)),
                                Err(e) => Err(e.clone()),
                            },
                        }
                    };
                    let (dv, cv) = (rate(d)?, rate(c)?);
                    Ok(match (cv, dv) {
                        (Some(c), Some(d)) => Eval::new(re(c), name).reference(re(d)),
                        (Some(v), None) | (None, Some(v)) => Eval::new(re(v), name),
                        (None, None) => unreachable!("at least one method runs"),
                    })
                });
            }
        }
    }
    Ok(())
}

fn sweep_cmd(ctx: &mut Ctx, t: &SweepTarget) -> Result<(), UsageError> {
    let quad = ctx.quad;
    match t {
        SweepTarget::Bessel { order, z, scan } => {
            let (values, param) = scan_spec(scan)?;
            if param != "order" && param != "z" {
                return Err(UsageError(format!("unknown sweep parameter `{param}` (expected order or z)")));
            }
            let cfg = SeriesConfig::default();
            for v in values {
                let (o, zz) = if param == "order" {
                    (Complex64::new(v, order.im), *z)
                } else {
                    (*order, Complex64::new(v, z.im))
                };
                let i = Inputs::new().c("order", o).c("z", zz);
                ctx.push("sweep", "bessel", &i, "series", || {
                    let b = bessel_j_with(o, zz, &cfg)?;
                    Ok(Eval::new(b.value, "series").est(b.est_rel_err * b.value.norm()))
                });
            }
        }
        SweepTarget::Anger { order, tones, scan } => {
            let (values, param) = scan_spec(scan)?;
            if param != "order" {
                return Err(UsageError(format!("unknown sweep parameter `{param}` (expected order)")));
            }
            let m = mods(tones)?;
            for v in values {
                let o = Complex64::new(v, order.im);
                let i = tone_inputs(Inputs::new().c("order", o), tones);
                ctx.push("sweep", "anger", &i, "quadrature", || {
                    let a = anger_est(o, &m, &quad)?;
                    Ok(Eval::new(a.value, "quadrature").est(a.est_error))
                });
            }
        }
    }
    Ok(())
}

fn verify(ctx: &mut Ctx, t: &VerifyTarget) -> Result<(), UsageError> {
    match t {
        VerifyTarget::Appendix { n, bound_n, grid, m } => {
            if *n < 100 {
                return Err(UsageError(format!("--n {n} is below 100")));
            }
            let re = |v: f64| Complex64::new(v, 0.0);
            let i = Inputs::new().with("n", n.to_string());
            let n3 = (*n as f64).powi(3);
            let gap = gap_asymptotic(*n);
            ctx.push("verify", "gap", &i, "n^3*gap", || Ok(Eval::new(re(n3 * gap), "n^3*gap").reference(re(GAP_COEFFICIENT))));
            ctx.push("verify", "gap-ratio", &i, "n^3*gap/(pi^2/32)", || {
                Ok(Eval::new(re(n3 * gap / GAP_COEFFICIENT), "n^3*gap/(pi^2/32)").reference(re(1.0)))
            });
            let ir = Inputs::new().with("n", format!("{},{}", n / 2, 2 * (n / 2)));
            ctx.push("verify", "gap-richardson", &ir, "richardson", || {
                Ok(Eval::new(re(gap_coefficient_richardson(n / 2)), "richardson").reference(re(GAP_COEFFICIENT)))
            });
            match riemann_expansion_check(*n) {
                Ok(d) => {
                    for (target, v, want) in [
                        ("even-defect", d.even, -PI * PI / 24.0),
                        ("odd-defect", d.odd, PI * PI / 48.0),
                        ("log-leading", d.log_leading, -PI * PI / 8.0),
                        ("log-next", d.log_next, PI * PI / 16.0),
                    ] {
                        ctx.push("verify", target, &i, "scaled-defect", || Ok(Eval::new(re(v), "scaled-defect").reference(re(want))));
                    }
                }
                Err(e) => ctx.push("verify", "riemann", &i, "scaled-defect", || Err(e)),
            }
            let ib = Inputs::new().with("n_max", bound_n.to_string()).with("grid", grid.to_string()).r("m", *m);
            let g = theta_grid(*grid, 1e-3);
            ctx.push("verify", "bound", &ib, "grid-scan", || {
                let b = bound_check(*bound_n, &g, *m)?;
                let mut e = Eval::new(re(b.margin), format!("grid-scan:worst-n={}", b.n)).est(0.0);
                if b.margin < 0.0 {
                    e.mismatch = Some(format!("bound fails at theta = {}, n = {}", b.theta, b.n));
                }
                Ok(e)
            });
        }
        VerifyTarget::Identities { draws, seed, tol } => identities(ctx, *draws, *seed, *tol),
    }
    Ok(())
}

fn checked(e: Result<Eval, Error>, tol: f64) -> Result<Eval, Error> {
    let mut e = e?;
    if let Some(r) = e.reference {
        let err = mixed_error(e.value, r);
        e.est_error = Some(err);
        if !(err <= tol) {
            e.mismatch = Some(format!("closed form and oracle differ by {err:e} (tolerance {tol:e})"));
        }
    }
    Ok(e)
}

fn off_integer(r: &mut ChaCha8Rng) -> f64 {
    loop {
        let u: f64 = r.gen_range(0.0..1.0);
        if (u - u.round()).abs() >= 1e-3 {
            return u;
        }
    }
}

fn identities(ctx: &mut Ctx, draws: usize, seed: u64, tol: f64) {
    let (quad, trunc) = (ctx.quad, ctx.trunc);
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    let c = Complex64::new;
    for draw in 0..draws {
        let alpha = c(r.gen_range(-0.4..1.5), r.gen_range(-0.3..0.3));
        let beta = c(r.gen_range(-0.4..1.5), r.gen_range(-0.3..0.3));
        let gamma = r.gen_range(0.05..=1.0);
        let mu = c(off_integer(&mut r), r.gen_range(-1.0..1.0));
        let z = Complex64::from_polar(r.gen_range(0.0..5.0), r.gen_range(-1.5..1.5));
        let i = Inputs::new().with("draw", draw.to_string()).c("alpha", alpha).c("beta", beta).r("gamma", gamma).c("mu", mu).c("z", z);
        ctx.push("verify", "classical", &i, "closed-vs-oracle", || {
            let p = LNParams::new(alpha, beta, gamma, mu, z)?;
            checked(sum_eval(SumMethod::Both, || ln1d_closed(&p), || ln1d_oracle_outcome(&p, &trunc)), tol)
        });

        let tone = |r: &mut ChaCha8Rng| c(r.gen_range(-1.5..1.5), r.gen_range(-0.4..0.4));
        let m = r.gen_range(1..=3);
        let x: Vec<Complex64> = (0..m).map(|_| tone(&mut r)).collect();
        let y: Vec<Complex64> = (0..m).map(|_| tone(&mut r)).collect();
        let mods = ModulationCoefficients::new(x.clone(), y.clone()).expect("bounded amplitudes");
        let g_low = r.gen_range(0.05..=0.5);
        let i = Inputs::new()
            .with("draw", draw.to_string())
            .c("alpha", alpha)
            .c("beta", beta)
            .r("gamma", g_low)
            .c("mu", mu)
            .with("x", format_complex_list(&x))
            .with("y", format_complex_list(&y));
        ctx.push("verify", "generalized", &i, "closed-vs-oracle", || {
            checked(
                sum_eval(
                    SumMethod::Both,
                    || anger_ln_closed(alpha, beta, g_low, mu, &mods, &quad),
                    || anger_ln_oracle_outcome(alpha, beta, g_low, mu, &mods, &trunc),
                ),
                tol,
            )
        });

        let (ai, bi) = (r.gen_range(-3..=3), r.gen_range(-3..=3));
        let g_high = r.gen_range(0.56..=1.0);
        let i = Inputs::new()
            .with("draw", draw.to_string())
            .with("alpha", ai.to_string())
            .with("beta", bi.to_string())
            .r("gamma", g_high)
            .c("mu", mu)
            .with("x", format_complex_list(&x))
            .with("y", format_complex_list(&y));
        ctx.push("verify", "corrected", &i, "closed-vs-oracle", || {
            checked(
                sum_eval(
                    SumMethod::Both,
                    || anger_ln_corrected(ai, bi, g_high, mu, &mods, &quad),
                    || anger_ln_oracle_outcome(c(ai as f64, 0.0), c(bi as f64, 0.0), g_high, mu, &mods, &trunc),
                ),
                tol,
            )
        });

        let xr: Vec<Complex64> = x.iter().map(|v| c(v.re, 0.0)).collect();
        let yr: Vec<Complex64> = y.iter().map(|v| c(v.re, 0.0)).collect();
        let real = ModulationCoefficients::new(xr.clone(), yr.clone()).expect("bounded amplitudes");
        let mu_real = c(mu.re + if draw % 2 == 1 { 1.0 } else { 0.0 }, 0.0);
        let i = Inputs::new()
            .with("draw", draw.to_string())
            .c("mu", mu_real)
            .with("x", format_complex_list(&xr))
            .with("y", format_complex_list(&yr));
        ctx.push("verify", "gbf-square", &i, "closed-vs-oracle", || {
            checked(
                sum_eval(
                    SumMethod::Both,
                    || gbf_square_closed(&real, mu_real, &quad),
                    || gbf_square_oracle_outcome(&real, mu_real, &trunc, &quad),
                ),
                tol,
            )
        });
    }
}

fn execute(ctx: &mut Ctx, command: &Command) -> Result<(), UsageError> {
    match command {
        Command::Eval { target } => eval(ctx, target),
        Command::Sum { target } => sum(ctx, target),
        Command::Qubit { target } => qubit(ctx, target),
        Command::Sweep { target } => sweep_cmd(ctx, target),
        Command::Verify { target } => verify(ctx, target),
    }
}

fn write_records(cli: &Cli, records: &[OutputRecord]) -> io::Result<()> {
    match &cli.output {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            emit(records, cli.format, &mut w)?;
            w.flush()
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            emit(records, cli.format, &mut w)?;
            w.flush()
        }
    }
}

/// Parses `args`, runs the command and writes its records. Returns the exit status.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    if cli.config.is_some() && cli.command.is_some() {
        eprintln!("error: --config cannot be combined with a command");
        return EXIT_USAGE;
    }
    let cli = match &cli.config {
        Some(path) => match config::load(path).and_then(|argv| Cli::try_parse_from(argv).map_err(|e| UsageError(e.to_string()))) {
            Ok(c) => c,
            Err(UsageError(msg)) => {
                eprintln!("error: {msg}");
                return EXIT_USAGE;
            }
        },
        None => cli,
    };
    let Some(command) = &cli.command else {
        eprintln!("error: a command is required (see --help)");
        return EXIT_USAGE;
    };
    let (quad, trunc) = match (quad_spec(&cli.numerics), trunc_spec(&cli.numerics)) {
        (Ok(q), Ok(t)) => (q, t),
        (Err(UsageError(m)), _) | (_, Err(UsageError(m))) => {
            eprintln!("error: {m}");
            return EXIT_USAGE;
        }
    };
    let mut ctx = Ctx { timing: cli.timing, quad, trunc, records: Vec::new(), status: Status::Ok };
    if let Err(UsageError(m)) = execute(&mut ctx, command) {
        eprintln!("error: {m}");
        return EXIT_USAGE;
    }
    if let Err(e) = write_records(&cli, &ctx.records) {
        eprintln!("error: cannot write output: {e}");
        return EXIT_USAGE;
    }
    for r in &ctx.records {
        if let Some(e) = &r.error {
            eprintln!("{} {} [{}]: {e}", r.command, r.target, r.inputs);
        }
    }
    match ctx.status {
        Status::Ok => EXIT_OK,
        Status::Usage => EXIT_USAGE,
        Status::Numerical => EXIT_NUMERICAL,
    }
}
