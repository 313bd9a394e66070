use crate::input::{parse_complex, parse_complex_list, parse_real, parse_real_list, ComplexList, RealList};
use crate::record::Format;
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(
    name = "besselsum",
    version,
    about = "Bessel and Anger functions, Lerche-Newberger sums and driven-qubit transition rates",
    after_help = "Complex inputs are written re+imj (e.g. 0.3-1.2j); lists are comma-separated.\n\
                  Exit status: 0 success, 1 usage error, 2 numerical failure."
)]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    pub format: Format,
    /// Write records to this file instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    /// Run the command described in a TOML file.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Fill wall_time_ms; output is then no longer byte-stable.
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(flatten)]
    pub numerics: NumericsArgs,
    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Args, Debug, Clone, Default)]
pub struct NumericsArgs {
    /// Base node count of one-dimensional quadrature.
    #[arg(long, global = true)]
    pub quad_nodes: Option<usize>,
    /// Base panel count per axis of triangle quadrature.
    #[arg(long, global = true)]
    pub quad_panels: Option<usize>,
    /// Gauss order per panel.
    #[arg(long, global = true)]
    pub quad_order: Option<usize>,
    /// Relative quadrature tolerance.
    #[arg(long, global = true, value_parser = parse_real)]
    pub quad_tol: Option<f64>,
    /// Largest index summed before switching to tail extrapolation.
    #[arg(long, global = true)]
    pub n_max: Option<usize>,
    /// Relative size of a negligible term.
    #[arg(long, global = true, value_parser = parse_real)]
    pub tail_tol: Option<f64>,
    /// Consecutive negligible terms that end a sum.
    #[arg(long, global = true)]
    pub stall_count: Option<usize>,
    /// Fail instead of extrapolating algebraically decaying tails.
    #[arg(long, global = true)]
    pub no_extrapolate: bool,
    /// Largest index used by a tail fit.
    #[arg(long, global = true)]
    pub fit_cap: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate one special function.
    Eval {
        #[command(subcommand)]
        target: EvalTarget,
    },
    /// Evaluate a harmonic sum in closed form and by brute force.
    Sum {
        #[command(subcommand)]
        target: SumTarget,
    },
    /// Transition rate of a periodically driven two-level system.
    Qubit {
        #[command(subcommand)]
        target: QubitTarget,
    },
    /// Scan a special function along one real parameter.
    Sweep {
        #[command(subcommand)]
        target: SweepTarget,
    },
    /// Numerical checks of identities and asymptotics.
    Verify {
        #[command(subcommand)]
        target: VerifyTarget,
    },
}

#[derive(Args, Debug, Clone)]
pub struct ToneArgs {
    /// Amplitudes x_k of sin(k t).
    #[arg(long, default_value = "", value_parser = parse_complex_list, allow_hyphen_values = true)]
    pub x: ComplexList,
    /// Amplitudes y_k of cos(k t); padded with zeros to the length of x.
    #[arg(long, default_value = "", value_parser = parse_complex_list, allow_hyphen_values = true)]
    pub y: ComplexList,
}

#[derive(Subcommand, Debug)]
pub enum EvalTarget {
    /// Bessel function J_order(z) from its power series (Miller recurrence for
    /// large integer-order arguments).
    Bessel {
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        order: Complex64,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        z: Complex64,
    },
    /// Generalized Anger function
    /// A_a(x, y) = (1/2pi) int_{-pi}^{pi} exp(i(a t - sum_k x_k sin kt + y_k cos kt)) dt.
    Anger {
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        order: Complex64,
        #[command(flatten)]
        tones: ToneArgs,
    },
    /// Two-variable generalized Bessel function J_n(x, y) = sum_k J_{n-2k}(x) J_k(y),
    /// with the Anger quadrature as reference.
    Gbf12 {
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        x: Complex64,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        y: Complex64,
    },
    /// Complex gamma function (Lanczos with reflection).
    Gamma {
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        z: Complex64,
    },
    /// Cosine integral Ci(x) for x > 0.
    Cosint {
        #[arg(long, value_parser = parse_real)]
        x: f64,
    },
    /// J_alpha(z) J_beta(z) through (2/pi) int_0^{pi/2} J_{alpha+beta}(2z cos t) cos((alpha-beta) t) dt,
    /// with the direct product as reference.
    Product {
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        alpha: Complex64,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        beta: Complex64,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        z: Complex64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SumMethod {
    Closed,
    Oracle,
    Both,
}

#[derive(Args, Debug, Clone)]
pub struct LnArgs {
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, default_value = "0")]
    pub alpha: Complex64,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, default_value = "0")]
    pub beta: Complex64,
    /// Index scale, in (0, 1].
    #[arg(long, value_parser = parse_real, default_value = "1")]
    pub gamma: f64,
    /// Shift of the transposed harmonic weight 1/(n + mu).
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub mu: Complex64,
    #[arg(long, value_enum, default_value_t = SumMethod::Both)]
    pub method: SumMethod,
}

#[derive(Subcommand, Debug)]
pub enum SumTarget {
    /// sum_n (-1)^n J_{alpha-gamma n}(z) J_{beta+gamma n}(z) / (n + mu)
    /// = pi/sin(pi mu) J_{alpha+gamma mu}(z) J_{beta-gamma mu}(z), for Re(alpha+beta) > -1.
    Classical {
        #[command(flatten)]
        ln: LnArgs,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        z: Complex64,
    },
    /// The classical sum with Anger functions A(x, y) in place of J(z); the
    /// plain product closed form holds for gamma <= 1/2.
    Generalized {
        #[command(flatten)]
        ln: LnArgs,
        #[command(flatten)]
        tones: ToneArgs,
    },
    /// Generalized sum for gamma in (1/2, 1] and integer alpha, beta: the
    /// product term plus the corner-triangle integrals
    /// (i/2pi)[e^{i pi mu} I_+ - e^{-i pi mu} I_-].
    Corrected {
        #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
        alpha: i64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
        beta: i64,
        #[arg(long, value_parser = parse_real)]
        gamma: f64,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        mu: Complex64,
        #[arg(long, value_enum, default_value_t = SumMethod::Both)]
        method: SumMethod,
        #[command(flatten)]
        tones: ToneArgs,
    },
    /// sum_n A_n(x, y)^2 / (n + mu) = pi (cot(pi mu) A_{-mu}^2 + i B_{-mu}), with
    /// 4pi^2 B the sign-split integral of p_{-mu}(t) p_{-mu}(s) sgn(t + s).
    GbfSquare {
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        mu: Complex64,
        #[arg(long, value_enum, default_value_t = SumMethod::Both)]
        method: SumMethod,
        #[command(flatten)]
        tones: ToneArgs,
    },
    /// sum_n (-1)^n e^{i n theta} / (n + mu) = pi/sin(pi mu) e^{-i mu theta} on (-pi, pi),
    /// or with --plain the non-alternating sum; the reference is an averaged partial sum.
    Harmonic {
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        mu: Complex64,
        #[arg(long, value_parser = parse_real, allow_hyphen_values = true)]
        theta: f64,
        #[arg(long)]
        plain: bool,
        /// Partial-sum order of the reference.
        #[arg(long, default_value_t = 20000)]
        n: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RateMethod {
    Direct,
    Closed,
    Both,
}

#[derive(Args, Debug, Clone)]
pub struct QubitArgs {
    /// Tunnel coupling.
    #[arg(long, value_parser = parse_real, default_value = "1")]
    pub delta: f64,
    /// Dephasing rate.
    #[arg(long, value_parser = parse_real)]
    pub gamma2: f64,
    /// Static detuning.
    #[arg(long, value_parser = parse_real, allow_hyphen_values = true)]
    pub epsilon: f64,
    /// Drive frequency.
    #[arg(long, value_parser = parse_real)]
    pub omega: f64,
    /// Drive amplitudes A_k.
    #[arg(long, value_parser = parse_real_list, allow_hyphen_values = true, default_value = "0")]
    pub a: RealList,
    /// Second-quadrature amplitudes B_k.
    #[arg(long, value_parser = parse_real_list, allow_hyphen_values = true, default_value = "")]
    pub b: RealList,
    #[arg(long, value_enum, default_value_t = RateMethod::Both)]
    pub method: RateMethod,
}

#[derive(Subcommand, Debug)]
pub enum QubitTarget {
    /// W = (Delta^2/2) sum_n Gamma J_n(A/omega)^2 / ((eps - omega n)^2 + Gamma^2) and its
    /// closed form (i pi Delta^2 / 4 omega)[J_{m+} J_{-m+} / sin(pi m+) - (m+ -> m-)],
    /// m+- = (eps +- i Gamma)/omega. Several tones switch to generalized Bessel
    /// coefficients and the squared-GBF closed form.
    Rate {
        #[command(flatten)]
        q: QubitArgs,
    },
    /// The single-tone rate along a scan of epsilon, A or omega.
    Sweep {
        #[command(flatten)]
        q: QubitArgs,
        #[command(flatten)]
        scan: ScanArgs,
    },
}

#[derive(Args, Debug, Clone)]
pub struct ScanArgs {
    /// Parameter to scan.
    #[arg(long)]
    pub param: String,
    #[arg(long, value_parser = parse_real, allow_hyphen_values = true)]
    pub start: f64,
    #[arg(long, value_parser = parse_real, allow_hyphen_values = true)]
    pub stop: f64,
    #[arg(long)]
    pub count: usize,
}

#[derive(Subcommand, Debug)]
pub enum SweepTarget {
    /// J_order(z) along a scan of the real part of `order` or `z`.
    Bessel {
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, default_value = "0")]
        order: Complex64,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, default_value = "0")]
        z: Complex64,
        #[command(flatten)]
        scan: ScanArgs,
    },
    /// A_order(x, y) along a scan of the real part of `order`.
    Anger {
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, default_value = "0")]
        order: Complex64,
        #[command(flatten)]
        tones: ToneArgs,
        #[command(flatten)]
        scan: ScanArgs,
    },
}

#[derive(Subcommand, Debug)]
pub enum VerifyTarget {
    /// Asymptotics of the global-maximum argument: n^3 (f(t_2) - f(t_0)) against pi^2/32,
    /// its Richardson extrapolation, the Riemann-sum defects against -pi^2/24 and pi^2/48,
    /// n^2 log cos(2pi/(4n+1)) against -pi^2/8, and the partial-sum bound
    /// |s_n| <= |log(2cos(t/2))| + M.
    Appendix {
        #[arg(long, default_value_t = 4000)]
        n: usize,
        /// Largest partial-sum order of the bound scan.
        #[arg(long, default_value_t = 10_000)]
        bound_n: usize,
        /// Grid points of the bound scan on (-pi, pi).
        #[arg(long, default_value_t = 2001)]
        grid: usize,
        /// Bound constant M.
        #[arg(long, value_parser = parse_real, allow_hyphen_values = true, default_value = "0.5")]
        m: f64,
    },
    /// Random draws of the classical, generalized, corrected and squared-GBF
    /// identities, closed form against brute force.
    Identities {
        #[arg(long, default_value_t = 3)]
        draws: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Largest accepted mixed absolute/relative error.
        #[arg(long, value_parser = parse_real, default_value = "1e-8")]
        tol: f64,
    },
}
