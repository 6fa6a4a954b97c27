use clap::{Args, Subcommand, ValueEnum};
use dds_core::bounds::{delta_from_c1, double_sided_bounds, fermi_weighted_holder, holder_truncated, BoundReport};
use dds_core::diophantine::{
    convergents_of, convergents_up_to, effective_mu, floor_constant_c, max_safe_depth, spike_correlate, Convergent,
    DigitString, MU_PI_HISTORY,
};
use dds_core::elliptic::{fit_class, full_expansion};
use dds_core::series::{
    lambda_bessel, lambda_elementary, lambda_slope, partial_sum, partial_sum_parallel, psi_from_lambda, Kernel,
    PartialSumReport, Phase, SeriesSpec, Weight,
};
use dds_core::special::{fermi_dirac_f, zeta};
use serde_json::Value;

use crate::config::{Precision, RunConfig};
use crate::envelope::{big, dd, num, row, Envelope};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Core(dds_core::Error),
    Io(String),
}

impl From<dds_core::Error> for CliError {
    fn from(e: dds_core::Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 64,
            CliError::Core(e) if e.is_pole() => 3,
            CliError::Core(_) | CliError::Io(_) => 2,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Core(e) => e.kind(),
            CliError::Io(_) => "io",
        }
    }

    pub fn message(&self) -> String {
        match self {
            CliError::Usage(m) | CliError::Io(m) => m.clone(),
            CliError::Core(e) => e.to_string(),
        }
    }

    pub fn to_json(&self) -> String {
        let v = serde_json::json!({
            "error": { "kind": self.kind(), "message": self.message(), "exit_code": self.exit_code() }
        });
        serde_json::to_string_pretty(&v).expect("error serializes")
    }
}

type Out = Result<Envelope, CliError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KernelArg {
    Csc,
    Cot,
    Sec,
    One,
}

impl From<KernelArg> for Kernel {
    fn from(k: KernelArg) -> Self {
        match k {
            KernelArg::Csc => Kernel::Csc,
            KernelArg::Cot => Kernel::Cot,
            KernelArg::Sec => Kernel::Sec,
            KernelArg::One => Kernel::One,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Identities,
    Golden,
    All,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Partial sum of Σ f(φn)^v w(n) / n^s over a range.
    Sum(SumArgs),
    /// Λ(σ) by the Bessel and elementary paths.
    Lambda(SigmaArgs),
    /// Ψ(σ) against the direct Flint-Hills partial sum.
    Reconstruct(SigmaArgs),
    /// Double-sided polygamma bounds at σ, optionally the δ arithmetic.
    Bounds(BoundsArgs),
    /// Truncated Hölder bound, plain or Fermi-Dirac weighted.
    Holder(HolderArgs),
    /// Fermi-Dirac integral F_p(x).
    Fermi(FermiArgs),
    /// Running records of |csc n|.
    Spikes(SpikesArgs),
    /// Continued-fraction convergents of π or of a digit-string file.
    Convergents(ConvergentsArgs),
    /// Weierstrass class expansion or a single class fit.
    Elliptic(EllipticArgs),
    /// Λ'(t) = −(π/√3)ψ'''(t) on a grid.
    SlopeField(SlopeArgs),
    /// Run the identity and golden-value checks.
    Verify(VerifyArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Sum(_) => "sum",
            Command::Lambda(_) => "lambda",
            Command::Reconstruct(_) => "reconstruct",
            Command::Bounds(_) => "bounds",
            Command::Holder(_) => "holder",
            Command::Fermi(_) => "fermi",
            Command::Spikes(_) => "spikes",
            Command::Convergents(_) => "convergents",
            Command::Elliptic(_) => "elliptic",
            Command::SlopeField(_) => "slope-field",
            Command::Verify(_) => "verify",
        }
    }
}

#[derive(Debug, Args)]
pub struct SumArgs {
    #[arg(long, value_enum, default_value = "csc")]
    pub kernel: KernelArg,
    #[arg(long, default_value_t = 2.0)]
    pub v: f64,
    #[arg(long, default_value_t = 3.0, allow_negative_numbers = true)]
    pub s: f64,
    /// Argument scale φ in radians.
    #[arg(long, default_value_t = 1.0)]
    pub phase: f64,
    /// Read --phase as a multiple of π.
    #[arg(long)]
    pub phase_pi: bool,
    #[arg(long = "from", default_value_t = 1)]
    pub from: u64,
    #[arg(long = "to")]
    pub to: u64,
    /// Periodic weight table χ(1),…,χ(k).
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true, conflicts_with = "exp_x")]
    pub periodic: Option<Vec<f64>>,
    /// Exponential weight exp(x·n/p): the x.
    #[arg(long, allow_negative_numbers = true, requires = "exp_p")]
    pub exp_x: Option<f64>,
    #[arg(long, requires = "exp_x")]
    pub exp_p: Option<f64>,
}

#[derive(Debug, Args)]
pub struct SigmaArgs {
    #[arg(long)]
    pub sigma: u64,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[arg(long, default_value_t = 10001)]
    pub sigma: u64,
    /// Also evaluate δ from this value of c₁.
    #[arg(long, allow_negative_numbers = true)]
    pub c1: Option<f64>,
}

#[derive(Debug, Args)]
pub struct HolderArgs {
    #[arg(long)]
    pub p: f64,
    #[arg(long)]
    pub n: u64,
    /// Fermi-Dirac weight argument (x <= 0).
    #[arg(long, allow_negative_numbers = true)]
    pub x: Option<f64>,
}

#[derive(Debug, Args)]
pub struct FermiArgs {
    #[arg(long)]
    pub p: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub x: f64,
}

#[derive(Debug, Args)]
pub struct SpikesArgs {
    #[arg(long = "to", default_value_t = 120_000)]
    pub to: u64,
}

#[derive(Debug, Args)]
pub struct ConvergentsArgs {
    #[arg(long, default_value_t = 10, conflicts_with = "q_max")]
    pub count: usize,
    /// All convergents with denominator at most this.
    #[arg(long)]
    pub q_max: Option<u64>,
    /// Also report min q^e |α − p/q| for this e.
    #[arg(long)]
    pub exponent: Option<f64>,
}

#[derive(Debug, Args)]
pub struct EllipticArgs {
    #[arg(long = "from", default_value_t = 1)]
    pub from: u64,
    #[arg(long = "to", default_value_t = 10_000)]
    pub to: u64,
    #[arg(long, default_value_t = 2)]
    pub chunk: u64,
    /// Fit one class through these members instead of expanding a range.
    #[arg(long, value_delimiter = ',')]
    pub members: Option<Vec<u64>>,
}

#[derive(Debug, Args)]
pub struct SlopeArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub t_lo: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub t_hi: f64,
    #[arg(long)]
    pub steps: usize,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub suite: Suite,
}

fn report_sum(env: &mut Envelope, r: &PartialSumReport) {
    env.result("value", dd(r.value))
        .result("n_terms", r.n_terms)
        .result("max_term", num(r.max_term))
        .result("max_term_index", r.max_term_index)
        .result("error_bound", num(r.error_bound));
    let spikes: Vec<Value> =
        r.spikes.iter().map(|s| row(vec![("index", s.index.into()), ("magnitude", num(s.magnitude))])).collect();
    env.diag("spikes", spikes).diag("error_bound", num(r.error_bound));
}

fn run_partial(spec: &SeriesSpec, lo: u64, hi: u64, cfg: &RunConfig) -> dds_core::Result<PartialSumReport> {
    match cfg.precision {
        Precision::Extended => partial_sum(spec, lo, hi),
        Precision::Fast => partial_sum_parallel(spec, lo, hi),
    }
}

fn precision_name(cfg: &RunConfig) -> &'static str {
    match cfg.precision {
        Precision::Fast => "fast",
        Precision::Extended => "extended",
    }
}

fn sum(a: &SumArgs, cfg: &RunConfig) -> Out {
    let mut env = Envelope::new("sum");
    let kernel = Kernel::from(a.kernel);
    env.param("kernel", kernel.name())
        .param("v", num(a.v))
        .param("s", num(a.s))
        .param("phase", num(a.phase))
        .param("phase_pi", a.phase_pi)
        .param("from", a.from)
        .param("to", a.to)
        .param("precision", precision_name(cfg));
    let phase = if a.phase_pi { Phase::PiTimes(a.phase) } else { Phase::Radians(a.phase) };
    let weight = match (&a.periodic, a.exp_x, a.exp_p) {
        (Some(t), _, _) => {
            env.param("periodic", t.iter().map(|&x| num(x)).collect::<Vec<_>>());
            Weight::Periodic(t.clone())
        }
        (None, Some(x), Some(p)) => {
            env.param("exp_x", num(x)).param("exp_p", num(p));
            Weight::Exponential { x, p }
        }
        _ => Weight::None,
    };
    let spec = SeriesSpec::new(kernel, a.v, a.s).with_phase(phase).with_weight(weight);
    let r = run_partial(&spec, a.from, a.to, cfg)?;
    report_sum(&mut env, &r);
    Ok(env)
}

fn lambda(a: &SigmaArgs) -> Out {
    let mut env = Envelope::new("lambda");
    env.param("sigma", a.sigma);
    let b = lambda_bessel(a.sigma)?;
    let e = lambda_elementary(a.sigma)?;
    let rel = if b.value.is_zero() { 0.0 } else { ((b.value - e) / b.value).abs().to_f64() };
    env.result("lambda", dd(b.value))
        .result("lambda_elementary", dd(e))
        .result("relative_difference", num(rel))
        .result("weighted", dd(dds_core::series::lambda::lambda_weight() * b.value));
    env.diag("max_imag_residue", num(b.max_imag_residue));
    Ok(env)
}

fn reconstruct(a: &SigmaArgs, cfg: &RunConfig) -> Out {
    let mut env = Envelope::new("reconstruct");
    env.param("sigma", a.sigma).param("precision", precision_name(cfg));
    let b = lambda_bessel(a.sigma)?;
    let psi = psi_from_lambda(a.sigma, b.value)?;
    let direct = run_partial(&SeriesSpec::flint_hills(), 1, a.sigma.saturating_sub(1).max(1), cfg)?;
    let rel = ((psi - direct.value) / direct.value).abs().to_f64();
    env.result("psi", dd(psi))
        .result("direct_sum", dd(direct.value))
        .result("relative_gap", num(rel))
        .result("lambda", dd(b.value));
    env.diag("max_imag_residue", num(b.max_imag_residue)).diag("error_bound", num(direct.error_bound));
    Ok(env)
}

fn bounds(a: &BoundsArgs) -> Out {
    let mut env = Envelope::new("bounds");
    env.param("sigma", a.sigma);
    if let Some(c1) = a.c1 {
        env.param("c1", num(c1));
    }
    let b = double_sided_bounds(a.sigma)?;
    env.result("lower", dd(b.lower))
        .result("upper", dd(b.upper))
        .result("psi", dd(b.psi_value))
        .result("contained", b.contained)
        .result("zeta_term", dd(b.zeta_term))
        .result("lower_middle", dd(b.lower_middle))
        .result("upper_middle", dd(b.upper_middle))
        .result("lambda_term", dd(b.lambda_term))
        .result("trigamma_term", dd(b.trigamma_term))
        .result("lower_gap", dd(b.lower_gap))
        .result("upper_gap", dd(b.upper_gap))
        .result("lambda", dd(b.lambda));
    if let Some(c1) = a.c1 {
        let d = delta_from_c1(c1)?;
        env.result("delta", num(d.delta)).result("delta_squared", num(d.delta_squared));
    }
    Ok(env)
}

fn bound_report(env: &mut Envelope, r: &BoundReport) {
    env.result("lhs", num(r.lhs))
        .result("rhs", num(r.rhs))
        .result("satisfied", r.satisfied)
        .result("margin", num(r.margin));
    for (k, v) in &r.params {
        env.diag(k, num(*v));
    }
}

fn holder(a: &HolderArgs) -> Out {
    let mut env = Envelope::new("holder");
    env.param("p", num(a.p)).param("n", a.n);
    let r = match a.x {
        Some(x) => {
            env.param("x", num(x));
            fermi_weighted_holder(a.p, x, a.n)?
        }
        None => holder_truncated(a.p, a.n)?,
    };
    bound_report(&mut env, &r);
    Ok(env)
}

fn fermi(a: &FermiArgs) -> Out {
    let mut env = Envelope::new("fermi");
    env.param("p", num(a.p)).param("x", num(a.x));
    let v = fermi_dirac_f(a.p, a.x)?;
    env.result("value", num(v));
    if a.x == 0.0 {
        let closed = (zeta(a.p + 1.0)? * (1.0 - 2f64.powf(-a.p))).to_f64();
        env.result("closed_form", num(closed)).result("relative_difference", num(((v - closed) / closed).abs()));
    }
    Ok(env)
}

fn spikes(a: &SpikesArgs) -> Out {
    let mut env = Envelope::new("spikes");
    env.param("to", a.to);
    let rows: Vec<Value> = spike_correlate(a.to)?
        .iter()
        .map(|s| {
            row(vec![
                ("index", s.index.into()),
                ("magnitude", num(s.magnitude)),
                ("is_convergent_numerator", s.is_convergent_numerator.into()),
            ])
        })
        .collect();
    env.result("count", rows.len()).result("rows", rows);
    Ok(env)
}

fn load_digits(cfg: &RunConfig) -> Result<(DigitString, String), CliError> {
    match cfg.pi_digits_source() {
        Some(path) => {
            let text = std::fs::read_to_string(&path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            Ok((DigitString::parse(&text)?, path.display().to_string()))
        }
        None => Ok((DigitString::pi(), "built-in".to_string())),
    }
}

fn convergent_row(i: usize, c: &Convergent) -> Value {
    row(vec![
        ("index", i.into()),
        ("a", big(&c.a.to_string())),
        ("p", big(&c.p.to_string())),
        ("q", big(&c.q.to_string())),
        ("abs_error", num(c.abs_error)),
        ("eff_exponent", c.eff_exponent.map(num).unwrap_or(Value::Null)),
    ])
}

fn convergents(a: &ConvergentsArgs, cfg: &RunConfig) -> Out {
    let mut env = Envelope::new("convergents");
    let (alpha, source) = load_digits(cfg)?;
    env.param("digits", source);
    let list = match a.q_max {
        Some(q) => {
            env.param("q_max", q);
            convergents_up_to(&alpha, q)?
        }
        None => {
            env.param("count", a.count);
            convergents_of(&alpha, a.count)?
        }
    };
    if let Some(e) = a.exponent {
        env.param("exponent", num(e));
    }
    if let Ok((mu, idx)) = effective_mu(&list) {
        env.result("effective_mu", num(mu)).result("effective_mu_index", idx);
    }
    if let Some(e) = a.exponent {
        let (c, idx) = floor_constant_c(&list, e)?;
        env.result("floor_constant", num(c)).result("floor_constant_index", idx);
    }
    let rows: Vec<Value> = list.iter().enumerate().map(|(i, c)| convergent_row(i, c)).collect();
    env.result("rows", rows);
    let history: Vec<Value> = MU_PI_HISTORY
        .iter()
        .map(|m| row(vec![("bound", num(m.bound)), ("author", m.author.into()), ("year", m.year.into())]))
        .collect();
    env.diag("max_safe_depth", max_safe_depth(&alpha)).diag("mu_history", history);
    Ok(env)
}

fn elliptic(a: &EllipticArgs, cfg: &RunConfig) -> Out {
    let mut env = Envelope::new("elliptic");
    if let Some(members) = &a.members {
        env.param("members", members.clone());
        let c = fit_class(members)?;
        env.result("a", dd(c.a))
            .result("b", dd(c.b))
            .result("discriminant", num(c.discriminant))
            .result("exact", c.is_exact());
        let rows: Vec<Value> = c
            .members
            .iter()
            .zip(&c.residuals)
            .map(|(&l, &r)| row(vec![("lambda", l.into()), ("residual", num(r))]))
            .collect();
        env.result("rows", rows);
        return Ok(env);
    }
    env.param("from", a.from).param("to", a.to).param("chunk", a.chunk).param("precision", precision_name(cfg));
    let e = full_expansion(a.from, a.to, a.chunk)?;
    let direct = run_partial(&SeriesSpec::flint_hills(), a.from, a.to, cfg)?;
    let rel = ((e.value - direct.value) / direct.value).abs().to_f64();
    env.result("kappa_total", e.kappa_total)
        .result("correction_sum", dd(e.correction_sum))
        .result("value", dd(e.value))
        .result("direct_sum", dd(direct.value))
        .result("relative_gap", num(rel))
        .result("residual_gap", dd(e.residual_gap))
        .result("blocks", e.blocks);
    env.diag("min_relative_discriminant", num(e.min_relative_discriminant));
    Ok(env)
}

fn slope_field(a: &SlopeArgs) -> Out {
    let mut env = Envelope::new("slope-field");
    env.param("t_lo", num(a.t_lo)).param("t_hi", num(a.t_hi)).param("steps", a.steps);
    if !(a.t_lo > 0.0 && a.t_hi > a.t_lo) || !a.t_hi.is_finite() {
        return Err(dds_core::Error::Domain { op: "slope_field", detail: "need 0 < t_lo < t_hi".into() }.into());
    }
    if a.steps < 2 {
        return Err(dds_core::Error::Domain { op: "slope_field", detail: "steps must be at least 2".into() }.into());
    }
    let h = (a.t_hi - a.t_lo) / (a.steps - 1) as f64;
    let rows = (0..a.steps)
        .map(|i| {
            let t = if i + 1 == a.steps { a.t_hi } else { a.t_lo + h * i as f64 };
            Ok(row(vec![("t", num(t)), ("slope", dd(lambda_slope(t)?))]))
        })
        .collect::<dds_core::Result<Vec<_>>>()?;
    env.result("rows", rows);
    Ok(env)
}

/// Runs every command but `verify`.
pub fn run(cmd: &Command, cfg: &RunConfig) -> Out {
    match cmd {
        Command::Sum(a) => sum(a, cfg),
        Command::Lambda(a) => lambda(a),
        Command::Reconstruct(a) => reconstruct(a, cfg),
        Command::Bounds(a) => bounds(a),
        Command::Holder(a) => holder(a),
        Command::Fermi(a) => fermi(a),
        Command::Spikes(a) => spikes(a),
        Command::Convergents(a) => convergents(a, cfg),
        Command::Elliptic(a) => elliptic(a, cfg),
        Command::SlopeField(a) => slope_field(a),
        Command::Verify(_) => Err(CliError::Usage("verify is not a cached command".into())),
    }
}
