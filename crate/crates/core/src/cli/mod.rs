//! The `powmat` command line. [`run`] takes the argument list and two output
//! streams and returns the process exit code: 0 on success, 1 when the
//! computation rejects the input, 2 when the input cannot be parsed.

mod input;

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use crate::census::{
    census_brute, commutes_pointwise, commutes_with_linear, gap_bound_probe, konig_rados_count,
    minimum_value_set,
};
use crate::dynamics::{diagonalize, matrix_order, sequence_period, FunctionalGraph};
use crate::error::Error;
use crate::field::{Elem, FieldCtx};
use crate::poly::ReducedPoly;
use crate::power_matrix::PowerMatrix;
use crate::selftest::{run_selftest, SelftestConfig};

pub use input::{
    field_label, format_poly, parse_elem, parse_field_spec, parse_modulus, parse_poly,
    resolve_size_cap, PolyFormat,
};

pub const SCHEMA_VERSION: u32 = 1;
pub const SIZE_CAP_ENV: &str = "POWMAT_SIZE_CAP";

#[derive(Parser, Debug)]
#[command(
    name = "powmat",
    version,
    about = "Matrices of coefficients of powers of polynomials over finite fields"
)]
struct Cli {
    /// Field as `p` or `p^n`.
    #[arg(long, global = true)]
    field: Option<String>,
    /// Defining polynomial of F_{p^n} as `c0,c1,...,cn`.
    #[arg(long, global = true)]
    modulus: Option<String>,
    /// Emit one JSON object.
    #[arg(long, global = true)]
    json: bool,
    /// Print elements of F_{p^n} as `a+bt+...` in text output.
    #[arg(long, global = true)]
    pretty: bool,
    /// Largest field order accepted; overrides POWMAT_SIZE_CAP.
    #[arg(long, global = true)]
    size_cap: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct PolyArg {
    /// `a0,a1,...` (low degree first) or `1+1x+1x^2`.
    #[arg(long, allow_hyphen_values = true)]
    poly: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print A(f).
    Matrix(PolyArg),
    /// Rank of A(f), which is the value-set size.
    Rank(PolyArg),
    /// Value-set size, multiplicities, minimum-value-set verdict and gap bound.
    Census(PolyArg),
    /// Solutions of f(x) = c, nonzero ones from the circulant rank.
    Count {
        #[command(flatten)]
        poly: PolyArg,
        #[arg(long)]
        value: String,
    },
    /// Whether f permutes the field (last row of A(f)).
    IsPerm(PolyArg),
    /// Compositional inverse of a permutation polynomial.
    Invert(PolyArg),
    /// g(f(x)).
    Compose {
        #[command(flatten)]
        poly: PolyArg,
        #[arg(long = "with")]
        with: String,
    },
    /// Cycles of x -> f(x) and the elements one step away from them.
    Cycles(PolyArg),
    /// Preperiod and period of a_{n+1} = f(a_n).
    Period {
        #[command(flatten)]
        poly: PolyArg,
        #[arg(long)]
        seed: String,
    },
    /// Multiplicative order of A(f) for a permutation polynomial.
    Order(PolyArg),
    /// Eigenvalues of A(f) over the splitting extension.
    Diagonalize(PolyArg),
    /// Whether f commutes with bx + a.
    Commute {
        #[command(flatten)]
        poly: PolyArg,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Run the randomized invariant checks on the field.
    Selftest {
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Corrupt A(f) in one check; the report must then fail.
        #[arg(long)]
        inject_fault: bool,
    },
}

enum Failure {
    Parse(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type CmdResult = Result<Outcome, Failure>;

/// Text lines and the JSON fields of a finished command, plus its exit code.
struct Outcome {
    text: Vec<String>,
    fields: Map<String, Value>,
    code: i32,
}

impl Outcome {
    fn new() -> Self {
        Outcome {
            text: Vec::new(),
            fields: Map::new(),
            code: 0,
        }
    }

    fn line(mut self, s: impl Into<String>) -> Self {
        self.text.push(s.into());
        self
    }

    fn field(mut self, k: &str, v: Value) -> Self {
        self.fields.insert(k.to_string(), v);
        self
    }
}

struct Env {
    ctx: FieldCtx,
    pretty: bool,
}

impl Env {
    fn show(&self, a: Elem) -> String {
        self.ctx.format(a, self.pretty)
    }

    fn poly(&self, s: &str) -> Result<(ReducedPoly, PolyFormat), Failure> {
        parse_poly(&self.ctx, s).map_err(Failure::Parse)
    }

    fn elem(&self, s: &str) -> Result<Elem, Failure> {
        parse_elem(&self.ctx, s).map_err(Failure::Parse)
    }
}

fn ints(v: &[Elem]) -> Value {
    json!(v.iter().map(|e| e.value()).collect::<Vec<_>>())
}

fn big(n: u128) -> Value {
    match u64::try_from(n) {
        Ok(v) => json!(v),
        Err(_) => json!(n.to_string()),
    }
}

/// Runs one invocation, reading the size cap override from the environment.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let env = std::env::var(SIZE_CAP_ENV).ok();
    run_with_env(args, env.as_deref(), out, err)
}

/// [`run`] with the `POWMAT_SIZE_CAP` value passed in.
pub fn run_with_env<I, T>(
    args: I,
    size_cap_env: Option<&str>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{rendered}");
                    0
                }
                _ => {
                    let _ = write!(err, "{rendered}");
                    2
                }
            };
        }
    };
    let json_mode = cli.json;
    let (command_name, result) = dispatch(cli, size_cap_env);
    match result {
        Ok(outcome) => {
            if json_mode {
                let mut obj = outcome.fields;
                obj.insert("schema_version".into(), json!(SCHEMA_VERSION));
                obj.insert("command".into(), json!(command_name));
                let _ = writeln!(out, "{}", Value::Object(obj));
            } else {
                for line in &outcome.text {
                    let _ = writeln!(out, "{line}");
                }
            }
            outcome.code
        }
        Err(Failure::Parse(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Domain(e)) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn build_ctx(cli: &Cli, size_cap_env: Option<&str>) -> Result<FieldCtx, Failure> {
    let spec = cli
        .field
        .as_deref()
        .ok_or_else(|| Failure::Parse("--field is required".into()))?;
    let (p, n) = parse_field_spec(spec).map_err(Failure::Parse)?;
    let modulus = cli
        .modulus
        .as_deref()
        .map(parse_modulus)
        .transpose()
        .map_err(Failure::Parse)?;
    let cap = resolve_size_cap(cli.size_cap, size_cap_env).map_err(Failure::Parse)?;
    // an unusable field description is an input error, not a computation
    FieldCtx::with_cap(p, n, modulus.as_deref(), cap).map_err(|e| Failure::Parse(e.to_string()))
}

fn dispatch(cli: Cli, size_cap_env: Option<&str>) -> (&'static str, CmdResult) {
    let name = match &cli.command {
        Command::Matrix(_) => "matrix",
        Command::Rank(_) => "rank",
        Command::Census(_) => "census",
        Command::Count { .. } => "count",
        Command::IsPerm(_) => "is-perm",
        Command::Invert(_) => "invert",
        Command::Compose { .. } => "compose",
        Command::Cycles(_) => "cycles",
        Command::Period { .. } => "period",
        Command::Order(_) => "order",
        Command::Diagonalize(_) => "diagonalize",
        Command::Commute { .. } => "commute",
        Command::Selftest { .. } => "selftest",
    };
    let ctx = match build_ctx(&cli, size_cap_env) {
        Ok(ctx) => ctx,
        Err(e) => return (name, Err(e)),
    };
    let env = Env {
        ctx,
        pretty: cli.pretty,
    };
    (name, execute(&env, &cli.command))
}

fn execute(env: &Env, command: &Command) -> CmdResult {
    let outcome = match command {
        Command::Selftest {
            samples,
            seed,
            inject_fault,
        } => return Ok(selftest(env, *samples, *seed, *inject_fault).with_field(&env.ctx)),
        Command::Matrix(p) => matrix(env, &p.poly)?,
        Command::Rank(p) => rank(env, &p.poly)?,
        Command::Census(p) => census(env, &p.poly)?,
        Command::Count { poly, value } => count(env, &poly.poly, value)?,
        Command::IsPerm(p) => is_perm(env, &p.poly)?,
        Command::Invert(p) => invert(env, &p.poly)?,
        Command::Compose { poly, with } => compose(env, &poly.poly, with)?,
        Command::Cycles(p) => cycles(env, &p.poly)?,
        Command::Period { poly, seed } => period(env, &poly.poly, seed)?,
        Command::Order(p) => order(env, &p.poly)?,
        Command::Diagonalize(p) => diag(env, &p.poly)?,
        Command::Commute { poly, a, b } => commute(env, &poly.poly, a, b)?,
    };
    Ok(outcome.with_field(&env.ctx))
}

impl Outcome {
    fn with_field(self, ctx: &FieldCtx) -> Self {
        let out = self.field("field", json!(field_label(ctx)));
        match ctx.modulus() {
            Some(m) => out.field("modulus", json!(m)),
            None => out,
        }
    }

    fn with_poly(self, f: &ReducedPoly, fmt: PolyFormat) -> Self {
        self.field("poly", json!(format_poly(f, fmt)))
    }
}

fn matrix(env: &Env, s: &str) -> CmdResult {
    let (f, fmt) = env.poly(s)?;
    let a = PowerMatrix::build_direct(&f);
    let m = a.as_matrix();
    let mut out = Outcome::new().with_poly(&f, fmt);
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(|&e| env.show(e)).collect();
        out = out.line(row.join(" "));
    }
    Ok(out.field("matrix", json!(m.to_rows())))
}

fn rank(env: &Env, s: &str) -> CmdResult {
    let (f, fmt) = env.poly(s)?;
    let r = PowerMatrix::build_direct(&f).rank();
    Ok(Outcome::new()
        .with_poly(&f, fmt)
        .line(r.to_string())
        .field("rank", json!(r)))
}

fn census(env: &Env, s: &str) -> CmdResult {
    let (f, fmt) = env.poly(s)?;
    let c = census_brute(&f);
    let size = c.size;
    let rank = PowerMatrix::build_direct(&f).rank();
    // A(f_0) is the zero matrix, so the zero polynomial is the one exception
    if !f.is_zero() && rank != size {
        return Err(
            Error::InvariantViolation(format!("rank {rank} differs from |V_f| = {size}")).into(),
        );
    }
    let min = match minimum_value_set(&f) {
        Ok(m) => Some(m),
        Err(Error::DegreeZero) => None,
        Err(e) => return Err(e.into()),
    };
    let probe = gap_bound_probe(&f);

    let mut out = Outcome::new()
        .with_poly(&f, fmt)
        .line(format!("size: {size}"))
        .line("multiplicity:");
    for v in env.ctx.elements() {
        out = out.line(format!("  {} {}", env.show(v), c.multiplicity_of(v)));
    }
    out = out.line(match &min {
        Some(m) => format!(
            "min_value_set: {} (degree {}, bound {})",
            m.is_minimum, m.degree, m.bound
        ),
        None => "min_value_set: undefined for constant polynomials".to_string(),
    });
    out = out.line(format!(
        "gap_bound: L_f = {}, L_f + 2 = {}, holds = {}",
        probe.gaps.max_gap, probe.bound, probe.holds
    ));
    let multiplicity: Vec<Value> = env
        .ctx
        .elements()
        .map(|v| json!({"value": v.value(), "count": c.multiplicity_of(v)}))
        .collect();
    Ok(out
        .field("size", json!(size))
        .field("rank", json!(rank))
        .field("multiplicity", Value::Array(multiplicity))
        .field(
            "min_value_set",
            min.as_ref().map_or(Value::Null, |m| json!(m.is_minimum)),
        )
        .field(
            "gap_bound",
            json!({"L_f": probe.gaps.max_gap, "bound": probe.bound, "holds": probe.holds}),
        ))
}

fn count(env: &Env, s: &str, value: &str) -> CmdResult {
    let (f, fmt) = env.poly(s)?;
    let c = env.elem(value)?;
    let nonzero = konig_rados_count(&f, c);
    let total = nonzero + usize::from(f.coeff(0) == c);
    Ok(Outcome::new()
        .with_poly(&f, fmt)
        .line(format!("nonzero_solutions: {nonzero}"))
        .line(format!("solutions: {total}"))
        .field("value", json!(c.value()))
        .field("nonzero_solutions", json!(nonzero))
        .field("solutions", json!(total)))
}

fn is_perm(env: &Env, s: &str) -> CmdResult {
    let (f, fmt) = env.poly(s)?;
    let perm = PowerMatrix::build_direct(&f).hermite_last_row();
    Ok(Outcome::new()
        .with_poly(&f, fmt)
        .line(perm.to_string())
        .field("permutation", json!(perm)))
}

fn invert(env: &Env, s: &str) -> CmdResult {
    let (f, fmt) = env.poly(s)?;
    let g = PowerMatrix::build_direct(&f).inverse_polynomial()?;
    let text = format_poly(&g, fmt);
    Ok(Outcome::new()
        .with_poly(&f, fmt)
        .line(text.clone())
        .field("inverse", json!(text)))
}

fn compose(env: &Env, s: &str, with: &str) -> CmdResult {
    let (f, fmt) = env.poly(s)?;
    let (g, gfmt) = env.poly(with)?;
    let h = g.compose(&f)?;
    let text = format_poly(&h, fmt);
    Ok(Outcome::new()
        .with_poly(&f, fmt)
        .line(text.clone())
        .field("with", json!(format_poly(&g, gfmt)))
        .field("composition", json!(text)))
}

fn cycles(env: &Env, s: &str) -> CmdResult {
    let (f, fmt) = env.poly(s)?;
    let graph = FunctionalGraph::build(&f);
    let dec = graph.cycle_decomposition();
    let shown: Vec<String> = dec
        .cycles
        .iter()
        .map(|c| {
            format!(
                "({})",
                c.iter().map(|&e| env.show(e)).collect::<Vec<_>>().join(" ")
            )
        })
        .collect();
    let leaves: Vec<String> = dec.leaves.iter().map(|&e| env.show(e)).collect();
    let lengths = dec.lengths();
    Ok(Outcome::new()
        .with_poly(&f, fmt)
        .line(format!("cycles: {}", shown.join(" ")))
        .line(format!(
            "lengths: {}",
            lengths
                .iter()
                .map(usize::to_string)
                .collect::<Vec<_>>()
                .join(" ")
        ))
        .line(format!("leaves: {}", leaves.join(" ")))
        .line(format!("max_tail: {}", graph.max_tail()))
        .line(format!("permutation: {}", graph.is_permutation()))
        .field(
            "cycles",
            json!(dec.cycles.iter().map(|c| ints(c)).collect::<Vec<_>>()),
        )
        .field("lengths", json!(lengths))
        .field("leaves", ints(&dec.leaves))
        .field("max_tail", json!(graph.max_tail()))
        .field("permutation", json!(graph.is_permutation())))
}

fn period(env: &Env, s: &str, seed: &str) -> CmdResult {
    let (f, fmt) = env.poly(s)?;
    let a0 = env.elem(seed)?;
    let sa = sequence_period(&f, a0);
    Ok(Outcome::new()
        .with_poly(&f, fmt)
        .line(format!("preperiod: {}", sa.preperiod))
        .line(format!("period: {}", sa.period))
        .field("seed", json!(a0.value()))
        .field("preperiod", json!(sa.preperiod))
        .field("period", json!(sa.period)))
}

fn order(env: &Env, s: &str) -> CmdResult {
    let (f, fmt) = env.poly(s)?;
    let k = matrix_order(&f)?;
    Ok(Outcome::new()
        .with_poly(&f, fmt)
        .line(k.to_string())
        .field("order", big(k)))
}

fn diag(env: &Env, s: &str) -> CmdResult {
    let (f, fmt) = env.poly(s)?;
    let out = Outcome::new().with_poly(&f, fmt);
    match diagonalize(&f) {
        Ok(d) => {
            let k = d.field();
            let eig = d.eigenvalues();
            let modulus = k.modulus().map(|m| m.to_vec());
            let shown: Vec<String> = eig.iter().map(|&e| k.format(e, env.pretty)).collect();
            Ok(out
                .line(format!("diagonalizable: {}", d.diagonalizable))
                .line(format!("m: {}", d.degree()))
                .line(format!("extension: {}", field_label(k)))
                .line(format!(
                    "extension_modulus: {}",
                    modulus.as_ref().map_or("none".to_string(), |m| {
                        m.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
                    })
                ))
                .line(format!("eigenvalues: {}", shown.join(" ")))
                .field("diagonalizable", json!(d.diagonalizable))
                .field("m", json!(d.degree()))
                .field("extension", json!(field_label(k)))
                .field(
                    "extension_modulus",
                    modulus.map_or(Value::Null, |m| json!(m)),
                )
                .field("eigenvalues", ints(&eig)))
        }
        Err(e @ (Error::NotDiagonalizableInput { .. } | Error::PCharObstruction { .. })) => Ok(out
            .line("diagonalizable: false")
            .line(format!("reason: {e}"))
            .field("diagonalizable", json!(false))
            .field("m", Value::Null)
            .field("extension_modulus", Value::Null)
            .field("eigenvalues", Value::Null)
            .field("reason", json!(e.to_string()))),
        Err(e) => Err(e.into()),
    }
}

fn commute(env: &Env, s: &str, a: &str, b: &str) -> CmdResult {
    let (f, fmt) = env.poly(s)?;
    let (a, b) = (env.elem(a)?, env.elem(b)?);
    let closed = commutes_with_linear(&f, a, b)?;
    let pointwise = commutes_pointwise(&f, a, b);
    if closed != pointwise {
        return Err(
            Error::InvariantViolation("closed form disagrees with evaluation".into()).into(),
        );
    }
    Ok(Outcome::new()
        .with_poly(&f, fmt)
        .line(closed.to_string())
        .field("a", json!(a.value()))
        .field("b", json!(b.value()))
        .field("commutes", json!(closed)))
}

fn selftest(env: &Env, samples: usize, seed: u64, inject_fault: bool) -> Outcome {
    let cfg = SelftestConfig {
        samples,
        seed,
        inject_fault,
    };
    let report = run_selftest(&env.ctx, &cfg);
    let verdict = if report.passed() { "PASS" } else { "FAIL" };
    let checks: Vec<Value> = report
        .checks
        .iter()
        .map(|c| {
            json!({
                "name": c.name,
                "cases": c.cases,
                "skipped": c.skipped,
                "failures": c.failures,
                "witness": c.witness,
                "report_only": c.report_only,
                "passed": c.passed(),
            })
        })
        .collect();
    let mut out = Outcome::new();
    for line in report.lines() {
        out = out.line(line);
    }
    out = out.line(format!("selftest field {}: {verdict}", report.field));
    out.code = if report.passed() { 0 } else { 1 };
    out.field("samples", json!(samples))
        .field("seed", json!(seed))
        .field("checks", Value::Array(checks))
        .field("passed", json!(report.passed()))
}
