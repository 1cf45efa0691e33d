//! The `pell` command line: argument parsing, command handlers and record
//! output (human text or one JSON object per line).
//!
//! Exit codes: 0 success, 2 invalid input, 3 no solution, 4 internal
//! cross-check failure.

use std::io::{BufRead, Write};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::{BigInt, BigUint};
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::cf::{cf_expand_with, convergents, CfConfig, CfExpansion, QuadIrrational, DEFAULT_MAX_PERIOD};
use crate::deviation::Flag;
use crate::errata::{errata_report, GridBounds};
use crate::error::Error;
use crate::forms::{self, QForm};
use crate::matrix::Mat2;
use crate::oracle;
use crate::pell::{PellN, PellSolution, PellSolver};
use crate::special::{self, Family, Sign, SpecialD};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_NO_SOLUTION: i32 = 3;
pub const EXIT_CROSS_CHECK: i32 = 4;

#[derive(Parser, Debug, Clone)]
#[command(
    name = "pell",
    version,
    about = "Exact Pell-equation, continued-fraction and quadratic-form toolkit"
)]
pub struct Cli {
    /// Emit one JSON record per invocation
    #[arg(long, global = true)]
    pub json: bool,
    /// Read one invocation per line from standard input
    #[arg(long, global = true)]
    pub batch: bool,
    /// Cap on the number of P/Q states in a period
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_PERIOD)]
    pub max_period: usize,
    /// Largest y scanned by `brute`
    #[arg(long, global = true, default_value_t = 1000)]
    pub y_max: u64,
    /// Include wall-clock time in the record
    #[arg(long, global = true)]
    pub timing: bool,
    /// Corrupts emitted solutions so the re-verification path can be exercised
    #[arg(long, global = true, hide = true)]
    pub corrupt_output: bool,
    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Continued fraction of sqrt(d), or of (p0 + sqrt d)/q0
    #[command(allow_negative_numbers = true)]
    Cf {
        d: String,
        #[arg(long)]
        p0: Option<String>,
        #[arg(long)]
        q0: Option<String>,
        /// Also list this many convergents
        #[arg(long, default_value_t = 0)]
        convergents: usize,
    },
    /// First solutions of x^2 - dy^2 = N, N in {1, -1, 4, -4}
    #[command(allow_negative_numbers = true)]
    Solve {
        d: String,
        n: String,
        #[arg(long, default_value_t = 1)]
        count: usize,
    },
    /// Closed forms for d = a^2k b^2l ± i c^m, checked against the generic solvers
    Special {
        a: u64,
        b: u64,
        c: u64,
        k: u32,
        l: u32,
        m: u32,
        i: u8,
        /// + or -
        #[arg(allow_hyphen_values = true)]
        sign: String,
        #[arg(long, value_enum, default_value_t = Show::All)]
        show: Show,
        #[arg(long, default_value_t = 3)]
        count: usize,
    },
    /// Binary quadratic form (a, b, c): reduction, cycles, automorphism test
    #[command(allow_negative_numbers = true)]
    Form {
        a: String,
        b: String,
        c: String,
        #[arg(long, value_enum, default_value_t = Action::Reduce)]
        action: Action,
        /// Matrix entries r s t u for auto-check
        g: Vec<String>,
    },
    /// Check a claimed solution of x^2 - dy^2 = N
    #[command(allow_negative_numbers = true)]
    Verify { d: String, n: String, x: String, y: String },
    /// Exhaustive search for y <= --y-max
    #[command(allow_negative_numbers = true)]
    Brute { d: String, n: String },
    /// Stated closed forms that disagree with computation over a parameter grid
    Errata {
        #[arg(long, default_value_t = 5)]
        abc_max: u64,
        #[arg(long, default_value_t = 3)]
        exp_max: u32,
        #[arg(long = "i", value_delimiter = ',', default_values_t = [1u8, 2])]
        i_values: Vec<u8>,
        #[arg(long = "sign", value_delimiter = ',', default_values_t = ["+".to_string(), "-".to_string()], allow_hyphen_values = true)]
        signs: Vec<String>,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Show {
    Cf,
    Fundamental,
    Lucas,
    Matrix,
    All,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Action {
    Reduce,
    Cycle,
    ProperCycle,
    AutoCheck,
}

/// A handler failure with its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    status: &'static str,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let (code, status) = match e {
            Error::NoSolution { .. } => (EXIT_NO_SOLUTION, "no_solution"),
            _ => (EXIT_INVALID, "invalid_input"),
        };
        Failure {
            code,
            status,
            message: e.to_string(),
        }
    }
}

fn invalid(msg: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_INVALID,
        status: "invalid_input",
        message: msg.into(),
    }
}

/// Per-invocation state: configuration plus the cross-check ledger.
struct Ctx {
    solver: PellSolver,
    y_max: u64,
    corrupt: bool,
    failures: Vec<String>,
    flags: Vec<Flag>,
}

impl Ctx {
    /// Renders a solution after re-verifying it independently.
    fn solution(&mut self, s: &PellSolution) -> Value {
        let x = if self.corrupt { &s.x + 1u32 } else { s.x.clone() };
        if !oracle::verify_solution(&s.d, i64::from(s.n_value), &x, &s.y) {
            self.failures
                .push(format!("({}, {}) fails x^2 - {}y^2 = {}", x, s.y, s.d, s.n_value));
        }
        json!({"n": s.index.to_string(), "x": x.to_string(), "y": s.y.to_string()})
    }

    fn solutions(&mut self, v: &[PellSolution]) -> Value {
        Value::Array(v.iter().map(|s| self.solution(s)).collect())
    }

    fn optional(&mut self, s: &Option<PellSolution>) -> Value {
        s.as_ref().map_or(Value::Null, |s| self.solution(s))
    }

    /// Records a comparison between a closed form and the generic result.
    fn check<T: PartialEq + std::fmt::Display>(&mut self, what: &str, closed: &T, generic: &T) -> Value {
        if closed == generic {
            Value::from("match")
        } else {
            self.failures
                .push(format!("{what}: closed form {closed} != generic {generic}"));
            Value::from("mismatch")
        }
    }

    fn flag(&mut self, flags: impl IntoIterator<Item = Flag>) {
        for f in flags {
            if !self.flags.contains(&f) {
                self.flags.push(f);
            }
        }
    }
}

fn nat(s: &str, name: &str) -> Result<BigUint, Failure> {
    s.parse::<BigUint>()
        .map_err(|_| invalid(format!("{name} must be a nonnegative integer, got {s:?}")))
}

fn int(s: &str, name: &str) -> Result<BigInt, Failure> {
    s.parse::<BigInt>()
        .map_err(|_| invalid(format!("{name} must be an integer, got {s:?}")))
}

fn small_int(s: &str, name: &str) -> Result<i64, Failure> {
    s.parse::<i64>()
        .map_err(|_| invalid(format!("{name} must be a machine integer, got {s:?}")))
}

fn strings<T: ToString>(v: &[T]) -> Value {
    Value::Array(v.iter().map(|t| Value::from(t.to_string())).collect())
}

fn form_value(f: &QForm) -> Value {
    strings(&[&f.a, &f.b, &f.c])
}

fn matrix_value(m: &Mat2) -> Value {
    json!([
        [m.m11.to_string(), m.m12.to_string()],
        [m.m21.to_string(), m.m22.to_string()]
    ])
}

fn cf_value(cf: &CfExpansion) -> Value {
    json!({
        "expansion": cf.to_string(),
        "a0": cf.a0.to_string(),
        "preperiod": strings(&cf.preperiod),
        "period": strings(&cf.period),
        "period_length": cf.period_len().to_string(),
    })
}

type Outcome = Result<Map<String, Value>, Failure>;

fn cmd_cf(ctx: &mut Ctx, d: &str, p0: Option<&str>, q0: Option<&str>, count: usize, cfg: &CfConfig) -> Outcome {
    let d = nat(d, "d")?;
    let x = match (p0, q0) {
        (None, None) => QuadIrrational::sqrt(d)?,
        (p, q) => QuadIrrational::new(int(p.unwrap_or("0"), "p0")?, int(q.unwrap_or("1"), "q0")?, d)?,
    };
    let cf = cf_expand_with(&x, cfg)?;
    let mut out = Map::new();
    out.insert(
        "normalized".into(),
        strings(&[
            x.numerator_shift().to_string(),
            x.denominator().to_string(),
            x.radicand().to_string(),
        ]),
    );
    if let Value::Object(m) = cf_value(&cf) {
        out.extend(m);
    }
    if p0.is_none() && q0.is_none() {
        let period = &cf.period;
        let terminal = period
            .last()
            .map(|t| crate::arith::to_int(t) == &cf.a0 * 2)
            .unwrap_or(false);
        let inner = &period[..period.len() - 1];
        let palindrome = inner.iter().eq(inner.iter().rev());
        out.insert("terminal_2a0".into(), Value::from(terminal));
        out.insert("palindrome".into(), Value::from(palindrome));
        if !terminal || !palindrome {
            ctx.failures
                .push("sqrt expansion lacks terminal 2a0 or palindrome".into());
        }
    }
    if count > 0 {
        let conv: Vec<Value> = convergents(&cf, count)
            .iter()
            .map(|c| json!({"k": c.index.to_string(), "p": c.p.to_string(), "q": c.q.to_string()}))
            .collect();
        out.insert("convergents".into(), Value::Array(conv));
    }
    Ok(out)
}

fn cmd_solve(ctx: &mut Ctx, d: &str, n: &str, count: usize) -> Outcome {
    let d = nat(d, "d")?;
    let n = PellN::try_from(small_int(n, "N")?)?;
    if count == 0 {
        return Err(invalid("--count must be at least 1"));
    }
    let sols = ctx.solver.solve(&d, n, count)?;
    let mut out = Map::new();
    out.insert("solutions".into(), ctx.solutions(&sols));
    if let Some(first) = sols.first() {
        let certified = oracle::certify_fundamental(&d, i64::from(n.value()), &first.x, &first.y);
        out.insert("fundamental_certified".into(), Value::from(certified));
        if !certified {
            ctx.failures.push(format!("{first} is not certified fundamental"));
        }
    }
    Ok(out)
}

fn parse_sign(s: &str) -> Result<Sign, Failure> {
    s.parse::<Sign>().map_err(Failure::from)
}

fn special_cf(ctx: &mut Ctx, sd: &SpecialD) -> Result<Value, Failure> {
    let generic = cf_expand_with(&QuadIrrational::sqrt(sd.d().clone())?, &ctx.solver.cf)?;
    let mut v = Map::new();
    v.insert("generic".into(), Value::from(generic.to_string()));
    match special::predicted_cf(sd) {
        Ok(p) => {
            v.insert("predicted".into(), Value::from(p.value.to_string()));
            let check = ctx.check("continued fraction", &p.value, &generic);
            v.insert("check".into(), check);
            let pattern_len = match sd.family() {
                Family::D1Plus | Family::D2Plus => 2,
                Family::D1Minus | Family::D2Minus => 4,
            };
            if p.value.period_len() < pattern_len {
                let note = format!(
                    "pattern period of length {pattern_len} collapses to {}",
                    p.value.period_len()
                );
                v.insert("collapse".into(), Value::from(note));
            }
            ctx.flag(p.flags);
        }
        Err(Error::PatternInapplicable(why)) => {
            v.insert("predicted".into(), Value::Null);
            v.insert("check".into(), Value::from("inapplicable"));
            v.insert("note".into(), Value::from(why));
        }
        Err(e) => return Err(e.into()),
    }
    Ok(Value::Object(v))
}

fn negative_value(ctx: &mut Ctx, st: &special::NegativeStatus) -> Value {
    let printed = ctx.optional(&st.printed);
    let fundamental = ctx.optional(&st.fundamental);
    ctx.flag(st.flags.clone());
    json!({"stated": printed, "fundamental": fundamental})
}

fn special_fundamental(ctx: &mut Ctx, sd: &SpecialD) -> Result<Value, Failure> {
    let solver = ctx.solver;
    let closed = special::fundamental_special(sd);
    let generic = solver.fundamental_pm1(sd.d())?;
    let mut v = Map::new();
    v.insert("plus_one".into(), ctx.solution(&closed.value));
    let check = ctx.check("+1 fundamental", &closed.value, &generic.plus_one);
    v.insert("plus_one_check".into(), check);
    ctx.flag(closed.flags);
    let neg1 = special::neg1_status(sd, &solver)?;
    v.insert("minus_one".into(), negative_value(ctx, &neg1));
    let four = special::fundamental_4_special(sd, &solver)?;
    v.insert("plus_four".into(), ctx.solution(&four.value));
    let generic4 = solver.fundamental_4(sd.d())?;
    let check = ctx.check("+4 fundamental", &four.value, &generic4);
    v.insert("plus_four_check".into(), check);
    ctx.flag(four.flags);
    let neg4 = special::neg4_status(sd, &solver)?;
    v.insert("minus_four".into(), negative_value(ctx, &neg4));
    Ok(Value::Object(v))
}

fn special_lucas(ctx: &mut Ctx, sd: &SpecialD, count: usize) -> Result<Value, Failure> {
    let solver = ctx.solver;
    let l1 = special::solutions_lucas_1(sd, count);
    let chain1 = solver.solutions(sd.d(), PellN::One, count)?;
    let l4 = special::solutions_lucas_4(sd, count, &solver)?;
    let chain4 = solver.solutions_4(sd.d(), PellN::Four, count)?;
    let mut v = Map::new();
    v.insert("plus_one".into(), ctx.solutions(&l1.value));
    let c1 = ctx.check("+1 Lucas chain", &Chain(&l1.value), &Chain(&chain1));
    v.insert("plus_one_check".into(), c1);
    v.insert("plus_four".into(), ctx.solutions(&l4.value));
    let c4 = ctx.check("+4 Lucas chain", &Chain(&l4.value), &Chain(&chain4));
    v.insert("plus_four_check".into(), c4);
    ctx.flag(l1.flags);
    ctx.flag(l4.flags);
    Ok(Value::Object(v))
}

fn special_matrix(ctx: &mut Ctx, sd: &SpecialD, count: usize) -> Result<Value, Failure> {
    let m = special::pell_matrix(sd);
    let mut v = Map::new();
    v.insert("matrix".into(), matrix_value(&m));
    v.insert("det".into(), Value::from(m.det().to_string()));
    let via: Vec<PellSolution> = (1..=count as u64)
        .map(|n| special::nth_solution_via_matrix(sd, n))
        .collect();
    v.insert("solutions".into(), ctx.solutions(&via));
    let chain = ctx.solver.solutions(sd.d(), PellN::One, count)?;
    let check = ctx.check("matrix chain", &Chain(&via), &Chain(&chain));
    v.insert("solutions_check".into(), check);
    let n = count as u64;
    let closed = special::matrix_power_closed(sd, n);
    v.insert(
        "power".into(),
        json!({"n": n.to_string(), "matrix": matrix_value(&closed)}),
    );
    let check = ctx.check("closed matrix power", &closed, &m.pow(n));
    v.insert("power_check".into(), check);
    Ok(Value::Object(v))
}

/// Display wrapper so solution lists can go through [`Ctx::check`].
#[derive(PartialEq)]
struct Chain<'a>(&'a [PellSolution]);

impl std::fmt::Display for Chain<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(", "))
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_special(
    ctx: &mut Ctx,
    a: u64,
    b: u64,
    c: u64,
    k: u32,
    l: u32,
    m: u32,
    i: u8,
    sign: &str,
    show: Show,
    count: usize,
) -> Outcome {
    let sign = parse_sign(sign)?;
    let sd = special::build_special(a, b, c, k, l, m, i, sign)?;
    if count == 0 {
        return Err(invalid("--count must be at least 1"));
    }
    let mut out = Map::new();
    out.insert("family".into(), Value::from(sd.family().name()));
    out.insert("d".into(), Value::from(sd.d().to_string()));
    out.insert("h".into(), Value::from(sd.h().to_string()));
    let sf = match sd.is_squarefree(special::DEFAULT_SQUAREFREE_BOUND) {
        Some(true) => "yes",
        Some(false) => "no",
        None => "unknown",
    };
    out.insert("squarefree".into(), Value::from(sf));
    let all = show == Show::All;
    if all || show == Show::Cf {
        out.insert("cf".into(), special_cf(ctx, &sd)?);
    }
    if all || show == Show::Fundamental {
        out.insert("fundamental".into(), special_fundamental(ctx, &sd)?);
    }
    if all || show == Show::Lucas {
        out.insert("lucas".into(), special_lucas(ctx, &sd, count)?);
    }
    if all || show == Show::Matrix {
        out.insert("matrix".into(), special_matrix(ctx, &sd, count)?);
    }
    Ok(out)
}

fn cmd_form(ctx: &mut Ctx, a: &str, b: &str, c: &str, action: Action, g: &[String]) -> Outcome {
    let f = QForm::new(int(a, "a")?, int(b, "b")?, int(c, "c")?);
    let mut out = Map::new();
    out.insert("discriminant".into(), Value::from(forms::discriminant(&f).to_string()));
    match action {
        Action::Reduce => {
            let r = forms::reduce(&f)?;
            out.insert("reduced".into(), form_value(&r.form));
            out.insert("step_count".into(), Value::from(r.steps.len().to_string()));
            let steps: Vec<Value> = r
                .steps
                .iter()
                .map(|(f, r)| json!({"form": form_value(f), "r": r.to_string()}))
                .collect();
            out.insert("steps".into(), Value::Array(steps));
        }
        Action::Cycle | Action::ProperCycle => {
            let start = forms::reduce(&f)?;
            if !start.steps.is_empty() {
                out.insert("reduced_from_input".into(), form_value(&start.form));
            }
            let cyc = if action == Action::Cycle {
                forms::cycle(&start.form)?
            } else {
                let base = forms::cycle(&start.form)?;
                let proper = forms::proper_cycle(&start.form)?;
                let expected = if base.len() % 2 == 1 {
                    2 * base.len()
                } else {
                    base.len()
                };
                if proper.len() != expected {
                    ctx.failures.push("proper cycle violates the 2l / l length law".into());
                }
                proper
            };
            out.insert("forms".into(), Value::Array(cyc.forms.iter().map(form_value).collect()));
            out.insert("length".into(), Value::from(cyc.len().to_string()));
        }
        Action::AutoCheck => {
            if g.len() != 4 {
                return Err(invalid("auto-check needs four matrix entries r s t u"));
            }
            let e: Vec<BigInt> = g.iter().map(|s| int(s, "matrix entry")).collect::<Result<_, _>>()?;
            let m = Mat2::new(e[0].clone(), e[1].clone(), e[2].clone(), e[3].clone());
            let image = forms::gamma_action(&m, &f)?;
            out.insert("matrix".into(), matrix_value(&m));
            out.insert("det".into(), Value::from(m.det().to_string()));
            out.insert("image".into(), form_value(&image));
            out.insert(
                "automorphism".into(),
                Value::from(forms::is_automorphism(&m, &f).name()),
            );
        }
    }
    Ok(out)
}

fn cmd_verify(ctx: &mut Ctx, d: &str, n: &str, x: &str, y: &str) -> Outcome {
    let (d, x, y) = (nat(d, "d")?, nat(x, "x")?, nat(y, "y")?);
    let n = small_int(n, "N")?;
    let valid = oracle::verify_solution(&d, n, &x, &y);
    let mut out = Map::new();
    out.insert("valid".into(), Value::from(valid));
    let nonsquare = crate::cf::check_radicand(&d).is_ok();
    if valid && nonsquare && PellN::try_from(n).is_ok() {
        out.insert(
            "fundamental".into(),
            Value::from(oracle::certify_fundamental(&d, n, &x, &y)),
        );
    }
    let _ = ctx;
    Ok(out)
}

fn cmd_brute(ctx: &mut Ctx, d: &str, n: &str) -> Outcome {
    let d = nat(d, "d")?;
    let n = small_int(n, "N")?;
    let found = oracle::brute_pell(&d, n, ctx.y_max);
    let mut out = Map::new();
    out.insert("y_max".into(), Value::from(ctx.y_max.to_string()));
    out.insert("solutions".into(), ctx.solutions(&found));
    Ok(out)
}

fn cmd_errata(ctx: &mut Ctx, abc_max: u64, exp_max: u32, i_values: &[u8], signs: &[String]) -> Outcome {
    if let Some(bad) = i_values.iter().find(|&&i| i != 1 && i != 2) {
        return Err(invalid(format!("i must be 1 or 2, got {bad}")));
    }
    let signs = signs.iter().map(|s| parse_sign(s)).collect::<Result<Vec<_>, _>>()?;
    let bounds = GridBounds {
        abc_max,
        exp_max,
        i_values: i_values.to_vec(),
        signs,
    };
    let report = errata_report(&bounds, &ctx.solver)?;
    let entries: Vec<Value> = report
        .entries
        .iter()
        .map(|e| {
            let inst: Vec<Value> = e
                .instances
                .iter()
                .map(|i| json!({"params": i.params, "d": i.d.to_string(), "stated": i.printed, "computed": i.computed}))
                .collect();
            json!({
                "deviation": e.deviation.slug(),
                "summary": e.deviation.summary(),
                "count": e.instances.len().to_string(),
                "instances": inst,
            })
        })
        .collect();
    let mut out = Map::new();
    out.insert("grid_points".into(), Value::from(report.points.to_string()));
    out.insert("entries".into(), Value::Array(entries));
    Ok(out)
}

fn describe(cmd: &Command) -> (&'static str, Value) {
    match cmd {
        Command::Cf { d, p0, q0, convergents } => (
            "cf",
            json!({"d": d, "p0": p0, "q0": q0, "convergents": convergents.to_string()}),
        ),
        Command::Solve { d, n, count } => ("solve", json!({"d": d, "n": n, "count": count.to_string()})),
        Command::Special {
            a,
            b,
            c,
            k,
            l,
            m,
            i,
            sign,
            show,
            count,
        } => (
            "special",
            json!({
                "a": a.to_string(), "b": b.to_string(), "c": c.to_string(),
                "k": k.to_string(), "l": l.to_string(), "m": m.to_string(),
                "i": i.to_string(), "sign": sign,
                "show": value_name(*show), "count": count.to_string(),
            }),
        ),
        Command::Form { a, b, c, action, g } => (
            "form",
            json!({"a": a, "b": b, "c": c, "action": value_name(*action), "g": g}),
        ),
        Command::Verify { d, n, x, y } => ("verify", json!({"d": d, "n": n, "x": x, "y": y})),
        Command::Brute { d, n } => ("brute", json!({"d": d, "n": n})),
        Command::Errata {
            abc_max,
            exp_max,
            i_values,
            signs,
        } => (
            "errata",
            json!({
                "abc_max": abc_max.to_string(), "exp_max": exp_max.to_string(),
                "i": strings(i_values), "sign": signs,
            }),
        ),
    }
}

fn value_name<T: ValueEnum>(v: T) -> String {
    v.to_possible_value()
        .map(|p| p.get_name().to_string())
        .unwrap_or_default()
}

/// One finished invocation.
pub struct Record {
    pub exit_code: i32,
    pub value: Value,
}

fn dispatch(cli: &Cli, cmd: &Command, ctx: &mut Ctx) -> Outcome {
    let cfg = CfConfig {
        max_period: cli.max_period,
    };
    match cmd {
        Command::Cf { d, p0, q0, convergents } => cmd_cf(ctx, d, p0.as_deref(), q0.as_deref(), *convergents, &cfg),
        Command::Solve { d, n, count } => cmd_solve(ctx, d, n, *count),
        Command::Special {
            a,
            b,
            c,
            k,
            l,
            m,
            i,
            sign,
            show,
            count,
        } => cmd_special(ctx, *a, *b, *c, *k, *l, *m, *i, sign, *show, *count),
        Command::Form { a, b, c, action, g } => cmd_form(ctx, a, b, c, *action, g),
        Command::Verify { d, n, x, y } => cmd_verify(ctx, d, n, x, y),
        Command::Brute { d, n } => cmd_brute(ctx, d, n),
        Command::Errata {
            abc_max,
            exp_max,
            i_values,
            signs,
        } => cmd_errata(ctx, *abc_max, *exp_max, i_values, signs),
    }
}

pub fn run_command(cli: &Cli, cmd: &Command) -> Record {
    let start = Instant::now();
    let mut ctx = Ctx {
        solver: PellSolver::new(CfConfig {
            max_period: cli.max_period,
        }),
        y_max: cli.y_max,
        corrupt: cli.corrupt_output,
        failures: Vec::new(),
        flags: Vec::new(),
    };
    let (name, inputs) = describe(cmd);
    let outcome = dispatch(cli, cmd, &mut ctx);
    let (code, status, results, error) = match outcome {
        Ok(results) if ctx.failures.is_empty() => (EXIT_OK, "ok", results, None),
        Ok(results) => (
            EXIT_CROSS_CHECK,
            "cross_check_failed",
            results,
            Some(ctx.failures.join("; ")),
        ),
        Err(f) => (f.code, f.status, Map::new(), Some(f.message)),
    };
    let flags: Vec<Value> = ctx
        .flags
        .iter()
        .map(|f| json!({"deviation": f.deviation.slug(), "stated": f.printed, "computed": f.computed}))
        .collect();
    let mut rec = Map::new();
    rec.insert("command".into(), Value::from(name));
    rec.insert("inputs".into(), inputs);
    rec.insert("status".into(), Value::from(status));
    rec.insert("exit_code".into(), Value::from(code));
    rec.insert("results".into(), Value::Object(results));
    rec.insert("deviation_flags".into(), Value::Array(flags));
    if let Some(e) = error {
        rec.insert("error".into(), Value::from(e));
    }
    if cli.timing {
        let us = start.elapsed().as_micros();
        rec.insert("timing".into(), json!({"elapsed_us": us.to_string()}));
    }
    Record {
        exit_code: code,
        value: Value::Object(rec),
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("none".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) => {
            // a solution or a flat list of scalars renders inline
            if let Some(s) = solution_text(v) {
                return Some(s);
            }
            let parts: Option<Vec<String>> = items.iter().map(|i| solution_text(i).or_else(|| flat(i))).collect();
            parts.map(|p| format!("[{}]", p.join(", ")))
        }
        Value::Object(_) => solution_text(v),
    }
}

fn flat(v: &Value) -> Option<String> {
    match v {
        Value::Array(items) => {
            let parts: Option<Vec<String>> = items.iter().map(flat).collect();
            parts.map(|p| format!("({})", p.join(", ")))
        }
        Value::Object(_) => None,
        other => scalar(other),
    }
}

fn solution_text(v: &Value) -> Option<String> {
    let o = v.as_object()?;
    if o.len() == 3 && o.contains_key("x") && o.contains_key("y") && o.contains_key("n") {
        Some(format!("({}, {})", o["x"].as_str()?, o["y"].as_str()?))
    } else {
        None
    }
}

fn render_human(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                match scalar(val) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render_human(val, indent + 1, out);
                    }
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                match scalar(item) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        render_human(item, indent + 1, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
    }
}

pub fn format_record(rec: &Record, as_json: bool) -> String {
    if as_json {
        let mut s = serde_json::to_string(&rec.value).expect("values serialize");
        s.push('\n');
        s
    } else {
        let mut s = String::new();
        render_human(&rec.value, 0, &mut s);
        s
    }
}

/// Splits a batch line into arguments; double quotes group words.
fn split_line(line: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut quoted = false;
    let mut any = false;
    for ch in line.chars() {
        match ch {
            '"' => {
                quoted = !quoted;
                any = true;
            }
            c if c.is_whitespace() && !quoted => {
                if any {
                    out.push(std::mem::take(&mut cur));
                    any = false;
                }
            }
            c => {
                cur.push(c);
                any = true;
            }
        }
    }
    if any {
        out.push(cur);
    }
    out
}

fn parse_error_record(line: &str, message: String) -> Record {
    Record {
        exit_code: EXIT_INVALID,
        value: json!({
            "command": Value::Null,
            "inputs": {"line": line},
            "status": "invalid_input",
            "exit_code": EXIT_INVALID,
            "results": {},
            "deviation_flags": [],
            "error": message,
        }),
    }
}

fn batch_line(outer: &Cli, line: &str) -> Record {
    let mut args = vec!["pell".to_string()];
    args.extend(["--max-period".to_string(), outer.max_period.to_string()]);
    args.extend(["--y-max".to_string(), outer.y_max.to_string()]);
    if outer.timing {
        args.push("--timing".into());
    }
    if outer.corrupt_output {
        args.push("--corrupt-output".into());
    }
    args.extend(split_line(line));
    match Cli::try_parse_from(&args) {
        Ok(inner) => match &inner.command {
            Some(cmd) if !inner.batch => run_command(&inner, cmd),
            Some(_) => parse_error_record(line, "--batch cannot be nested".into()),
            None => parse_error_record(line, "missing command".into()),
        },
        Err(e) => parse_error_record(line, e.to_string().trim().to_string()),
    }
}

/// Worst code wins: cross-check failure, then invalid input, then no solution.
fn combine(codes: impl Iterator<Item = i32>) -> i32 {
    let rank = |c: i32| match c {
        EXIT_CROSS_CHECK => 3,
        EXIT_INVALID => 2,
        EXIT_NO_SOLUTION => 1,
        _ => 0,
    };
    codes
        .max_by_key(|&c| rank(c))
        .filter(|&c| rank(c) > 0)
        .unwrap_or(EXIT_OK)
}

pub fn run_batch(cli: &Cli, input: impl BufRead, mut out: impl Write) -> std::io::Result<i32> {
    let lines: Vec<String> = input
        .lines()
        .collect::<std::io::Result<Vec<_>>>()?
        .into_iter()
        .filter(|l| {
            let t = l.trim();
            !t.is_empty() && !t.starts_with('#')
        })
        .collect();
    let records: Vec<Record> = lines.par_iter().map(|l| batch_line(cli, l)).collect();
    for r in &records {
        out.write_all(format_record(r, true).as_bytes())?;
    }
    Ok(combine(records.iter().map(|r| r.exit_code)))
}

/// Entry point shared by the binary and the tests.
pub fn main_with_args<I, T>(args: I, stdin: impl BufRead, mut stdout: impl Write, mut stderr: impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(stdout, "{text}");
                return EXIT_OK;
            }
            let _ = write!(stderr, "{text}");
            return EXIT_INVALID;
        }
    };
    if cli.batch {
        if cli.command.is_some() {
            let _ = writeln!(
                stderr,
                "error: --batch reads commands from standard input; give no command"
            );
            return EXIT_INVALID;
        }
        return match run_batch(&cli, stdin, &mut stdout) {
            Ok(code) => code,
            Err(e) => {
                let _ = writeln!(stderr, "error: {e}");
                EXIT_INVALID
            }
        };
    }
    let Some(cmd) = cli.command.clone() else {
        let _ = writeln!(stderr, "error: no command given (try --help)");
        return EXIT_INVALID;
    };
    let rec = run_command(&cli, &cmd);
    let _ = stdout.write_all(format_record(&rec, cli.json).as_bytes());
    rec.exit_code
}
