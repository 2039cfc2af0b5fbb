//! Command-line front end for `powertower-core`.
//!
//! Every command builds one JSON envelope
//! `{"command", "inputs", "result" | "error"}`. With `--json` the envelope is
//! printed as a single line; otherwise it is flattened to `key: value` lines,
//! with floats at 17 significant digits and errors on stderr.

use std::io::Write;

use clap::{Args, CommandFactory, Parser, Subcommand};
use powertower_core::{
    bracket_tower, classify_xx_target, lambert_w0, log_construction_pair, lord_pair, solve_tower,
    solve_via_lambert, sweep, triple_sqrt_power, verify_pair, witness, BaseKind, Bracket,
    ClassificationKind, Error, Height, InequalityId, NamedConstant, PowerPair, Rational,
    TowerEquation,
};
use serde_json::{json, Map, Value};

/// Successful run.
pub const EXIT_OK: i32 = 0;
/// Domain or validation error, including bad command-line usage.
pub const EXIT_INVALID: i32 = 2;
/// The solver ran out of iterations.
pub const EXIT_NO_CONVERGENCE: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "powertower",
    version,
    about = "Solve x^x = y and x^(x^x) = y, sweep the bounding inequalities, and build irrational-power witnesses"
)]
struct Cli {
    /// Emit a single JSON object instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct Target {
    /// Target y (must exceed 1).
    #[arg(long, allow_negative_numbers = true)]
    y: Option<f64>,
    /// Target given as ln y, for values of y beyond double range.
    #[arg(long = "log-y", allow_negative_numbers = true)]
    log_y: Option<f64>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve the tower equation of the given height.
    Solve {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        height: u8,
        #[command(flatten)]
        target: Target,
        /// Tolerance on the log-space residual, scaled by max(1, |rhs|).
        #[arg(long, default_value_t = 1e-12, allow_negative_numbers = true)]
        tol: f64,
        #[arg(long = "max-iter", default_value_t = 200)]
        max_iter: u32,
    },
    /// Print the certified starting bracket.
    Bracket {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        height: u8,
        #[command(flatten)]
        target: Target,
    },
    /// Principal branch of the Lambert W function.
    Lambert {
        #[arg(long, allow_negative_numbers = true)]
        z: f64,
    },
    /// Seeded sweep of an inequality margin.
    Sweep {
        #[arg(long, value_parser = ["lemma3", "lemma4a", "lemma4b", "witness-g"])]
        inequality: String,
        #[arg(long, allow_negative_numbers = true)]
        lo: f64,
        #[arg(long, allow_negative_numbers = true)]
        hi: f64,
        #[arg(long)]
        samples: u64,
        #[arg(long)]
        seed: u64,
    },
    /// sqrt(p) raised to log_sqrt(p)(m/n).
    LordPair {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        n: u64,
    },
    /// Base from {e, pi, sqrt:<int>} raised to log_base(c).
    Pair {
        #[arg(long)]
        base: String,
        /// Rational target as `a/b` or an integer.
        #[arg(long)]
        c: String,
    },
    /// Exact value of ((sqrt n)^(sqrt n))^(sqrt n).
    TripleSqrt {
        #[arg(long)]
        n: u64,
    },
    /// Decide whether x^x = y has a rational solution.
    Classify {
        /// Rational target as `a/b` or an integer.
        #[arg(long)]
        y: String,
    },
}

/// Failure of a command, mapped to an error code and exit status.
#[derive(Debug)]
enum Failure {
    Core(Error),
    Invalid(String),
    NoConvergence(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn code(&self) -> &'static str {
        match self {
            Failure::Core(e) => e.code(),
            Failure::Invalid(_) => "INVALID_ARGUMENT",
            Failure::NoConvergence(_) => "NO_CONVERGENCE",
        }
    }

    fn exit_code(&self) -> i32 {
        match self {
            Failure::NoConvergence(_) => EXIT_NO_CONVERGENCE,
            _ => EXIT_INVALID,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Core(e) => e.to_string(),
            Failure::Invalid(m) | Failure::NoConvergence(m) => m.clone(),
        }
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let mut rendered = e.render().to_string();
            return if e.use_stderr() {
                if !rendered.contains("Usage:") {
                    let usage = Cli::command().render_usage().to_string();
                    rendered = format!("{}\n\n{usage}\n", rendered.trim_end());
                }
                let _ = write!(err, "{rendered}");
                EXIT_INVALID
            } else {
                let _ = write!(out, "{rendered}");
                EXIT_OK
            };
        }
    };

    let (name, inputs, outcome) = execute(&cli.command);
    let mut envelope = Map::new();
    envelope.insert("command".into(), Value::from(name));
    envelope.insert("inputs".into(), inputs);
    let code = match &outcome {
        Ok(result) => {
            envelope.insert("result".into(), result.clone());
            EXIT_OK
        }
        Err(f) => {
            envelope.insert(
                "error".into(),
                json!({ "code": f.code(), "message": f.message() }),
            );
            f.exit_code()
        }
    };
    let envelope = Value::Object(envelope);

    let written = if cli.json {
        serde_json::to_string(&envelope)
            .map_err(std::io::Error::other)
            .and_then(|s| writeln!(out, "{s}"))
    } else {
        write_text(&envelope, out, err)
    };
    if written.is_err() {
        return EXIT_INVALID;
    }
    code
}

fn execute(command: &Command) -> (&'static str, Value, Result<Value, Failure>) {
    match command {
        Command::Solve {
            height,
            target,
            tol,
            max_iter,
        } => {
            let mut inputs = target_inputs(*height, target);
            if let Value::Object(m) = &mut inputs {
                m.insert("tol".into(), json!(tol));
                m.insert("max_iter".into(), json!(max_iter));
            }
            ("solve", inputs, run_solve(*height, target, *tol, *max_iter))
        }
        Command::Bracket { height, target } => (
            "bracket",
            target_inputs(*height, target),
            equation(*height, target)
                .and_then(|eq| Ok(bracket_json(&bracket_tower(eq.height(), eq.log_y())?))),
        ),
        Command::Lambert { z } => (
            "lambert",
            json!({ "z": z }),
            lambert_w0(*z)
                .map(|w| json!({ "w": w, "identity_residual": w * w.exp() - z }))
                .map_err(Failure::from),
        ),
        Command::Sweep {
            inequality,
            lo,
            hi,
            samples,
            seed,
        } => (
            "sweep",
            json!({ "inequality": inequality, "lo": lo, "hi": hi, "samples": samples, "seed": seed }),
            run_sweep(inequality, *lo, *hi, *samples, *seed),
        ),
        Command::LordPair { p, m, n } => (
            "lord-pair",
            json!({ "p": p, "m": m, "n": n }),
            lord_pair(*p, *m, *n)
                .map(|pair| pair_json(&pair))
                .map_err(Failure::from),
        ),
        Command::Pair { base, c } => ("pair", json!({ "base": base, "c": c }), run_pair(base, c)),
        Command::TripleSqrt { n } => (
            "triple-sqrt",
            json!({ "n": n }),
            triple_sqrt_power(*n)
                .map(|t| {
                    json!({
                        "n": t.n,
                        "exact": t.exact.to_string(),
                        "approx": t.approx,
                        "is_rational": t.is_rational,
                    })
                })
                .map_err(Failure::from),
        ),
        Command::Classify { y } => ("classify", json!({ "y": y }), run_classify(y)),
    }
}

fn target_inputs(height: u8, target: &Target) -> Value {
    match (target.y, target.log_y) {
        (Some(y), _) => json!({ "height": height, "y": y }),
        (None, log_y) => json!({ "height": height, "log_y": log_y }),
    }
}

fn equation(height: u8, target: &Target) -> Result<TowerEquation, Failure> {
    let height = Height::try_from(height)?;
    let eq = match (target.y, target.log_y) {
        (Some(y), None) => TowerEquation::from_y(height, y)?,
        (None, Some(log_y)) => TowerEquation::new(height, log_y)?,
        _ => {
            return Err(Failure::Invalid(
                "exactly one of --y and --log-y is required".into(),
            ))
        }
    };
    Ok(eq)
}

fn run_solve(height: u8, target: &Target, tol: f64, max_iter: u32) -> Result<Value, Failure> {
    let eq = equation(height, target)?;
    let s = solve_tower(&eq, tol, max_iter)?;
    if !s.converged {
        return Err(Failure::NoConvergence(format!(
            "no convergence after {} iterations; best x = {:.16e}, residual = {:.16e}",
            s.iterations, s.x, s.residual
        )));
    }
    let mut result = json!({
        "x": s.x,
        "residual": s.residual,
        "iterations": s.iterations,
        "converged": s.converged,
        "bracket": bracket_json(&s.bracket),
    });
    if eq.height() == Height::One {
        if let Value::Object(m) = &mut result {
            m.insert("lambert_x".into(), json!(solve_via_lambert(eq.log_y())?));
        }
    }
    Ok(result)
}

fn bracket_json(b: &Bracket) -> Value {
    json!({ "lo": b.lo, "hi": b.hi, "provenance": b.provenance.as_str() })
}

fn run_sweep(name: &str, lo: f64, hi: f64, samples: u64, seed: u64) -> Result<Value, Failure> {
    let id = InequalityId::parse(name)
        .ok_or_else(|| Failure::Invalid(format!("unknown inequality {name}")))?;
    let r = sweep(id, lo, hi, samples, seed)?;
    Ok(json!({
        "inequality": r.inequality.as_str(),
        "samples": r.samples,
        "domain_lo": r.domain_lo,
        "domain_hi": r.domain_hi,
        "min_margin": r.min_margin,
        "argmin": r.argmin,
        "all_positive": r.all_positive,
        "seed": r.seed,
    }))
}

fn pair_json(pair: &PowerPair) -> Value {
    json!({
        "base": pair.base.to_string(),
        "target": pair.target.to_string(),
        "base_value": pair.base_value,
        "exponent_value": pair.exponent_value,
        "certified": pair.certified,
        "verify_residual": verify_pair(pair),
    })
}

fn parse_base(s: &str) -> Result<BaseKind, Failure> {
    match s {
        "e" => Ok(BaseKind::Constant(NamedConstant::E)),
        "pi" => Ok(BaseKind::Constant(NamedConstant::Pi)),
        _ => {
            let k: u64 = s
                .strip_prefix("sqrt:")
                .and_then(|k| k.parse().ok())
                .ok_or_else(|| {
                    Failure::Invalid(format!("base must be e, pi or sqrt:<int>, got {s}"))
                })?;
            if witness::is_prime(k)? {
                Ok(BaseKind::SqrtPrime(k))
            } else {
                Ok(BaseKind::SqrtNonsquare(k))
            }
        }
    }
}

fn run_pair(base: &str, c: &str) -> Result<Value, Failure> {
    let base = parse_base(base)?;
    let c: Rational = c.parse()?;
    Ok(pair_json(&log_construction_pair(base, &c)?))
}

fn run_classify(y: &str) -> Result<Value, Failure> {
    let y: Rational = y.parse()?;
    let c = classify_xx_target(&y)?;
    let (kind, n) = match c.kind {
        ClassificationKind::RationalSolution(n) => ("rational_solution", Value::from(n)),
        ClassificationKind::IrrationalSolution => ("irrational_solution", Value::Null),
    };
    Ok(json!({ "y": c.y.to_string(), "kind": kind, "n": n }))
}

/// Formats a float with 17 significant digits.
pub fn format_float(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        v.to_string()
    }
}

fn write_text(envelope: &Value, out: &mut dyn Write, err: &mut dyn Write) -> std::io::Result<()> {
    if let Some(e) = envelope.get("error") {
        let code = e["code"].as_str().unwrap_or_default();
        let message = e["message"].as_str().unwrap_or_default();
        return writeln!(err, "error[{code}]: {message}");
    }
    writeln!(
        out,
        "command: {}",
        envelope["command"].as_str().unwrap_or_default()
    )?;
    let mut lines = Vec::new();
    flatten("", &envelope["inputs"], &mut lines);
    for (key, value) in &lines {
        writeln!(out, "input.{key}: {value}")?;
    }
    lines.clear();
    flatten("", &envelope["result"], &mut lines);
    for (key, value) in &lines {
        writeln!(out, "{key}: {value}")?;
    }
    Ok(())
}

fn flatten(prefix: &str, value: &Value, lines: &mut Vec<(String, String)>) {
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten(&key, v, lines);
            }
        }
        Value::Number(n) if n.is_f64() => lines.push((
            prefix.to_string(),
            format_float(n.as_f64().unwrap_or(f64::NAN)),
        )),
        Value::String(s) => lines.push((prefix.to_string(), s.clone())),
        other => lines.push((prefix.to_string(), other.to_string())),
    }
}
