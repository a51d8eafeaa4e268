//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 when `verify` (or `replay`) finds a
//! disagreement, 2 on invalid input.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::{Map, Number, Value};

use crate::dimension::{dim2, dim3, quad, DimensionResult, QuadStatus};
use crate::lattice::{DivisorClass, WeylWord};
use crate::minus_one::{enumerate_minus_one, is_minus_one_class};
use crate::notation::ClassExpression;
use crate::oracle::{oracle_h0, verify_class, DEFAULT_PRIME, DEFAULT_SEED, DEFAULT_TRIALS};
use crate::reduction::pre_standard_form;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DISAGREE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "fatpoints",
    version,
    about = "Dimensions of linear systems with fat points in very general position"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct ClassArgs {
    /// Dimension of the projective space.
    #[arg(long = "n")]
    n: Option<usize>,
    /// Emit JSON instead of plain text.
    #[arg(long)]
    json: bool,
    /// `d m1 m2 ...` or `Ln(d; m1^a1, ...)`.
    #[arg(required = true, num_args = 1.., allow_negative_numbers = true)]
    class: Vec<String>,
}

#[derive(Args, Debug)]
struct OracleArgs {
    #[arg(long = "p", default_value_t = DEFAULT_PRIME)]
    p: u64,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_TRIALS)]
    trials: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Pre-standard form of a class and the word reaching it.
    Std(ClassArgs),
    /// h^0 of a plane class.
    Dim2(ClassArgs),
    /// h^0 of a space class.
    Dim3(ClassArgs),
    /// Standard class with q > 0 and the same h^0.
    Quad(ClassArgs),
    /// Decide whether a class is a (-1)-class.
    MinusOne(ClassArgs),
    /// List all (-1)-classes up to a degree bound.
    Enumerate {
        #[arg(long = "n")]
        n: usize,
        #[arg(long = "r")]
        r: usize,
        #[arg(long)]
        dmax: u64,
        #[arg(long)]
        json: bool,
    },
    /// Generic h^0 by interpolation rank modulo a prime.
    Oracle {
        #[command(flatten)]
        class: ClassArgs,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// Compare dim2/dim3 with the interpolation oracle.
    Verify {
        #[command(flatten)]
        class: ClassArgs,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// Replay a fixtures file of `command | expected-output` lines.
    Replay { file: PathBuf },
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn invalid(message: impl ToString) -> Self {
        Self {
            code: EXIT_INVALID,
            message: message.to_string(),
        }
    }
}

fn parse(args: &ClassArgs, default_n: Option<usize>) -> Result<DivisorClass, Failure> {
    let expr = ClassExpression::from_tokens(&args.class).map_err(Failure::invalid)?;
    let flag = args.n.or(if expr.ambient_dim().is_none() { default_n } else { None });
    expr.to_class(flag).map_err(Failure::invalid)
}

fn number(v: &BigInt) -> Value {
    Value::Number(v.to_string().parse::<Number>().expect("integer literal"))
}

fn class_json(class: &DivisorClass) -> Map<String, Value> {
    let mut map = Map::new();
    map.insert("n".into(), Value::from(class.ambient_dim()));
    map.insert("degree".into(), number(class.degree()));
    map.insert("mults".into(), Value::Array(class.mults().iter().map(number).collect()));
    map
}

fn word_json(word: &WeylWord) -> Value {
    Value::Array(word.moves().iter().map(|m| Value::from(m.to_string())).collect())
}

fn dimension_json(result: &DimensionResult) -> Map<String, Value> {
    let mut map = class_json(&result.reduced);
    map.insert("h0".into(), number(&result.h0));
    map.insert("chi".into(), number(&result.chi));
    map.insert("expected".into(), number(&result.expected));
    map.insert("basis".into(), Value::from(result.basis.as_str()));
    map
}

fn emit_json(out: &mut dyn Write, map: Map<String, Value>) -> std::io::Result<()> {
    writeln!(out, "{}", Value::Object(map))
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    let io = |e: std::io::Error| Failure {
        code: EXIT_INVALID,
        message: e.to_string(),
    };
    match command {
        Command::Std(args) => {
            let class = parse(&args, None)?;
            let report = pre_standard_form(&class);
            if args.json {
                let mut map = class_json(&report.result);
                map.insert("word".into(), word_json(&report.word));
                map.insert("status".into(), Value::from(report.status.as_str()));
                emit_json(out, map).map_err(io)?;
            } else {
                writeln!(out, "{}", report.result).map_err(io)?;
            }
        }
        Command::Dim2(args) => {
            let class = parse(&args, Some(2))?;
            let result = dim2(&class).map_err(Failure::invalid)?;
            write_dimension(out, &result, args.json).map_err(io)?;
        }
        Command::Dim3(args) => {
            let class = parse(&args, Some(3))?;
            let result = dim3(&class).map_err(Failure::invalid)?;
            write_dimension(out, &result, args.json).map_err(io)?;
        }
        Command::Quad(args) => {
            let class = parse(&args, Some(3))?;
            let outcome = quad(&class).map_err(Failure::invalid)?;
            if args.json {
                let mut map = class_json(&outcome.class);
                map.insert("status".into(), Value::from(outcome.status.as_str()));
                emit_json(out, map).map_err(io)?;
            } else if outcome.status == QuadStatus::NotEffective {
                writeln!(out, "NotEffective").map_err(io)?;
            } else {
                writeln!(out, "{}", outcome.class).map_err(io)?;
            }
        }
        Command::MinusOne(args) => {
            let class = parse(&args, None)?;
            let cert = is_minus_one_class(&class);
            let status = cert.failure_reason.map_or("Accepted", |r| r.as_str());
            if args.json {
                let mut map = class_json(&class);
                map.insert("word".into(), word_json(&cert.word));
                map.insert("status".into(), Value::from(status));
                emit_json(out, map).map_err(io)?;
            } else {
                writeln!(out, "{}", cert.verdict).map_err(io)?;
                if let Some(reason) = cert.failure_reason {
                    writeln!(out, "reason {}", reason.as_str()).map_err(io)?;
                }
                for step in &cert.chain {
                    writeln!(out, "{step}").map_err(io)?;
                }
            }
        }
        Command::Enumerate { n, r, dmax, json } => {
            if n < 2 {
                return Err(Failure::invalid(format!(
                    "ambient dimension must be at least 2, got {n}"
                )));
            }
            if r == 0 {
                return Err(Failure::invalid("--r must be at least 1"));
            }
            let set = enumerate_minus_one(n, r, dmax);
            for class in set.iter() {
                if json {
                    emit_json(out, class_json(&class)).map_err(io)?;
                } else {
                    writeln!(out, "{class}").map_err(io)?;
                }
            }
        }
        Command::Oracle { class, oracle } => {
            let parsed = parse(&class, None)?;
            let h0 = oracle_h0(&parsed, oracle.p, oracle.seed, oracle.trials).map_err(Failure::invalid)?;
            if class.json {
                let mut map = class_json(&parsed);
                map.insert("h0".into(), Value::from(h0));
                emit_json(out, map).map_err(io)?;
            } else {
                writeln!(out, "{h0}").map_err(io)?;
            }
        }
        Command::Verify { class, oracle } => {
            let parsed = parse(&class, None)?;
            let report = verify_class(&parsed, oracle.p, oracle.seed, oracle.trials).map_err(Failure::invalid)?;
            let verdict = if report.agree { "agree" } else { "disagree" };
            if class.json {
                let mut map = dimension_json(&report.algorithm);
                map.insert("status".into(), Value::from(verdict));
                map.insert("oracle_h0".into(), number(&report.oracle_h0));
                emit_json(out, map).map_err(io)?;
            } else {
                writeln!(
                    out,
                    "{verdict} oracle={} algorithm={} basis={}",
                    report.oracle_h0,
                    report.algorithm.h0,
                    report.algorithm.basis.as_str()
                )
                .map_err(io)?;
            }
            if !report.agree {
                return Ok(EXIT_DISAGREE);
            }
        }
        Command::Replay { file } => {
            let text =
                std::fs::read_to_string(&file).map_err(|e| Failure::invalid(format!("{}: {e}", file.display())))?;
            let results = replay_sessions(&text);
            let mut failed = 0;
            for r in &results {
                if r.passed {
                    writeln!(out, "ok   {}", r.command).map_err(io)?;
                } else {
                    failed += 1;
                    writeln!(
                        out,
                        "FAIL {}: expected `{}`, got `{}`",
                        r.command,
                        r.expected,
                        r.actual.trim()
                    )
                    .map_err(io)?;
                }
            }
            writeln!(out, "{} sessions, {} failed", results.len(), failed).map_err(io)?;
            if failed > 0 {
                return Ok(EXIT_DISAGREE);
            }
        }
    }
    Ok(EXIT_OK)
}

fn write_dimension(out: &mut dyn Write, result: &DimensionResult, json: bool) -> std::io::Result<()> {
    if json {
        emit_json(out, dimension_json(result))
    } else {
        writeln!(out, "{}", result.h0)
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
                return EXIT_INVALID;
            }
            let _ = write!(out, "{rendered}");
            return EXIT_OK;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(failure) => {
            let _ = writeln!(err, "error: {}", failure.message);
            failure.code
        }
    }
}

/// Outcome of one fixtures line.
#[derive(Clone, Debug)]
pub struct SessionResult {
    pub command: String,
    pub expected: String,
    pub actual: String,
    pub exit_code: i32,
    pub passed: bool,
}

/// Splits a command line on whitespace, keeping double-quoted runs together.
pub fn split_command(line: &str) -> Vec<String> {
    let mut words = Vec::new();
    let mut current = String::new();
    let mut quoted = false;
    let mut has_word = false;
    for c in line.chars() {
        match c {
            '"' => {
                quoted = !quoted;
                has_word = true;
            }
            c if c.is_whitespace() && !quoted => {
                if has_word {
                    words.push(std::mem::take(&mut current));
                    has_word = false;
                }
            }
            c => {
                current.push(c);
                has_word = true;
            }
        }
    }
    if has_word {
        words.push(current);
    }
    words
}

/// Tokens with brackets and commas removed, so `[0, -1]` matches `0 -1`.
pub fn output_tokens(text: &str) -> Vec<String> {
    text.split(|c: char| c.is_whitespace() || c == '[' || c == ']' || c == ',')
        .filter(|t| !t.is_empty())
        .map(str::to_string)
        .collect()
}

/// Runs every `command | expected-output` line; blank lines and `#` comments
/// are skipped.
pub fn replay_sessions(text: &str) -> Vec<SessionResult> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|line| {
            let (command, expected) = line.rsplit_once('|').unwrap_or((line, ""));
            let (command, expected) = (command.trim().to_string(), expected.trim().to_string());
            let mut args = vec!["fatpoints".to_string()];
            args.extend(split_command(&command));
            let mut out = Vec::new();
            let mut err = Vec::new();
            let exit_code = run(args, &mut out, &mut err);
            let actual = String::from_utf8_lossy(&out).into_owned();
            let passed = exit_code != EXIT_INVALID && output_tokens(&actual) == output_tokens(&expected);
            SessionResult {
                command,
                expected,
                actual,
                exit_code,
                passed,
            }
        })
        .collect()
}
