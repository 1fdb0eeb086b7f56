//! The `qsim` command line.
//!
//! Every subcommand prints either a text histogram or, with `--json`, one
//! report object:
//!
//! ```text
//! {"algorithm": str, "parameters": {..}, "answer": any,
//!  "distribution": [{"bitstring": str, "value": number}],
//!  "seed": int, "shots": int|null, "wall_time_ms": number}
//! ```
//!
//! Exit status is 0 on success, 1 when the algorithm itself fails and 2 on
//! bad input.

use std::io::Write;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::algorithms::{self, qft, qpe, shor, ShorMode, Variant};
use crate::circuit::unitary_of;
use crate::error::{Error, Result};
use crate::gates::Matrix;
use crate::numtheory::best_order_candidate;
use crate::oracles::{
    synth_bit_oracle, synth_bv_oracle, synth_bv_phase_oracle, synth_multi_oracle, BooleanExpr, TruthTable,
};
use crate::qstate::{bitstring, parse_bits, Distribution};

#[derive(Parser, Debug)]
#[command(name = "qsim", version, about = "State-vector simulator for textbook quantum algorithms")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct Common {
    /// RNG seed for every sampled measurement.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Report sampled counts instead of exact probabilities.
    #[arg(long, global = true)]
    pub shots: Option<u64>,
    /// Print one JSON report.
    #[arg(long, global = true)]
    pub json: bool,
    /// Number of distribution entries to report.
    #[arg(long, global = true, default_value_t = 16)]
    pub top: usize,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ModeArg {
    Lv,
    Mc,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Deutsch's algorithm on f given as the two bits f(0)f(1).
    Deutsch {
        #[arg(long)]
        f: String,
        #[arg(long)]
        economical: bool,
    },
    /// Deutsch–Jozsa on f given as 2^n output bits or a truth-table file.
    Dj {
        #[arg(long, conflicts_with = "table", required_unless_present = "table")]
        f: Option<String>,
        #[arg(long)]
        table: Option<String>,
    },
    /// Bernstein–Vazirani for the hidden string s.
    Bv {
        #[arg(long)]
        s: String,
        #[arg(long)]
        economical: bool,
    },
    /// Simon's algorithm for a hidden s or a two-to-one truth table.
    Simon {
        #[arg(long, conflicts_with = "table", required_unless_present = "table")]
        s: Option<String>,
        #[arg(long)]
        table: Option<String>,
        #[arg(long, default_value_t = 10)]
        max_restarts: u32,
    },
    /// Grover search over n qubits.
    Grover {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        marked: String,
        #[arg(long)]
        economical: bool,
        /// Iteration count instead of ⌊(π/4)√(N/m)⌋.
        #[arg(long)]
        t: Option<u64>,
    },
    /// SAT via Grover on an expression over a..z with ! & ^ |.
    Sat {
        #[arg(long)]
        expr: String,
        /// Number of satisfying assignments, if known.
        #[arg(long)]
        m: Option<u64>,
    },
    /// Shor's factoring algorithm.
    Shor {
        #[arg(long = "N")]
        n_mod: u64,
        #[arg(long)]
        a: Option<u64>,
        #[arg(long, value_enum, default_value = "lv")]
        mode: ModeArg,
        #[arg(long, default_value_t = 32)]
        max_rounds: u64,
    },
    /// Discrete logarithm log_a b mod N when the order of a is a power of two.
    Dlog {
        #[arg(long = "N")]
        n_mod: u64,
        #[arg(long)]
        a: u64,
        #[arg(long)]
        b: u64,
    },
    /// Order finding by phase estimation.
    QpeOrder {
        #[arg(long = "N")]
        n_mod: u64,
        #[arg(long)]
        a: u64,
    },
    /// Quantum counting of the marked set.
    Count {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "")]
        marked: String,
        #[arg(long)]
        m: Option<usize>,
    },
    /// Compares the QFT circuit with the DFT matrix.
    QftCheck {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct DistEntry {
    pub bitstring: String,
    pub value: f64,
}

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct RunReport {
    pub algorithm: String,
    pub parameters: Value,
    pub answer: Value,
    pub distribution: Vec<DistEntry>,
    pub seed: u64,
    pub shots: Option<u64>,
    pub wall_time_ms: f64,
}

/// What a subcommand produced before formatting.
struct Outcome {
    algorithm: &'static str,
    parameters: Value,
    answer: Value,
    distribution: Option<Distribution>,
    success: bool,
}

impl Outcome {
    fn new(algorithm: &'static str, parameters: Value, answer: Value, distribution: Option<Distribution>) -> Self {
        Self { algorithm, parameters, answer, distribution, success: true }
    }

    fn failed_if(mut self, failed: bool) -> Self {
        self.success = !failed;
        self
    }
}

/// Parses `argv` (program name first) and runs it, writing to `out` and `err`.
pub fn run_cli<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let start = Instant::now();
    let outcome = match execute(&cli) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return match e {
                Error::Domain(_) | Error::Resource(_) => 2,
                Error::InsufficientData(_) | Error::Internal(_) => 1,
            };
        }
    };
    let report = match build_report(&cli.common, outcome.algorithm, &outcome, start) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 2;
        }
    };
    let written = if cli.common.json {
        serde_json::to_string_pretty(&report).map_err(std::io::Error::other).and_then(|s| writeln!(out, "{s}"))
    } else {
        write_text(out, &report)
    };
    if written.is_err() {
        return 1;
    }
    if outcome.success {
        0
    } else {
        1
    }
}

fn build_report(common: &Common, algorithm: &str, o: &Outcome, start: Instant) -> Result<RunReport> {
    let dist = match (&o.distribution, common.shots) {
        (Some(d), Some(shots)) => Some(d.sample(shots, &mut ChaCha8Rng::seed_from_u64(common.seed))?),
        (d, _) => d.clone(),
    };
    let distribution = dist
        .map(|d| {
            d.sorted_entries()
                .into_iter()
                .take(common.top)
                .map(|(x, v)| DistEntry { bitstring: bitstring(x, d.width()), value: v })
                .collect()
        })
        .unwrap_or_default();
    Ok(RunReport {
        algorithm: algorithm.to_string(),
        parameters: o.parameters.clone(),
        answer: o.answer.clone(),
        distribution,
        seed: common.seed,
        shots: common.shots,
        wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

fn write_text(out: &mut dyn Write, r: &RunReport) -> std::io::Result<()> {
    writeln!(out, "{}  {}", r.algorithm, r.parameters)?;
    writeln!(out, "answer: {}", r.answer)?;
    let max = r.distribution.iter().map(|e| e.value).fold(0.0, f64::max);
    for e in &r.distribution {
        let bar = if max > 0.0 { (e.value / max * 40.0).round() as usize } else { 0 };
        let value = if r.shots.is_some() { format!("{:>8}", e.value) } else { format!("{:>8.5}", e.value) };
        writeln!(out, "{}  {}  {}", e.bitstring, value, "#".repeat(bar))?;
    }
    Ok(())
}

fn bits_value(x: u64, width: usize) -> Value {
    Value::String(bitstring(x, width))
}

fn parse_csv(s: &str) -> Result<Vec<u64>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| match t.strip_prefix("0b") {
            Some(bits) => parse_bits(bits).map(|(x, _)| x),
            None => t.parse::<u64>().map_err(|_| Error::Domain(format!("not an integer: {t:?}"))),
        })
        .collect()
}

fn read_table(path: &str) -> Result<TruthTable> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Domain(format!("{path}: {e}")))?;
    TruthTable::parse(&text)
}

fn outputs_table(bits: &str) -> Result<TruthTable> {
    let (_, len) = parse_bits(bits)?;
    if !len.is_power_of_two() || len < 2 {
        return Err(Error::Domain("need 2^n output bits".into()));
    }
    let n = len.trailing_zeros() as usize;
    let b = bits.as_bytes();
    TruthTable::from_fn(n, 1, |x| (b[x as usize] == b'1') as u64)
}

fn execute(cli: &Cli) -> Result<Outcome> {
    let seed = cli.common.seed;
    Ok(match &cli.command {
        Command::Deutsch { f, economical } => {
            let t = outputs_table(f)?;
            if t.n_in() != 1 {
                return Err(Error::Domain("Deutsch takes exactly two bits f(0)f(1)".into()));
            }
            let r = algorithms::deutsch(&t, *economical)?;
            Outcome::new(
                "deutsch",
                json!({"f": f, "economical": economical}),
                json!(r.answer),
                r.exact_distribution,
            )
        }
        Command::Dj { f, table } => {
            let t = match (f, table) {
                (Some(bits), _) => outputs_table(bits)?,
                (None, Some(path)) => read_table(path)?,
                (None, None) => unreachable!("clap enforces one of --f/--table"),
            };
            let r = algorithms::deutsch_jozsa(&synth_bit_oracle(&t)?, t.n_in())?;
            Outcome::new("dj", json!({"n": t.n_in(), "f": f, "table": table}), json!(r.answer), r.exact_distribution)
        }
        Command::Bv { s, economical } => {
            let (sv, n) = parse_bits(s)?;
            let oracle = if *economical { synth_bv_phase_oracle(sv, n)? } else { synth_bv_oracle(sv, n)? };
            let r = algorithms::bernstein_vazirani(&oracle, n, *economical)?;
            Outcome::new(
                "bv",
                json!({"s": s, "n": n, "economical": economical}),
                bits_value(r.answer, n),
                r.exact_distribution,
            )
        }
        Command::Simon { s, table, max_restarts } => {
            let t = match (s, table) {
                (Some(bits), _) => {
                    let (sv, n) = parse_bits(bits)?;
                    if sv == 0 {
                        return Err(Error::Domain("s must be nonzero".into()));
                    }
                    TruthTable::from_fn(n, n, |x| x.min(x ^ sv))?
                }
                (None, Some(path)) => read_table(path)?,
                (None, None) => unreachable!("clap enforces one of --s/--table"),
            };
            let n = t.n_in();
            if t.n_out() != n {
                return Err(Error::Domain("Simon needs an n-to-n table".into()));
            }
            let r = algorithms::simon(&synth_multi_oracle(&t)?, n, |x| t.eval(x), *max_restarts, seed)?;
            let answer = r.answer.map_or(Value::Null, |x| bits_value(x, n));
            Outcome::new(
                "simon",
                json!({"n": n, "s": s, "table": table, "max_restarts": max_restarts, "rounds_used": r.rounds_used}),
                answer,
                r.exact_distribution,
            )
            .failed_if(!r.success)
        }
        Command::Grover { n, marked, economical, t } => {
            let marked = parse_csv(marked)?;
            let variant = if *economical { Variant::Economical } else { Variant::Standard };
            let r = algorithms::grover(&marked, *n, variant, *t, seed)?;
            let g = r.answer.geometry;
            Outcome::new(
                "grover",
                json!({"n": n, "marked": marked, "variant": variant, "t": t}),
                json!({
                    "x": bitstring(r.answer.x, *n),
                    "marked_hit": r.success,
                    "iterations": g.iterations,
                    "theta": g.theta,
                    "predicted_success": g.predicted_success,
                    "success_probability": r.answer.success_probability,
                    "degenerate": r.answer.degenerate,
                }),
                r.exact_distribution,
            )
        }
        Command::Sat { expr, m } => {
            let (e, vars) = parse_expr(expr)?;
            let n = vars.len();
            let r = algorithms::sat_solve(&e, n, *m, seed)?;
            let names: String = vars.iter().collect();
            Outcome::new(
                "sat",
                json!({"expr": expr, "variables": names, "m": m, "rounds_used": r.rounds_used}),
                r.answer.map_or(Value::Null, |x| bits_value(x, n)),
                r.exact_distribution,
            )
            .failed_if(!r.success)
        }
        Command::Shor { n_mod, a, mode, max_rounds } => {
            let mode = match mode {
                ModeArg::Lv => ShorMode::LasVegas,
                ModeArg::Mc => ShorMode::MonteCarlo,
            };
            let r = match a {
                Some(a) => shor::shor_factor_with_base(*n_mod, *a, mode, seed, *max_rounds)?,
                None => shor::shor_factor(*n_mod, mode, seed, *max_rounds)?,
            };
            Outcome::new(
                "shor",
                json!({
                    "N": n_mod, "a": a, "mode": mode, "max_rounds": max_rounds,
                    "bases": r.answer.bases, "quantum_rounds": r.rounds_used, "shortcut": r.answer.shortcut,
                }),
                json!(r.answer.factor),
                r.exact_distribution,
            )
            .failed_if(!r.success)
        }
        Command::Dlog { n_mod, a, b } => {
            let r = shor::shor_dlog_pow2(*n_mod, *a, *b, seed)?;
            let d = &r.answer;
            Outcome::new(
                "dlog",
                json!({"N": n_mod, "a": a, "b": b, "order": d.order, "r1": d.r1, "r2": d.r2,
                       "success_probability": d.success_probability}),
                json!(d.s),
                r.exact_distribution,
            )
            .failed_if(!r.success)
        }
        Command::QpeOrder { n_mod, a } => {
            let r = qpe::qpe_order_finding(*a, *n_mod, seed)?;
            let q = shor::ShorRegisters::for_modulus(*n_mod).q;
            let candidate = best_order_candidate(r.answer, q, *n_mod)?.map(|c| c.to_string());
            Outcome::new(
                "qpe-order",
                json!({"N": n_mod, "a": a, "q": q}),
                json!({"ell": r.answer, "order_candidate": candidate}),
                r.exact_distribution,
            )
        }
        Command::Count { n, marked, m } => {
            let marked = parse_csv(marked)?;
            let bits = m.unwrap_or_else(|| qpe::default_counting_bits(*n));
            let r = qpe::quantum_counting(&marked, *n, Some(bits), seed)?;
            Outcome::new(
                "count",
                json!({"n": n, "marked": marked, "m": bits}),
                json!(r.answer),
                r.exact_distribution,
            )
        }
        Command::QftCheck { n } => {
            let c = qft::qft_circuit(*n)?;
            let u = unitary_of(&c)?;
            let q = 1usize << n;
            let dft = Matrix::from_fn(q, q, |k, l| {
                num_complex::Complex64::from_polar(
                    1.0 / (q as f64).sqrt(),
                    2.0 * std::f64::consts::PI * ((k * l) % q) as f64 / q as f64,
                )
            });
            let max_error = (&u - &dft).iter().map(|z| z.norm()).fold(0.0, f64::max);
            Outcome::new(
                "qft-check",
                json!({"n": n}),
                json!({"gate_count": c.len(), "expected_gate_count": n * (n + 1) / 2 + n / 2, "max_error": max_error}),
                None,
            )
        }
    })
}

/// Parses `!`, `&`, `^`, `|` and parentheses over single-letter variables.
///
/// Variables are numbered by first appearance; the letters are returned in
/// that order.
pub fn parse_expr(src: &str) -> Result<(BooleanExpr, Vec<char>)> {
    let tokens: Vec<char> = src.chars().filter(|c| !c.is_whitespace()).collect();
    let mut p = ExprParser { tokens, pos: 0, vars: Vec::new() };
    let e = p.or()?;
    if p.pos != p.tokens.len() {
        return Err(Error::Domain(format!("unexpected {:?} at position {}", p.tokens[p.pos], p.pos)));
    }
    Ok((e, p.vars))
}

struct ExprParser {
    tokens: Vec<char>,
    pos: usize,
    vars: Vec<char>,
}

impl ExprParser {
    fn peek(&self) -> Option<char> {
        self.tokens.get(self.pos).copied()
    }

    fn chain(
        &mut self,
        op: char,
        next: fn(&mut Self) -> Result<BooleanExpr>,
        build: fn(Vec<BooleanExpr>) -> BooleanExpr,
    ) -> Result<BooleanExpr> {
        let mut items = vec![next(self)?];
        while self.peek() == Some(op) {
            self.pos += 1;
            items.push(next(self)?);
        }
        Ok(if items.len() == 1 { items.pop().expect("one item") } else { build(items) })
    }

    fn or(&mut self) -> Result<BooleanExpr> {
        self.chain('|', Self::xor, BooleanExpr::Or)
    }

    fn xor(&mut self) -> Result<BooleanExpr> {
        self.chain('^', Self::and, BooleanExpr::Xor)
    }

    fn and(&mut self) -> Result<BooleanExpr> {
        self.chain('&', Self::unary, BooleanExpr::And)
    }

    fn unary(&mut self) -> Result<BooleanExpr> {
        match self.peek() {
            Some('!') => {
                self.pos += 1;
                Ok(BooleanExpr::not(self.unary()?))
            }
            Some('(') => {
                self.pos += 1;
                let e = self.or()?;
                if self.peek() != Some(')') {
                    return Err(Error::Domain("missing ')'".into()));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_lowercase() => {
                self.pos += 1;
                let idx = match self.vars.iter().position(|&v| v == c) {
                    Some(i) => i,
                    None => {
                        self.vars.push(c);
                        self.vars.len() - 1
                    }
                };
                Ok(BooleanExpr::var(idx))
            }
            Some(c) => Err(Error::Domain(format!("unexpected {c:?} at position {}", self.pos))),
            None => Err(Error::Domain("expression ends early".into())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("qsim").chain(args.iter().copied());
        let code = run_cli(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    fn report(args: &[&str]) -> Value {
        let (code, out, err) = run(args);
        assert_eq!(code, 0, "{err}");
        serde_json::from_str(&out).unwrap()
    }

    #[test]
    fn expression_grammar() {
        let (e, vars) = parse_expr("a & (c | (!b & c))").unwrap();
        assert_eq!(vars, vec!['a', 'c', 'b']);
        assert_eq!(e.to_string(), "(a & (b | (!c & b)))");
        // ! binds tighter than &, & than ^, ^ than |
        let (e, _) = parse_expr("a | b ^ c & !d").unwrap();
        assert_eq!(e.to_string(), "(a | (b ^ (c & !d)))");
        assert!(parse_expr("a &").is_err());
        assert!(parse_expr("(a").is_err());
        assert!(parse_expr("a b").is_err());
        assert!(parse_expr("A").is_err());
    }

    #[test]
    fn bv_report() {
        let r = report(&["bv", "--s", "1011", "--json"]);
        assert_eq!(r["answer"], "1011");
        assert_eq!(r["distribution"][0]["bitstring"], "1011");
        assert!((r["distribution"][0]["value"].as_f64().unwrap() - 1.0).abs() < 1e-9);
        assert_eq!(r["shots"], Value::Null);
    }

    #[test]
    fn qft_check_report() {
        let r = report(&["qft-check", "--n", "5", "--json"]);
        assert_eq!(r["answer"]["gate_count"], 17);
        assert!(r["answer"]["max_error"].as_f64().unwrap() <= 1e-10);
    }

    #[test]
    fn usage_errors_exit_2() {
        let (code, _, err) = run(&["bv"]);
        assert_eq!(code, 2);
        assert!(err.contains("Usage"));
        assert_eq!(run(&["frobnicate"]).0, 2);
        assert_eq!(run(&["bv", "--s", "10x1"]).0, 2);
        assert_eq!(run(&["shor", "--N", "13"]).0, 2);
        assert_eq!(run(&["--help"]).0, 0);
    }

    #[test]
    fn algorithmic_failure_exits_1() {
        assert_eq!(run(&["sat", "--expr", "a & !a"]).0, 1);
        assert_eq!(run(&["shor", "--N", "21", "--a", "2", "--max-rounds", "0"]).0, 1);
    }

    #[test]
    fn shots_and_top() {
        let r = report(&["grover", "--n", "3", "--marked", "5", "--shots", "1000", "--top", "3", "--json", "--seed", "4"]);
        assert_eq!(r["shots"], 1000);
        let d = r["distribution"].as_array().unwrap();
        assert_eq!(d.len(), 3);
        assert_eq!(d[0]["bitstring"], "101");
        let (code, text, _) = run(&["grover", "--n", "3", "--marked", "5"]);
        assert_eq!(code, 0);
        assert!(text.contains("101") && text.contains('#'));
    }
}
