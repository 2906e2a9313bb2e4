//! Command-line front end and the expression language used by `nf`.
//!
//! Expression grammar, loosest binding first:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' INT)?
//! atom   := INT ('/' INT)? | 'z' | 'x' WORD | 'g' WORD | 'h' INT
//!         | 'q(' WORD ',' WORD ')' | '(' expr ')'
//!         | '[' expr ',' expr ']' ('_' INT | '_{' '-'? INT '}')?
//! ```
//!
//! `x112` is the super letter of the L member 112, `g12` is g_{12} = g_1 g_2,
//! `h2` is the generator of the second cyclic factor of Γ, `z` is the
//! distinguished root of unity ζ and `q(1,12)` is the bicharacter value. A
//! bracket without subscript is the graded commutator; `[a,b]_k` twists by
//! ζ^k. Words with letters above 9 are written in braces, `x{1,10}`.

use std::fmt;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::algebra::{Datum, NCPoly, Ring};
use crate::criterion::{check_pbw_with, closed_form_redundancies, generic_redundancies, rule_system, CheckOptions, Mode};
use crate::oracle::{default_slack, oracle_rank};
use crate::presets::{describe, preset, LiftParams, NAMES};
use crate::scalars::Scalar;
use crate::words::{format_word, is_lyndon, lyndon_up_to, parse_word, shirshov_decompose, Word};

#[derive(Parser, Debug)]
#[command(name = "pbw", about = "PBW basis criterion for character Hopf algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ModeArg {
    Full,
    Reduced,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide whether the ordered super-letter monomials form a basis.
    /// Exit 0 on pass, 1 on fail, 2 on an invalid datum.
    Check {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "full")]
        mode: ModeArg,
        #[arg(long)]
        json: bool,
        /// Skip the span test after bounded reduction.
        #[arg(long)]
        no_fallback: bool,
    },
    /// Normal form of an expression.
    Nf { file: PathBuf, expr: String },
    /// Dimension (Π N_u)·|Γ|, or "infinite".
    Dim {
        file: PathBuf,
        /// Also compute the truncated quotient rank by linear algebra.
        #[arg(long)]
        oracle: bool,
    },
    /// Number of PBW words by X-length.
    Hilbert {
        file: PathBuf,
        #[arg(long)]
        max_deg: usize,
    },
    /// Lyndon words over θ letters up to a length, one per line.
    Lyndon {
        #[arg(long)]
        theta: u8,
        #[arg(long)]
        max_len: usize,
    },
    /// Shirshov decomposition of a word.
    Shirshov { word: String },
    /// Emit a preset datum. NAME "list" prints the available names.
    Preset {
        name: String,
        /// Order of the root of unity, where the preset has one.
        #[arg(long)]
        n: Option<u64>,
        /// Twist exponent for the quantum plane.
        #[arg(long)]
        k: Option<i64>,
        /// Order of the cyclic group factors where the preset allows it.
        #[arg(long)]
        group: Option<u64>,
        /// μ_u as u=value, repeatable.
        #[arg(long = "mu", value_parser = parse_assignment)]
        mu: Vec<(String, String)>,
        /// λ_w as w=value, repeatable.
        #[arg(long = "lambda", value_parser = parse_assignment)]
        lambda: Vec<(String, String)>,
        /// Write here instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Relations the toolkit proves redundant.
    Redundant {
        file: PathBuf,
        /// Extra length for the truncated ideal test.
        #[arg(long, default_value_t = 1)]
        slack: usize,
    },
}

fn parse_assignment(s: &str) -> Result<(String, String), String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("expected WORD=VALUE, got {}", s))?;
    Ok((k.trim().to_string(), v.trim().to_string()))
}

/// Runs one invocation and returns the exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() { write!(err, "{}", e) } else { write!(out, "{}", e) };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            // a closed downstream pipe is not our failure
            if let Some(io) = e.downcast_ref::<std::io::Error>() {
                if io.kind() == std::io::ErrorKind::BrokenPipe {
                    return 0;
                }
            }
            let _ = writeln!(err, "error: {}", e);
            2
        }
    }
}

fn load(path: &PathBuf) -> anyhow::Result<Datum> {
    let text = std::fs::read_to_string(path).map_err(|e| anyhow::anyhow!("{}: {}", path.display(), e))?;
    Datum::from_json(&text).map_err(|e| anyhow::anyhow!("{}: {}", path.display(), e))
}

fn execute(cmd: Command, out: &mut dyn Write) -> anyhow::Result<i32> {
    match cmd {
        Command::Check { file, mode, json, no_fallback } => {
            let d = load(&file)?;
            let bad = d.validate();
            if !bad.is_empty() {
                for v in &bad {
                    writeln!(out, "invalid: {}", v)?;
                }
                return Ok(2);
            }
            let mode = match mode {
                ModeArg::Full => Mode::Full,
                ModeArg::Reduced => Mode::Reduced,
            };
            let opts = CheckOptions { fallback: !no_fallback, ..Default::default() };
            let report = check_pbw_with(&d, mode, opts)?;
            let dim = rule_system(&d)?.dimension();
            if json {
                writeln!(out, "{}", report.to_json(dim))?;
            } else {
                write!(out, "{}", report.to_text(&d.ring, dim))?;
            }
            Ok(if report.pass { 0 } else { 1 })
        }
        Command::Nf { file, expr } => {
            let d = load(&file)?;
            let rs = rule_system(&d)?;
            let a = parse_expr(&d.ring, &expr)?;
            writeln!(out, "{}", d.ring.fmt(&rs.normal_form(&a)))?;
            Ok(0)
        }
        Command::Dim { file, oracle } => {
            let d = load(&file)?;
            let rs = rule_system(&d)?;
            match rs.dimension() {
                Some(n) => writeln!(out, "{}", n)?,
                None => writeln!(out, "infinite")?,
            }
            if oracle {
                let o = oracle_rank(&d, default_slack(&d), 5_000_000)?;
                writeln!(out, "oracle rank {} (top length {}, {} generators)", o.rank, o.top, o.generators)?;
            }
            Ok(0)
        }
        Command::Hilbert { file, max_deg } => {
            let d = load(&file)?;
            let rs = rule_system(&d)?;
            let h: Vec<String> = rs.hilbert(max_deg).iter().map(|c| c.to_string()).collect();
            writeln!(out, "{}", h.join(" "))?;
            Ok(0)
        }
        Command::Lyndon { theta, max_len } => {
            for w in lyndon_up_to(theta, max_len) {
                writeln!(out, "{}", format_word(&w))?;
            }
            Ok(0)
        }
        Command::Shirshov { word } => {
            let w = parse_word(&word)?;
            if !is_lyndon(&w) {
                writeln!(out, "note: {} is not a Lyndon word", word)?;
            }
            let (u, v) = shirshov_decompose(&w)?;
            writeln!(out, "({}, {})", format_word(&u), format_word(&v))?;
            Ok(0)
        }
        Command::Preset { name, n, k, group, mu, lambda, output } => {
            if name == "list" {
                for p in NAMES {
                    writeln!(out, "{:<16} {}", p, describe(p))?;
                }
                return Ok(0);
            }
            let params = LiftParams { n, k, group, mu: mu.into_iter().collect(), lambda: lambda.into_iter().collect() };
            let p = preset(&name, &params)?;
            let text = p.datum.to_json();
            match output {
                Some(path) => std::fs::write(&path, text + "\n")?,
                None => writeln!(out, "{}", text)?,
            }
            Ok(0)
        }
        Command::Redundant { file, slack } => {
            let d = load(&file)?;
            let mut found = closed_form_redundancies(&d)?;
            for r in generic_redundancies(&d, slack, 2_000_000) {
                if !found.iter().any(|f| f.relation == r.relation) {
                    found.push(r);
                }
            }
            if found.is_empty() {
                writeln!(out, "none")?;
            }
            for r in found {
                writeln!(out, "{}: {}", r.relation, r.reason)?;
            }
            Ok(0)
        }
    }
}

/// A parse failure at a 1-based column.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct ExprError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ExprError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

struct Parser_<'a> {
    r: &'a Ring,
    s: Vec<char>,
    pos: usize,
}

/// Parses an expression into an element of the datum's ring.
pub fn parse_expr(r: &Ring, src: &str) -> Result<NCPoly, ExprError> {
    let mut p = Parser_ { r, s: src.chars().collect(), pos: 0 };
    let e = p.expr()?;
    p.ws();
    if p.pos < p.s.len() {
        return Err(p.err("unexpected input"));
    }
    Ok(e)
}

impl Parser_<'_> {
    fn err(&self, msg: impl Into<String>) -> ExprError {
        // line and column of pos
        let before = &self.s[..self.pos.min(self.s.len())];
        let line = 1 + before.iter().filter(|c| **c == '\n').count();
        let column = 1 + before.iter().rev().take_while(|c| **c != '\n').count();
        ExprError { line, column, message: msg.into() }
    }

    fn ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ExprError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(format!("expected '{}'", c)))
        }
    }

    fn int(&mut self) -> Result<i64, ExprError> {
        self.ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        let t: String = self.s[start..self.pos].iter().collect();
        t.parse().map_err(|_| {
            self.pos = start;
            self.err("number too large")
        })
    }

    /// Digits right after a letter, or a braced comma list.
    fn word(&mut self) -> Result<Word, ExprError> {
        let start = self.pos;
        let text: String = if self.s.get(self.pos) == Some(&'{') {
            self.pos += 1;
            let b = self.pos;
            while self.pos < self.s.len() && self.s[self.pos] != '}' {
                self.pos += 1;
            }
            let t = self.s[b..self.pos].iter().collect();
            self.expect('}')?;
            t
        } else {
            let b = self.pos;
            while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            self.s[b..self.pos].iter().collect()
        };
        parse_word(&text).map_err(|e| {
            self.pos = start;
            self.err(e.to_string())
        })
    }

    fn expr(&mut self) -> Result<NCPoly, ExprError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc += &self.term()?;
            } else if self.eat('-') {
                acc -= &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<NCPoly, ExprError> {
        let mut acc = self.unary()?;
        while self.eat('*') {
            let rhs = self.unary()?;
            acc = self.r.mul(&acc, &rhs);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<NCPoly, ExprError> {
        if self.eat('-') {
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<NCPoly, ExprError> {
        let base = self.atom()?;
        if self.eat('^') {
            let n = self.int()?;
            return Ok(self.r.pow(&base, n as u64));
        }
        Ok(base)
    }

    fn scalar(&self, c: Scalar) -> NCPoly {
        self.r.constant(c)
    }

    fn atom(&mut self) -> Result<NCPoly, ExprError> {
        let r = self.r;
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let n = self.int()?;
                if self.eat('/') {
                    let start = self.pos;
                    let d = self.int()?;
                    if d == 0 {
                        self.pos = start;
                        return Err(self.err("zero denominator"));
                    }
                    let q = crate::scalars::parse_rational(&format!("{}/{}", n, d)).expect("valid rational");
                    let c = r.field.from_rational(&q).map_err(|e| self.err(e.to_string()))?;
                    return Ok(self.scalar(c));
                }
                Ok(self.scalar(r.int(n)))
            }
            Some('z') => {
                self.pos += 1;
                Ok(self.scalar(r.zeta(1)))
            }
            Some('x') => {
                self.pos += 1;
                let start = self.pos;
                let w = self.word()?;
                match r.lset.index(&w) {
                    Some(i) => Ok(r.x(i)),
                    None => {
                        self.pos = start;
                        Err(self.err(format!("{} is not in L", format_word(&w))))
                    }
                }
            }
            Some('g') => {
                self.pos += 1;
                let w = self.word()?;
                Ok(r.grp_poly(&r.word_g(&w)))
            }
            Some('h') => {
                self.pos += 1;
                let start = self.pos;
                let i = self.int()? as usize;
                if i == 0 || i > r.group.factors() {
                    self.pos = start;
                    return Err(self.err(format!("Γ has {} factors", r.group.factors())));
                }
                let mut g = r.group.identity();
                g[i - 1] = 1;
                Ok(r.grp_poly(&g))
            }
            Some('q') => {
                self.pos += 1;
                self.expect('(')?;
                self.ws();
                let u = self.word()?;
                self.expect(',')?;
                self.ws();
                let v = self.word()?;
                self.expect(')')?;
                Ok(self.scalar(r.q_word(&u, &v)))
            }
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some('[') => {
                self.pos += 1;
                let start = self.pos;
                let a = self.expr()?;
                self.expect(',')?;
                let b = self.expr()?;
                self.expect(']')?;
                if self.eat('_') {
                    let braced = self.eat('{');
                    let neg = braced && self.eat('-');
                    let k = self.int()?;
                    if braced {
                        self.expect('}')?;
                    }
                    let q = r.zeta(if neg { -k } else { k });
                    return Ok(r.q_commutator(&a, &b, &q));
                }
                r.graded_commutator(&a, &b).map_err(|e| {
                    self.pos = start;
                    self.err(e.to_string())
                })
            }
            Some(c) => Err(self.err(format!("unexpected '{}'", c))),
            None => Err(self.err("unexpected end of input")),
        }
    }
}
