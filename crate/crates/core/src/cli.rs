//! Command-line surface: an expression parser for noncommutative
//! polynomials with Q(q) coefficients, and the `qmat` subcommands.
//!
//! Grammar (juxtaposition is the noncommutative product, `^` binds tighter):
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := '-'? factor (('*' | '/')? factor)*
//! factor  := primary ('^' '-'? uint)?
//! primary := uint | 'q' | atom | '(' expr ')'
//! atom    := t[a,alpha] | dt[a,alpha] | E_i | F_i | K_i | Ki_i | u[i,j]
//! ```
//!
//! A factor without generators is a coefficient and may not follow a
//! generator inside a product. Division and negative powers apply to
//! coefficients only.

use crate::action::{uniqueness_probe, verify_grading, ActionError, HiddenAction};
use crate::freealg::{Gen, NCPoly, Word};
use crate::pairing::{embed_check, pair, Minor};
use crate::qmatcalc::{build_calculus, OmegaPresentation, RHat};
use crate::report::Report;
use crate::scalars::{parse_rational, Field, QRat, ZPoly};
use crate::uq::verify_hopf_in_rep;
use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use std::fmt;
use std::path::PathBuf;
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("index out of range at position {pos}: {atom} ({why})")]
    Index { pos: usize, atom: String, why: String },
}

impl ParseError {
    pub fn position(&self) -> usize {
        match self {
            ParseError::Syntax { pos, .. } | ParseError::Index { pos, .. } => *pos,
        }
    }
}

fn syntax<T>(pos: usize, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError::Syntax { pos, msg: msg.into() })
}

/// Where an expression lives; decides which atoms and indices are legal.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ambient {
    /// Coordinates `t`, `dt` of `Mat(m,n)` and the generators of U_q sl_{m+n}.
    Calculus { m: usize, n: usize },
    /// U_q sl_N generators and matrix coefficients `u[i,j]`.
    Uq { n: usize },
    /// Coefficients only.
    Scalars,
}

impl Ambient {
    fn rank(&self) -> Option<usize> {
        match *self {
            Ambient::Calculus { m, n } => Some(m + n),
            Ambient::Uq { n } => Some(n),
            Ambient::Scalars => None,
        }
    }

    fn check(&self, g: Gen) -> Result<(), String> {
        let in_range = |x: u8, hi: usize| x >= 1 && (x as usize) <= hi;
        match (g, *self) {
            (Gen::T { a, alpha } | Gen::Dt { a, alpha }, Ambient::Calculus { m, n }) => {
                if !in_range(a, n) {
                    Err(format!("row index {a} outside 1..={n}"))
                } else if !in_range(alpha, m) {
                    Err(format!("column index {alpha} outside 1..={m}"))
                } else {
                    Ok(())
                }
            }
            (Gen::T { .. } | Gen::Dt { .. }, _) => Err("coordinates need a calculus (m, n)".into()),
            (Gen::E(i) | Gen::F(i) | Gen::K(i) | Gen::Kinv(i), amb) => match amb.rank() {
                Some(big_n) if in_range(i, big_n - 1) => Ok(()),
                Some(big_n) => Err(format!("index {i} outside 1..={}", big_n - 1)),
                None => Err("no U_q generators here".into()),
            },
            (Gen::U { i, j }, Ambient::Uq { n }) => {
                if in_range(i, n) && in_range(j, n) {
                    Ok(())
                } else {
                    Err(format!("indices outside 1..={n}"))
                }
            }
            (Gen::U { .. }, _) => Err("matrix coefficients need --N".into()),
        }
    }
}

/// Syntax tree; positions are byte offsets into the source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    Q,
    Atom(Gen, usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>, usize),
    Div(Box<Expr>, Box<Expr>, usize),
    Pow(Box<Expr>, i64, usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Q,
    Atom(Gen),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let b = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let uint = |i: &mut usize| -> Option<BigInt> {
        let start = *i;
        while *i < b.len() && b[*i].is_ascii_digit() {
            *i += 1;
        }
        src[start..*i].parse().ok()
    };
    let small = |i: &mut usize| -> Result<u8, ParseError> {
        let pos = *i;
        uint(i)
            .and_then(|v| u8::try_from(v).ok())
            .map_or_else(|| syntax(pos, "expected a small index"), Ok)
    };
    let expect = |i: &mut usize, c: u8| -> Result<(), ParseError> {
        if b.get(*i) == Some(&c) {
            *i += 1;
            Ok(())
        } else {
            syntax(*i, format!("expected '{}'", c as char))
        }
    };
    while i < b.len() {
        let pos = i;
        let c = b[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let simple = match c {
            b'+' => Some(Tok::Plus),
            b'-' => Some(Tok::Minus),
            b'*' => Some(Tok::Star),
            b'/' => Some(Tok::Slash),
            b'^' => Some(Tok::Caret),
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(t) = simple {
            out.push((t, pos));
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            out.push((Tok::Int(uint(&mut i).expect("digits")), pos));
            continue;
        }
        let word_end = b[i..]
            .iter()
            .position(|c| !c.is_ascii_alphabetic())
            .map_or(b.len(), |k| i + k);
        let name = &src[i..word_end];
        i = word_end;
        let tok = match name {
            "q" => Tok::Q,
            "t" | "dt" | "u" => {
                expect(&mut i, b'[')?;
                let x = small(&mut i)?;
                expect(&mut i, b',')?;
                let y = small(&mut i)?;
                expect(&mut i, b']')?;
                Tok::Atom(match name {
                    "t" => Gen::T { a: x, alpha: y },
                    "dt" => Gen::Dt { a: x, alpha: y },
                    _ => Gen::U { i: x, j: y },
                })
            }
            "E" | "F" | "K" | "Ki" => {
                expect(&mut i, b'_')?;
                let k = small(&mut i)?;
                Tok::Atom(match name {
                    "E" => Gen::E(k),
                    "F" => Gen::F(k),
                    "K" => Gen::K(k),
                    _ => Gen::Kinv(k),
                })
            }
            "" => return syntax(pos, format!("unexpected character '{}'", src[pos..].chars().next().unwrap())),
            other => return syntax(pos, format!("unknown symbol '{other}'")),
        };
        out.push((tok, pos));
    }
    Ok(out)
}

struct ExprParser<'a> {
    toks: &'a [(Tok, usize)],
    at: usize,
    end: usize,
}

impl ExprParser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(t, _)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(_, p)| *p)
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat(&Tok::Plus) {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat(&Tok::Minus) {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        if self.eat(&Tok::Minus) {
            return Ok(Expr::Neg(Box::new(self.term()?)));
        }
        let mut lhs = self.factor()?;
        loop {
            let pos = self.pos();
            if self.eat(&Tok::Star) {
                let rhs = self.factor()?;
                lhs = Expr::Mul(Box::new(lhs), Box::new(rhs), pos);
            } else if self.eat(&Tok::Slash) {
                let rhs = self.factor()?;
                lhs = Expr::Div(Box::new(lhs), Box::new(rhs), pos);
            } else if matches!(self.peek(), Some(Tok::Int(_) | Tok::Q | Tok::Atom(_) | Tok::LParen)) {
                let rhs = self.factor()?;
                lhs = Expr::Mul(Box::new(lhs), Box::new(rhs), pos);
            } else {
                return Ok(lhs);
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let base = self.primary()?;
        let pos = self.pos();
        if !self.eat(&Tok::Caret) {
            return Ok(base);
        }
        let neg = self.eat(&Tok::Minus);
        let epos = self.pos();
        match self.peek() {
            Some(Tok::Int(k)) => {
                let k = i64::try_from(k.clone()).or_else(|_| syntax(epos, "exponent too large"))?;
                self.at += 1;
                Ok(Expr::Pow(Box::new(base), if neg { -k } else { k }, pos))
            }
            _ => syntax(epos, "expected an integer exponent"),
        }
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        let pos = self.pos();
        let Some(tok) = self.peek().cloned() else {
            return syntax(pos, "unexpected end of input");
        };
        self.at += 1;
        match tok {
            Tok::Int(k) => Ok(Expr::Int(k)),
            Tok::Q => Ok(Expr::Q),
            Tok::Atom(g) => Ok(Expr::Atom(g, pos)),
            Tok::LParen => {
                let e = self.expr()?;
                if !self.eat(&Tok::RParen) {
                    return syntax(self.pos(), "expected ')'");
                }
                Ok(e)
            }
            other => syntax(pos, format!("unexpected {}", tok_name(&other))),
        }
    }
}

fn tok_name(t: &Tok) -> &'static str {
    match t {
        Tok::Plus => "'+'",
        Tok::Minus => "'-'",
        Tok::Star => "'*'",
        Tok::Slash => "'/'",
        Tok::Caret => "'^'",
        Tok::RParen => "')'",
        _ => "token",
    }
}

pub fn parse(src: &str) -> Result<Expr, ParseError> {
    let toks = lex(src)?;
    let mut p = ExprParser {
        toks: &toks,
        at: 0,
        end: src.len(),
    };
    let e = p.expr()?;
    if p.at < toks.len() {
        return syntax(p.pos(), format!("unexpected {}", tok_name(&toks[p.at].0)));
    }
    Ok(e)
}

fn as_scalar(p: &NCPoly<QRat>) -> Option<QRat> {
    match p.len() {
        0 => Some(QRat::zero()),
        1 => p.terms().next().filter(|(w, _)| w.is_empty()).map(|(_, c)| c.clone()),
        _ => None,
    }
}

impl Expr {
    /// Elaborates to a polynomial, validating every atom against `amb`.
    pub fn elaborate(&self, amb: Ambient) -> Result<NCPoly<QRat>, ParseError> {
        Ok(match self {
            Expr::Int(k) => NCPoly::constant(QRat::from_poly(ZPoly::constant(k.clone()))),
            Expr::Q => NCPoly::constant(QRat::q()),
            Expr::Atom(g, pos) => {
                amb.check(*g).map_err(|why| ParseError::Index {
                    pos: *pos,
                    atom: g.to_string(),
                    why,
                })?;
                NCPoly::gen(*g)
            }
            Expr::Neg(e) => e.elaborate(amb)?.neg(),
            Expr::Add(a, b) => a.elaborate(amb)?.add(&b.elaborate(amb)?),
            Expr::Sub(a, b) => a.elaborate(amb)?.sub(&b.elaborate(amb)?),
            Expr::Mul(a, b, pos) => {
                let (x, y) = (a.elaborate(amb)?, b.elaborate(amb)?);
                if as_scalar(&x).is_none() && as_scalar(&y).is_some_and(|c| !c.is_one()) {
                    return syntax(*pos, "coefficient must precede the monomial");
                }
                x.mul(&y)
            }
            Expr::Div(a, b, pos) => {
                let x = a.elaborate(amb)?;
                let Some(c) = as_scalar(&b.elaborate(amb)?) else {
                    return syntax(*pos, "divisor must be a coefficient");
                };
                let inv = c.try_inv().or_else(|_| syntax(*pos, "division by zero"))?;
                x.scale(&inv)
            }
            Expr::Pow(base, k, pos) => {
                let x = base.elaborate(amb)?;
                if let Some(c) = as_scalar(&x) {
                    NCPoly::constant(c.pow(*k).or_else(|_| syntax(*pos, "zero to a negative power"))?)
                } else if *k < 0 {
                    return syntax(*pos, "negative power of a non-scalar");
                } else {
                    (0..*k).fold(NCPoly::one(), |acc, _| acc.mul(&x))
                }
            }
        })
    }
}

/// Parses and elaborates in one step.
pub fn parse_poly(src: &str, amb: Ambient) -> Result<NCPoly<QRat>, ParseError> {
    parse(src)?.elaborate(amb)
}

/// Parses a Q(q) literal such as `(q^2+1)/q`.
pub fn parse_qrat(src: &str) -> Result<QRat, ParseError> {
    let p = parse_poly(src, Ambient::Scalars)?;
    Ok(as_scalar(&p).expect("scalar ambient admits no generators"))
}

/// Parses a single word such as `E_1 F_2 K_1`.
pub fn parse_word(src: &str, amb: Ambient) -> Result<Word, ParseError> {
    let p = parse_poly(src, amb)?;
    let single = p.terms().next().filter(|(_, c)| p.len() == 1 && c.is_one()).map(|(w, _)| w.clone());
    single.map_or_else(|| syntax(0, "expected a single monomial with coefficient 1"), Ok)
}

#[derive(Parser, Debug)]
#[command(name = "qmat", about = "Exact computations on the quantum matrix space and its hidden symmetry")]
pub struct Cli {
    /// Emit machine-readable JSON.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Hopf,
    Embed,
    ModuleAlgebra,
    Grading,
    Uniqueness,
    Flatness,
    Differential,
}

/// Deliberate faults for negative controls.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Fault {
    /// Scale the table entry `K_1 . t[1,1]` by `q`.
    KEntry,
    /// Drop the relations sharing the first relation's leading word.
    DropRelation,
    /// Overwrite the diagonal entry `Rhat_{11}^{11}` with `q`.
    FlipRhat,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Normal form of an expression in the calculus.
    Nf {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        expr: String,
    },
    /// Flatness table: normal words, oracle dimension, classical dimension.
    Hilbert {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 4)]
        maxdeg: usize,
        #[arg(long)]
        inject: Option<Fault>,
    },
    /// R-matrix dump with Hecke and braid status.
    Rhat {
        #[arg(long = "N")]
        big_n: usize,
        #[arg(long)]
        inject: Option<Fault>,
    },
    /// Pairing of a polynomial in `u[i,j]` with a U_q polynomial.
    Pair {
        #[arg(long = "N")]
        big_n: usize,
        #[arg(long)]
        func: String,
        #[arg(long)]
        word: String,
    },
    /// Expansion of the quantum minor `x(cols)`.
    Minor {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        /// Comma-separated, strictly increasing columns.
        #[arg(long)]
        cols: String,
    },
    /// Derives the action table and writes golden files.
    DeriveAction {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        /// Probe cutoff; raised automatically when omitted.
        #[arg(long = "L")]
        max_len: Option<usize>,
        #[arg(long, default_value = "golden")]
        out: PathBuf,
    },
    /// Runs a verification suite.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        maxdeg: Option<usize>,
        #[arg(long = "L")]
        max_len: Option<usize>,
        #[arg(long)]
        q0: Option<String>,
        #[arg(long)]
        inject: Option<Fault>,
    },
}

/// Exit status and everything the command printed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn usage(msg: impl fmt::Display) -> Self {
        Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {msg}"),
        }
    }

    fn failure(msg: impl fmt::Display) -> Self {
        Outcome {
            code: 1,
            stdout: String::new(),
            stderr: format!("error: {msg}"),
        }
    }
}

/// Runs the CLI on `argv` (including the program name) without touching
/// the process.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return Outcome {
                code,
                stdout: if code == 0 { text.clone() } else { String::new() },
                stderr: if code == 0 { String::new() } else { text },
            };
        }
    };
    execute(&cli)
}

fn report_outcome(r: &Report, json: bool) -> Outcome {
    Outcome {
        code: if r.passed() { 0 } else { 1 },
        stdout: if json { r.to_json() } else { r.to_string() },
        stderr: String::new(),
    }
}

fn action_outcome(e: ActionError) -> Outcome {
    match e {
        ActionError::Precondition(_) | ActionError::MissingGenerator(_) => Outcome::usage(e),
        _ => Outcome::failure(e),
    }
}

fn value_outcome(json: bool, key: &str, value: String, text: String) -> Outcome {
    if json {
        Outcome::ok(serde_json::json!({ key: value }).to_string())
    } else {
        Outcome::ok(text)
    }
}

pub fn execute(cli: &Cli) -> Outcome {
    let json = cli.json;
    match &cli.command {
        Command::Nf { m, n, expr } => {
            let p = match parse_poly(expr, Ambient::Calculus { m: *m, n: *n }) {
                Ok(p) => p,
                Err(e) => return Outcome::usage(e),
            };
            let calc = match build_calculus(*m, *n, 0) {
                Ok(c) => c.calculus,
                Err(e) => return Outcome::usage(e),
            };
            match calc.nf(&p) {
                Ok(nf) => value_outcome(json, "nf", nf.to_string(), nf.to_string()),
                Err(e) => Outcome::failure(e),
            }
        }
        Command::Hilbert { m, n, maxdeg, inject } => {
            let pres = match inject {
                None => build_calculus(*m, *n, 0),
                Some(Fault::DropRelation) => build_calculus(*m, *n, 0)
                    .and_then(|p| OmegaPresentation::from_relations(*m, *n, p.relations.dropping_first())),
                Some(f) => return Outcome::usage(format!("fault {f:?} does not apply to hilbert")),
            };
            let rows_and_report = pres.and_then(|p| Ok((p.flatness_table(*maxdeg)?, p.flatness_report(*maxdeg)?)));
            match rows_and_report {
                Ok((rows, r)) => {
                    let mut o = report_outcome(&r, json);
                    if !json {
                        let mut table = String::from("   d    k  normal  oracle  classical\n");
                        for row in rows {
                            table.push_str(&format!(
                                "{:>4} {:>4} {:>7} {:>7} {:>10}\n",
                                row.d, row.k, row.normal_words, row.oracle_dim, row.classical
                            ));
                        }
                        o.stdout = table + &o.stdout;
                    }
                    o
                }
                Err(e) => Outcome::failure(e),
            }
        }
        Command::Rhat { big_n, inject } => {
            if *big_n < 2 {
                return Outcome::usage("N must be at least 2");
            }
            let mut r = RHat::unchecked(*big_n);
            match inject {
                None => {}
                Some(Fault::FlipRhat) => r = r.with_entry(1, 1, 1, 1, QRat::q()),
                Some(f) => return Outcome::usage(format!("fault {f:?} does not apply to rhat")),
            }
            let report = r.report();
            let mut out = report_outcome(&report, json);
            if !json {
                let mut dump = String::new();
                for (row, col, x) in r.matrix().entries() {
                    let (ip, jp) = (row / big_n + 1, row % big_n + 1);
                    let (i, j) = (col / big_n + 1, col % big_n + 1);
                    dump.push_str(&format!("Rhat[{i}{j} -> {ip}{jp}] = {x}\n"));
                }
                out.stdout = dump + &out.stdout;
            }
            out
        }
        Command::Pair { big_n, func, word } => {
            let amb = Ambient::Uq { n: *big_n };
            let (p, u) = match (parse_poly(func, amb), parse_poly(word, amb)) {
                (Ok(p), Ok(u)) => (p, u),
                (Err(e), _) | (_, Err(e)) => return Outcome::usage(e),
            };
            if p.terms().any(|(w, _)| w.letters().iter().any(|g| g.is_uq())) {
                return Outcome::usage("--func must be a polynomial in u[i,j]");
            }
            if u.terms().any(|(w, _)| w.letters().iter().any(|g| !g.is_uq())) {
                return Outcome::usage("--word must be a polynomial in E, F, K, Ki");
            }
            let mut v = QRat::zero();
            for (w, c) in u.terms() {
                v = v.add(&c.mul(&pair(&p, w)));
            }
            value_outcome(json, "value", v.to_string(), format!("<{p}, {u}> = {v}"))
        }
        Command::Minor { m, n, cols } => {
            let parsed: Result<Vec<usize>, _> = cols.split(',').map(|c| c.trim().parse()).collect();
            let Ok(parsed) = parsed else {
                return Outcome::usage(format!("bad column list '{cols}'"));
            };
            if parsed.len() != *m {
                return Outcome::usage(format!("expected {m} columns, got {}", parsed.len()));
            }
            match Minor::new(parsed, m + n) {
                Ok(x) => {
                    let e = x.expand();
                    value_outcome(json, "expansion", e.to_string(), format!("{x} = {e}"))
                }
                Err(e) => Outcome::usage(e),
            }
        }
        Command::DeriveAction { m, n, max_len, out } => derive_action_cmd(*m, *n, *max_len, out, json),
        Command::Verify {
            suite,
            m,
            n,
            maxdeg,
            max_len,
            q0,
            inject,
        } => verify_cmd(*suite, *m, *n, *maxdeg, *max_len, q0.as_deref(), *inject, json),
    }
}

fn build_action(m: usize, n: usize, max_len: Option<usize>) -> Result<HiddenAction, ActionError> {
    match max_len {
        Some(l) => HiddenAction::build_at(m, n, l),
        None => HiddenAction::build(m, n, 3),
    }
}

fn derive_action_cmd(m: usize, n: usize, max_len: Option<usize>, out: &std::path::Path, json: bool) -> Outcome {
    if m == 0 || n == 0 {
        return Outcome::usage("m and n must be positive");
    }
    let h = match build_action(m, n, max_len) {
        Ok(h) => h,
        Err(e) => return action_outcome(e),
    };
    let dir = out.join(format!("{m}x{n}"));
    let action = serde_json::to_string_pretty(&h.table().to_json()).expect("json");
    let rules = serde_json::to_string_pretty(&h.presentation.rules_json()).expect("json");
    let written = std::fs::create_dir_all(&dir)
        .and_then(|_| std::fs::write(dir.join("action.json"), action + "\n"))
        .and_then(|_| std::fs::write(dir.join("rules.json"), rules + "\n"));
    if let Err(e) = written {
        return Outcome::failure(format!("writing {}: {e}", dir.display()));
    }
    let mut r = Report::new("derive-action")
        .param("m", m)
        .param("n", n)
        .param("L", h.table().max_len);
    for c in &h.table().certificates {
        r.push(
            format!("{} . {} rank certified", c.generator, c.coordinate),
            c.rank == c.columns,
            Some(format!("rank {} of {}", c.rank, c.columns)),
        );
    }
    let mut o = report_outcome(&r, json);
    if !json {
        let mut text = String::new();
        for (xi, row) in &h.table().entries {
            for (t, p) in row {
                text.push_str(&format!("{xi} . {t} = {p}\n"));
            }
        }
        o.stdout = format!("{text}wrote {}\n{}", dir.display(), o.stdout);
    }
    o
}

#[allow(clippy::too_many_arguments)]
fn verify_cmd(
    suite: Suite,
    m: usize,
    n: usize,
    maxdeg: Option<usize>,
    max_len: Option<usize>,
    q0: Option<&str>,
    inject: Option<Fault>,
    json: bool,
) -> Outcome {
    if m == 0 || n == 0 {
        return Outcome::usage("m and n must be positive");
    }
    let q0 = match q0.map(|s| parse_rational(s).ok_or(s)) {
        None => None,
        Some(Ok(v)) => Some(v),
        Some(Err(s)) => return Outcome::usage(format!("--q0 '{s}' is not a rational number")),
    };
    let allowed = match suite {
        Suite::ModuleAlgebra => [None, Some(Fault::KEntry)].contains(&inject),
        Suite::Flatness => [None, Some(Fault::DropRelation)].contains(&inject),
        _ => inject.is_none(),
    };
    if !allowed {
        return Outcome::usage(format!("fault {inject:?} does not apply to suite {suite:?}"));
    }
    if q0.is_some() && suite != Suite::ModuleAlgebra {
        return Outcome::usage("--q0 applies to the module-algebra suite only");
    }
    let result: Result<Report, Outcome> = match suite {
        Suite::Hopf => Ok(verify_hopf_in_rep(m + n, maxdeg.unwrap_or(3))),
        Suite::Embed => embed_check(m, n, max_len.unwrap_or(4), maxdeg.unwrap_or(3)).map_err(Outcome::failure),
        Suite::Flatness | Suite::Differential => {
            let deg = maxdeg.unwrap_or(4);
            build_calculus(m, n, 0)
                .and_then(|p| match inject {
                    Some(_) => OmegaPresentation::from_relations(m, n, p.relations.dropping_first()),
                    None => Ok(p),
                })
                .and_then(|p| match suite {
                    Suite::Flatness => p.flatness_report(deg),
                    _ => p.differential_report(deg),
                })
                .map_err(Outcome::failure)
        }
        Suite::ModuleAlgebra => {
            let deg = maxdeg.unwrap_or(3);
            let run = || -> Result<Report, ActionError> {
                let mut h = build_action(m, n, max_len)?;
                if inject.is_some() {
                    let mut table = h.table().clone();
                    let (k, t) = (Gen::K(1), Gen::T { a: 1, alpha: 1 });
                    let bad = table.entry(k, t).cloned().unwrap_or_default().scale(&QRat::q());
                    table.set_entry(k, t, bad);
                    h = h.with_table(table)?;
                }
                match &q0 {
                    Some(v) => h.specialize(v, deg),
                    None => {
                        let mut r = h.verify(deg)?;
                        r.absorb(h.verify_equivariance(deg)?);
                        Ok(r)
                    }
                }
            };
            run().map_err(action_outcome)
        }
        Suite::Grading => build_action(m, n, max_len)
            .map(|h| verify_grading(h.table()))
            .map_err(action_outcome),
        Suite::Uniqueness => {
            let l = max_len.unwrap_or(3);
            uniqueness_probe(m, n, l, l + 1).map_err(action_outcome)
        }
    };
    match result {
        Ok(mut r) => {
            if let Some(v) = &q0 {
                r.set_param("q0", v.to_string());
            }
            report_outcome(&r, json)
        }
        Err(o) => o,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn calc11() -> Ambient {
        Ambient::Calculus { m: 1, n: 1 }
    }

    #[test]
    fn parses_examples() {
        let p = parse_poly("t[1,1]^2", calc11()).unwrap();
        let t = Gen::T { a: 1, alpha: 1 };
        assert_eq!(p, NCPoly::from_word(Word::from_gens(&[t, t])));
        let p = parse_poly("(q^-1 - q) dt[1,1] t[1,1]", calc11()).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(p.terms().next().unwrap().1, &QRat::q_pow(-1).sub(&QRat::q()));
    }

    #[test]
    fn index_errors_name_the_atom() {
        let e = parse_poly("t[1,1] + t[3,1]", Ambient::Calculus { m: 1, n: 2 }).unwrap_err();
        match e {
            ParseError::Index { pos, atom, .. } => {
                assert_eq!(pos, 9);
                assert_eq!(atom, "t[3,1]");
            }
            other => panic!("{other}"),
        }
    }

    #[test]
    fn syntax_errors_carry_positions() {
        assert_eq!(parse("t[1,1] +").unwrap_err().position(), 8);
        assert_eq!(parse("(q").unwrap_err().position(), 2);
        assert_eq!(parse("t[1 1]").unwrap_err().position(), 3);
        assert_eq!(parse("x").unwrap_err().position(), 0);
        let e = parse_poly("t[1,1] q", calc11()).unwrap_err();
        assert!(e.to_string().contains("precede"), "{e}");
        assert!(parse_poly("t[1,1]^-1", calc11()).is_err());
        assert!(parse_poly("t[1,1] / t[1,1]", calc11()).is_err());
    }

    #[test]
    fn qrat_literals() {
        let x = parse_qrat("(q^2+1)/q").unwrap();
        assert_eq!(x, QRat::q().add(&QRat::q_pow(-1)));
        assert_eq!(parse_qrat("2*q^-1 - q").unwrap().to_string(), "-q + 2*q^-1");
    }
}
