//! The ideal text format.
//!
//! ```text
//! ring n=4 char=0 order=grevlex
//! # twisted quartic
//! x0*x3 - x1*x2
//! x1^3 - x0^2*x2
//! x2^3 - x1*x3^2
//! x0*x2^2 - x1^2*x3
//! ```
//!
//! The header fixes the number of variables, the characteristic (0 for the
//! rationals, otherwise a prime) and the order (`grevlex`, `lex`, `glex`).
//! Every further nonempty line is one generator. A product may omit `*`
//! between adjacent factors; `#` starts a comment.

use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::field::{Field, PrimeField, Rationals};
use crate::groebner::Ideal;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::Polynomial;
use crate::ring::PolyRing;
use crate::AnyIdeal;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Header {
    pub num_vars: usize,
    pub characteristic: u64,
    pub order: MonomialOrder,
}

fn perr(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

fn parse_header(line: &str, lineno: usize) -> Result<Header> {
    let mut words = line.split_whitespace();
    if words.next() != Some("ring") {
        return Err(perr(
            lineno,
            1,
            "expected header `ring n=<int> char=<0|p> order=<grevlex|lex|glex>`",
        ));
    }
    let mut n = None;
    let mut ch = None;
    let mut order = MonomialOrder::GREVLEX;
    for w in words {
        let col = line.find(w).map_or(1, |i| i + 1);
        let (key, value) = w
            .split_once('=')
            .ok_or_else(|| perr(lineno, col, format!("expected key=value, found `{w}`")))?;
        match key {
            "n" => {
                n = Some(
                    value
                        .parse::<usize>()
                        .ok()
                        .filter(|&v| v > 0)
                        .ok_or_else(|| {
                            perr(lineno, col, format!("bad variable count `{value}`"))
                        })?,
                )
            }
            "char" => {
                ch = Some(
                    value
                        .parse::<u64>()
                        .map_err(|_| perr(lineno, col, format!("bad characteristic `{value}`")))?,
                )
            }
            "order" => {
                order = MonomialOrder::parse(value)
                    .ok_or_else(|| perr(lineno, col, format!("unknown order `{value}`")))?
            }
            _ => return Err(perr(lineno, col, format!("unknown header key `{key}`"))),
        }
    }
    let num_vars = n.ok_or_else(|| perr(lineno, 1, "header is missing n=<int>"))?;
    Ok(Header {
        num_vars,
        characteristic: ch.unwrap_or(0),
        order,
    })
}

struct Cursor<'a> {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    _src: &'a str,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str, line: usize) -> Self {
        Self {
            chars: src.chars().collect(),
            pos: 0,
            line,
            _src: src,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn col(&self) -> usize {
        self.pos + 1
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        perr(self.line, self.col(), msg)
    }

    fn digits(&mut self) -> Option<String> {
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().collect())
    }
}

/// Parses one polynomial; `line` is used for error positions.
pub fn parse_polynomial<F: Field>(
    ring: &Arc<PolyRing<F>>,
    text: &str,
    line: usize,
) -> Result<Polynomial<F>> {
    let k = ring.field();
    let n = ring.num_vars();
    let mut cur = Cursor::new(text, line);
    let mut terms: Vec<(F::Elem, Monomial)> = Vec::new();
    if cur.peek().is_none() {
        return Err(cur.err("empty polynomial"));
    }
    let mut first = true;
    loop {
        let mut negative = false;
        match cur.peek() {
            None => break,
            Some('+') => {
                cur.pos += 1;
            }
            Some('-') => {
                negative = true;
                cur.pos += 1;
            }
            Some(_) if first => {}
            Some(c) => return Err(cur.err(format!("expected `+` or `-`, found `{c}`"))),
        }
        first = false;
        // term
        let mut coeff = k.one();
        let mut exps = vec![0u32; n];
        let mut factors = 0;
        loop {
            match cur.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let d = cur.digits().expect("digit");
                    let v: BigInt = d.parse().map_err(|_| cur.err("bad integer"))?;
                    coeff = k.mul(&coeff, &k.from_bigint(&v));
                }
                Some('x') => {
                    let var_col = cur.col();
                    cur.pos += 1;
                    let d = cur
                        .digits()
                        .ok_or_else(|| perr(line, var_col, "variable name must be x<index>"))?;
                    let idx: usize = d
                        .parse()
                        .map_err(|_| perr(line, var_col, format!("bad variable x{d}")))?;
                    if idx >= n {
                        return Err(perr(
                            line,
                            var_col,
                            format!("unknown variable x{idx} in a ring with {n} variables"),
                        ));
                    }
                    let mut e = 1u32;
                    if cur.peek() == Some('^') {
                        cur.pos += 1;
                        cur.skip_ws();
                        let ecol = cur.col();
                        let d = cur
                            .digits()
                            .ok_or_else(|| perr(line, ecol, "malformed exponent"))?;
                        e = d
                            .parse::<u32>()
                            .ok()
                            .filter(|&e| e <= u16::MAX as u32)
                            .ok_or_else(|| perr(line, ecol, "malformed exponent"))?;
                    }
                    exps[idx] += e;
                }
                Some(c) => {
                    if factors == 0 {
                        return Err(cur.err(format!("unexpected `{c}`")));
                    }
                    break;
                }
                None => {
                    if factors == 0 {
                        return Err(cur.err("unexpected end of input"));
                    }
                    break;
                }
            }
            factors += 1;
            if cur.peek() == Some('*') {
                cur.pos += 1;
                if !matches!(cur.peek(), Some(c) if c == 'x' || c.is_ascii_digit()) {
                    return Err(cur.err("expected a factor after `*`"));
                }
            }
            if exps.iter().any(|&e| e > u16::MAX as u32) {
                return Err(cur.err("malformed exponent"));
            }
        }
        if negative {
            coeff = k.neg(&coeff);
        }
        terms.push((coeff, Monomial::from_exponents(&exps)));
        match cur.peek() {
            None => break,
            Some('+') | Some('-') => {}
            Some(c) => return Err(cur.err(format!("unexpected `{c}`"))),
        }
    }
    Polynomial::from_terms(ring, terms)
}

/// Header plus raw generator lines with their line numbers.
pub fn split_ideal_text(text: &str) -> Result<(Header, Vec<(usize, String)>)> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, strip_comment(l).trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hl, header) = lines.next().ok_or_else(|| perr(1, 1, "empty file"))?;
    let header = parse_header(header, hl)?;
    Ok((header, lines.map(|(i, l)| (i, l.to_string())).collect()))
}

pub fn parse_ideal_in<F: Field>(
    ring: &Arc<PolyRing<F>>,
    lines: &[(usize, String)],
) -> Result<Ideal<F>> {
    let gens = lines
        .iter()
        .map(|(i, l)| parse_polynomial(ring, l, *i))
        .collect::<Result<Vec<_>>>()?;
    Ideal::new(ring, gens)
}

/// Parses a whole ideal file.
pub fn parse_ideal_text(text: &str) -> Result<AnyIdeal> {
    let (h, lines) = split_ideal_text(text)?;
    if h.characteristic == 0 {
        let ring = PolyRing::new(Rationals, h.num_vars, h.order)?;
        Ok(AnyIdeal::Rational(parse_ideal_in(&ring, &lines)?))
    } else {
        let field = PrimeField::new(h.characteristic).map_err(|_| {
            perr(
                1,
                1,
                format!(
                    "characteristic {} is not a prime below 2^32",
                    h.characteristic
                ),
            )
        })?;
        let ring = PolyRing::new(field, h.num_vars, h.order)?;
        Ok(AnyIdeal::Prime(parse_ideal_in(&ring, &lines)?))
    }
}

pub fn parse_ideal_file(path: &std::path::Path) -> Result<AnyIdeal> {
    let text = std::fs::read_to_string(path)?;
    parse_ideal_text(&text)
}

/// Parses generators given as strings into an ideal of `ring`.
pub fn ideal_from_strs<F: Field>(ring: &Arc<PolyRing<F>>, gens: &[&str]) -> Result<Ideal<F>> {
    let lines: Vec<(usize, String)> = gens
        .iter()
        .enumerate()
        .map(|(i, g)| (i + 1, g.to_string()))
        .collect();
    parse_ideal_in(ring, &lines)
}

/// Writes the file form of an ideal.
pub fn format_ideal<F: Field>(ideal: &Ideal<F>) -> String {
    let ring = ideal.ring();
    let mut s = format!(
        "ring n={} char={} order={}\n",
        ring.num_vars(),
        ring.field().characteristic(),
        ring.order().name()
    );
    for g in ideal.generators() {
        s.push_str(&g.to_string());
        s.push('\n');
    }
    s
}
