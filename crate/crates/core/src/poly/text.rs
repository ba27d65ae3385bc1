//! Line-oriented text format for polynomials.
//!
//! ```text
//! # comment
//! 1 * x(1,0) x(2,0)
//! -1 * x(2,0) x(1,0)
//! alternate x(1,0) x(2,0)
//! profile 1 0
//! strict x(1,0) x(2,0)
//! ```
//!
//! Term lines are `coef * word` with variables `x(id,parity)` and parity `0`
//! or `1`; a lone `0` is the zero polynomial. `alternate` lines apply an
//! alternator to the terms without expanding it. `profile t0 t1` opens the
//! type data, followed by `strict` and `exact` set lines. Several documents in
//! one file are separated by `---` lines. Emission is canonical, so
//! `emit(parse(emit(d))) == emit(d)`.

use std::fmt::Write as _;

use super::{AlternatedPolynomial, AlternatingSet, AlternationProfile, GradedMonomial, GradedPolynomial, GradedVariable, SetKind};
use crate::error::{Error, Result};
use crate::scalar::{Parity, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolynomialDocument {
    pub polynomial: AlternatedPolynomial,
    pub profile: Option<AlternationProfile>,
}

impl PolynomialDocument {
    pub fn plain(p: GradedPolynomial) -> Self {
        PolynomialDocument { polynomial: AlternatedPolynomial::plain(p), profile: None }
    }

    pub fn emit(&self) -> String {
        let mut s = String::new();
        let core = self.polynomial.core();
        if core.is_zero() {
            s.push_str("0\n");
        }
        for (m, c) in core.terms() {
            let _ = writeln!(s, "{c} * {m}");
        }
        for set in self.polynomial.sets() {
            let _ = writeln!(s, "alternate{}", vars_text(set));
        }
        if let Some(p) = &self.profile {
            let _ = writeln!(s, "profile {} {}", p.t().0, p.t().1);
            for set in p.sets() {
                let kind = match set.kind {
                    SetKind::Strict => "strict",
                    SetKind::Exact => "exact",
                };
                let _ = writeln!(s, "{kind}{}", vars_text(&set.vars));
            }
        }
        s
    }
}

fn vars_text(vars: &[GradedVariable]) -> String {
    vars.iter().map(|v| format!(" {v}")).collect()
}

fn perr<T>(line: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Parse { line, message: message.into() })
}

fn parse_vars(text: &str, line: usize) -> Result<Vec<GradedVariable>> {
    let mut out = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let Some(body) = rest.strip_prefix("x(") else {
            return perr(line, format!("expected a variable x(id,parity) at {rest:?}"));
        };
        let Some(close) = body.find(')') else {
            return perr(line, "unclosed variable");
        };
        let inner = &body[..close];
        let Some((id, par)) = inner.split_once(',') else {
            return perr(line, format!("variable x({inner}) needs an id and a parity"));
        };
        let id: u32 = id.trim().parse().map_err(|_| Error::Parse { line, message: format!("bad variable id {id:?}") })?;
        let parity = match par.trim() {
            "0" => Parity::Even,
            "1" => Parity::Odd,
            other => return perr(line, format!("parity must be 0 or 1, got {other:?}")),
        };
        out.push(GradedVariable::new(id, parity));
        rest = body[close + 1..].trim_start();
    }
    Ok(out)
}

/// Parses a file holding one or more documents separated by `---`.
pub fn parse_documents(text: &str) -> Result<Vec<PolynomialDocument>> {
    let mut docs = Vec::new();
    let mut chunk: Vec<(usize, &str)> = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        if raw.trim() == "---" {
            docs.push(parse_lines(&chunk)?);
            chunk.clear();
        } else {
            chunk.push((n + 1, raw));
        }
    }
    if !chunk.iter().all(|(_, l)| strip(l).is_empty()) || docs.is_empty() {
        docs.push(parse_lines(&chunk)?);
    }
    Ok(docs)
}

pub fn parse_document(text: &str) -> Result<PolynomialDocument> {
    let lines: Vec<(usize, &str)> = text.lines().enumerate().map(|(n, l)| (n + 1, l)).collect();
    parse_lines(&lines)
}

/// Parses a plain polynomial; alternation lines are expanded.
pub fn parse_polynomial(text: &str) -> Result<GradedPolynomial> {
    Ok(parse_document(text)?.polynomial.expand())
}

fn strip(raw: &str) -> &str {
    raw.split('#').next().unwrap_or("").trim()
}

fn parse_lines(lines: &[(usize, &str)]) -> Result<PolynomialDocument> {
    let mut poly = GradedPolynomial::zero();
    let mut alternate: Vec<(usize, Vec<GradedVariable>)> = Vec::new();
    let mut profile_t: Option<(usize, (usize, usize))> = None;
    let mut sets = Vec::new();
    let mut last_line = 0;
    for &(n, raw) in lines {
        last_line = n;
        let line = strip(raw);
        if line.is_empty() {
            continue;
        }
        let (head, tail) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        match head {
            "alternate" => {
                if profile_t.is_some() {
                    return perr(n, "alternate lines must precede the profile");
                }
                alternate.push((n, parse_vars(tail, n)?));
            }
            "profile" => {
                if profile_t.is_some() {
                    return perr(n, "duplicate profile");
                }
                let nums: Vec<&str> = tail.split_whitespace().collect();
                let parsed: Option<Vec<usize>> = nums.iter().map(|x| x.parse().ok()).collect();
                match parsed.as_deref() {
                    Some([a, b]) => profile_t = Some((n, (*a, *b))),
                    _ => return perr(n, "profile needs two counts"),
                }
            }
            "strict" | "exact" => {
                if profile_t.is_none() {
                    return perr(n, "set lines need a preceding profile line");
                }
                let kind = if head == "strict" { SetKind::Strict } else { SetKind::Exact };
                sets.push(AlternatingSet { vars: parse_vars(tail, n)?, kind });
            }
            "0" if tail.is_empty() => {}
            _ => {
                if profile_t.is_some() || !alternate.is_empty() {
                    return perr(n, "term lines must come first");
                }
                let Some((coef, word)) = line.split_once('*') else {
                    return perr(n, "expected `coef * word`");
                };
                let c: Scalar = coef.trim().parse().map_err(|_| Error::Parse { line: n, message: format!("bad coefficient {:?}", coef.trim()) })?;
                let vars = parse_vars(word, n)?;
                if vars.is_empty() {
                    return perr(n, "empty monomial");
                }
                poly.add_term(GradedMonomial::new(vars), &c);
            }
        }
    }
    let mut alt_sets = Vec::new();
    for (_, s) in &alternate {
        alt_sets.push(s.clone());
    }
    let line_of_alt = alternate.first().map(|(n, _)| *n).unwrap_or(last_line);
    let polynomial = AlternatedPolynomial::new(poly, alt_sets).map_err(|e| Error::Parse { line: line_of_alt, message: e.to_string() })?;
    let profile = match profile_t {
        None => None,
        Some((n, t)) => Some(AlternationProfile::new(t, sets).map_err(|e| Error::Parse { line: n, message: e.to_string() })?),
    };
    Ok(PolynomialDocument { polynomial, profile })
}

pub fn emit_documents(docs: &[PolynomialDocument]) -> String {
    docs.iter().map(|d| d.emit()).collect::<Vec<_>>().join("---\n")
}
