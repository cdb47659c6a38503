//! The packing file format.
//!
//! ```text
//! # optional comment lines
//! <k> <l>
//! <x> <y>
//! ...
//! ```
//!
//! Coordinates are integers or `p/q` fractions; tokens are separated by a
//! single space. Blank lines and lines starting with `#` are skipped.

use std::fmt::Write as _;

use stairpack::geom::Point;
use stairpack::rational::parse_rational;
use stairpack::{PackingError, PackingInstance};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, message: message.into() }
}

fn two_tokens(text: &str, line: usize) -> Result<(&str, &str), ParseError> {
    let mut parts = text.split(' ');
    match (parts.next(), parts.next(), parts.next()) {
        (Some(a), Some(b), None) if !a.is_empty() && !b.is_empty() => Ok((a, b)),
        _ => Err(err(line, format!("expected two values separated by one space, got `{text}`"))),
    }
}

fn positive(token: &str, what: &str, line: usize) -> Result<u32, ParseError> {
    if !token.bytes().all(|b| b.is_ascii_digit()) {
        return Err(err(line, format!("{what} must be a positive integer, got `{token}`")));
    }
    match token.parse::<u32>() {
        Ok(v) if v > 0 => Ok(v),
        _ => Err(err(line, format!("{what} must be a positive integer, got `{token}`"))),
    }
}

pub fn parse(text: &str) -> Result<PackingInstance, ParseError> {
    let mut header: Option<(u32, u32, usize)> = None;
    let mut offsets = Vec::new();
    let mut lines_of = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.strip_suffix('\r').unwrap_or(raw);
        if body.is_empty() || body.starts_with('#') {
            continue;
        }
        let (a, b) = two_tokens(body, line)?;
        if header.is_none() {
            header = Some((positive(a, "k", line)?, positive(b, "l", line)?, line));
            continue;
        }
        let x = parse_rational(a).map_err(|e| err(line, e.to_string()))?;
        let y = parse_rational(b).map_err(|e| err(line, e.to_string()))?;
        offsets.push(Point::new(x, y));
        lines_of.push(line);
    }
    let (k, l, header_line) = header.ok_or_else(|| err(1, "missing `<k> <l>` header"))?;
    PackingInstance::new(k, l, offsets).map_err(|e| match e {
        PackingError::OutsideWindow { index, .. } => err(lines_of[index], e.to_string()),
        other => err(header_line, other.to_string()),
    })
}

/// Canonical text: header, then one reduced offset per line.
pub fn serialize(p: &PackingInstance) -> String {
    let mut out = format!("{} {}\n", p.k(), p.l());
    for o in p.offsets() {
        writeln!(out, "{} {}", o.x, o.y).expect("writing to a String");
    }
    out
}
